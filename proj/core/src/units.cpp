#include "mwdiff/units.hpp"

#include <cmath>

#include "mwdiff/errors.hpp"

namespace mwdiff::units {

using namespace constants;

double kappa_from_binding(double binding_energy_ueV, double constituent_mass_amu) {
  if (binding_energy_ueV < 0.0)
    throw domain_error("kappa_from_binding: binding energy magnitude must be >= 0");
  if (constituent_mass_amu <= 0.0)
    throw domain_error("kappa_from_binding: constituent mass must be > 0");
  // 2 mu |E| = m |E| for equal masses.
  const double m_kg = amu_to_kg(constituent_mass_amu);
  const double e_J = ueV_to_joule(binding_energy_ueV);
  const double kappa_per_m = std::sqrt(m_kg * e_J) / hbar_J_s;
  return inverse_m_to_inverse_nm(kappa_per_m);
}

double wavenumber_from_velocity(double mass_amu, double velocity_m_s) {
  if (mass_amu <= 0.0) throw domain_error("wavenumber_from_velocity: mass must be > 0");
  const double p = amu_to_kg(mass_amu) * velocity_m_s; // kg m/s
  return inverse_m_to_inverse_nm(p / hbar_J_s);
}

double velocity_from_wavenumber(double mass_amu, double wavenumber_nm) {
  if (mass_amu <= 0.0) throw domain_error("velocity_from_wavenumber: mass must be > 0");
  const double p = inverse_nm_to_inverse_m(wavenumber_nm) * hbar_J_s;
  return p / amu_to_kg(mass_amu);
}

double ueV_to_joule(double e_ueV) { return e_ueV * ueV_J; }
double joule_to_ueV(double e_J) { return e_J / ueV_J; }
double amu_to_kg(double m_amu) { return m_amu * amu_kg; }
double kg_to_amu(double m_kg) { return m_kg / amu_kg; }
double inverse_nm_to_inverse_m(double k_nm) { return k_nm * 1e9; }
double inverse_m_to_inverse_nm(double k_m) { return k_m * 1e-9; }

} // namespace mwdiff::units
