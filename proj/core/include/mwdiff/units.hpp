#pragma once

namespace mwdiff::units {

// Internal unit system:
//   length      nm
//   wavenumber  nm^-1        (hbar = 1: all momenta are stored as wavenumbers)
//   mass        amu
//   energy     ueV
//   velocity    m/s
//
// hbar enters only the conversions below, never the scattering formulas.

namespace constants {
// CODATA 2018 (eV and amu exact / recommended values).
inline constexpr double hbar_J_s = 1.054571817e-34;
inline constexpr double amu_kg = 1.66053906660e-27;
inline constexpr double eV_J = 1.602176634e-19;
inline constexpr double ueV_J = 1e-6 * eV_J;
inline constexpr double meV_J = 1e-3 * eV_J;
inline constexpr double helium4_mass_amu = 4.002602;
} // namespace constants

// Binding wavenumber of a two-body bound state of equal constituents:
// kappa = sqrt(2 mu |E_b|)/hbar with mu = m/2, returned in nm^-1.
// Throws domain_error for negative inputs; |E_b| = 0 gives kappa = 0.
double kappa_from_binding(double binding_energy_ueV, double constituent_mass_amu);

// Total wavenumber K = M v / hbar of a beam particle, in nm^-1.
double wavenumber_from_velocity(double mass_amu, double velocity_m_s);
double velocity_from_wavenumber(double mass_amu, double wavenumber_nm);

// Scalar unit conversions (round-trip identity to machine precision).
double ueV_to_joule(double e_ueV);
double joule_to_ueV(double e_J);
double amu_to_kg(double m_amu);
double kg_to_amu(double m_kg);
double inverse_nm_to_inverse_m(double k_nm);
double inverse_m_to_inverse_nm(double k_m);

} // namespace mwdiff::units
