#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "mwdiff/bar_amplitude.hpp"
#include "mwdiff/grating.hpp"
#include "mwdiff/surface.hpp"
#include "mwdiff/wavefunction.hpp"

namespace mwdiff {

// Line-oriented "key = value" configuration with [section] headers.
// Physical quantities carry a unit suffix that is checked against the unit
// the key expects (e.g. "period = 50 nm"). '#' starts a comment.
class ConfigFile {
public:
  static ConfigFile from_file(const std::string& path);
  static ConfigFile from_string(const std::string& text, std::string origin = "<inline>");

  bool has(const std::string& section, const std::string& key) const;

  // Number with mandatory unit suffix matching `unit` ("" = dimensionless).
  double quantity(const std::string& section, const std::string& key,
                  const std::string& unit) const;
  double quantity_or(const std::string& section, const std::string& key,
                     const std::string& unit, double fallback) const;
  long integer_or(const std::string& section, const std::string& key, long fallback) const;
  bool boolean_or(const std::string& section, const std::string& key, bool fallback) const;
  std::string string_or(const std::string& section, const std::string& key,
                        std::string fallback) const;

  // Keys present in the file but never queried (typo detection).
  std::vector<std::string> unused_keys() const;
  const std::string& origin() const { return origin_; }

private:
  struct Entry {
    std::string value;
    int line = 0;
    mutable bool used = false;
  };

  const Entry* find(const std::string& section, const std::string& key) const;
  [[noreturn]] void fail(const std::string& section, const std::string& key,
                         const Entry* entry, const std::string& why) const;

  std::map<std::string, Entry> entries_; // "section.key" -> entry
  std::string origin_;
};

// Fully resolved run parameters; file values override the defaults.
struct RunConfig {
  enum class DimerKind { Calibrated, Exponential, FromBinding, Tabulated };

  GratingGeometry grating{50.0, 25.0, 100, 100.0, 8.0};
  BeamState beam{2.0 * 4.002602, 500.0};

  DimerKind dimer_kind = DimerKind::Calibrated;
  double x2_target_nm = 2.8;
  double kappa_nm = 1.0 / (4.0 * 2.8);
  double binding_energy_ueV = 0.11;
  double constituent_mass_amu = 4.002602;
  std::string table_path;

  double surface_c3_meV_nm3 = 0.1;
  double surface_cutoff_nm = 0.5;

  double k2_min_nm = 0.0;
  double k2_max_nm = 1.5;
  int k2_samples = 1501;

  double fit_k2_max_nm = 0.15;
  double fit_delta_min_nm = -5.0;
  double fit_delta_max_nm = 10.0;
  int fit_samples = 241;

  std::string out_dir = "out";
  bool normalized = true;

  static RunConfig defaults() { return {}; }
  static RunConfig from_file(const std::string& path);
  static RunConfig from_config(const ConfigFile& cfg);

  void validate() const;
  DimerModel make_dimer() const;
  SurfaceSpec make_surface() const;
  std::vector<double> k2_grid() const;

  // Deterministic (section.key, value-with-unit) listing for output echo.
  std::vector<std::pair<std::string, std::string>> resolved_entries() const;
};

} // namespace mwdiff
