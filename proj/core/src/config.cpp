#include "mwdiff/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

#include "mwdiff/errors.hpp"
#include "mwdiff/result_table.hpp"
#include "mwdiff/units.hpp"

namespace mwdiff {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

// collapse internal whitespace runs to single spaces ("meV  nm^3" == "meV nm^3")
std::string normalize_unit(const std::string& s) {
  std::string out;
  bool in_space = false;
  for (char c : trim(s)) {
    if (std::isspace(static_cast<unsigned char>(c))) {
      in_space = true;
      continue;
    }
    if (in_space && !out.empty()) out.push_back(' ');
    in_space = false;
    out.push_back(c);
  }
  return out;
}

} // namespace

ConfigFile ConfigFile::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw config_error("cannot open config file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return from_string(ss.str(), path);
}

ConfigFile ConfigFile::from_string(const std::string& text, std::string origin) {
  ConfigFile cfg;
  cfg.origin_ = std::move(origin);
  std::istringstream in(text);
  std::string line;
  std::string section;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']')
        throw config_error(cfg.origin_ + ":" + std::to_string(lineno) +
                           ": malformed section header");
      section = trim(line.substr(1, line.size() - 2));
      if (section.empty())
        throw config_error(cfg.origin_ + ":" + std::to_string(lineno) + ": empty section name");
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw config_error(cfg.origin_ + ":" + std::to_string(lineno) +
                         ": expected 'key = value': " + line);
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty())
      throw config_error(cfg.origin_ + ":" + std::to_string(lineno) + ": empty key");
    if (section.empty())
      throw config_error(cfg.origin_ + ":" + std::to_string(lineno) +
                         ": key outside any [section]: " + key);
    const std::string full = section + "." + key;
    if (cfg.entries_.count(full))
      throw config_error(cfg.origin_ + ":" + std::to_string(lineno) + ": duplicate key " + full);
    cfg.entries_[full] = Entry{value, lineno};
  }
  return cfg;
}

const ConfigFile::Entry* ConfigFile::find(const std::string& section,
                                          const std::string& key) const {
  const auto it = entries_.find(section + "." + key);
  if (it == entries_.end()) return nullptr;
  it->second.used = true;
  return &it->second;
}

void ConfigFile::fail(const std::string& section, const std::string& key,
                      const Entry* entry, const std::string& why) const {
  std::ostringstream msg;
  msg << origin_;
  if (entry) msg << ":" << entry->line;
  msg << ": [" << section << "] " << key << ": " << why;
  throw config_error(msg.str());
}

bool ConfigFile::has(const std::string& section, const std::string& key) const {
  return entries_.count(section + "." + key) > 0;
}

double ConfigFile::quantity(const std::string& section, const std::string& key,
                            const std::string& unit) const {
  const Entry* e = find(section, key);
  if (!e) fail(section, key, nullptr, "missing required key");
  const std::string& text = e->value;
  std::size_t pos = 0;
  double magnitude = 0.0;
  try {
    magnitude = std::stod(text, &pos);
  } catch (const std::exception&) {
    fail(section, key, e, "expected a number, got '" + text + "'");
  }
  const std::string suffix = normalize_unit(text.substr(pos));
  if (suffix != normalize_unit(unit))
    fail(section, key, e,
         "unit mismatch: expected '" + unit + "', got '" + suffix + "'");
  return magnitude;
}

double ConfigFile::quantity_or(const std::string& section, const std::string& key,
                               const std::string& unit, double fallback) const {
  return has(section, key) ? quantity(section, key, unit) : fallback;
}

long ConfigFile::integer_or(const std::string& section, const std::string& key,
                            long fallback) const {
  const Entry* e = find(section, key);
  if (!e) return fallback;
  const std::string text = trim(e->value);
  long out = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
  if (ec != std::errc{} || ptr != text.data() + text.size())
    fail(section, key, e, "expected an integer, got '" + text + "'");
  return out;
}

bool ConfigFile::boolean_or(const std::string& section, const std::string& key,
                            bool fallback) const {
  const Entry* e = find(section, key);
  if (!e) return fallback;
  const std::string text = trim(e->value);
  if (text == "true" || text == "yes" || text == "on" || text == "1") return true;
  if (text == "false" || text == "no" || text == "off" || text == "0") return false;
  fail(section, key, e, "expected a boolean, got '" + text + "'");
}

std::string ConfigFile::string_or(const std::string& section, const std::string& key,
                                  std::string fallback) const {
  const Entry* e = find(section, key);
  return e ? e->value : fallback;
}

std::vector<std::string> ConfigFile::unused_keys() const {
  std::vector<std::string> out;
  for (const auto& [name, entry] : entries_)
    if (!entry.used) out.push_back(name);
  return out;
}

RunConfig RunConfig::from_file(const std::string& path) {
  return from_config(ConfigFile::from_file(path));
}

RunConfig RunConfig::from_config(const ConfigFile& cfg) {
  RunConfig rc;
  rc.grating.period_nm = cfg.quantity_or("grating", "period", "nm", rc.grating.period_nm);
  rc.grating.slit_width_nm =
      cfg.quantity_or("grating", "slit_width", "nm", rc.grating.slit_width_nm);
  rc.grating.bar_count =
      static_cast<int>(cfg.integer_or("grating", "bar_count", rc.grating.bar_count));
  rc.grating.depth_nm = cfg.quantity_or("grating", "depth", "nm", rc.grating.depth_nm);
  rc.grating.wedge_angle_deg =
      cfg.quantity_or("grating", "wedge_angle", "deg", rc.grating.wedge_angle_deg);

  rc.beam.mass_amu = cfg.quantity_or("beam", "mass", "amu", rc.beam.mass_amu);
  rc.beam.velocity_m_s = cfg.quantity_or("beam", "velocity", "m/s", rc.beam.velocity_m_s);

  const std::string kind = cfg.string_or("dimer", "kind", "calibrated");
  if (kind == "calibrated")
    rc.dimer_kind = DimerKind::Calibrated;
  else if (kind == "exponential")
    rc.dimer_kind = DimerKind::Exponential;
  else if (kind == "binding")
    rc.dimer_kind = DimerKind::FromBinding;
  else if (kind == "tabulated")
    rc.dimer_kind = DimerKind::Tabulated;
  else
    throw config_error(cfg.origin() + ": [dimer] kind: expected one of "
                       "calibrated|exponential|binding|tabulated, got '" + kind + "'");
  rc.x2_target_nm = cfg.quantity_or("dimer", "x2_target", "nm", rc.x2_target_nm);
  rc.kappa_nm = cfg.quantity_or("dimer", "kappa", "nm^-1", rc.kappa_nm);
  rc.binding_energy_ueV =
      cfg.quantity_or("dimer", "binding_energy", "ueV", rc.binding_energy_ueV);
  rc.constituent_mass_amu =
      cfg.quantity_or("dimer", "constituent_mass", "amu", rc.constituent_mass_amu);
  rc.table_path = cfg.string_or("dimer", "file", rc.table_path);

  rc.surface_c3_meV_nm3 =
      cfg.quantity_or("surface", "C3", "meV nm^3", rc.surface_c3_meV_nm3);
  rc.surface_cutoff_nm = cfg.quantity_or("surface", "cutoff", "nm", rc.surface_cutoff_nm);

  rc.k2_min_nm = cfg.quantity_or("grid", "k2_min", "nm^-1", rc.k2_min_nm);
  rc.k2_max_nm = cfg.quantity_or("grid", "k2_max", "nm^-1", rc.k2_max_nm);
  rc.k2_samples = static_cast<int>(cfg.integer_or("grid", "samples", rc.k2_samples));

  rc.fit_k2_max_nm = cfg.quantity_or("fit", "k2_max", "nm^-1", rc.fit_k2_max_nm);
  rc.fit_delta_min_nm = cfg.quantity_or("fit", "delta_min", "nm", rc.fit_delta_min_nm);
  rc.fit_delta_max_nm = cfg.quantity_or("fit", "delta_max", "nm", rc.fit_delta_max_nm);
  rc.fit_samples = static_cast<int>(cfg.integer_or("fit", "samples", rc.fit_samples));

  rc.out_dir = cfg.string_or("output", "dir", rc.out_dir);
  rc.normalized = cfg.boolean_or("output", "normalized", rc.normalized);

  const auto unused = cfg.unused_keys();
  if (!unused.empty()) {
    std::ostringstream msg;
    msg << cfg.origin() << ": unknown key(s):";
    for (const auto& k : unused) msg << " " << k;
    throw config_error(msg.str());
  }

  rc.validate();
  return rc;
}

void RunConfig::validate() const {
  grating.validate();
  beam.validate();
  if (k2_samples < 2) throw config_error("config: [grid] samples must be >= 2");
  if (!(k2_max_nm > k2_min_nm)) throw config_error("config: [grid] k2_max must exceed k2_min");
  if (dimer_kind == DimerKind::Tabulated && table_path.empty())
    throw config_error("config: [dimer] kind = tabulated requires file = <path>");
  if (fit_samples < 8) throw config_error("config: [fit] samples must be >= 8");
}

DimerModel RunConfig::make_dimer() const {
  switch (dimer_kind) {
    case DimerKind::Calibrated:
      return DimerModel::calibrated_to_x2(x2_target_nm);
    case DimerKind::Exponential:
      return DimerModel::exponential(kappa_nm, binding_energy_ueV);
    case DimerKind::FromBinding:
      return DimerModel::exponential(
          units::kappa_from_binding(binding_energy_ueV, constituent_mass_amu),
          binding_energy_ueV, "binding");
    case DimerKind::Tabulated:
      return DimerModel::tabulated_from_file(table_path, binding_energy_ueV);
  }
  throw config_error("config: unreachable dimer kind");
}

SurfaceSpec RunConfig::make_surface() const {
  SurfaceSpec spec;
  spec.c3_meV_nm3 = surface_c3_meV_nm3;
  spec.geometry = grating;
  spec.velocity_m_s = beam.velocity_m_s;
  spec.cutoff_nm = surface_cutoff_nm;
  return spec;
}

std::vector<double> RunConfig::k2_grid() const {
  std::vector<double> grid(static_cast<std::size_t>(k2_samples));
  const double dk = (k2_max_nm - k2_min_nm) / static_cast<double>(k2_samples - 1);
  for (int i = 0; i < k2_samples; ++i) grid[static_cast<std::size_t>(i)] = k2_min_nm + i * dk;
  return grid;
}

std::vector<std::pair<std::string, std::string>> RunConfig::resolved_entries() const {
  auto num = [](double v) { return format_double(v); };
  std::vector<std::pair<std::string, std::string>> out;
  out.emplace_back("grating.period", num(grating.period_nm) + " nm");
  out.emplace_back("grating.slit_width", num(grating.slit_width_nm) + " nm");
  out.emplace_back("grating.bar_count", std::to_string(grating.bar_count));
  out.emplace_back("grating.depth", num(grating.depth_nm) + " nm");
  out.emplace_back("grating.wedge_angle", num(grating.wedge_angle_deg) + " deg");
  out.emplace_back("beam.mass", num(beam.mass_amu) + " amu");
  out.emplace_back("beam.velocity", num(beam.velocity_m_s) + " m/s");
  const char* kind_name = dimer_kind == DimerKind::Calibrated    ? "calibrated"
                          : dimer_kind == DimerKind::Exponential ? "exponential"
                          : dimer_kind == DimerKind::FromBinding ? "binding"
                                                                 : "tabulated";
  out.emplace_back("dimer.kind", kind_name);
  switch (dimer_kind) {
    case DimerKind::Calibrated:
      out.emplace_back("dimer.x2_target", num(x2_target_nm) + " nm");
      break;
    case DimerKind::Exponential:
      out.emplace_back("dimer.kappa", num(kappa_nm) + " nm^-1");
      break;
    case DimerKind::FromBinding:
      out.emplace_back("dimer.binding_energy", num(binding_energy_ueV) + " ueV");
      out.emplace_back("dimer.constituent_mass", num(constituent_mass_amu) + " amu");
      break;
    case DimerKind::Tabulated:
      out.emplace_back("dimer.file", table_path);
      break;
  }
  out.emplace_back("surface.C3", num(surface_c3_meV_nm3) + " meV nm^3");
  out.emplace_back("surface.cutoff", num(surface_cutoff_nm) + " nm");
  out.emplace_back("grid.k2_min", num(k2_min_nm) + " nm^-1");
  out.emplace_back("grid.k2_max", num(k2_max_nm) + " nm^-1");
  out.emplace_back("grid.samples", std::to_string(k2_samples));
  out.emplace_back("fit.k2_max", num(fit_k2_max_nm) + " nm^-1");
  out.emplace_back("fit.delta_min", num(fit_delta_min_nm) + " nm");
  out.emplace_back("fit.delta_max", num(fit_delta_max_nm) + " nm");
  out.emplace_back("fit.samples", std::to_string(fit_samples));
  out.emplace_back("output.dir", out_dir);
  out.emplace_back("output.normalized", normalized ? "true" : "false");
  return out;
}

} // namespace mwdiff
