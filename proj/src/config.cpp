// SPDX-License-Identifier: Apache-2.0
#include "tfsi/config.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

namespace tfsi {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_ws(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

}  // namespace

ConfigFile ConfigFile::parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_string(buf.str(), path);
}

ConfigFile ConfigFile::parse_string(const std::string& text, const std::string& name) {
  ConfigFile cfg;
  cfg.name_ = name;
  std::istringstream in(text);
  std::string line, section;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']')
        throw ConfigError(name + ":" + std::to_string(lineno) + ": unterminated section header");
      section = trim(line.substr(1, line.size() - 2));
      if (section.empty())
        throw ConfigError(name + ":" + std::to_string(lineno) + ": empty section name");
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError(name + ":" + std::to_string(lineno) + ": expected 'key = value'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty())
      throw ConfigError(name + ":" + std::to_string(lineno) + ": empty key");
    if (section.empty())
      throw ConfigError(name + ":" + std::to_string(lineno) + ": key outside any [section]");
    auto [it, inserted] = cfg.sections_[section].insert({key, Entry{value, lineno}});
    if (!inserted)
      throw ConfigError(name + ":" + std::to_string(lineno) + ": duplicate key '" + section +
                        "." + key + "'");
  }
  return cfg;
}

const ConfigFile::Entry* ConfigFile::find(const std::string& section,
                                          const std::string& key) const {
  const auto s = sections_.find(section);
  if (s == sections_.end()) return nullptr;
  const auto k = s->second.find(key);
  return k == s->second.end() ? nullptr : &k->second;
}

void ConfigFile::fail(const Entry& e, const std::string& key, const std::string& msg) const {
  throw ConfigError(name_ + ":" + std::to_string(e.line) + ": field '" + key + "': " + msg);
}

bool ConfigFile::has(const std::string& section, const std::string& key) const {
  return find(section, key) != nullptr;
}

std::string ConfigFile::get_string(const std::string& section, const std::string& key,
                                   const std::string& fallback) const {
  const Entry* e = find(section, key);
  return e ? e->value : fallback;
}

double ConfigFile::get_double(const std::string& section, const std::string& key,
                              double fallback) const {
  const Entry* e = find(section, key);
  if (!e) return fallback;
  try {
    std::size_t pos = 0;
    const double v = std::stod(e->value, &pos);
    if (pos != e->value.size()) fail(*e, section + "." + key, "trailing characters in number");
    return v;
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception&) {
    fail(*e, section + "." + key, "not a number: '" + e->value + "'");
  }
}

int ConfigFile::get_int(const std::string& section, const std::string& key, int fallback) const {
  const Entry* e = find(section, key);
  if (!e) return fallback;
  try {
    std::size_t pos = 0;
    const int v = std::stoi(e->value, &pos);
    if (pos != e->value.size()) fail(*e, section + "." + key, "trailing characters in integer");
    return v;
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception&) {
    fail(*e, section + "." + key, "not an integer: '" + e->value + "'");
  }
}

bool ConfigFile::get_bool(const std::string& section, const std::string& key,
                          bool fallback) const {
  const Entry* e = find(section, key);
  if (!e) return fallback;
  std::string v = e->value;
  std::transform(v.begin(), v.end(), v.begin(), [](unsigned char c) { return std::tolower(c); });
  if (v == "true" || v == "yes" || v == "on" || v == "1") return true;
  if (v == "false" || v == "no" || v == "off" || v == "0") return false;
  fail(*e, section + "." + key, "not a boolean: '" + e->value + "'");
}

std::vector<double> ConfigFile::get_double_list(const std::string& section,
                                                const std::string& key,
                                                const std::vector<double>& fallback) const {
  const Entry* e = find(section, key);
  if (!e) return fallback;
  std::vector<double> out;
  for (const auto& tok : split_ws(e->value)) {
    try {
      std::size_t pos = 0;
      out.push_back(std::stod(tok, &pos));
      if (pos != tok.size()) throw std::invalid_argument(tok);
    } catch (const std::exception&) {
      fail(*e, section + "." + key, "not a number: '" + tok + "'");
    }
  }
  if (out.empty()) fail(*e, section + "." + key, "empty list");
  return out;
}

std::vector<std::string> ConfigFile::get_string_list(
    const std::string& section, const std::string& key,
    const std::vector<std::string>& fallback) const {
  const Entry* e = find(section, key);
  if (!e) return fallback;
  auto out = split_ws(e->value);
  if (out.empty()) fail(*e, section + "." + key, "empty list");
  return out;
}

std::vector<std::string> ConfigFile::unknown_keys(
    const std::map<std::string, std::vector<std::string>>& schema) const {
  std::vector<std::string> out;
  for (const auto& [section, entries] : sections_) {
    const auto s = schema.find(section);
    for (const auto& [key, entry] : entries) {
      const bool known = s != schema.end() &&
                         std::find(s->second.begin(), s->second.end(), key) != s->second.end();
      if (!known)
        out.push_back(name_ + ":" + std::to_string(entry.line) + ": unknown field '" + section +
                      "." + key + "'");
    }
  }
  return out;
}

std::shared_ptr<const Material> MaterialConfig::build() const {
  if (kind == "51crv4") return std::make_shared<Material51CrV4>(fit_offset);
  if (kind == "constant")
    return std::make_shared<ConstantMaterial>(density, conductivity, specific_heat);
  throw ConfigError("unknown material kind '" + kind + "' (51crv4|constant)");
}

ExperimentConfig ExperimentConfig::defaults() {
  ExperimentConfig cfg;
  cfg.tols = {1e-2, 1e-3, 1e-4, 1e-5};
  cfg.accelerators = {Accelerator::None, Accelerator::Aitken, Accelerator::Mpe,
                      Accelerator::Rre};
  cfg.predictors = {Predictor::None, Predictor::Linear, Predictor::Quadratic};
  cfg.model.mesh = StructureMesh{0.05, 25, 2};
  cfg.model.material = MaterialConfig{};
  cfg.model.structure_initial_temperature = 900.0;
  cfg.model.fluid = FluidSurrogateConfig{};
  cfg.model.fluid.stiffness_multiplier = 600.0;
  // Quasi-steady start against the hot wall, as in the flat-plate setup.
  cfg.model.fluid.initial_profile = "steady";
  cfg.model.fluid.initial_temperature = 900.0;
  cfg.model.controller.dt_min = 1e-9;
  cfg.model.controller.dt_max = 1e6;
  return cfg;
}

ExperimentConfig ExperimentConfig::from_file(const std::string& path) {
  return from_config(ConfigFile::parse_file(path));
}

ExperimentConfig ExperimentConfig::from_config(const ConfigFile& file) {
  static const std::map<std::string, std::vector<std::string>> schema = {
      {"case",
       {"name", "end_time", "dt0", "tols", "accelerators", "predictors", "adaptive", "seed",
        "output_dir", "study_dts", "study_tol"}},
      {"structure",
       {"length", "elements", "order", "initial_temperature", "material", "fit_offset",
        "density", "conductivity", "specific_heat", "picard"}},
      {"fluid",
       {"length", "cells", "conductivity", "stiffness_multiplier", "volumetric_heat_capacity",
        "farfield_temperature", "initial_temperature", "initial_profile",
        "flux_reconstruction_order"}},
      {"coupling", {"divisor", "max_iterations", "history_window"}},
      {"controller", {"safety", "shrink_limit", "growth_limit", "dt_min", "dt_max"}},
  };
  const auto unknown = file.unknown_keys(schema);
  if (!unknown.empty()) {
    std::string msg = "config errors:";
    for (const auto& u : unknown) msg += "\n  " + u;
    throw ConfigError(msg);
  }

  ExperimentConfig cfg = defaults();
  cfg.case_name = file.get_string("case", "name", cfg.case_name);
  cfg.end_time = file.get_double("case", "end_time", cfg.end_time);
  cfg.dt0 = file.get_double("case", "dt0", cfg.dt0);
  cfg.tols = file.get_double_list("case", "tols", cfg.tols);
  cfg.adaptive = file.get_bool("case", "adaptive", cfg.adaptive);
  cfg.seed = static_cast<unsigned long>(file.get_int("case", "seed", static_cast<int>(cfg.seed)));
  cfg.output_dir = file.get_string("case", "output_dir", cfg.output_dir);
  cfg.study_dts = file.get_double_list("case", "study_dts", cfg.study_dts);
  cfg.study_tol = file.get_double("case", "study_tol", cfg.study_tol);

  cfg.accelerators.clear();
  for (const auto& s : file.get_string_list("case", "accelerators",
                                            {"none", "aitken", "mpe", "rre"}))
    cfg.accelerators.push_back(accelerator_from_string(s));
  cfg.predictors.clear();
  for (const auto& s : file.get_string_list("case", "predictors",
                                            {"none", "linear", "quadratic"}))
    cfg.predictors.push_back(predictor_from_string(s));

  auto& m = cfg.model;
  m.mesh.length = file.get_double("structure", "length", m.mesh.length);
  m.mesh.elements = file.get_int("structure", "elements", m.mesh.elements);
  m.mesh.order = file.get_int("structure", "order", m.mesh.order);
  m.structure_initial_temperature =
      file.get_double("structure", "initial_temperature", m.structure_initial_temperature);
  m.material.kind = file.get_string("structure", "material", m.material.kind);
  m.material.fit_offset = file.get_double("structure", "fit_offset", m.material.fit_offset);
  m.material.density = file.get_double("structure", "density", m.material.density);
  m.material.conductivity =
      file.get_double("structure", "conductivity", m.material.conductivity);
  m.material.specific_heat =
      file.get_double("structure", "specific_heat", m.material.specific_heat);
  m.picard = file.get_bool("structure", "picard", m.picard);

  m.fluid.length = file.get_double("fluid", "length", m.fluid.length);
  m.fluid.cells = file.get_int("fluid", "cells", m.fluid.cells);
  m.fluid.conductivity = file.get_double("fluid", "conductivity", m.fluid.conductivity);
  m.fluid.stiffness_multiplier =
      file.get_double("fluid", "stiffness_multiplier", m.fluid.stiffness_multiplier);
  m.fluid.volumetric_heat_capacity =
      file.get_double("fluid", "volumetric_heat_capacity", m.fluid.volumetric_heat_capacity);
  m.fluid.farfield_temperature =
      file.get_double("fluid", "farfield_temperature", m.fluid.farfield_temperature);
  m.fluid.initial_temperature =
      file.get_double("fluid", "initial_temperature", m.fluid.farfield_temperature);
  m.fluid.initial_profile =
      file.get_string("fluid", "initial_profile", m.fluid.initial_profile);
  m.fluid.flux_reconstruction_order =
      file.get_int("fluid", "flux_reconstruction_order", m.fluid.flux_reconstruction_order);

  m.coupling_divisor = file.get_double("coupling", "divisor", m.coupling_divisor);
  m.max_coupling_iterations =
      file.get_int("coupling", "max_iterations", m.max_coupling_iterations);
  m.history_window = file.get_int("coupling", "history_window", m.history_window);

  m.controller.safety = file.get_double("controller", "safety", m.controller.safety);
  m.controller.shrink_limit =
      file.get_double("controller", "shrink_limit", m.controller.shrink_limit);
  m.controller.growth_limit =
      file.get_double("controller", "growth_limit", m.controller.growth_limit);
  m.controller.dt_min = file.get_double("controller", "dt_min", m.controller.dt_min);
  m.controller.dt_max = file.get_double("controller", "dt_max", m.controller.dt_max);

  cfg.validate();
  return cfg;
}

void ExperimentConfig::validate() const {
  if (end_time <= 0.0) throw ConfigError("case.end_time must be positive");
  if (dt0 <= 0.0) throw ConfigError("case.dt0 must be positive");
  if (tols.empty()) throw ConfigError("case.tols must not be empty");
  for (double t : tols)
    if (t <= 0.0) throw ConfigError("case.tols entries must be positive");
  for (std::size_t i = 1; i < tols.size(); ++i)
    if (tols[i] >= tols[i - 1])
      throw ConfigError("case.tols must be strictly descending");
  if (accelerators.empty()) throw ConfigError("case.accelerators must not be empty");
  if (predictors.empty()) throw ConfigError("case.predictors must not be empty");
  model.mesh.validate();
  model.fluid.validate();
  model.material.build();  // validates kind and parameters
  if (model.structure_initial_temperature <= 0.0)
    throw ConfigError("structure.initial_temperature must be positive (K)");
  for (double dt : study_dts)
    if (dt <= 0.0) throw ConfigError("case.study_dts entries must be positive");
  if (study_tol <= 0.0) throw ConfigError("case.study_tol must be positive");
}

}  // namespace tfsi
