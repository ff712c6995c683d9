// SPDX-License-Identifier: Apache-2.0
#ifndef TFSI_CONFIG_HPP
#define TFSI_CONFIG_HPP

#include <map>
#include <string>
#include <vector>

#include "tfsi/coupling.hpp"
#include "tfsi/fluid_surrogate.hpp"
#include "tfsi/sdirk.hpp"
#include "tfsi/structure_solver.hpp"

namespace tfsi {

/// Flat key-value configuration text with [section] blocks, '#' comments and
/// no includes. Unknown keys are rejected when the experiment config is
/// built, with file/line diagnostics.
class ConfigFile {
public:
  static ConfigFile parse_file(const std::string& path);
  static ConfigFile parse_string(const std::string& text, const std::string& name = "<string>");

  bool has(const std::string& section, const std::string& key) const;
  std::string get_string(const std::string& section, const std::string& key,
                         const std::string& fallback) const;
  double get_double(const std::string& section, const std::string& key, double fallback) const;
  int get_int(const std::string& section, const std::string& key, int fallback) const;
  bool get_bool(const std::string& section, const std::string& key, bool fallback) const;
  std::vector<double> get_double_list(const std::string& section, const std::string& key,
                                      const std::vector<double>& fallback) const;
  std::vector<std::string> get_string_list(const std::string& section, const std::string& key,
                                           const std::vector<std::string>& fallback) const;

  /// Keys present in the file but absent from the accepted schema.
  std::vector<std::string> unknown_keys(
      const std::map<std::string, std::vector<std::string>>& schema) const;

private:
  struct Entry {
    std::string value;
    int line = 0;
  };
  std::string name_;
  std::map<std::string, std::map<std::string, Entry>> sections_;

  const Entry* find(const std::string& section, const std::string& key) const;
  [[noreturn]] void fail(const Entry& e, const std::string& key, const std::string& msg) const;
};

/// Material selection for the structure side.
struct MaterialConfig {
  std::string kind = "51crv4";     // 51crv4 | constant
  double fit_offset = 273.15;      // K -> fit-unit shift for the 51CrV4 fits
  double density = 7836.0;         // constant-material parameters
  double conductivity = 40.0;
  double specific_heat = 600.0;

  std::shared_ptr<const Material> build() const;
};

/// Everything needed to build and run one coupled simulation.
struct ModelConfig {
  StructureMesh mesh;
  MaterialConfig material;
  double structure_initial_temperature = 900.0;
  bool picard = false;
  FluidSurrogateConfig fluid;
  double coupling_divisor = 5.0;
  int max_coupling_iterations = 100;
  int history_window = 0;
  StepController controller;  // tol filled per run
};

/// Configuration-driven experiment description.
struct ExperimentConfig {
  std::string case_name = "cooling";
  double end_time = 100.0;
  double dt0 = 0.5;
  std::vector<double> tols = {1e-2, 1e-3, 1e-4};
  std::vector<Accelerator> accelerators = {Accelerator::None};
  std::vector<Predictor> predictors = {Predictor::None};
  bool adaptive = true;
  unsigned long seed = 42;
  std::string output_dir = "out";

  // Single-stage residual-decay study.
  std::vector<double> study_dts = {50.0, 500.0};
  double study_tol = 1e-11;

  ModelConfig model;

  static ExperimentConfig defaults();
  static ExperimentConfig from_file(const std::string& path);
  static ExperimentConfig from_config(const ConfigFile& file);
  void validate() const;
};

}  // namespace tfsi

#endif
