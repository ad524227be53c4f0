#pragma once

// Named numerical experiments, each reproducing one check on the library with
// registered tolerances, and the artifact writer used by `effham verify`.

#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "effham/output.hpp"

namespace effham {

struct ExperimentConfig {
  std::string name;
  std::optional<int> N;               // cell solver nodes
  std::optional<double> T;            // cell solver horizon
  std::optional<int> K;               // Diophantine check range
  std::optional<std::string> Q_preset;
  std::optional<int> steps;           // initial RK4 steps
  std::vector<double> s_values;       // sawtooth parameters
  std::vector<double> lambda_grid;
  std::vector<double> p_grid;
  std::filesystem::path out_dir = "effham-out";
};

struct Check {
  std::string name;
  double value = 0.0;
  std::string relation;  // "<=", ">=", "<", ">"
  double bound = 0.0;
  bool pass = false;
};

struct ExperimentResult {
  std::string name;
  int criterion = 0;
  std::vector<Check> checks;
  CsvTable table;
  std::vector<PlotSeries> plot;
  PlotLabels labels;
  std::vector<std::string> notes;

  bool passed() const;
  void expect(std::string what, double value, std::string relation, double bound);
};

struct ExperimentInfo {
  std::string name;
  int criterion;
  std::string summary;
  std::function<ExperimentResult(const ExperimentConfig&)> run;
};

const std::vector<ExperimentInfo>& experiment_registry();
const ExperimentInfo* find_experiment(const std::string& name);

/// Computes the experiment without writing anything. precondition_error for unknown names.
ExperimentResult evaluate_experiment(const ExperimentConfig& config);

struct ArtifactManifest {
  std::string name;
  bool passed = false;
  std::vector<std::filesystem::path> files;  // data.csv, plot.svg, summary.json
};

/// Writes out_dir/<name>/{data.csv, plot.svg, summary.json}.
ArtifactManifest run_experiment(const ExperimentConfig& config);

std::string summary_json(const ExperimentResult& result);

}  // namespace effham
