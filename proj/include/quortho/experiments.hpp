#pragma once

// Registered experiments behind the command-line runner.  Each experiment
// writes figure-ready CSV/JSON artifacts plus a manifest with content
// hashes; identical specs and seeds produce identical output bytes
// (manifest wall time excepted).

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "quortho/qgs.hpp"

namespace quortho {

struct ExperimentSpec {
  std::string name;                 // registered experiment name
  std::vector<double> grid;         // generic sweep grid (meaning per experiment)
  int dim = 8;                      // ambient dimension N
  int count = 0;                    // vectors per family (0 = dim)
  double cond = 100.0;              // condition number for random matrices
  std::vector<double> eps_values = {1e-2};
  double delta = 0.1;
  RunMode mode = RunMode::Analytic;
  bool inject_error = false;
  std::uint64_t seed = 0;
  int trials = 10;
  std::string model = "ising";
  int sites = 3;
  bool check = false;               // enforce acceptance thresholds
  std::filesystem::path out_dir = "out";

  void validate() const;
};

// Run a registered experiment.  Returns the process exit code: 0 on
// success, 2 when --check thresholds are violated.  Throws
// std::invalid_argument for an unknown name or bad parameters.
int run_experiment(const ExperimentSpec& spec);

// Names accepted by run_experiment.
const std::vector<std::string>& experiment_names();

}  // namespace quortho
