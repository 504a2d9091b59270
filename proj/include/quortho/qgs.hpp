#pragma once

// Quantum Gram-Schmidt orthogonalization: one flag-qubit phase-estimation
// circuit per input vector, post-selection on the flag-0 branch, a
// repetition-count dependence test, and query/gate cost accounting for
// the LCU-simulated evolution behind each circuit run.

#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

#include "quortho/hamsim.hpp"
#include "quortho/linalg.hpp"

namespace quortho {

enum class RunMode {
  Sampled,  // flag measurements drawn from the Born rule
  Analytic  // deterministic post-selection / exact branch probabilities
};

struct RunConfig {
  double eps = 1e-2;          // target precision, in (0, 1)
  double eps0 = 1e-8;         // per-run evolution error budget (default eps^4)
  double t = std::numbers::pi;// evolution time
  RunMode mode = RunMode::Analytic;
  std::uint64_t seed = 0;
  double dep_threshold = 1e-4;// analytic dependence cutoff (default eps^2)
  bool inject_error = false;  // use evolve_with_error instead of evolve_exact

  // Fill the derived defaults eps0 = eps^4 and dep_threshold = eps^2.
  static RunConfig make(double eps, RunMode mode, std::uint64_t seed,
                        bool inject_error = false);
  void validate() const;
};

// Repetition count w = ceil((1/eps) * ln(1/eps)) after which a vector
// with no flag-0 outcome is declared dependent.
int repetition_bound(double eps);

// Posterior mass P(p <= eps | w failures) = 1 - (1 - eps)^(w + 1) under a
// uniform prior on the branch probability p; the density after w failures
// is (w + 1)(1 - p)^w.
double dependence_posterior_tail(double eps, int w);

// Worst-case overlap between a post-selected output vector and the
// existing family when each run's evolution error is below eps0 and the
// branch probability is p: 2 * eps0 / p^(3/2).
double orthogonality_error_bound(double eps0, double p);

struct LedgerStep {
  int k = 0;               // basis size when the step ran
  long long runs = 0;      // circuit repetitions consumed
  long long queries = 0;   // oracle queries (runs * per-run cost)
  long long gates = 0;     // two-qubit gates (runs * per-run cost)
};

struct IpeLedgerEntry {
  int column = 0;          // matrix column the estimates belong to
  long long shots = 0;     // measurement shots
  long long oracle_calls = 0; // state-preparation calls (2 per shot)
};

struct CostLedger {
  long long oracle_queries = 0;
  long long two_qubit_gates = 0;
  long long circuit_runs = 0;
  int qubit_requirement = 0;
  std::vector<LedgerStep> steps;
  std::vector<IpeLedgerEntry> ipe_entries;

  void record_step(int k, long long runs, const LcuCost& per_run);
  void record_ipe(int column, long long shots);
  // Recompute the totals from the per-step entries (consistency check).
  bool totals_consistent() const;
};

enum class StepKind { NewBasis, Dependent };

struct StepOutcome {
  StepKind kind = StepKind::Dependent;
  ComplexVector vector;   // post-selected state (padded register dim);
                          // empty for Dependent outcomes
  double p_zero = 0.0;    // exact flag-0 probability of the circuit
  int runs_used = 0;      // circuit repetitions charged to the ledger
};

// One Gram-Schmidt step: encode `a`, run the phase-estimation circuit for
// the current family, and either post-select the flag-0 residual state or
// declare `a` dependent.  Sampled mode repeats up to repetition_bound(eps)
// times; analytic mode compares the exact branch probability against
// cfg.dep_threshold.  The evolution operator (exact or error-injected per
// cfg) is drawn once per step and reused across repetitions.
StepOutcome qgs_step(const ProjectorHamiltonian& basis,
                     const ComplexVector& a, const RunConfig& cfg,
                     std::mt19937_64& rng, CostLedger& ledger);

struct GramSchmidtResult {
  std::vector<ComplexVector> basis;  // orthonormal, original dimension
  std::vector<int> dependent_indices; // input positions declared dependent
  CostLedger ledger;
};

// Orthonormalize a vector family with the quantum Gram-Schmidt procedure.
// The first vector is normalized classically (no circuit); every later
// vector consumes one qgs_step.  Output vectors keep the natural phase of
// the post-selected states, truncated back to the input dimension.
GramSchmidtResult quantum_gram_schmidt(
    const std::vector<ComplexVector>& vectors, const RunConfig& cfg);

}  // namespace quortho
