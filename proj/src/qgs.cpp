#include "quortho/qgs.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

#include "quortho/errors.hpp"
#include "quortho/qsim.hpp"
#include "quortho/rng.hpp"

namespace quortho {

namespace {

int ceil_log2(int x) {
  return static_cast<int>(std::bit_width(static_cast<unsigned>(x) - 1u));
}

}  // namespace

RunConfig RunConfig::make(double eps, RunMode mode, std::uint64_t seed,
                          bool inject_error) {
  RunConfig cfg;
  cfg.eps = eps;
  cfg.eps0 = std::pow(eps, 4);
  cfg.mode = mode;
  cfg.seed = seed;
  cfg.dep_threshold = eps * eps;
  cfg.inject_error = inject_error;
  cfg.validate();
  return cfg;
}

void RunConfig::validate() const {
  if (!(eps > 0.0 && eps < 1.0))
    throw std::invalid_argument("run config: eps must be in (0, 1)");
  if (!(eps0 > 0.0 && eps0 < 1.0))
    throw std::invalid_argument("run config: eps0 must be in (0, 1)");
  if (!(t > 0.0)) throw std::invalid_argument("run config: t must be > 0");
  if (!(dep_threshold > 0.0 && dep_threshold < 1.0))
    throw std::invalid_argument(
        "run config: dependence threshold must be in (0, 1)");
}

int repetition_bound(double eps) {
  if (!(eps > 0.0 && eps < 1.0))
    throw std::invalid_argument("repetition_bound: eps must be in (0, 1)");
  return static_cast<int>(std::ceil(std::log(1.0 / eps) / eps));
}

double dependence_posterior_tail(double eps, int w) {
  if (!(eps > 0.0 && eps < 1.0))
    throw std::invalid_argument(
        "dependence_posterior_tail: eps must be in (0, 1)");
  if (w < 0)
    throw std::invalid_argument("dependence_posterior_tail: w must be >= 0");
  return 1.0 - std::pow(1.0 - eps, w + 1);
}

double orthogonality_error_bound(double eps0, double p) {
  if (!(p > 0.0))
    throw std::invalid_argument("orthogonality_error_bound: p must be > 0");
  return 2.0 * eps0 / std::pow(p, 1.5);
}

void CostLedger::record_step(int k, long long runs, const LcuCost& per_run) {
  LedgerStep s;
  s.k = k;
  s.runs = runs;
  s.queries = runs * per_run.queries;
  s.gates = runs * per_run.gates;
  steps.push_back(s);
  circuit_runs += s.runs;
  oracle_queries += s.queries;
  two_qubit_gates += s.gates;
}

void CostLedger::record_ipe(int column, long long shots) {
  IpeLedgerEntry e;
  e.column = column;
  e.shots = shots;
  e.oracle_calls = 2 * shots;  // two state preparations per shot
  ipe_entries.push_back(e);
  circuit_runs += e.shots;
  oracle_queries += e.oracle_calls;
}

bool CostLedger::totals_consistent() const {
  long long q = 0, g = 0, r = 0;
  for (const auto& s : steps) {
    q += s.queries;
    g += s.gates;
    r += s.runs;
  }
  for (const auto& e : ipe_entries) {
    q += e.oracle_calls;
    r += e.shots;
  }
  return q == oracle_queries && g == two_qubit_gates && r == circuit_runs;
}

StepOutcome qgs_step(const ProjectorHamiltonian& basis, const ComplexVector& a,
                     const RunConfig& cfg, std::mt19937_64& rng,
                     CostLedger& ledger) {
  cfg.validate();
  if (a.size() == 0 || a.norm() == 0.0)
    throw std::invalid_argument("qgs_step: zero input vector");

  StateVector encoded = amplitude_encode(a);
  if (encoded.data_dim != basis.dim())
    throw std::invalid_argument(
        "qgs_step: input dimension incompatible with basis register");

  // One evolution operator per step.  Under error injection this is the
  // single errant-unitary draw shared by all repetitions of the step.
  ComplexMatrix u;
  if (cfg.inject_error && basis.size() > 0) {
    u = evolve_with_error(basis, cfg.t, cfg.eps0, rng);
  } else {
    u = evolve_exact(basis, cfg.t);
  }

  StateVector after = run_projector_circuit(encoded, u);
  const double p_zero = flag_zero_probability(after);
  const int w = repetition_bound(cfg.eps);
  const int k = basis.size();

  StepOutcome out;
  out.p_zero = p_zero;

  if (cfg.mode == RunMode::Analytic) {
    if (p_zero < cfg.dep_threshold) {
      out.kind = StepKind::Dependent;
      out.runs_used = w;  // what the physical experiment would have spent
    } else {
      out.kind = StepKind::NewBasis;
      out.vector = measure_flag_branch(after, 0).collapsed;
      out.runs_used = 1;
    }
  } else {
    out.kind = StepKind::Dependent;
    out.runs_used = w;
    for (int run = 1; run <= w; ++run) {
      if (uniform01(rng) < p_zero) {
        out.kind = StepKind::NewBasis;
        out.vector = measure_flag_branch(after, 0).collapsed;
        out.runs_used = run;
        break;
      }
    }
  }

  // An empty family evolves trivially (U = I): no oracle access, nothing
  // to charge.
  if (k >= 1)
    ledger.record_step(k, out.runs_used, lcu_query_cost(k, cfg.t, cfg.eps));
  return out;
}

GramSchmidtResult quantum_gram_schmidt(
    const std::vector<ComplexVector>& vectors, const RunConfig& cfg) {
  cfg.validate();
  if (vectors.empty())
    throw std::invalid_argument("quantum_gram_schmidt: empty input family");
  const Eigen::Index source_dim = vectors.front().size();
  for (const auto& v : vectors) {
    if (v.size() != source_dim)
      throw std::invalid_argument(
          "quantum_gram_schmidt: mismatched dimensions");
    if (v.norm() == 0.0)
      throw std::invalid_argument("quantum_gram_schmidt: zero input vector");
  }

  const int padded =
      static_cast<int>(std::bit_ceil(static_cast<unsigned>(source_dim)));
  const int m = static_cast<int>(vectors.size());

  GramSchmidtResult result;
  result.ledger.qubit_requirement =
      ceil_log2(std::max(m, 1)) +
      ceil_log2(static_cast<int>(source_dim)) + 3;

  // The first vector needs no circuit: normalize and admit it directly.
  ProjectorHamiltonian h(padded, 10.0 * cfg.eps);
  {
    ComplexVector first = ComplexVector::Zero(padded);
    first.head(source_dim) = vectors[0] / vectors[0].norm();
    h.add(first);
  }

  for (int i = 1; i < m; ++i) {
    std::mt19937_64 rng =
        rng_stream(cfg.seed, stream_tag::gs_step, static_cast<std::uint64_t>(i));
    StepOutcome step = qgs_step(h, vectors[i], cfg, rng, result.ledger);
    if (step.kind == StepKind::NewBasis) {
      h.add(step.vector);
    } else {
      result.dependent_indices.push_back(i);
    }
  }

  // Return to the caller's dimension; keep the natural measurement phase.
  result.basis.reserve(h.basis().size());
  for (const auto& u : h.basis()) {
    ComplexVector v = u.head(source_dim);
    result.basis.push_back(v / v.norm());
  }
  return result;
}

}  // namespace quortho
