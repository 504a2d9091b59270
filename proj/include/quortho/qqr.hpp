#pragma once

// Quantum QR decomposition: orthonormal factor from quantum Gram-Schmidt,
// off-diagonal R entries from Hadamard-test inner-product estimation
// scaled by column norms, diagonal R entries from classical residual
// norms.

#include "quortho/qgs.hpp"
#include "quortho/qipe.hpp"

namespace quortho {

// What to do when a column is declared linearly dependent during the
// Gram-Schmidt pass.  Error mirrors the library contract (a finite-budget
// substitute for the algorithm's endless loop on dependent columns);
// Skip keeps going and produces a rank-revealing staircase factorization,
// which is what the condition-number sweeps need.
enum class DependentPolicy { Error, Skip };

struct QrResult {
  ComplexMatrix q;  // N x rank (rank = M at full rank)
  ComplexMatrix r;  // rank x M, upper staircase; M x M upper triangular
                    // with real non-negative diagonal at full rank
  CostLedger ledger;
  double eps_used = 0.0;
  std::vector<int> dependent_columns;  // empty under DependentPolicy::Error
};

// Factor A (rows >= cols, nonzero columns) as A ~= Q R.  Q's columns come
// from quantum_gram_schmidt on A's columns; R(t, m) for basis row t above
// the diagonal is ||a_m|| * estimate_inner_product(q_t, a_m / ||a_m||)
// with per-entry failure budget delta = cfg.eps / M^2; each diagonal
// entry is the classical residual norm ||a_m - sum_t R(t, m) q_t||.
// Throws RankDeficiencyError when a column comes back Dependent and
// policy is Error.
QrResult quantum_qr(const ComplexMatrix& a, const RunConfig& cfg,
                    const IpeConfig& ipe,
                    DependentPolicy policy = DependentPolicy::Error);

// Spectral norm of A - Q R.  Throws std::invalid_argument on shape
// mismatch.
double qr_error(const ComplexMatrix& a, const ComplexMatrix& q,
                const ComplexMatrix& r);

}  // namespace quortho
