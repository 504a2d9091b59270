#include "quortho/qqr.hpp"

#include <stdexcept>

#include "quortho/errors.hpp"
#include "quortho/rng.hpp"

namespace quortho {

QrResult quantum_qr(const ComplexMatrix& a, const RunConfig& cfg,
                    const IpeConfig& ipe, DependentPolicy policy) {
  cfg.validate();
  ipe.validate();
  const Eigen::Index n = a.rows();
  const Eigen::Index m = a.cols();
  if (n < m || m == 0)
    throw std::invalid_argument("quantum_qr: need rows >= cols >= 1");

  std::vector<ComplexVector> columns;
  columns.reserve(m);
  for (Eigen::Index j = 0; j < m; ++j) {
    if (a.col(j).norm() == 0.0)
      throw std::invalid_argument("quantum_qr: zero column " +
                                  std::to_string(j));
    columns.push_back(a.col(j));
  }

  GramSchmidtResult gs = quantum_gram_schmidt(columns, cfg);
  if (!gs.dependent_indices.empty() && policy == DependentPolicy::Error)
    throw RankDeficiencyError(
        "quantum_qr: column " + std::to_string(gs.dependent_indices.front()) +
        " is linearly dependent on its predecessors (the physical "
        "algorithm would repeat its circuit indefinitely)");

  QrResult result;
  result.eps_used = cfg.eps;
  result.ledger = std::move(gs.ledger);
  result.dependent_columns = gs.dependent_indices;

  const int rank = static_cast<int>(gs.basis.size());
  result.q = ComplexMatrix(n, rank);
  for (int j = 0; j < rank; ++j) result.q.col(j) = gs.basis[j];

  // basis_before[m1] = number of basis rows that existed when column m1
  // was processed = number of independent columns preceding it.
  std::vector<int> basis_before(m);
  {
    std::size_t dep_pos = 0;
    int count = 0;
    for (Eigen::Index j = 0; j < m; ++j) {
      basis_before[j] = count;
      const bool dependent =
          dep_pos < gs.dependent_indices.size() &&
          gs.dependent_indices[dep_pos] == static_cast<int>(j);
      if (dependent)
        ++dep_pos;
      else
        ++count;
    }
  }

  // Per-entry estimation budget: the union bound over at most M^2
  // estimated entries keeps the whole factorization inside cfg.eps.
  IpeConfig entry_cfg = ipe;
  entry_cfg.delta = cfg.eps / static_cast<double>(m * m);

  result.r = ComplexMatrix::Zero(rank, m);
  for (Eigen::Index m1 = 0; m1 < m; ++m1) {
    const double col_norm = columns[m1].norm();
    const ComplexVector unit_col = columns[m1] / col_norm;
    const int rows_above = basis_before[m1];
    for (int t = 0; t < rows_above; ++t) {
      entry_cfg.seed = derive_seed(ipe.seed, stream_tag::qr_entry,
                                   static_cast<std::uint64_t>(m1) * m + t);
      IpeEstimate est =
          estimate_inner_product(result.q.col(t), unit_col, entry_cfg);
      result.r(t, m1) = col_norm * est.value;
      if (est.shots_used > 0)
        result.ledger.record_ipe(static_cast<int>(m1), est.shots_used);
    }
  }

  // Diagonals: column m1 owns basis row basis_before[m1] iff it was not
  // declared dependent; its entry is the classical residual norm against
  // the estimated projections.
  {
    std::size_t dep_pos = 0;
    for (Eigen::Index m1 = 0; m1 < m; ++m1) {
      const bool dependent =
          dep_pos < gs.dependent_indices.size() &&
          gs.dependent_indices[dep_pos] == static_cast<int>(m1);
      if (dependent) {
        ++dep_pos;
        continue;
      }
      const int row = basis_before[m1];
      ComplexVector residual = columns[m1];
      for (int t = 0; t < row; ++t)
        residual -= result.r(t, m1) * result.q.col(t);
      result.r(row, m1) = residual.norm();
    }
  }

  return result;
}

double qr_error(const ComplexMatrix& a, const ComplexMatrix& q,
                const ComplexMatrix& r) {
  if (q.rows() != a.rows() || r.cols() != a.cols() || q.cols() != r.rows())
    throw std::invalid_argument("qr_error: shape mismatch");
  return spectral_norm(a - q * r);
}

}  // namespace quortho
