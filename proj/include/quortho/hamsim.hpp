#pragma once

// Projector Hamiltonians H = sum_k |u_k><u_k| over an orthonormal family,
// their exact and error-injected time evolution, and the cost model of a
// linear-combination-of-unitaries (LCU) block encoding of the reflection
// I - 2H.

#include <cstdint>
#include <random>
#include <vector>

#include "quortho/linalg.hpp"

namespace quortho {

// Append-only container for an orthonormal basis family.  Vectors are
// validated on insertion: unit norm to 1e-12 and pairwise overlap with
// the existing family at most tol_ortho.
class ProjectorHamiltonian {
 public:
  // tol_ortho <= 0 selects the default 10 * eps with eps = 1e-2,
  // i.e. 0.1; callers running at other precisions pass their own bound.
  explicit ProjectorHamiltonian(int dim, double tol_ortho = 0.1);

  void add(const ComplexVector& u);

  int dim() const { return dim_; }
  int size() const { return static_cast<int>(basis_.size()); }
  double tol_ortho() const { return tol_ortho_; }
  const std::vector<ComplexVector>& basis() const { return basis_; }

  // The projector P = sum |u><u| (equals H itself).
  const ComplexMatrix& projector() const { return projector_; }

  // Largest pairwise overlap |<u_i|u_j>|, i != j, over the family.
  double max_offdiagonal() const { return max_offdiag_; }

 private:
  int dim_;
  double tol_ortho_;
  std::vector<ComplexVector> basis_;
  ComplexMatrix projector_;
  double max_offdiag_ = 0.0;
};

// exp(-i H t).  When the family is orthonormal to 1e-12 this reduces to
// the closed form I + (e^{-it} - 1) P; otherwise a dense Hermitian
// exponential is used and *used_dense_fallback (if given) is set.
ComplexMatrix evolve_exact(const ProjectorHamiltonian& h, double t,
                           bool* used_dense_fallback = nullptr);

// Errant evolution U = E exp(-i H t) with E = exp(-i theta K) for a
// random Hermitian K of unit spectral norm and theta = 2 asin(eps0*rho/2),
// rho uniform in (0, 1].  By construction ||U - exp(-iHt)||_2 =
// 2 sin(theta/2) = eps0 * rho < eps0 almost surely.  One draw of (K, rho)
// is consumed from rng per call.
ComplexMatrix evolve_with_error(const ProjectorHamiltonian& h, double t,
                                double eps0, std::mt19937_64& rng);

struct LcuDecomposition {
  std::vector<double> coefficients;     // size k + 1, all positive
  std::vector<ComplexMatrix> unitaries; // matching unitaries
  double alpha_sum = 0.0;               // sum of coefficients = k
};

// Linear-combination-of-unitaries decomposition of H built from the
// reflections R_u = 2|u><u| - I:
//   H = (k/2) I + sum_j (1/2) R_{u_j},  alpha_sum = k.
// Throws std::invalid_argument on an empty family.
LcuDecomposition reflection_lcu(const ProjectorHamiltonian& h);

struct LcuCost {
  long long queries = 0;     // state-preparation oracle queries
  long long gates = 0;       // two-qubit gate count
  int qubits = 0;            // total qubit requirement
};

// Cost of one LCU-simulated evolution run for a k-term projector
// Hamiltonian at time t and target accuracy eps:
//   queries = ceil(k * t + 4 * log2(1 / eps))
//   gates   = ceil(log2(max(k, 2))) * queries
//   qubits  = ceil(log2(m_context)) + ceil(log2(n_context)) + 3
// where (m_context, n_context) describe the enclosing problem (number of
// input vectors, ambient dimension).  Throws std::invalid_argument for
// k < 1, t <= 0, or eps outside (0, 1).
LcuCost lcu_query_cost(int k, double t, double eps, int m_context = 1,
                       int n_context = 1);

}  // namespace quortho
