#include "quortho/hamsim.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

#include "quortho/rng.hpp"

namespace quortho {

namespace {

constexpr double unit_norm_tol = 1e-12;
// The projector shortcut exp(-iPt) = I + (e^{-it}-1)P is exact only for an
// orthonormal family; with mutual overlaps delta its unitarity defect grows
// like 4*k*delta, so the switch must sit at machine precision for the
// result to stay unitary within 1e-12 even at k = N = 32.
constexpr double shortcut_tol = 1e-15;

int ceil_log2(int x) {
  return static_cast<int>(std::bit_width(static_cast<unsigned>(x) - 1u));
}

}  // namespace

ProjectorHamiltonian::ProjectorHamiltonian(int dim, double tol_ortho)
    : dim_(dim), tol_ortho_(tol_ortho > 0.0 ? tol_ortho : 0.1) {
  if (dim < 1)
    throw std::invalid_argument("projector hamiltonian: dimension < 1");
  projector_ = ComplexMatrix::Zero(dim, dim);
}

void ProjectorHamiltonian::add(const ComplexVector& u) {
  if (u.size() != dim_)
    throw std::invalid_argument("projector hamiltonian: dimension mismatch");
  if (std::abs(u.norm() - 1.0) > unit_norm_tol)
    throw std::invalid_argument("projector hamiltonian: vector not unit norm");
  for (const auto& v : basis_) {
    const double overlap = std::abs(v.dot(u));
    if (overlap > tol_ortho_)
      throw std::invalid_argument(
          "projector hamiltonian: vector overlaps existing family beyond "
          "tolerance");
    if (overlap > max_offdiag_) max_offdiag_ = overlap;
  }
  basis_.push_back(u);
  projector_ += u * u.adjoint();
}

ComplexMatrix evolve_exact(const ProjectorHamiltonian& h, double t,
                           bool* used_dense_fallback) {
  if (used_dense_fallback) *used_dense_fallback = false;
  const ComplexMatrix& p = h.projector();
  if (h.max_offdiagonal() <= shortcut_tol) {
    // Orthonormal family: H = P is a projector, so
    // exp(-iPt) = I + (e^{-it} - 1) P.
    const Complex phase = std::exp(Complex(0.0, -t)) - 1.0;
    return ComplexMatrix::Identity(h.dim(), h.dim()) + phase * p;
  }
  // The family drifted off exact orthonormality (e.g. noisy upstream
  // measurements); fall back to the honest dense exponential of H.
  if (used_dense_fallback) *used_dense_fallback = true;
  return matrix_exponential(p, t);
}

ComplexMatrix evolve_with_error(const ProjectorHamiltonian& h, double t,
                                double eps0, std::mt19937_64& rng) {
  if (!(eps0 > 0.0) || eps0 >= 1.0)
    throw std::invalid_argument("evolve_with_error: eps0 must be in (0, 1)");
  const int n = h.dim();
  // Random Hermitian direction with unit spectral norm.
  ComplexMatrix g(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      g(i, j) = Complex(gaussian(rng), gaussian(rng));
  ComplexMatrix k = 0.5 * (g + g.adjoint());
  k /= spectral_norm(k);
  // rho = 1 - u is uniform on (0, 1]; theta = 2 asin(eps0 * rho / 2)
  // places the perturbation exactly at distance eps0 * rho from identity.
  const double rho = 1.0 - uniform01(rng);
  const double theta = 2.0 * std::asin(0.5 * eps0 * rho);
  return matrix_exponential(k, theta) * evolve_exact(h, t);
}

LcuDecomposition reflection_lcu(const ProjectorHamiltonian& h) {
  const int k = h.size();
  if (k == 0)
    throw std::invalid_argument("reflection_lcu: empty basis family");
  LcuDecomposition d;
  const ComplexMatrix id = ComplexMatrix::Identity(h.dim(), h.dim());
  // Each rank-one term splits as |u><u| = (I + R_u) / 2 with the
  // reflection R_u = 2|u><u| - I, so
  //   H = (k/2) I + sum_j (1/2) R_{u_j},
  // all coefficients positive, LCU 1-norm alpha_sum = k.  That 1-norm is
  // what drives the k*t term in the query cost.
  d.coefficients.push_back(0.5 * k);
  d.unitaries.push_back(id);
  for (const auto& u : h.basis()) {
    d.coefficients.push_back(0.5);
    d.unitaries.push_back(2.0 * (u * u.adjoint()) - id);
  }
  d.alpha_sum = static_cast<double>(k);
  return d;
}

LcuCost lcu_query_cost(int k, double t, double eps, int m_context,
                       int n_context) {
  if (k < 1) throw std::invalid_argument("lcu_query_cost: k must be >= 1");
  if (!(t > 0.0)) throw std::invalid_argument("lcu_query_cost: t must be > 0");
  if (!(eps > 0.0 && eps < 1.0))
    throw std::invalid_argument("lcu_query_cost: eps must be in (0, 1)");
  if (m_context < 1 || n_context < 1)
    throw std::invalid_argument("lcu_query_cost: context sizes must be >= 1");
  LcuCost c;
  c.queries = static_cast<long long>(
      std::ceil(k * t + 4.0 * std::log2(1.0 / eps)));
  c.gates = static_cast<long long>(ceil_log2(std::max(k, 2))) * c.queries;
  c.qubits = ceil_log2(m_context) + ceil_log2(n_context) + 3;
  return c;
}

}  // namespace quortho
