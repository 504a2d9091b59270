#include "quortho/linalg.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <cmath>
#include <stdexcept>

#include "quortho/errors.hpp"
#include "quortho/rng.hpp"

namespace quortho {

bool is_hermitian(const ComplexMatrix& m, double tol) {
  if (m.rows() != m.cols()) return false;
  return (m - m.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

double spectral_norm(const ComplexMatrix& m) {
  if (m.size() == 0) return 0.0;
  if (m.rows() <= 128 && m.cols() <= 128) {
    return Eigen::JacobiSVD<ComplexMatrix>(m).singularValues()(0);
  }
  return Eigen::BDCSVD<ComplexMatrix>(m).singularValues()(0);
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

namespace {

// Shared CGS2 kernel.  Orthogonalizes `vectors` against each other,
// optionally accumulating the projection coefficients into R (may be
// null).  Returns the orthonormal family and reports, per input vector,
// either its index in the output or -1 when dropped.  The drop decision
// uses the first-pass residual norm; the second pass only polishes the
// direction (classic "twice is enough").
std::vector<ComplexVector> cgs2(const std::vector<ComplexVector>& vectors,
                                double drop_tol, ComplexMatrix* r,
                                std::vector<int>* out_index) {
  std::vector<ComplexVector> q;
  q.reserve(vectors.size());
  for (std::size_t m = 0; m < vectors.size(); ++m) {
    const ComplexVector& v = vectors[m];
    ComplexVector res = v;
    ComplexVector coeff = ComplexVector::Zero(vectors.size());
    for (std::size_t j = 0; j < q.size(); ++j) {
      Complex c = q[j].dot(res);
      coeff(j) += c;
      res -= c * q[j];
    }
    const double first_pass_norm = res.norm();
    if (first_pass_norm <= drop_tol) {
      if (out_index) out_index->push_back(-1);
      continue;
    }
    for (std::size_t j = 0; j < q.size(); ++j) {
      Complex c = q[j].dot(res);
      coeff(j) += c;
      res -= c * q[j];
    }
    const double norm = res.norm();
    if (r) {
      for (std::size_t j = 0; j < q.size(); ++j) (*r)(j, m) = coeff(j);
      (*r)(q.size(), m) = norm;
    }
    if (out_index) out_index->push_back(static_cast<int>(q.size()));
    q.push_back(res / norm);
  }
  return q;
}

void check_vector_family(const std::vector<ComplexVector>& vectors) {
  if (vectors.empty())
    throw std::invalid_argument("gram_schmidt: empty vector family");
  const Eigen::Index dim = vectors.front().size();
  if (dim == 0) throw std::invalid_argument("gram_schmidt: zero-dimensional");
  for (const auto& v : vectors) {
    if (v.size() != dim)
      throw std::invalid_argument("gram_schmidt: mismatched dimensions");
    if (v.norm() == 0.0)
      throw std::invalid_argument("gram_schmidt: zero vector in input");
  }
}

}  // namespace

std::vector<ComplexVector> classical_gram_schmidt(
    const std::vector<ComplexVector>& vectors, double drop_tol) {
  check_vector_family(vectors);
  if (drop_tol < 0.0)
    throw std::invalid_argument("gram_schmidt: negative drop tolerance");
  return cgs2(vectors, drop_tol, nullptr, nullptr);
}

QrFactors classical_qr(const ComplexMatrix& a) {
  const Eigen::Index n = a.rows(), m = a.cols();
  if (n < m || m == 0)
    throw std::invalid_argument("classical_qr: need rows >= cols >= 1");
  const double a_norm = spectral_norm(a);
  const double rank_tol = 1e-12 * a_norm;

  QrFactors f;
  f.q = ComplexMatrix(n, m);
  f.r = ComplexMatrix::Zero(m, m);
  for (Eigen::Index k = 0; k < m; ++k) {
    ComplexVector res = a.col(k);
    // Two projection passes; R accumulates the coefficients of both so
    // that A = Q R holds to rounding even for ill-conditioned input.
    for (int pass = 0; pass < 2; ++pass) {
      for (Eigen::Index j = 0; j < k; ++j) {
        Complex c = f.q.col(j).dot(res);
        f.r(j, k) += c;
        res -= c * f.q.col(j);
      }
    }
    const double norm = res.norm();
    if (norm <= rank_tol)
      throw RankDeficiencyError("classical_qr: rank-deficient column " +
                                std::to_string(k));
    f.r(k, k) = norm;
    f.q.col(k) = res / norm;
  }
  return f;
}

ComplexMatrix random_matrix_with_condition(int n, int m, double cond,
                                           std::uint64_t seed) {
  if (n < m || m < 1)
    throw std::invalid_argument(
        "random_matrix_with_condition: need rows >= cols >= 1");
  if (cond < 1.0)
    throw std::invalid_argument(
        "random_matrix_with_condition: condition number must be >= 1");

  auto gaussian_matrix = [](int rows, int cols, std::mt19937_64& rng) {
    ComplexMatrix g(rows, cols);
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < cols; ++j)
        g(i, j) = Complex(gaussian(rng), gaussian(rng));
    return g;
  };

  std::mt19937_64 rng = rng_stream(seed, stream_tag::matrix, 0);
  // Orthonormal factors from QR of Gaussian matrices (Haar up to the
  // positive-diagonal phase convention that classical_qr enforces, which
  // is exactly what makes the construction deterministic).
  ComplexMatrix u = classical_qr(gaussian_matrix(n, m, rng)).q;
  ComplexMatrix v = classical_qr(gaussian_matrix(m, m, rng)).q;

  RealVector sigma(m);
  for (int j = 0; j < m; ++j) {
    sigma(j) = (m == 1) ? 1.0
                        : std::pow(cond, -static_cast<double>(j) /
                                             static_cast<double>(m - 1));
  }
  return u * sigma.asDiagonal() * v.adjoint();
}

double loss_of_orthogonality(const ComplexMatrix& q) {
  const Eigen::Index m = q.cols();
  ComplexMatrix gram = q.adjoint() * q;
  return spectral_norm(gram - ComplexMatrix::Identity(m, m));
}

EigenSystem exact_eigensolve(const ComplexMatrix& h) {
  if (!is_hermitian(h))
    throw std::invalid_argument("exact_eigensolve: matrix is not Hermitian");
  // Symmetrize to kill rounding asymmetry before handing to the solver.
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(
      ComplexMatrix(0.5 * (h + h.adjoint())));
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("exact_eigensolve: eigensolver failed");
  return EigenSystem{solver.eigenvalues(), solver.eigenvectors()};
}

ComplexVector back_substitution(const ComplexMatrix& r,
                                const ComplexVector& y) {
  const Eigen::Index m = r.rows();
  if (r.cols() != m)
    throw std::invalid_argument("back_substitution: R must be square");
  if (y.size() != m)
    throw std::invalid_argument("back_substitution: dimension mismatch");
  const double singular_tol = 1e-14 * spectral_norm(r);
  ComplexVector x(m);
  for (Eigen::Index i = m - 1; i >= 0; --i) {
    if (std::abs(r(i, i)) <= singular_tol)
      throw std::invalid_argument("back_substitution: singular diagonal at " +
                                  std::to_string(i));
    Complex s = y(i);
    for (Eigen::Index j = i + 1; j < m; ++j) s -= r(i, j) * x(j);
    x(i) = s / r(i, i);
  }
  return x;
}

ComplexMatrix matrix_exponential(const ComplexMatrix& h, double t) {
  if (!is_hermitian(h))
    throw std::invalid_argument("matrix_exponential: matrix is not Hermitian");
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(
      ComplexMatrix(0.5 * (h + h.adjoint())));
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("matrix_exponential: eigensolver failed");
  const RealVector& lam = solver.eigenvalues();
  ComplexVector phases(lam.size());
  for (Eigen::Index i = 0; i < lam.size(); ++i)
    phases(i) = std::exp(Complex(0.0, -lam(i) * t));
  return solver.eigenvectors() * phases.asDiagonal() *
         solver.eigenvectors().adjoint();
}

}  // namespace quortho
