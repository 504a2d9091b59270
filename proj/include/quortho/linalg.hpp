#pragma once

// Classical dense linear algebra used throughout the toolkit: Gram-Schmidt
// with reorthogonalization, Householder-free QR, conditioned random test
// matrices, and Hermitian matrix functions.  Eigen supplies the dense
// kernels (SVD, self-adjoint eigensolver); everything layered on top is
// deterministic for fixed inputs and seeds.

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <vector>

namespace quortho {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

// True if ||M - M^dag||_max <= tol (elementwise, absolute).
bool is_hermitian(const ComplexMatrix& m, double tol = 1e-12);

// Largest singular value.  Exact SVD, accurate to ~1e-10 relative.
double spectral_norm(const ComplexMatrix& m);

// Kronecker product, row-major qubit ordering: (A (x) B)(i*p+k, j*q+l)
// = A(i,j) * B(k,l) for B of size p x q.
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

// Classical Gram-Schmidt with one reorthogonalization pass (CGS2).
// Input vectors whose first-pass residual 2-norm is <= drop_tol are
// treated as linearly dependent on their predecessors and dropped; the
// returned family is orthonormal.
// Throws std::invalid_argument on empty input, mismatched dimensions,
// or a zero vector.
std::vector<ComplexVector> classical_gram_schmidt(
    const std::vector<ComplexVector>& vectors, double drop_tol = 0.0);

struct QrFactors {
  ComplexMatrix q;  // n x m, orthonormal columns
  ComplexMatrix r;  // m x m, upper triangular, real positive diagonal
};

// Thin QR of an n x m matrix (n >= m) via doubly-reorthogonalized
// Gram-Schmidt.  Throws RankDeficiencyError when a diagonal entry of R
// falls below 1e-12 * ||A||_2, std::invalid_argument for n < m.
QrFactors classical_qr(const ComplexMatrix& a);

// Random n x m complex matrix (n >= m) with prescribed 2-norm condition
// number: A = U diag(sigma) V^dag with Haar-like U, V factors and
// logarithmically spaced singular values sigma_j = cond^(-j/(m-1)).
// Deterministic: equal (n, m, cond, seed) give bit-identical matrices.
// Throws std::invalid_argument for cond < 1 or n < m.
ComplexMatrix random_matrix_with_condition(int n, int m, double cond,
                                           std::uint64_t seed);

// eta(Q) = ||Q^dag Q - I||_2, the spectral-norm departure from
// orthonormality of the columns of Q.
double loss_of_orthogonality(const ComplexMatrix& q);

struct EigenSystem {
  RealVector eigenvalues;     // ascending
  ComplexMatrix eigenvectors; // columns, orthonormal
};

// Full eigendecomposition of a Hermitian matrix (tolerance 1e-12 on
// Hermiticity; throws std::invalid_argument otherwise).
EigenSystem exact_eigensolve(const ComplexMatrix& h);

// Solve R x = y for upper-triangular R.  Entries below the diagonal are
// ignored.  Throws std::invalid_argument when any |R(i,i)| <=
// 1e-14 * ||R||_2 or on dimension mismatch.
ComplexVector back_substitution(const ComplexMatrix& r,
                                const ComplexVector& y);

// exp(-i H t) for Hermitian H, via eigendecomposition.  Unitary to
// machine precision.  Throws std::invalid_argument for non-Hermitian H.
ComplexMatrix matrix_exponential(const ComplexMatrix& h, double t);

}  // namespace quortho
