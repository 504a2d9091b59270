#pragma once

// Application drivers built on the quantum QR pipeline: polynomial least
// squares, linear-system classification, a Dirichlet Laplace solver, and
// QR-iteration eigensolving with Ising / Heisenberg model builders.

#include <functional>
#include <utility>
#include <vector>

#include "quortho/linalg.hpp"
#include "quortho/qipe.hpp"
#include "quortho/qqr.hpp"

namespace quortho {

struct FitProblem {
  std::vector<std::pair<double, double>> points;  // (x_i, y_i)
  int degree = 0;                                 // polynomial degree k

  // At least degree + 1 points, distinct x values, degree >= 0.
  void validate() const;
};

// Vandermonde design matrix, increasing powers: row i = (1, x_i, x_i^2,
// ..., x_i^k).
ComplexMatrix fit_design_matrix(const FitProblem& p);

// Least-squares polynomial coefficients (constant term first) via
// quantum QR: factor the design matrix, estimate Q^dag y entry-wise with
// the Hadamard-test pipeline, and back-substitute.
std::vector<double> polyfit_qr(const FitProblem& p, const RunConfig& cfg,
                               const IpeConfig& ipe);

// Polynomial evaluation, coefficients in increasing-power order.
double polynomial_value(const std::vector<double>& coeffs, double x);

struct MembershipResult {
  bool in_span = false;
  double p_residual = 0.0;  // 1 - sum |<u_n|b>|^2, exact
};

// Span-membership test: run the phase-estimation circuit for the
// projector onto span(basis) with |b> as input.  Sampled mode accepts
// membership iff none of repetition_bound(eps) runs yields flag 0;
// analytic mode compares the exact residual probability against
// cfg.dep_threshold.  The basis must be orthonormal (within 10 * eps).
MembershipResult membership_test(const std::vector<ComplexVector>& basis,
                                 const ComplexVector& b,
                                 const RunConfig& cfg);

enum class SystemKind { NoSolution, Unique, Infinite };

struct SystemClassification {
  SystemKind kind = SystemKind::NoSolution;
  ComplexVector x;                    // populated for Unique only
  double membership_probability = 0.0;// residual probability of b
  int rank = 0;                       // independent columns found
  double residual = 0.0;              // ||Ax - b|| for Unique
};

// Classify A x = b as NoSolution / Unique / Infinite: orthonormalize A's
// columns with quantum Gram-Schmidt, test b for membership in the column
// span, then solve through quantum QR when the columns are independent.
// Never returns Unique with residual > 10 * eps * ||b||.
SystemClassification classify_linear_system(const ComplexMatrix& a,
                                            const ComplexVector& b,
                                            const RunConfig& cfg,
                                            const IpeConfig& ipe);

enum class ChargeCase { Monopole, Dipole, Quadrupole };

// Closed-form reference potential on [-1,1]^2 (unit charges outside the
// domain, k = q = 1): monopole +1 at (2,0); dipole +1 at (2,0), -1 at
// (-2,0); quadrupole +1 at (2,0) and (0,2), -1 at (-2,0) and (0,-2).
// Throws std::invalid_argument when (x, y) hits a charge location.
double exact_potential(ChargeCase c, double x, double y);

struct PotentialGrid {
  int grid_size = 0;          // points per axis on [-1,1]^2
  ChargeCase charge_case = ChargeCase::Monopole;
  RealMatrix values;          // G x G, values(i, j) at (x_i, y_j)
};

// Grid coordinate x_i = -1 + 2 i / (G - 1).
double grid_coordinate(int grid_size, int index);

// Solve the 5-point-stencil discrete Laplace equation on a G x G grid
// with Dirichlet data from `boundary`, routing the interior linear system
// through classify_linear_system's Unique path.  Returns the full grid
// including boundary nodes.
RealMatrix solve_dirichlet(int grid_size,
                           const std::function<double(double, double)>& boundary,
                           const RunConfig& cfg, const IpeConfig& ipe);

// Dirichlet Laplace solve with boundary data from exact_potential.
// Requires G >= 5.
PotentialGrid laplace_dirichlet_solve(ChargeCase c, int grid_size,
                                      const RunConfig& cfg,
                                      const IpeConfig& ipe);

// Relative L2 error of the grid against exact_potential on the interior
// nodes.
double laplace_relative_error(const PotentialGrid& grid);

struct FieldGrid {
  RealMatrix ex;  // (G-2) x (G-2), interior nodes
  RealMatrix ey;
};

// E = -grad(phi) by central differences on the interior nodes.
FieldGrid electric_field(const PotentialGrid& grid);

// Transverse-field Ising chain, open boundary:
//   H = -h sum_i X_i - J sum_i Z_i Z_{i+1},  1 <= n_sites <= 10.
ComplexMatrix ising_hamiltonian(int n_sites, double h, double j);

// Heisenberg chain, open boundary:
//   H = -J sum_i (X_i X_{i+1} + Y_i Y_{i+1} + Z_i Z_{i+1}).
ComplexMatrix heisenberg_hamiltonian(int n_sites, double j);

enum class QrBackend { Classical, Quantum };

// Plain (unshifted) QR iteration A <- R Q until all sub-diagonal entries
// fall below tol or max_iter is reached, then eigenvalue extraction from
// the 1x1 / 2x2 diagonal blocks of the final quasi-triangular iterate.
// The 2x2 extraction handles equal-magnitude eigenvalue pairs (symmetric
// +/- spectra) that the plain iteration provably cannot separate.  A must
// be Hermitian and full rank.  Throws ConvergenceError when the final
// iterate has a coupled block of size >= 3.
std::vector<double> qr_iteration_eigenvalues(const ComplexMatrix& a,
                                             int max_iter, double tol,
                                             QrBackend backend,
                                             const RunConfig& cfg,
                                             const IpeConfig& ipe);

}  // namespace quortho
