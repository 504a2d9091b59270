#include "quortho/apps.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <set>
#include <stdexcept>

#include "quortho/errors.hpp"
#include "quortho/qsim.hpp"
#include "quortho/rng.hpp"

namespace quortho {

void FitProblem::validate() const {
  if (degree < 0)
    throw std::invalid_argument("fit problem: degree must be >= 0");
  if (points.size() < static_cast<std::size_t>(degree) + 1)
    throw std::invalid_argument("fit problem: need at least degree+1 points");
  std::set<double> xs;
  for (const auto& [x, y] : points) xs.insert(x);
  if (xs.size() != points.size())
    throw std::invalid_argument("fit problem: duplicate x values");
}

ComplexMatrix fit_design_matrix(const FitProblem& p) {
  p.validate();
  const Eigen::Index rows = static_cast<Eigen::Index>(p.points.size());
  const Eigen::Index cols = p.degree + 1;
  ComplexMatrix x(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    double power = 1.0;
    for (Eigen::Index j = 0; j < cols; ++j) {
      x(i, j) = power;
      power *= p.points[i].first;
    }
  }
  return x;
}

std::vector<double> polyfit_qr(const FitProblem& p, const RunConfig& cfg,
                               const IpeConfig& ipe) {
  ComplexMatrix x = fit_design_matrix(p);
  QrResult qr = quantum_qr(x, cfg, ipe);

  ComplexVector y(x.rows());
  for (Eigen::Index i = 0; i < y.size(); ++i) y(i) = p.points[i].second;
  const double y_norm = y.norm();
  if (y_norm == 0.0) return std::vector<double>(p.degree + 1, 0.0);

  // Q^dag y, entry-wise through the inner-product pipeline.
  const ComplexVector unit_y = y / y_norm;
  ComplexVector qty(qr.q.cols());
  IpeConfig entry_cfg = ipe;
  for (Eigen::Index j = 0; j < qty.size(); ++j) {
    entry_cfg.seed = derive_seed(ipe.seed, stream_tag::projection,
                                 static_cast<std::uint64_t>(j));
    qty(j) = y_norm *
             estimate_inner_product(qr.q.col(j), unit_y, entry_cfg).value;
  }

  ComplexVector coeffs = back_substitution(qr.r, qty);
  std::vector<double> out(coeffs.size());
  for (Eigen::Index j = 0; j < coeffs.size(); ++j) out[j] = coeffs(j).real();
  return out;
}

double polynomial_value(const std::vector<double>& coeffs, double x) {
  double acc = 0.0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it)
    acc = acc * x + *it;
  return acc;
}

MembershipResult membership_test(const std::vector<ComplexVector>& basis,
                                 const ComplexVector& b,
                                 const RunConfig& cfg) {
  cfg.validate();
  if (b.size() == 0 || b.norm() == 0.0)
    throw std::invalid_argument("membership_test: zero vector");
  if (basis.empty())
    return MembershipResult{false, 1.0};

  StateVector encoded = amplitude_encode(b);
  ProjectorHamiltonian h(encoded.data_dim, 10.0 * cfg.eps);
  for (const auto& u : basis) {
    if (u.size() != b.size())
      throw std::invalid_argument("membership_test: dimension mismatch");
    ComplexVector padded = ComplexVector::Zero(encoded.data_dim);
    padded.head(u.size()) = u;
    h.add(padded);
  }

  StateVector after = run_projector_circuit(encoded, evolve_exact(h, cfg.t));
  MembershipResult result;
  result.p_residual = flag_zero_probability(after);

  if (cfg.mode == RunMode::Analytic) {
    result.in_span = result.p_residual < cfg.dep_threshold;
    return result;
  }
  std::mt19937_64 rng = rng_stream(cfg.seed, stream_tag::membership, 0);
  const int w = repetition_bound(cfg.eps);
  result.in_span = true;
  for (int run = 0; run < w; ++run) {
    if (uniform01(rng) < result.p_residual) {
      result.in_span = false;  // flag 0 observed: b leaves the span
      break;
    }
  }
  return result;
}

SystemClassification classify_linear_system(const ComplexMatrix& a,
                                            const ComplexVector& b,
                                            const RunConfig& cfg,
                                            const IpeConfig& ipe) {
  if (a.rows() != b.size() || a.cols() == 0)
    throw std::invalid_argument("classify_linear_system: shape mismatch");

  std::vector<ComplexVector> columns;
  columns.reserve(a.cols());
  for (Eigen::Index j = 0; j < a.cols(); ++j) columns.push_back(a.col(j));
  GramSchmidtResult gs = quantum_gram_schmidt(columns, cfg);

  SystemClassification result;
  result.rank = static_cast<int>(gs.basis.size());

  MembershipResult mem = membership_test(gs.basis, b, cfg);
  result.membership_probability = mem.p_residual;
  if (!mem.in_span) {
    result.kind = SystemKind::NoSolution;
    return result;
  }
  if (!gs.dependent_indices.empty()) {
    result.kind = SystemKind::Infinite;
    return result;
  }

  // Full column rank and b in the span: recover the unique solution from
  // the quantum QR factors.
  QrResult qr = quantum_qr(a, cfg, ipe);
  const double b_norm = b.norm();
  const ComplexVector unit_b = b / b_norm;
  ComplexVector qtb(qr.q.cols());
  IpeConfig entry_cfg = ipe;
  for (Eigen::Index j = 0; j < qtb.size(); ++j) {
    entry_cfg.seed = derive_seed(ipe.seed, stream_tag::projection,
                                 static_cast<std::uint64_t>(j));
    qtb(j) = b_norm *
             estimate_inner_product(qr.q.col(j), unit_b, entry_cfg).value;
  }
  result.x = back_substitution(qr.r, qtb);
  result.residual = (a * result.x - b).norm();
  if (result.residual > 10.0 * cfg.eps * b_norm)
    throw std::runtime_error(
        "classify_linear_system: recovered solution violates the residual "
        "contract; re-run with tighter estimation settings");
  result.kind = SystemKind::Unique;
  return result;
}

double exact_potential(ChargeCase c, double x, double y) {
  struct Charge {
    double q, cx, cy;
  };
  static const Charge monopole[] = {{1.0, 2.0, 0.0}};
  static const Charge dipole[] = {{1.0, 2.0, 0.0}, {-1.0, -2.0, 0.0}};
  static const Charge quadrupole[] = {{1.0, 2.0, 0.0},
                                      {1.0, 0.0, 2.0},
                                      {-1.0, -2.0, 0.0},
                                      {-1.0, 0.0, -2.0}};
  const Charge* charges = monopole;
  int count = 1;
  if (c == ChargeCase::Dipole) {
    charges = dipole;
    count = 2;
  } else if (c == ChargeCase::Quadrupole) {
    charges = quadrupole;
    count = 4;
  }
  double phi = 0.0;
  for (int i = 0; i < count; ++i) {
    const double dx = x - charges[i].cx, dy = y - charges[i].cy;
    const double r = std::sqrt(dx * dx + dy * dy);
    if (r < 1e-12)
      throw std::invalid_argument("exact_potential: evaluation at a charge");
    phi += charges[i].q / r;
  }
  return phi;
}

double grid_coordinate(int grid_size, int index) {
  return -1.0 + 2.0 * index / (grid_size - 1);
}

RealMatrix solve_dirichlet(
    int grid_size, const std::function<double(double, double)>& boundary,
    const RunConfig& cfg, const IpeConfig& ipe) {
  const int g = grid_size;
  if (g < 3) throw std::invalid_argument("solve_dirichlet: grid too small");
  const int n = g - 2;  // interior nodes per axis
  const int unknowns = n * n;
  auto idx = [n](int i, int j) { return (i - 1) * n + (j - 1); };

  RealMatrix grid = RealMatrix::Zero(g, g);
  for (int i = 0; i < g; ++i)
    for (int j = 0; j < g; ++j)
      if (i == 0 || j == 0 || i == g - 1 || j == g - 1)
        grid(i, j) = boundary(grid_coordinate(g, i), grid_coordinate(g, j));

  // 5-point stencil: 4 u(i,j) - u(i+-1,j) - u(i,j+-1) = boundary terms.
  ComplexMatrix a = ComplexMatrix::Zero(unknowns, unknowns);
  ComplexVector b = ComplexVector::Zero(unknowns);
  for (int i = 1; i <= n; ++i) {
    for (int j = 1; j <= n; ++j) {
      const int row = idx(i, j);
      a(row, row) = 4.0;
      const int di[] = {1, -1, 0, 0};
      const int dj[] = {0, 0, 1, -1};
      for (int d = 0; d < 4; ++d) {
        const int ni = i + di[d], nj = j + dj[d];
        if (ni >= 1 && ni <= n && nj >= 1 && nj <= n)
          a(row, idx(ni, nj)) = -1.0;
        else
          b(row) += grid(ni, nj);
      }
    }
  }

  SystemClassification cls = classify_linear_system(a, b, cfg, ipe);
  if (cls.kind != SystemKind::Unique)
    throw std::runtime_error(
        "solve_dirichlet: discrete Laplacian did not classify as uniquely "
        "solvable");
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j) grid(i, j) = cls.x(idx(i, j)).real();
  return grid;
}

PotentialGrid laplace_dirichlet_solve(ChargeCase c, int grid_size,
                                      const RunConfig& cfg,
                                      const IpeConfig& ipe) {
  if (grid_size < 5)
    throw std::invalid_argument("laplace_dirichlet_solve: need G >= 5");
  PotentialGrid grid;
  grid.grid_size = grid_size;
  grid.charge_case = c;
  grid.values = solve_dirichlet(
      grid_size,
      [c](double x, double y) { return exact_potential(c, x, y); }, cfg, ipe);
  return grid;
}

double laplace_relative_error(const PotentialGrid& grid) {
  const int g = grid.grid_size;
  double err2 = 0.0, ref2 = 0.0;
  for (int i = 1; i < g - 1; ++i) {
    for (int j = 1; j < g - 1; ++j) {
      const double exact = exact_potential(
          grid.charge_case, grid_coordinate(g, i), grid_coordinate(g, j));
      const double diff = grid.values(i, j) - exact;
      err2 += diff * diff;
      ref2 += exact * exact;
    }
  }
  return std::sqrt(err2 / ref2);
}

FieldGrid electric_field(const PotentialGrid& grid) {
  const int g = grid.grid_size;
  if (g < 3) throw std::invalid_argument("electric_field: grid too small");
  const double h = 2.0 / (g - 1);
  FieldGrid field;
  field.ex = RealMatrix::Zero(g - 2, g - 2);
  field.ey = RealMatrix::Zero(g - 2, g - 2);
  for (int i = 1; i < g - 1; ++i) {
    for (int j = 1; j < g - 1; ++j) {
      field.ex(i - 1, j - 1) =
          -(grid.values(i + 1, j) - grid.values(i - 1, j)) / (2.0 * h);
      field.ey(i - 1, j - 1) =
          -(grid.values(i, j + 1) - grid.values(i, j - 1)) / (2.0 * h);
    }
  }
  return field;
}

namespace {

ComplexMatrix pauli(char which) {
  ComplexMatrix m(2, 2);
  switch (which) {
    case 'x':
      m << 0, 1, 1, 0;
      break;
    case 'y':
      m << Complex(0, 0), Complex(0, -1), Complex(0, 1), Complex(0, 0);
      break;
    case 'z':
      m << 1, 0, 0, -1;
      break;
    default:
      m.setIdentity();
  }
  return m;
}

// Operator acting as `op` on `site` (and optionally `op2` on site+1),
// identity elsewhere, over an n-site chain.
ComplexMatrix chain_term(int n_sites, int site, const ComplexMatrix& op,
                         const ComplexMatrix* op2 = nullptr) {
  ComplexMatrix acc = ComplexMatrix::Identity(1, 1);
  for (int s = 0; s < n_sites; ++s) {
    if (s == site)
      acc = kron(acc, op);
    else if (op2 && s == site + 1)
      acc = kron(acc, *op2);
    else
      acc = kron(acc, ComplexMatrix::Identity(2, 2));
  }
  return acc;
}

void check_sites(int n_sites) {
  if (n_sites < 1 || n_sites > 10)
    throw std::invalid_argument("spin chain: n_sites must be in [1, 10]");
}

}  // namespace

ComplexMatrix ising_hamiltonian(int n_sites, double h, double j) {
  check_sites(n_sites);
  const int dim = 1 << n_sites;
  const ComplexMatrix sx = pauli('x'), sz = pauli('z');
  ComplexMatrix ham = ComplexMatrix::Zero(dim, dim);
  for (int s = 0; s < n_sites; ++s) ham -= h * chain_term(n_sites, s, sx);
  for (int s = 0; s + 1 < n_sites; ++s)
    ham -= j * chain_term(n_sites, s, sz, &sz);
  return ham;
}

ComplexMatrix heisenberg_hamiltonian(int n_sites, double j) {
  check_sites(n_sites);
  const int dim = 1 << n_sites;
  ComplexMatrix ham = ComplexMatrix::Zero(dim, dim);
  for (char axis : {'x', 'y', 'z'}) {
    const ComplexMatrix op = pauli(axis);
    for (int s = 0; s + 1 < n_sites; ++s)
      ham -= j * chain_term(n_sites, s, op, &op);
  }
  return ham;
}

std::vector<double> qr_iteration_eigenvalues(const ComplexMatrix& a,
                                             int max_iter, double tol,
                                             QrBackend backend,
                                             const RunConfig& cfg,
                                             const IpeConfig& ipe) {
  const Eigen::Index n = a.rows();
  if (a.cols() != n || n == 0)
    throw std::invalid_argument("qr_iteration: matrix must be square");
  if (!is_hermitian(a))
    throw std::invalid_argument("qr_iteration: matrix must be Hermitian");
  if (max_iter < 1 || !(tol > 0.0))
    throw std::invalid_argument("qr_iteration: bad iteration parameters");

  auto max_subdiagonal = [](const ComplexMatrix& m) {
    double worst = 0.0;
    for (Eigen::Index i = 0; i + 1 < m.rows(); ++i)
      worst = std::max(worst, std::abs(m(i + 1, i)));
    return worst;
  };

  ComplexMatrix iterate = a;
  for (int it = 0; it < max_iter && max_subdiagonal(iterate) >= tol; ++it) {
    if (backend == QrBackend::Classical) {
      QrFactors f = classical_qr(iterate);
      iterate = f.r * f.q;
    } else {
      QrResult f = quantum_qr(iterate, cfg, ipe);
      iterate = f.r * f.q;
    }
  }

  // Extract eigenvalues from the quasi-triangular result: converged 1x1
  // blocks directly, unresolved 2x2 blocks (equal-magnitude pairs)
  // analytically.
  std::vector<double> eigenvalues;
  eigenvalues.reserve(n);
  Eigen::Index i = 0;
  while (i < n) {
    const bool last = (i + 1 == n);
    if (last || std::abs(iterate(i + 1, i)) < tol) {
      eigenvalues.push_back(iterate(i, i).real());
      ++i;
      continue;
    }
    const bool closed_below =
        (i + 2 == n) || std::abs(iterate(i + 2, i + 1)) < tol;
    if (!closed_below)
      throw ConvergenceError(
          "qr_iteration: coupled block of size >= 3 after max_iter "
          "iterations; increase max_iter or loosen tol");
    const double p = iterate(i, i).real();
    const double q = iterate(i + 1, i + 1).real();
    const double off = std::abs(iterate(i, i + 1));
    const double mid = 0.5 * (p + q);
    const double rad = std::sqrt(0.25 * (p - q) * (p - q) + off * off);
    eigenvalues.push_back(mid - rad);
    eigenvalues.push_back(mid + rad);
    i += 2;
  }
  std::sort(eigenvalues.begin(), eigenvalues.end());
  return eigenvalues;
}

}  // namespace quortho
