#include "quortho/qsim.hpp"

#include <bit>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "quortho/errors.hpp"
#include "quortho/rng.hpp"

namespace quortho {

namespace {

constexpr double norm_tol = 1e-12;
constexpr double unitary_tol = 1e-10;
constexpr double branch_tol = 1e-14;
constexpr double phase_tol = 1e-12;

void check_state(const StateVector& s) {
  if (s.data_dim <= 0 || s.amplitudes.size() != 2 * s.data_dim)
    throw std::invalid_argument("state vector: inconsistent layout");
  if (std::abs(s.amplitudes.squaredNorm() - 1.0) > norm_tol)
    throw std::invalid_argument("state vector: not normalized");
}

// Spot-check unitarity with one deterministic probe: ||U x|| = ||x|| and
// U^dag U x = x for a fixed pseudo-random x.  O(N^2), catches scaling and
// projector-like inputs without paying for the full Gram matrix.
void check_unitary(const ComplexMatrix& u) {
  const Eigen::Index n = u.rows();
  if (u.cols() != n || n == 0)
    throw std::invalid_argument("controlled unitary: matrix must be square");
  ComplexVector x(n);
  std::uint64_t h = 0x9e3779b97f4a7c15ull;
  for (Eigen::Index i = 0; i < n; ++i) {
    h = splitmix64(h);
    const double re = static_cast<double>(h >> 11) * 0x1.0p-53 - 0.5;
    h = splitmix64(h);
    const double im = static_cast<double>(h >> 11) * 0x1.0p-53 - 0.5;
    x(i) = Complex(re, im);
  }
  x /= x.norm();
  ComplexVector ux = u * x;
  if (std::abs(ux.norm() - 1.0) > unitary_tol ||
      (u.adjoint() * ux - x).norm() > unitary_tol)
    throw std::invalid_argument("controlled unitary: matrix is not unitary");
}

}  // namespace

StateVector amplitude_encode(const ComplexVector& v) {
  if (v.size() == 0)
    throw std::invalid_argument("amplitude_encode: empty vector");
  const double norm = v.norm();
  if (norm == 0.0)
    throw std::invalid_argument("amplitude_encode: zero vector");
  StateVector s;
  s.source_dim = static_cast<int>(v.size());
  s.data_dim = static_cast<int>(
      std::bit_ceil(static_cast<unsigned>(s.source_dim)));
  s.amplitudes = ComplexVector::Zero(2 * s.data_dim);
  s.amplitudes.head(s.source_dim) = v / norm;
  return s;
}

StateVector apply_flag_hadamard(const StateVector& s) {
  check_state(s);
  const double inv_sqrt2 = 1.0 / std::numbers::sqrt2;
  StateVector out = s;
  const int n = s.data_dim;
  for (int i = 0; i < n; ++i) {
    const Complex a0 = s.amplitudes(i);
    const Complex a1 = s.amplitudes(n + i);
    out.amplitudes(i) = inv_sqrt2 * (a0 + a1);
    out.amplitudes(n + i) = inv_sqrt2 * (a0 - a1);
  }
  return out;
}

StateVector apply_controlled_unitary(const StateVector& s,
                                     const ComplexMatrix& u) {
  check_state(s);
  if (u.rows() != s.data_dim)
    throw std::invalid_argument(
        "controlled unitary: dimension does not match data register");
  check_unitary(u);
  StateVector out = s;
  out.amplitudes.tail(s.data_dim) = u * s.amplitudes.tail(s.data_dim);
  return out;
}

double flag_zero_probability(const StateVector& s) {
  check_state(s);
  return s.amplitudes.head(s.data_dim).squaredNorm();
}

namespace {

MeasurementOutcome collapse(const StateVector& s, int bit, double p) {
  MeasurementOutcome out;
  out.bit = bit;
  out.probability = p;
  const auto branch = (bit == 0) ? s.amplitudes.head(s.data_dim)
                                 : s.amplitudes.tail(s.data_dim);
  out.collapsed = branch / std::sqrt(p);
  return out;
}

}  // namespace

MeasurementOutcome measure_flag(const StateVector& s, std::mt19937_64& rng) {
  const double p0 = flag_zero_probability(s);
  const int bit = (uniform01(rng) < p0) ? 0 : 1;
  return collapse(s, bit, bit == 0 ? p0 : 1.0 - p0);
}

MeasurementOutcome measure_flag_branch(const StateVector& s, int bit) {
  if (bit != 0 && bit != 1)
    throw std::invalid_argument("measure_flag_branch: bit must be 0 or 1");
  const double p0 = flag_zero_probability(s);
  const double p = (bit == 0) ? p0 : 1.0 - p0;
  if (p < branch_tol)
    throw BranchUnavailableError(
        "measure_flag_branch: requested branch has vanishing probability");
  return collapse(s, bit, p);
}

ComplexVector readout(const ComplexVector& data, int source_dim) {
  if (source_dim < 1 || source_dim > data.size())
    throw std::invalid_argument("readout: bad source dimension");
  ComplexVector v = data.head(source_dim);
  const double norm = v.norm();
  if (norm < branch_tol)
    throw std::invalid_argument("readout: state lives in the padding");
  v /= norm;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const double mag = std::abs(v(i));
    if (mag > phase_tol) {
      v *= std::conj(v(i)) / mag;
      break;
    }
  }
  return v;
}

ComplexMatrix circuit_unitary(const ComplexMatrix& u) {
  check_unitary(u);
  const Eigen::Index n = u.rows();
  const ComplexMatrix id = ComplexMatrix::Identity(n, n);
  ComplexMatrix c(2 * n, 2 * n);
  // (H (x) I)(C-U)(H (x) I) = [[I+U, I-U], [I-U, I+U]] / 2.
  c.topLeftCorner(n, n) = 0.5 * (id + u);
  c.topRightCorner(n, n) = 0.5 * (id - u);
  c.bottomLeftCorner(n, n) = 0.5 * (id - u);
  c.bottomRightCorner(n, n) = 0.5 * (id + u);
  return c;
}

StateVector run_projector_circuit(const StateVector& encoded,
                                  const ComplexMatrix& u) {
  StateVector s = apply_flag_hadamard(encoded);
  s = apply_controlled_unitary(s, u);
  return apply_flag_hadamard(s);
}

}  // namespace quortho
