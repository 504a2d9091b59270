#include "quortho/qipe.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "quortho/qsim.hpp"
#include "quortho/rng.hpp"

namespace quortho {

namespace {

constexpr double unit_norm_tol = 1e-12;

void check_pair(const ComplexVector& x, const ComplexVector& y) {
  if (x.size() == 0 || x.size() != y.size())
    throw std::invalid_argument("inner product: dimension mismatch");
  if (std::abs(x.norm() - 1.0) > unit_norm_tol ||
      std::abs(y.norm() - 1.0) > unit_norm_tol)
    throw std::invalid_argument("inner product: inputs must be unit vectors");
}

// Build (|0>|x> + |1> phase|y>) / sqrt(2), apply the mixing Hadamard, and
// return the flag-0 probability.  phase = 1 gives the real-part circuit;
// phase = -i (an S^dag on the flag) gives the imaginary-part circuit.
double interference_probability(const ComplexVector& x, const ComplexVector& y,
                                Complex phase) {
  check_pair(x, y);
  StateVector s = amplitude_encode(x);  // sizes + padding bookkeeping
  const int n = s.data_dim;
  const double inv_sqrt2 = 1.0 / std::numbers::sqrt2;
  s.amplitudes.setZero();
  s.amplitudes.head(x.size()) = inv_sqrt2 * x;
  s.amplitudes.segment(n, y.size()) = (inv_sqrt2 * phase) * y;
  s = apply_flag_hadamard(s);
  return flag_zero_probability(s);
}

}  // namespace

void IpeConfig::validate() const {
  if (!(eps > 0.0 && eps < 1.0))
    throw std::invalid_argument("ipe config: eps must be in (0, 1)");
  if (!(delta > 0.0 && delta < 1.0))
    throw std::invalid_argument("ipe config: delta must be in (0, 1)");
}

long long sample_count(double eps, double delta) {
  if (!(eps > 0.0 && eps < 1.0) || !(delta > 0.0 && delta < 1.0))
    throw std::invalid_argument("sample_count: eps, delta must be in (0, 1)");
  return static_cast<long long>(
      std::ceil(16.0 / (eps * eps) * std::log2(4.0 / delta)));
}

double real_part_circuit(const ComplexVector& x, const ComplexVector& y) {
  return interference_probability(x, y, Complex(1.0, 0.0));
}

double imag_part_circuit(const ComplexVector& x, const ComplexVector& y) {
  return interference_probability(x, y, Complex(0.0, -1.0));
}

IpeEstimate estimate_inner_product(const ComplexVector& x,
                                   const ComplexVector& y,
                                   const IpeConfig& cfg) {
  cfg.validate();
  const double p_re = real_part_circuit(x, y);
  const double p_im = imag_part_circuit(x, y);

  IpeEstimate est;
  if (cfg.mode == RunMode::Analytic) {
    est.value = Complex(2.0 * p_re - 1.0, 2.0 * p_im - 1.0);
    est.shots_used = 0;
    return est;
  }

  const long long n = sample_count(cfg.eps, cfg.delta);
  auto sampled_part = [n](double p, std::mt19937_64 rng) {
    long long zeros = 0;
    for (long long i = 0; i < n; ++i)
      if (uniform01(rng) < p) ++zeros;
    return 2.0 * static_cast<double>(zeros) / static_cast<double>(n) - 1.0;
  };
  est.value =
      Complex(sampled_part(p_re, rng_stream(cfg.seed, stream_tag::ipe_real, 0)),
              sampled_part(p_im, rng_stream(cfg.seed, stream_tag::ipe_imag, 0)));
  est.shots_used = 2 * n;
  return est;
}

}  // namespace quortho
