#pragma once

// Hadamard-test inner-product estimation.  Two interference circuits (one
// plain, one with an S^dag phase on the flag) expose Re<x|y> and Im<x|y>
// through flag-0 probabilities; a Hoeffding-sized shot budget turns those
// into an eps-accurate, (1-delta)-confident estimate.

#include <complex>
#include <cstdint>

#include "quortho/linalg.hpp"
#include "quortho/qgs.hpp"

namespace quortho {

struct IpeConfig {
  double eps = 0.05;    // additive accuracy target per real/imag part
  double delta = 0.1;   // failure probability budget
  RunMode mode = RunMode::Sampled;
  std::uint64_t seed = 0;

  void validate() const;
};

// Hoeffding shot count N_r = ceil((16 / eps^2) * log2(4 / delta)) per
// estimated part.
long long sample_count(double eps, double delta);

// Flag-0 probability of the real-part circuit, (1 + Re<x|y>) / 2, from a
// full statevector simulation.  x and y must be unit vectors (1e-12) of
// equal dimension.
double real_part_circuit(const ComplexVector& x, const ComplexVector& y);

// Flag-0 probability of the imaginary-part circuit (S^dag on the flag
// before the mixing Hadamard), (1 + Im<x|y>) / 2.
double imag_part_circuit(const ComplexVector& x, const ComplexVector& y);

struct IpeEstimate {
  Complex value;           // estimated <x|y>
  long long shots_used = 0;// total measurement shots (0 in analytic mode)
};

// Estimate <x|y>.  Sampled mode draws sample_count(eps, delta) Bernoulli
// shots per part (independent streams for Re and Im) and applies the
// unbiased estimator 2 * mean - 1; analytic mode returns the exact
// circuit probabilities mapped through the same estimator.  Each shot
// consumes two state-preparation oracle calls, so a sampled estimate
// costs 2 * shots_used oracle queries.
IpeEstimate estimate_inner_product(const ComplexVector& x,
                                   const ComplexVector& y,
                                   const IpeConfig& cfg);

}  // namespace quortho
