#pragma once

// Dense statevector simulator for the one-flag-qubit circuits used by the
// orthogonalization routines.  A register state is flag (x) data with the
// data register padded to a power of two; amplitude index f * N + n holds
// the coefficient of |f>|n>.

#include <cstdint>
#include <random>

#include "quortho/linalg.hpp"

namespace quortho {

struct StateVector {
  int source_dim = 0;        // dimension of the encoded input, pre padding
  int data_dim = 0;          // padded register dimension (power of two)
  ComplexVector amplitudes;  // length 2 * data_dim, index f * data_dim + n
};

// Encode a nonzero vector as |0>|v / ||v||>, zero-padding the data
// register up to the next power of two.  Throws std::invalid_argument on
// an empty or zero vector.
StateVector amplitude_encode(const ComplexVector& v);

// Hadamard on the flag qubit.
StateVector apply_flag_hadamard(const StateVector& s);

// Flag-controlled unitary: |0>|n> -> |0>|n>, |1>|n> -> |1> U|n>.
// U must be data_dim x data_dim and unitary to 1e-10 (spot-checked with a
// deterministic probe vector, not a full N^3 verification).
StateVector apply_controlled_unitary(const StateVector& s,
                                     const ComplexMatrix& u);

double flag_zero_probability(const StateVector& s);

struct MeasurementOutcome {
  int bit = 0;              // observed flag value
  double probability = 0.0; // probability of that value
  ComplexVector collapsed;  // data register after collapse, renormalized
};

// Projective flag measurement, sampled from the Born rule.
MeasurementOutcome measure_flag(const StateVector& s, std::mt19937_64& rng);

// Analytic post-selection on a chosen flag value.  Throws
// BranchUnavailableError when that branch has probability < 1e-14.
MeasurementOutcome measure_flag_branch(const StateVector& s, int bit);

// Final readout of a (collapsed) data register: truncate the padding back
// to source_dim, renormalize, and fix the global phase so that the first
// component with |.| > 1e-12 is real and positive.
ComplexVector readout(const ComplexVector& data, int source_dim);

// The assembled 2N x 2N circuit matrix (H (x) I)(C-U)(H (x) I).
ComplexMatrix circuit_unitary(const ComplexMatrix& u);

// Convenience: run the flag-Hadamard / controlled-U / flag-Hadamard
// sandwich on an encoded state.
StateVector run_projector_circuit(const StateVector& encoded,
                                  const ComplexMatrix& u);

}  // namespace quortho
