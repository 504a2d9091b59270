#pragma once

// Deterministic random-number utilities.
//
// Every stochastic component in the library draws from an explicit
// std::mt19937_64 stream whose seed is derived from (master seed, tag,
// index) via a splitmix64 mix.  This makes all sampled runs reproducible
// bit-for-bit and keeps logically distinct consumers (per-step measurement
// noise, per-entry shot noise, per-trial matrix draws, ...) statistically
// independent of each other.

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

namespace quortho {

// splitmix64 finalizer (Steele, Lea, Flood).  Good avalanche, cheap.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

// Derive a stream seed from a master seed plus a (tag, index) pair.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t tag,
                                 std::uint64_t index) {
  std::uint64_t x = splitmix64(seed);
  x = splitmix64(x ^ (tag * 0xd6e8feb86659fd93ull));
  x = splitmix64(x ^ (index * 0xa0761d6478bd642full));
  return x;
}

inline std::mt19937_64 rng_stream(std::uint64_t seed, std::uint64_t tag,
                                  std::uint64_t index) {
  return std::mt19937_64(derive_seed(seed, tag, index));
}

// Stream tags.  One tag per independent noise source.
namespace stream_tag {
inline constexpr std::uint64_t gs_step = 0x01;       // per-column measurement
inline constexpr std::uint64_t errant_unitary = 0x02;// evolution error draw
inline constexpr std::uint64_t ipe_real = 0x03;      // real-part shot noise
inline constexpr std::uint64_t ipe_imag = 0x04;      // imag-part shot noise
inline constexpr std::uint64_t qr_entry = 0x05;      // per-entry IPE seed
inline constexpr std::uint64_t projection = 0x06;    // Q^dag b estimation
inline constexpr std::uint64_t matrix = 0x07;        // random test matrices
inline constexpr std::uint64_t trial = 0x08;         // experiment trials
inline constexpr std::uint64_t membership = 0x09;    // span-membership shots
}  // namespace stream_tag

// Uniform double in [0, 1) with 53 random bits.  We avoid
// std::uniform_real_distribution / std::normal_distribution because their
// output sequences are implementation-defined; these helpers make the whole
// pipeline reproducible across standard libraries.
inline double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Standard normal via Box-Muller (one value per call; the sine partner is
// discarded to keep the draw count predictable).
inline double gaussian(std::mt19937_64& rng) {
  double u1 = uniform01(rng);
  double u2 = uniform01(rng);
  // Guard against log(0).
  if (u1 <= 0.0) u1 = 0x1.0p-53;
  return std::sqrt(-2.0 * std::log(u1)) *
         std::cos(2.0 * std::numbers::pi * u2);
}

}  // namespace quortho
