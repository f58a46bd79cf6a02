#pragma once

#include <cstdint>

namespace dsfo {

/// Counter-derived xoshiro256++ stream. Streams obtained from derive_stream
/// for distinct (master, agent, round, purpose) keys are reproducible and
/// statistically independent, with no state carried between rounds.
///
/// normal() uses the Box-Muller transform (explicit, so the draw sequence does
/// not depend on the standard library's distribution implementations).
class RngStream {
 public:
  using result_type = std::uint64_t;

  explicit RngStream(std::uint64_t seed);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return ~static_cast<result_type>(0); }

  result_type operator()() { return next(); }
  std::uint64_t next();

  /// Uniform in [0, 1), 53-bit resolution.
  double uniform01();
  /// Uniform in [lo, hi).
  double uniform(double lo, double hi);
  /// Standard normal draw; pairs are generated together and the spare cached.
  double normal();
  /// Fair coin.
  bool coin() { return (next() >> 63) != 0; }

 private:
  std::uint64_t state_[4];
  double spare_ = 0.0;
  bool has_spare_ = false;
};

enum class StreamPurpose : std::uint64_t {
  Dither = 1,
  Noise = 2,
  SubgradientNoise = 3,
  Probe = 4,
};

/// SplitMix64 finalizer; also used for config fingerprint mixing.
std::uint64_t mix64(std::uint64_t z);

/// Keyed stream derivation: same inputs give an identical stream, distinct
/// inputs give statistically independent ones.
RngStream derive_stream(std::uint64_t master_seed, std::uint64_t agent, std::uint64_t round,
                        StreamPurpose purpose);

}  // namespace dsfo
