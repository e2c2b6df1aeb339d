#pragma once

#include <cstdint>

namespace qlab {

// Deterministic splitmix64 stream. Every randomized experiment in this
// project derives its stream from (seed, stream index) so that trial k of a
// run is reproducible bit-for-bit regardless of execution order or thread
// count. std::uniform_real_distribution is implementation-defined, so all
// conversions to doubles live here.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  // Independent stream for (seed, stream), e.g. one per Monte-Carlo trial.
  static Rng derive(std::uint64_t seed, std::uint64_t stream);

  std::uint64_t next_u64();

  // Uniform in [0, 1) with 53 random bits.
  double next_double();

  // Standard normal via Box-Muller (no caching, two uniforms per call).
  double next_normal();

 private:
  std::uint64_t state_;
};

}  // namespace qlab
