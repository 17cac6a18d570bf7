#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <random>

namespace seqlab {

/// Mixes a run seed with stream tags so that independent tasks (a sweep
/// member, a truncation level, a restart) draw from unrelated streams.
std::uint64_t derive_seed(std::uint64_t seed, std::initializer_list<std::uint64_t> tags);

/// Deterministic random source. Variates are produced from raw 64-bit draws
/// directly, so streams are identical across standard library vendors.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  /// Uniform on [0, 1).
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  /// Standard normal (Box-Muller).
  double normal();
  /// Uniform on {0, ..., n - 1}.
  std::size_t index(std::size_t n) { return static_cast<std::size_t>(uniform() * static_cast<double>(n)); }
  double sign() { return (engine_() >> 63) != 0 ? 1.0 : -1.0; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace seqlab
