#pragma once

#include <array>
#include <cstdint>

namespace scatter {

/// SplitMix64 finalizer; used to derive independent stream keys.
std::uint64_t mix64(std::uint64_t x) noexcept;

/// xoshiro256** generator whose state is a pure function of (seed, stream).
/// Stream i of a run never depends on how many other streams were drawn or on
/// which thread draws it.
class CounterStream {
 public:
  CounterStream(std::uint64_t seed, std::uint64_t stream) noexcept;

  std::uint64_t next_u64() noexcept;
  /// Uniform on (0, 1), never exactly 0 or 1.
  double uniform() noexcept;
  /// Standard normal via Box-Muller; pairs are cached.
  double normal() noexcept;

 private:
  std::array<std::uint64_t, 4> s_{};
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace scatter
