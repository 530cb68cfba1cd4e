#pragma once

#include <cstdint>

namespace muxdesigner {

// Identifies one reproducible random stream. Equal (seed, stream_id)
// pairs always produce identical sequences.
struct RngSeed {
  std::uint64_t seed = 0;
  std::uint64_t stream_id = 0;
};

namespace detail {

inline constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ull;

// Finalizer with full avalanche; one application per output word.
inline std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

}  // namespace detail

// Counter based generator: output i is a strong 64 bit mix of
// (seed, stream_id, counter). Jumping to an arbitrary counter is O(1),
// so disjoint counter ranges give independent, order free substreams
// and results never depend on how work is split across threads.
class CounterRng {
 public:
  explicit CounterRng(RngSeed seed, std::uint64_t counter = 0)
      : key_(detail::mix64(seed.seed + detail::kGolden) ^
             detail::mix64(seed.stream_id * detail::kGolden + 1u)),
        counter_(counter) {}

  void set_counter(std::uint64_t counter) { counter_ = counter; }

  std::uint64_t next_u64() {
    return detail::mix64(key_ + (counter_++) * detail::kGolden);
  }

  // Uniform in [0, 1) with 53 random bits.
  double next_unit() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  // Uniform integer in [0, n), n >= 1. Fixed width multiply map; the
  // bias is below n / 2^64 and irrelevant at simulation scale.
  std::uint64_t next_below(std::uint64_t n) {
    using u128 = unsigned __int128;
    return static_cast<std::uint64_t>(
        (static_cast<u128>(next_u64()) * static_cast<u128>(n)) >> 64);
  }

 private:
  std::uint64_t key_;
  std::uint64_t counter_;
};

}  // namespace muxdesigner
