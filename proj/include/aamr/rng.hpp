#pragma once

#include <cstdint>
#include <initializer_list>

namespace aamr {

/// SplitMix64 finaliser (Steele, Lea, Flood 2014).
constexpr std::uint64_t splitmix64_mix(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Counter-based generator: output k of the stream with key K is
/// splitmix64_mix(K + (k + 1) * 0x9e3779b97f4a7c15), i.e. SplitMix64 started
/// at state K. Keys are derived by hashing a seed together with a list of
/// stream identifiers, so every (seed, ids...) names an independent stream and
/// draws never depend on the order in which streams are consumed.
///
/// Doubles are formed from the top 53 bits, which keeps every draw identical
/// across platforms and standard libraries.
class CounterRng {
 public:
  CounterRng(std::uint64_t seed, std::initializer_list<std::uint64_t> stream_ids) noexcept : key_(seed) {
    for (std::uint64_t id : stream_ids) key_ = splitmix64_mix(key_ ^ splitmix64_mix(id + 0x632be59bd9b4e019ULL));
  }

  std::uint64_t next_u64() noexcept {
    ++counter_;
    return splitmix64_mix(key_ + counter_ * 0x9e3779b97f4a7c15ULL);
  }

  /// Uniform on [0, 1).
  double next_unit() noexcept { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  /// Uniform on [lo, hi).
  double uniform(double lo, double hi) noexcept { return lo + (hi - lo) * next_unit(); }

  std::uint64_t key() const noexcept { return key_; }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace aamr
