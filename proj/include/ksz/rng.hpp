#pragma once

#include <cstdint>
#include <initializer_list>

namespace ksz {

/// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z += 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

/// Folds a list of words into one key. Order matters.
std::uint64_t derive_key(std::initializer_list<std::uint64_t> words);

/// Counter-based generator: the i-th output is a pure function of (key, i),
/// so any draw can be reproduced without replaying its predecessors.
/// Satisfies UniformRandomBitGenerator.
class CounterRng {
 public:
  using result_type = std::uint64_t;

  CounterRng(std::uint64_t seed, std::uint64_t stream) : key_(derive_key({seed, stream})) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return ~result_type{0}; }

  result_type operator()() { return at(counter_++); }

  /// Output at an absolute counter position; does not advance.
  result_type at(std::uint64_t counter) const {
    return mix64(key_ ^ mix64(counter * 0xD1B54A32D192ED03ULL + 0x8CB92BA72F3D8DD7ULL));
  }

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform() { return to_unit(operator()()); }
  /// Uniform double in (0, 1].
  double uniform_open_low() { return 1.0 - uniform(); }
  /// Standard normal via Box-Muller (consumes two outputs).
  double normal();

  void seek(std::uint64_t counter) { counter_ = counter; }
  std::uint64_t position() const { return counter_; }
  std::uint64_t key() const { return key_; }

  static double to_unit(std::uint64_t bits) { return static_cast<double>(bits >> 11) * 0x1.0p-53; }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace ksz
