#pragma once

#include <cstdint>

namespace msl {

// SplitMix64 finalizer. All randomness in the library goes through this so
// that results are reproducible bit-for-bit across platforms and standard
// library implementations.
inline std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

// Stateless counter hash: the word at (stream, counter) never depends on how
// many words were drawn before it, so parallel consumers see the same stream.
inline std::uint64_t counter_word(std::uint64_t seed, std::uint64_t stream,
                                  std::uint64_t counter) {
  std::uint64_t h = mix64(seed + 0x9E3779B97F4A7C15ull);
  h = mix64(h ^ (stream + 0xBF58476D1CE4E5B9ull));
  h = mix64(h ^ (counter + 0x94D049BB133111EBull));
  return h;
}

// Sequential SplitMix64 stream for data generation.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    state_ += 0x9E3779B97F4A7C15ull;
    return mix64(state_);
  }

  // Uniform double in [0, 1).
  double next_double() {
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
  }

 private:
  std::uint64_t state_;
};

}  // namespace msl
