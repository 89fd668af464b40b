#pragma once

#include <cstdint>
#include <limits>
#include <random>
#include <stdexcept>

namespace evoqc {

// One SplitMix64 step. Used to derive independent stream seeds, e.g. the
// per-run seeds of a multi-run experiment.
constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Deterministic random source. mt19937_64 output is fully specified by the
// standard, and all derived draws below avoid std::*_distribution (whose
// algorithms are implementation-defined), so sequences are identical across
// platforms and standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  // Uniform in [0, 1) with 53-bit resolution.
  double next_double() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  // Uniform integer in [0, n). Rejection sampling, bias-free.
  int next_below(int n) {
    if (n <= 0) throw std::domain_error("Rng::next_below: n must be positive");
    const std::uint64_t un = static_cast<std::uint64_t>(n);
    const std::uint64_t threshold = (0 - un) % un;  // 2^64 mod n
    std::uint64_t v = engine_();
    while (v < threshold) v = engine_();
    return static_cast<int>(v % un);
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace evoqc
