#pragma once

#include <cstdint>
#include <random>

namespace star {

// Derives independent per-task seeds from a master seed so parallel batches
// reproduce regardless of scheduling.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream, std::uint64_t index = 0);

// Deterministic sampling helpers over mt19937_64. Distributions are
// hand-rolled so draw sequences do not depend on the standard library's
// distribution implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  // Uniform in (0, 1].
  double next_unit() {
    return (static_cast<double>(engine_() >> 11) + 1.0) * 0x1p-53;
  }

  bool bernoulli(double p) { return next_unit() <= p; }

  // Inclusive bounds, unbiased via rejection.
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi);

  // Box-Muller; exact mean when variance is zero.
  double normal(double mean, double variance);

 private:
  std::mt19937_64 engine_;
};

}  // namespace star
