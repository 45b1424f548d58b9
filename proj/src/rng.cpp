#include "star/rng.hpp"

#include <cmath>

#include "star/errors.hpp"

namespace star {

namespace {

std::uint64_t split_mix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream, std::uint64_t index) {
  std::uint64_t state = master;
  std::uint64_t a = split_mix64(state);
  state ^= stream * 0xd1342543de82ef95ull;
  std::uint64_t b = split_mix64(state);
  state ^= index * 0xaf251af3b0f025b5ull;
  std::uint64_t c = split_mix64(state);
  return a ^ (b + 0x9e3779b97f4a7c15ull) ^ (c << 1);
}

std::int64_t Rng::uniform_int(std::int64_t lo, std::int64_t hi) {
  require(lo <= hi, "uniform_int bounds inverted");
  std::uint64_t range = static_cast<std::uint64_t>(hi - lo) + 1;
  if (range == 0) return static_cast<std::int64_t>(next_u64());  // full 64-bit range
  std::uint64_t limit = UINT64_MAX - UINT64_MAX % range;
  std::uint64_t draw;
  do {
    draw = next_u64();
  } while (draw >= limit);
  return lo + static_cast<std::int64_t>(draw % range);
}

double Rng::normal(double mean, double variance) {
  require(variance >= 0, "negative variance");
  double u1 = next_unit();
  double u2 = next_unit();
  double z = std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
  return mean + std::sqrt(variance) * z;
}

}  // namespace star
