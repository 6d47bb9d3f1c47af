#include "dipstr/rng.hpp"

#include <cmath>
#include <numbers>

namespace dipstr {

namespace {

constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ull;

std::uint64_t mix(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

}  // namespace

CounterRng::CounterRng(std::uint64_t seed, std::uint64_t stream)
    : state_(mix(seed + kGolden) ^
             mix(stream * 0xda942042e4dd58b5ull + kGolden)) {}

std::uint64_t CounterRng::next_u64() {
  state_ += kGolden;
  return mix(state_);
}

double CounterRng::next_unit() {
  return double(next_u64() >> 11) * 0x1.0p-53;
}

double CounterRng::next_unit_pos() {
  const double u = next_unit();
  return u > 0.0 ? u : 0x1.0p-53;
}

double CounterRng::next_normal() {
  // Box-Muller, one fresh pair per call so the stream carries no cache
  const double u1 = next_unit_pos();
  const double u2 = next_unit();
  return std::sqrt(-2.0 * std::log(u1)) *
         std::cos(2.0 * std::numbers::pi * u2);
}

double CounterRng::next_gamma(double shape) {
  if (shape < 1.0) {
    const double u = next_unit_pos();
    return next_gamma(shape + 1.0) * std::pow(u, 1.0 / shape);
  }
  // Marsaglia-Tsang squeeze
  const double d = shape - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    double x, v;
    do {
      x = next_normal();
      v = 1.0 + c * x;
    } while (v <= 0.0);
    v = v * v * v;
    const double u = next_unit_pos();
    if (u < 1.0 - 0.0331 * x * x * x * x) return d * v;
    if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v;
  }
}

}  // namespace dipstr
