#include "brwre/rng.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "brwre/numeric.hpp"

namespace brwre {

double RngStream::next_normal() {
  const double u1 = 1.0 - next_unit();  // (0, 1], keeps the log finite
  const double u2 = next_unit();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * kPi * u2);
}

std::int64_t RngStream::next_binomial(std::int64_t n, double p, std::int64_t exact_threshold) {
  if (n < 0) throw std::invalid_argument("next_binomial: negative trial count");
  if (n == 0 || p <= 0.0) return 0;
  if (p >= 1.0) return n;
  if (n <= exact_threshold) {
    std::int64_t hits = 0;
    for (std::int64_t i = 0; i < n; ++i) hits += next_unit() < p ? 1 : 0;
    return hits;
  }
  const double mean = double(n) * p;
  const double sd = std::sqrt(double(n) * p * (1.0 - p));
  const double draw = mean + sd * next_normal();
  return std::clamp<std::int64_t>(std::llround(draw), 0, n);
}

}  // namespace brwre
