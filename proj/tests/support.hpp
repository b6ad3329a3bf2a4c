#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "eulerkit/polyroots.hpp"

namespace eulerkit::testing {

/// Seeded generator so property tests are reproducible run to run.
class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}
  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

inline double rel_err(double got, double want) {
  return std::abs(got - want) / std::max(std::abs(want), 1e-300);
}

// Random real polynomial with known clusters: real roots and conjugate pairs
// inside the disk of radius 3, multiplicities up to 3, degree up to `max_deg`.
inline std::vector<polyroots::RootCluster> random_clusters(Gen& g, int max_deg) {
  std::vector<polyroots::RootCluster> out;
  int deg = 0;
  const int target = g.integer(1, max_deg);
  while (deg < target) {
    const int room = target - deg;
    const bool pair = room >= 2 && g.uniform(0, 1) < 0.5;
    const int mult = std::min(g.integer(1, 3), pair ? room / 2 : room);
    if (pair) {
      const double r = g.uniform(0.3, 3.0), th = g.uniform(0.2, M_PI - 0.2);
      const polyroots::Complex v = std::polar(r, th);
      out.push_back({v, mult});
      out.push_back({std::conj(v), mult});
      deg += 2 * mult;
    } else {
      out.push_back({polyroots::Complex(g.uniform(-3, 3), 0.0), mult});
      deg += mult;
    }
  }
  return out;
}

inline std::vector<double> real_coeffs(const std::vector<polyroots::Complex>& c) {
  std::vector<double> r;
  for (const auto& v : c) r.push_back(v.real());
  return r;
}

}  // namespace eulerkit::testing
