#pragma once

// Seeded generators for property tests.

#include <cstdint>
#include <random>
#include <vector>

#include "grand/convolution.hpp"
#include "grand/discrete.hpp"

namespace testing_support {

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
  std::size_t index(std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng_);
  }
  bool coin() { return index(0, 1) == 1; }

  std::vector<double> values(std::size_t n, double lo = -1.0, double hi = 1.0) {
    std::vector<double> v(n);
    for (double& x : v) x = uniform(lo, hi);
    return v;
  }

  /// Positive weights; a few atoms much heavier than the rest.
  std::vector<double> weights(std::size_t n) {
    std::vector<double> w(n);
    for (double& x : w) x = coin() ? uniform(0.05, 1.0) : uniform(1.0, 20.0);
    return w;
  }

  /// Sparse or spiky values so profiles have interior maxima.
  std::vector<double> spiky(std::size_t n) {
    std::vector<double> v(n, 0.0);
    for (double& x : v) {
      const std::size_t pick = index(0, 3);
      if (pick == 0) x = uniform(-50.0, 50.0);
      else if (pick == 1) x = uniform(-1.0, 1.0);
    }
    v[index(0, n - 1)] = uniform(1.0, 10.0);
    return v;
  }

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

inline grand::SpacePtr weighted_space(const std::vector<double>& w,
                                      grand::Topology t = grand::Topology::interval) {
  std::vector<std::int64_t> ids(w.size());
  for (std::size_t i = 0; i < ids.size(); ++i) ids[i] = static_cast<std::int64_t>(i);
  return grand::share(grand::MeasureSpace(ids, w, t));
}

inline grand::SpacePtr probability_space(std::size_t n,
                                         grand::Topology t = grand::Topology::cyclic) {
  return grand::share(grand::MeasureSpace::probability(n, t));
}

inline std::vector<double> as_vec(const grand::SampledFunction& f) {
  return {f.values().begin(), f.values().end()};
}

inline std::vector<double> weights_of(const grand::MeasureSpace& s) {
  return {s.weights().begin(), s.weights().end()};
}

}  // namespace testing_support
