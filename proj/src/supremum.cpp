#include "grand/supremum.hpp"

#include <algorithm>
#include <cmath>

namespace grand {
namespace {

constexpr int kMaxGoldenIterations = 200;

std::size_t best_index(const std::vector<Sample>& samples) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < samples.size(); ++i) {
    if (samples[i].value > samples[best].value) best = i;
  }
  return best;
}

class SampleSet {
 public:
  SampleSet(const EpsilonGrid& grid, const std::function<double(double)>& objective)
      : lo_(grid.min_eps()), hi_(grid.upper()), objective_(objective) {}

  std::vector<Sample>& samples() { return samples_; }

  double eval(double eps) {
    eps = std::clamp(eps, lo_, hi_);
    const auto it = std::lower_bound(samples_.begin(), samples_.end(), eps,
                                     [](const Sample& s, double e) { return s.eps < e; });
    if (it != samples_.end() && it->eps == eps) return it->value;
    const double v = objective_(eps);
    samples_.insert(it, Sample{eps, v});
    return v;
  }

 private:
  double lo_;
  double hi_;
  const std::function<double(double)>& objective_;
  std::vector<Sample> samples_;
};

}  // namespace

Supremum maximize_over_grid(const EpsilonGrid& grid,
                            const std::function<double(double)>& objective,
                            std::optional<double> zero_limit) {
  SampleSet set(grid, objective);
  auto& samples = set.samples();
  samples.reserve(grid.values().size() + 2 * grid.refinement_rounds() + 64);
  for (double eps : grid.values()) samples.push_back(Sample{eps, objective(eps)});

  for (int round = 0; round < grid.refinement_rounds(); ++round) {
    const std::size_t b = best_index(samples);
    const double center = samples[b].eps;
    const double left = b > 0 ? samples[b - 1].eps : center;
    const double right = b + 1 < samples.size() ? samples[b + 1].eps : center;
    if (left < center) set.eval(std::sqrt(left * center));
    if (right > center) set.eval(std::sqrt(center * right));
  }

  if (samples.size() >= 2) {
    const std::size_t b = best_index(samples);
    double a = std::log(samples[b > 0 ? b - 1 : b].eps);
    double d = std::log(samples[b + 1 < samples.size() ? b + 1 : b].eps);
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    const double tol = grid.relative_tolerance();
    double x1 = d - inv_phi * (d - a);
    double x2 = a + inv_phi * (d - a);
    double f1 = set.eval(std::exp(x1));
    double f2 = set.eval(std::exp(x2));
    for (int it = 0; it < kMaxGoldenIterations && (d - a) > tol; ++it) {
      if (f1 >= f2) {
        d = x2;
        x2 = x1;
        f2 = f1;
        x1 = d - inv_phi * (d - a);
        f1 = set.eval(std::exp(x1));
      } else {
        a = x1;
        x1 = x2;
        f1 = f2;
        x2 = a + inv_phi * (d - a);
        f2 = set.eval(std::exp(x2));
      }
    }
  }

  Supremum result;
  const std::size_t b = best_index(samples);
  result.argmax = samples[b].eps;
  result.value = samples[b].value;
  if (grid.include_zero_limit() && zero_limit) {
    result.zero_limit = zero_limit;
    if (*zero_limit > result.value) {
      result.argmax = 0.0;
      result.value = *zero_limit;
    }
  }
  result.samples = std::move(samples);
  return result;
}

}  // namespace grand
