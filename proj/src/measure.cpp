#include "grand/measure.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <unordered_set>

#include "grand/kernels.hpp"

namespace grand {

MeasureSpace::MeasureSpace(std::vector<std::int64_t> ids, std::vector<double> weights,
                           Topology topology, std::string label,
                           std::vector<std::size_t> cyclic_factors)
    : ids_(std::move(ids)),
      weights_(std::move(weights)),
      topology_(topology),
      label_(std::move(label)),
      factors_(std::move(cyclic_factors)) {
  if (ids_.empty()) throw DomainError("measure space needs at least one point");
  if (ids_.size() != weights_.size()) {
    throw DomainError("measure space: ids and weights differ in length");
  }
  std::unordered_set<std::int64_t> seen;
  for (std::size_t i = 0; i < ids_.size(); ++i) {
    if (!seen.insert(ids_[i]).second) {
      throw DomainError("measure space: duplicate point id " + std::to_string(ids_[i]));
    }
    if (!(weights_[i] > 0.0) || !std::isfinite(weights_[i])) {
      throw DomainError("measure space: weight of point " + std::to_string(ids_[i]) +
                        " must be positive and finite");
    }
  }
  if (factors_.empty()) factors_.push_back(ids_.size());
  const std::size_t order = std::accumulate(factors_.begin(), factors_.end(), std::size_t{1},
                                            std::multiplies<>{});
  if (order != ids_.size() || std::find(factors_.begin(), factors_.end(), 0) != factors_.end()) {
    throw DomainError("measure space: cyclic factors do not multiply to the point count");
  }
  total_mass_ = std::accumulate(weights_.begin(), weights_.end(), 0.0);
  if (!std::isfinite(total_mass_)) throw DomainError("measure space: total mass is not finite");
}

MeasureSpace MeasureSpace::uniform(std::size_t n, double weight, Topology topology,
                                   std::string label) {
  std::vector<std::int64_t> ids(n);
  std::iota(ids.begin(), ids.end(), std::int64_t{0});
  return MeasureSpace(std::move(ids), std::vector<double>(n, weight), topology, std::move(label));
}

MeasureSpace MeasureSpace::probability(std::size_t n, Topology topology) {
  if (n == 0) throw DomainError("measure space needs at least one point");
  return uniform(n, 1.0 / static_cast<double>(n), topology, "probability");
}

MeasureSpace MeasureSpace::counting(std::size_t n, Topology topology) {
  return uniform(n, 1.0, topology, "counting");
}

bool MeasureSpace::is_counting() const {
  return std::all_of(weights_.begin(), weights_.end(), [](double w) { return w == 1.0; });
}

bool MeasureSpace::is_probability(double tol) const {
  return std::fabs(total_mass_ - 1.0) <= tol;
}

std::optional<std::size_t> MeasureSpace::position_of(std::int64_t id) const {
  const auto it = std::find(ids_.begin(), ids_.end(), id);
  if (it == ids_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - ids_.begin());
}

std::optional<std::size_t> MeasureSpace::translate(std::size_t position,
                                                   std::size_t shift) const {
  const std::size_t n = size();
  if (topology_ == Topology::interval) {
    if (position >= n || shift >= n - position) return std::nullopt;
    return position + shift;
  }
  // Mixed-radix addition, last factor fastest.
  std::size_t result = 0;
  std::size_t stride = 1;
  std::size_t a = position % n;
  std::size_t b = shift % n;
  for (std::size_t k = factors_.size(); k-- > 0;) {
    const std::size_t m = factors_[k];
    const std::size_t digit = (a % m + b % m) % m;
    result += digit * stride;
    stride *= m;
    a /= m;
    b /= m;
  }
  return result;
}

std::size_t MeasureSpace::subtract(std::size_t a, std::size_t b) const {
  const std::size_t n = size();
  std::size_t result = 0;
  std::size_t stride = 1;
  a %= n;
  b %= n;
  for (std::size_t k = factors_.size(); k-- > 0;) {
    const std::size_t m = factors_[k];
    const std::size_t digit = (a % m + m - b % m) % m;
    result += digit * stride;
    stride *= m;
    a /= m;
    b /= m;
  }
  return result;
}

SampledFunction::SampledFunction(SpacePtr space, std::vector<double> values)
    : space_(std::move(space)), values_(std::move(values)) {
  if (!space_) throw DomainError("sampled function without a measure space");
  if (values_.size() != space_->size()) {
    throw DomainError("sampled function: " + std::to_string(values_.size()) +
                      " values for " + std::to_string(space_->size()) + " points");
  }
  for (double v : values_) {
    if (!std::isfinite(v)) throw DomainError("sampled function: non-finite value");
  }
}

SampledFunction SampledFunction::constant(SpacePtr space, double c) {
  const std::size_t n = space ? space->size() : 0;
  return SampledFunction(std::move(space), std::vector<double>(n, c));
}

bool SampledFunction::same_space(const SampledFunction& other) const {
  return space_ == other.space_ || *space_ == *other.space_;
}

namespace {

void require_same_space(const SampledFunction& a, const SampledFunction& b) {
  if (!a.same_space(b)) throw DomainError("functions live on different measure spaces");
}

}  // namespace

SampledFunction operator+(const SampledFunction& a, const SampledFunction& b) {
  require_same_space(a, b);
  std::vector<double> v(a.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = a[i] + b[i];
  return SampledFunction(a.space_ptr(), std::move(v));
}

SampledFunction operator*(const SampledFunction& a, const SampledFunction& b) {
  require_same_space(a, b);
  std::vector<double> v(a.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = a[i] * b[i];
  return SampledFunction(a.space_ptr(), std::move(v));
}

SampledFunction operator*(double c, const SampledFunction& f) {
  std::vector<double> v(f.values().begin(), f.values().end());
  for (double& x : v) x *= c;
  return SampledFunction(f.space_ptr(), std::move(v));
}

GrandExponent::GrandExponent(double p, double theta) : p_(p), theta_(theta) {
  if (!(p > 1.0) || !std::isfinite(p)) throw DomainError("grand exponent: need 1 < p < inf");
  if (!(theta >= 0.0) || !std::isfinite(theta)) throw DomainError("grand exponent: need theta >= 0");
}

EpsilonGrid::EpsilonGrid(std::vector<double> eps_values, bool include_zero_limit,
                         int refinement_rounds, double relative_tolerance)
    : eps_values_(std::move(eps_values)),
      include_zero_limit_(include_zero_limit),
      refinement_rounds_(refinement_rounds),
      relative_tolerance_(relative_tolerance) {
  if (eps_values_.empty()) throw DomainError("epsilon grid is empty");
  if (!(eps_values_.front() > 0.0)) throw DomainError("epsilon grid: values must be > 0");
  for (std::size_t i = 1; i < eps_values_.size(); ++i) {
    if (!(eps_values_[i] > eps_values_[i - 1])) {
      throw DomainError("epsilon grid: values must be strictly increasing");
    }
  }
  if (refinement_rounds_ < 0) throw DomainError("epsilon grid: negative refinement rounds");
  if (!(relative_tolerance_ > 0.0)) throw DomainError("epsilon grid: tolerance must be > 0");
}

EpsilonGrid EpsilonGrid::standard(const GrandExponent& exp) {
  return make_epsilon_grid(exp, 64, 1e-6 * exp.max_eps(), 4, 1e-9, true);
}

EpsilonGrid make_epsilon_grid(const GrandExponent& exp, int points, double min_eps,
                              int refinement_rounds, double tol, bool include_zero_limit) {
  const double upper = exp.max_eps();
  if (points < 2) throw DomainError("epsilon grid: need at least 2 points");
  if (!(min_eps > 0.0) || !(min_eps < upper)) {
    throw DomainError("epsilon grid: need 0 < min_eps < p - 1");
  }
  std::vector<double> eps(static_cast<std::size_t>(points));
  const double span = upper / min_eps;
  for (int k = 0; k < points; ++k) {
    eps[k] = min_eps * std::pow(span, static_cast<double>(k) / (points - 1));
  }
  eps.front() = min_eps;
  eps.back() = upper;
  // Rounding can collapse neighbours when the span is tiny.
  eps.erase(std::unique(eps.begin(), eps.end()), eps.end());
  return EpsilonGrid(std::move(eps), include_zero_limit, refinement_rounds, tol);
}

double lp_norm(const SampledFunction& f, double r) {
  if (!(r >= 1.0)) throw DomainError("lp_norm: exponent must be >= 1");
  if (r == kInfinity) return kernels::max_abs(f.values());
  return detail::PowerNorm(f.space().weights(), f.values()).norm(r);
}

double grand_factor(double eps, const GrandExponent& exp) {
  if (!(eps > 0.0) || eps > exp.max_eps()) {
    throw DomainError("grand_factor: eps outside (0, p - 1]");
  }
  if (exp.theta() == 0.0) return 1.0;
  return std::pow(eps, exp.theta() / (exp.p() - eps));
}

double grand_factor_sup(const GrandExponent& exp) {
  return grand_factor(exp.max_eps(), exp);
}

namespace detail {

PowerNorm::PowerNorm(std::span<const double> weights, std::span<const double> values)
    : PowerNorm(weights, values, kernels::max_abs(values)) {}

PowerNorm::PowerNorm(std::span<const double> weights, std::span<const double> values,
                     double scale)
    : weights_(weights.begin(), weights.end()), scaled_(values.size()), scale_(scale) {
  if (weights.size() != values.size()) throw DomainError("PowerNorm: size mismatch");
  if (scale_ > 0.0) {
    for (std::size_t i = 0; i < values.size(); ++i) {
      scaled_[i] = std::fabs(values[i]) / scale_;
    }
  }
}

double PowerNorm::norm(double r) const {
  if (scale_ == 0.0) return 0.0;
  if (r == kInfinity) return scale_ * kernels::max_abs(scaled_);
  const double s = kernels::weighted_power_sum(weights_, scaled_, r);
  if (r == 1.0) return scale_ * s;
  return scale_ * std::pow(s, 1.0 / r);
}

}  // namespace detail

}  // namespace grand
