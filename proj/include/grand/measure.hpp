#pragma once

// Finite atomic measure spaces, functions sampled on them, grand exponents,
// epsilon grids, and the classical L^r norm.

#include <cstddef>
#include <cstdint>
#include <limits>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace grand {

/// Raised for violated preconditions (bad exponents, mismatched spaces, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// How translates of a window behave at the edge of the point set. Interval
/// models clip (the function is extended by zero), cyclic models wrap.
enum class Topology { interval, cyclic };

class MeasureSpace {
 public:
  /// `cyclic_factors` describes Z_{n1} x ... x Z_{nk} (last factor varies
  /// fastest); empty means a single factor of size `ids.size()`.
  MeasureSpace(std::vector<std::int64_t> ids, std::vector<double> weights,
               Topology topology = Topology::interval, std::string label = {},
               std::vector<std::size_t> cyclic_factors = {});

  static MeasureSpace uniform(std::size_t n, double weight, Topology topology,
                              std::string label = {});
  /// n atoms of weight 1/n.
  static MeasureSpace probability(std::size_t n, Topology topology = Topology::cyclic);
  /// n atoms of weight 1.
  static MeasureSpace counting(std::size_t n, Topology topology = Topology::interval);

  std::size_t size() const { return weights_.size(); }
  std::span<const std::int64_t> ids() const { return ids_; }
  std::span<const double> weights() const { return weights_; }
  double weight(std::size_t position) const { return weights_[position]; }
  const std::string& label() const { return label_; }
  Topology topology() const { return topology_; }
  std::span<const std::size_t> cyclic_factors() const { return factors_; }
  double total_mass() const { return total_mass_; }

  bool is_counting() const;
  bool is_probability(double tol = 1e-12) const;

  std::optional<std::size_t> position_of(std::int64_t id) const;

  /// Position of `position + shift` under the space's translation rule, or
  /// nothing when an interval translate leaves the point set.
  std::optional<std::size_t> translate(std::size_t position, std::size_t shift) const;

  /// Cyclic difference a - b. Only meaningful for cyclic spaces.
  std::size_t subtract(std::size_t a, std::size_t b) const;

  friend bool operator==(const MeasureSpace&, const MeasureSpace&) = default;

 private:
  std::vector<std::int64_t> ids_;
  std::vector<double> weights_;
  Topology topology_;
  std::string label_;
  std::vector<std::size_t> factors_;
  double total_mass_ = 0.0;
};

using SpacePtr = std::shared_ptr<const MeasureSpace>;

inline SpacePtr share(MeasureSpace space) {
  return std::make_shared<const MeasureSpace>(std::move(space));
}

/// Real values, one per atom of a measure space.
class SampledFunction {
 public:
  SampledFunction(SpacePtr space, std::vector<double> values);

  static SampledFunction constant(SpacePtr space, double c);
  static SampledFunction zero(SpacePtr space) { return constant(std::move(space), 0.0); }

  const MeasureSpace& space() const { return *space_; }
  const SpacePtr& space_ptr() const { return space_; }
  std::span<const double> values() const { return values_; }
  std::size_t size() const { return values_.size(); }
  double operator[](std::size_t i) const { return values_[i]; }

  bool same_space(const SampledFunction& other) const;

 private:
  SpacePtr space_;
  std::vector<double> values_;
};

SampledFunction operator+(const SampledFunction& a, const SampledFunction& b);
SampledFunction operator*(const SampledFunction& a, const SampledFunction& b);
SampledFunction operator*(double c, const SampledFunction& f);

/// The pair (p, theta) of a grand Lebesgue norm; suprema run over
/// eps in (0, p - 1].
class GrandExponent {
 public:
  GrandExponent(double p, double theta);

  double p() const { return p_; }
  double theta() const { return theta_; }
  double max_eps() const { return p_ - 1.0; }

  friend bool operator==(const GrandExponent&, const GrandExponent&) = default;

 private:
  double p_;
  double theta_;
};

/// Discretization of (0, p - 1] used for every epsilon-supremum.
class EpsilonGrid {
 public:
  EpsilonGrid(std::vector<double> eps_values, bool include_zero_limit,
              int refinement_rounds, double relative_tolerance);

  std::span<const double> values() const { return eps_values_; }
  double min_eps() const { return eps_values_.front(); }
  double upper() const { return eps_values_.back(); }
  bool include_zero_limit() const { return include_zero_limit_; }
  int refinement_rounds() const { return refinement_rounds_; }
  double relative_tolerance() const { return relative_tolerance_; }

  /// 64 geometric points from 1e-6 (p - 1) to p - 1, 4 refinement rounds,
  /// relative tolerance 1e-9, zero limit included.
  static EpsilonGrid standard(const GrandExponent& exp);

 private:
  std::vector<double> eps_values_;
  bool include_zero_limit_;
  int refinement_rounds_;
  double relative_tolerance_;
};

/// Geometric grid from min_eps to p - 1 inclusive.
EpsilonGrid make_epsilon_grid(const GrandExponent& exp, int points, double min_eps,
                              int refinement_rounds = 4, double tol = 1e-9,
                              bool include_zero_limit = true);

/// Sentinel exponent for the sup norm.
inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// (sum_i w_i |f_i|^r)^(1/r), or max |f_i| for r == kInfinity.
double lp_norm(const SampledFunction& f, double r);

/// eps^(theta / (p - eps)) for 0 < eps <= p - 1.
double grand_factor(double eps, const GrandExponent& exp);

/// sup of grand_factor over (0, p - 1]. The factor is increasing in eps, so
/// this is (p - 1)^theta.
double grand_factor_sup(const GrandExponent& exp);

namespace detail {

/// Weights and magnitudes scaled into [0, 1], prepared once so an L^r norm
/// can be evaluated for many r.
class PowerNorm {
 public:
  PowerNorm(std::span<const double> weights, std::span<const double> values);
  /// Uses `scale` instead of max |values|; requires scale >= max |values|.
  PowerNorm(std::span<const double> weights, std::span<const double> values, double scale);

  double norm(double r) const;
  double scale() const { return scale_; }

 private:
  std::vector<double> weights_;
  std::vector<double> scaled_;
  double scale_;
};

}  // namespace detail

}  // namespace grand
