#pragma once

// Grand Lebesgue norms
//
//   ||f||_{p),theta} = sup_{0 < eps <= p-1} eps^(theta/(p-eps)) ||f||_{p-eps}
//
// on finite atomic measure spaces, the counting-measure sequence version,
// the eps-profile whose supremum they take, the vanishing-limit closure
// criterion, and explicit constants for L^p in L^{p),theta} in L^{p-eps}.

#include <optional>
#include <span>
#include <vector>

#include "grand/measure.hpp"
#include "grand/supremum.hpp"

namespace grand {

/// The map eps -> eps^(theta/(p-eps)) ||f||_{p-eps} sampled on a (refined)
/// grid. `sup_value` is the maximum of the entries and of `zero_limit` when
/// present; `argmax_eps` is 0 when the limit wins.
struct EpsilonProfile {
  std::vector<Sample> entries;
  double argmax_eps = 0.0;
  double sup_value = 0.0;
  std::optional<double> zero_limit;
};

EpsilonProfile epsilon_profile(const SampledFunction& f, const GrandExponent& exp,
                               const EpsilonGrid& grid);

double grand_norm(const SampledFunction& f, const GrandExponent& exp, const EpsilonGrid& grid);

/// Requires counting measure (all weights exactly 1).
double grand_sequence_norm(const SampledFunction& u, const GrandExponent& exp,
                           const EpsilonGrid& grid);

struct ClosureResult {
  /// False for theta == 0, where the eps -> 0 limit is ||f||_p.
  bool applicable = false;
  bool in_closure = false;
  double limit_estimate = 0.0;
  /// The five smallest evaluated eps (ascending) with their profile values.
  std::vector<Sample> tail;
  /// Profile strictly decreasing along `tail` toward 0 (or identically 0).
  bool tail_monotone = false;
};

/// Estimates lim_{eps->0} eps^(theta/(p-eps)) ||f||_{p-eps}. The grid is
/// extended below min_eps by the same geometric ratio, as many steps as the
/// grid has points, and the profile at the smallest eps is the estimate.
ClosureResult closure_criterion(const SampledFunction& f, const GrandExponent& exp,
                                const EpsilonGrid& grid, double tol = 1e-6);

struct EmbeddingConstants {
  /// ||f||_{p),theta} <= c_upper ||f||_p on the given space.
  double c_upper = 0.0;
  /// ||f||_{p-eps} <= c_lower ||f||_{p),theta}.
  double c_lower = 0.0;
  double eps = 0.0;
};

EmbeddingConstants embedding_constants(const GrandExponent& exp, double eps,
                                       const MeasureSpace& space, const EpsilonGrid& grid);
EmbeddingConstants embedding_constants(const GrandExponent& exp, double eps,
                                       const MeasureSpace& space);

namespace detail {

void require_grid_matches(const GrandExponent& exp, const EpsilonGrid& grid);

/// Profile of prepared magnitudes. With `mass`, each term carries an extra
/// mass^(1/(p-eps)) (the measure of a window every atom is spread over).
EpsilonProfile grand_profile(const PowerNorm& values, const GrandExponent& exp,
                             const EpsilonGrid& grid, std::optional<double> mass = std::nullopt);

}  // namespace detail

}  // namespace grand
