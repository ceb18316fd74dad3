#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "grand/measure.hpp"

namespace grand {

struct Sample {
  double eps;
  double value;
};

/// Result of maximizing an objective over (0, p - 1].
struct Supremum {
  /// Every evaluated point (grid, zoom and golden-section), sorted by eps.
  std::vector<Sample> samples;
  /// eps of the maximum; 0 when the eps -> 0 limit wins.
  double argmax = 0.0;
  double value = 0.0;
  std::optional<double> zero_limit;
};

/// Maximizes `objective` over the grid, then zooms `refinement_rounds` times
/// by inserting geometric midpoints next to the running maximizer, then runs
/// a golden-section search in log(eps) on the bracket around it until the
/// bracket's relative width drops below the grid tolerance.
///
/// `zero_limit` is the objective's eps -> 0 limit; it takes part in the
/// maximum only when the grid includes the zero limit.
Supremum maximize_over_grid(const EpsilonGrid& grid,
                            const std::function<double(double)>& objective,
                            std::optional<double> zero_limit = std::nullopt);

}  // namespace grand
