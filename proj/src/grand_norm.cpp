#include "grand/grand_norm.hpp"

#include <algorithm>
#include <cmath>

namespace grand {

namespace detail {

void require_grid_matches(const GrandExponent& exp, const EpsilonGrid& grid) {
  if (grid.upper() != exp.max_eps()) {
    throw DomainError("epsilon grid does not end at p - 1 for this exponent");
  }
}

EpsilonProfile grand_profile(const PowerNorm& values, const GrandExponent& exp,
                             const EpsilonGrid& grid, std::optional<double> mass) {
  require_grid_matches(exp, grid);
  const double p = exp.p();
  const auto objective = [&](double eps) {
    const double r = p - eps;
    double term = values.norm(r);
    if (mass) term = std::pow(*mass, 1.0 / r) * term;
    return grand_factor(eps, exp) * term;
  };
  std::optional<double> limit;
  if (exp.theta() == 0.0) {
    double term = values.norm(p);
    if (mass) term = std::pow(*mass, 1.0 / p) * term;
    limit = term;
  } else {
    limit = 0.0;
  }
  Supremum sup = maximize_over_grid(grid, objective, limit);
  return EpsilonProfile{std::move(sup.samples), sup.argmax, sup.value, sup.zero_limit};
}

}  // namespace detail

EpsilonProfile epsilon_profile(const SampledFunction& f, const GrandExponent& exp,
                               const EpsilonGrid& grid) {
  return detail::grand_profile(detail::PowerNorm(f.space().weights(), f.values()), exp, grid);
}

double grand_norm(const SampledFunction& f, const GrandExponent& exp, const EpsilonGrid& grid) {
  return epsilon_profile(f, exp, grid).sup_value;
}

double grand_sequence_norm(const SampledFunction& u, const GrandExponent& exp,
                           const EpsilonGrid& grid) {
  if (!u.space().is_counting()) {
    throw DomainError("grand_sequence_norm: sequence norm needs counting measure (unit weights)");
  }
  return grand_norm(u, exp, grid);
}

ClosureResult closure_criterion(const SampledFunction& f, const GrandExponent& exp,
                                const EpsilonGrid& grid, double tol) {
  detail::require_grid_matches(exp, grid);
  ClosureResult result;
  if (exp.theta() == 0.0) return result;
  result.applicable = true;

  const auto base = grid.values();
  const double ratio =
      base.size() >= 2 ? base[1] / base[0] : grid.upper() / grid.min_eps();
  const std::size_t steps = std::max<std::size_t>(base.size(), 5);

  // Evaluated eps, ascending: the downward extension followed by the grid's
  // own smallest points.
  std::vector<double> eps_values;
  double e = grid.min_eps();
  for (std::size_t k = 0; k < steps; ++k) {
    e /= ratio;
    if (!(e > 0.0)) break;
    eps_values.push_back(e);
  }
  std::reverse(eps_values.begin(), eps_values.end());
  for (double b : base) eps_values.push_back(b);

  const detail::PowerNorm values(f.space().weights(), f.values());
  const std::size_t tail_len = std::min<std::size_t>(5, eps_values.size());
  for (std::size_t k = 0; k < tail_len; ++k) {
    const double eps = eps_values[k];
    result.tail.push_back(Sample{eps, grand_factor(eps, exp) * values.norm(exp.p() - eps)});
  }

  result.limit_estimate = result.tail.front().value;
  result.in_closure = result.limit_estimate < tol;
  bool monotone = true;
  bool all_zero = true;
  for (std::size_t k = 0; k < result.tail.size(); ++k) {
    if (result.tail[k].value != 0.0) all_zero = false;
    if (k > 0 && !(result.tail[k - 1].value < result.tail[k].value)) monotone = false;
  }
  result.tail_monotone = monotone || all_zero;
  return result;
}

EmbeddingConstants embedding_constants(const GrandExponent& exp, double eps,
                                       const MeasureSpace& space, const EpsilonGrid& grid) {
  detail::require_grid_matches(exp, grid);
  EmbeddingConstants c;
  c.eps = eps;
  c.c_lower = 1.0 / grand_factor(eps, exp);

  // Hoelder: ||f||_{p-e} <= mass^(1/(p-e) - 1/p) ||f||_p.
  const double p = exp.p();
  const double mass = space.total_mass();
  const auto h = [&](double e) {
    return grand_factor(e, exp) * std::pow(mass, 1.0 / (p - e) - 1.0 / p);
  };
  const double limit = exp.theta() == 0.0 ? 1.0 : 0.0;
  const Supremum sup = maximize_over_grid(grid, h, limit);
  c.c_upper = sup.value;
  return c;
}

EmbeddingConstants embedding_constants(const GrandExponent& exp, double eps,
                                       const MeasureSpace& space) {
  return embedding_constants(exp, eps, space, EpsilonGrid::standard(exp));
}

}  // namespace grand
