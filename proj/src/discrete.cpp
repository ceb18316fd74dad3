#include "grand/discrete.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace grand {

namespace {

SpacePtr counting_space(std::size_t n) { return share(MeasureSpace::counting(n)); }

}  // namespace

double discrete_space_norm(const SampledFunction& lambda, const Window& u,
                           std::span<const std::size_t> centers, const MeasureSpace& space,
                           const GrandExponent& exp, const EpsilonGrid& grid) {
  if (!lambda.space().is_counting()) {
    throw DomainError("discrete_space_norm: coefficients must live on counting measure");
  }
  if (lambda.size() != centers.size()) {
    throw DomainError("discrete_space_norm: " + std::to_string(lambda.size()) +
                      " coefficients for " + std::to_string(centers.size()) + " centers");
  }
  const WellSpreadReport spread = well_spread_check(centers, u, space);
  if (!spread.is_separated) {
    throw DomainError("discrete_space_norm: translates x_i + U overlap");
  }

  std::vector<double> masses;
  masses.reserve(centers.size());
  bool uniform = true;
  for (std::size_t c : centers) {
    masses.push_back(translate_window(u, c, space).mass());
    if (masses.back() != u.mass()) uniform = false;
  }

  if (uniform) {
    const detail::PowerNorm values(lambda.space().weights(), lambda.values());
    return detail::grand_profile(values, exp, grid, u.mass()).sup_value;
  }
  return detail::grand_profile(detail::PowerNorm(masses, lambda.values()), exp, grid).sup_value;
}

SampledFunction step_function(std::span<const double> coeffs, const Window& u,
                              std::span<const std::size_t> centers, const SpacePtr& space) {
  if (coeffs.size() != centers.size()) {
    throw DomainError("step_function: coefficient and center counts differ");
  }
  std::vector<double> v(space->size(), 0.0);
  for (std::size_t i = 0; i < centers.size(); ++i) {
    for (std::size_t m : translate_window(u, centers[i], *space).members()) {
      v[m] += std::fabs(coeffs[i]);
    }
  }
  return SampledFunction(space, std::move(v));
}

MassBounds mass_bounds(double mass, const GrandExponent& exp) {
  const double at_one = mass;
  const double at_p = std::pow(mass, 1.0 / exp.p());
  return MassBounds{std::min(at_one, at_p), std::max(at_one, at_p)};
}

std::vector<double> local_norms(const SampledFunction& f, const Bupu& psi,
                                const GrandExponent& local, const EpsilonGrid& grid_p) {
  std::vector<double> c;
  c.reserve(psi.functions.size());
  for (const auto& p : psi.functions) c.push_back(grand_norm(f * p, local, grid_p));
  return c;
}

double discrete_amalgam_norm(const SampledFunction& f, const Bupu& psi,
                             const GrandExponent& local, const GrandExponent& global,
                             const EpsilonGrid& grid_p, const EpsilonGrid& grid_q) {
  if (!validate_bupu(psi).all_pass()) {
    throw DomainError("discrete_amalgam_norm: family is not a valid BUPU");
  }
  std::vector<double> c = local_norms(f, psi, local, grid_p);
  SpacePtr index_space = counting_space(c.size());
  const SampledFunction seq(std::move(index_space), std::move(c));
  return grand_sequence_norm(seq, global, grid_q);
}

EquivalenceGeometry equivalence_geometry(const Window& q, const Bupu& psi) {
  EquivalenceGeometry g;
  const MeasureSpace& space = psi.functions.front().space();
  const std::size_t n = space.size();
  const std::size_t count = psi.functions.size();

  std::vector<std::vector<std::size_t>> supports;
  supports.reserve(count);
  for (const auto& f : psi.functions) supports.push_back(support_of(f));

  std::vector<std::vector<char>> in_translate(n, std::vector<char>(n, 0));
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t m : translate_window(q, x, space).members()) in_translate[x][m] = 1;
  }

  std::vector<double> touch_mass(count, 0.0);
  std::vector<double> contain_mass(count, 0.0);
  for (std::size_t x = 0; x < n; ++x) {
    std::size_t touching = 0;
    std::size_t containing = 0;
    for (std::size_t i = 0; i < count; ++i) {
      if (supports[i].empty()) continue;
      bool any = false;
      bool all = true;
      for (std::size_t s : supports[i]) {
        if (in_translate[x][s]) any = true;
        else all = false;
      }
      if (any) {
        ++touching;
        touch_mass[i] += space.weight(x);
      }
      if (all) {
        ++containing;
        contain_mass[i] += space.weight(x);
      }
    }
    g.touch_overlap = std::max(g.touch_overlap, touching);
    g.containment_overlap = std::max(g.containment_overlap, containing);
  }

  g.containment = true;
  g.containment_mass_min = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < count; ++i) {
    if (supports[i].empty()) continue;
    g.touch_mass_max = std::max(g.touch_mass_max, touch_mass[i]);
    g.containment_mass_min = std::min(g.containment_mass_min, contain_mass[i]);
    if (contain_mass[i] == 0.0) g.containment = false;
  }
  if (!g.containment) g.containment_mass_min = 0.0;

  // Greedy cover of each support by translates of Q; only the fallback
  // lower constant needs it.
  std::vector<std::size_t> cover_use(n, 0);
  for (std::size_t i = 0; i < count && !g.containment; ++i) {
    std::vector<char> remaining(n, 0);
    std::size_t left = 0;
    for (std::size_t s : supports[i]) {
      remaining[s] = 1;
      ++left;
    }
    std::size_t used = 0;
    while (left > 0) {
      std::size_t best_x = 0;
      std::size_t best_gain = 0;
      for (std::size_t x = 0; x < n; ++x) {
        std::size_t gain = 0;
        for (std::size_t s = 0; s < n; ++s) gain += remaining[s] && in_translate[x][s];
        if (gain > best_gain) {
          best_gain = gain;
          best_x = x;
        }
      }
      if (best_gain == 0) {
        throw DomainError("equivalence_geometry: translates of Q cannot cover a BUPU support");
      }
      for (std::size_t s = 0; s < n; ++s) {
        if (remaining[s] && in_translate[best_x][s]) {
          remaining[s] = 0;
          --left;
        }
      }
      ++cover_use[best_x];
      ++used;
    }
    g.cover_size = std::max(g.cover_size, used);
  }
  g.cover_multiplicity = *std::max_element(cover_use.begin(), cover_use.end());

  const auto w = space.weights();
  g.min_weight = *std::min_element(w.begin(), w.end());
  g.sup_bound = validate_bupu(psi).measured_sup;

  std::vector<std::size_t> window_count(n, 0);
  g.translate_mass_min = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < count; ++i) {
    const Window moved = translate_window(psi.window, psi.centers[i], space);
    for (std::size_t m : moved.members()) ++window_count[m];
    g.translate_mass_min = std::min(g.translate_mass_min, moved.mass());
    g.translate_mass_max = std::max(g.translate_mass_max, moved.mass());
  }
  g.window_overlap = *std::max_element(window_count.begin(), window_count.end());
  return g;
}

EquivalenceBounds equivalence_bounds(const EquivalenceGeometry& g, const Window& u,
                                     const GrandExponent& global) {
  const double q = global.p();
  const auto over_r = [q](auto&& k, bool take_max) {
    const double a = k(1.0);
    const double b = k(q);
    return take_max ? std::max(a, b) : std::min(a, b);
  };

  EquivalenceBounds b;
  b.continuous_discrete.upper = over_r(
      [&](double r) {
        return std::pow(static_cast<double>(g.touch_overlap), 1.0 - 1.0 / r) *
               std::pow(g.touch_mass_max, 1.0 / r);
      },
      true);
  if (g.containment) {
    b.continuous_discrete.lower = over_r(
        [&](double r) {
          return std::pow(g.containment_mass_min / static_cast<double>(g.containment_overlap),
                          1.0 / r) /
                 g.sup_bound;
        },
        false);
  } else {
    b.continuous_discrete.lower = over_r(
        [&](double r) {
          const double denom = static_cast<double>(g.cover_multiplicity) *
                               std::pow(static_cast<double>(g.cover_size), r - 1.0);
          return std::pow(g.min_weight / denom, 1.0 / r) / g.sup_bound;
        },
        false);
  }

  b.step_discrete.lower =
      over_r([&](double r) { return std::pow(g.translate_mass_min, 1.0 / r); }, false);
  b.step_discrete.upper = over_r(
      [&](double r) {
        return std::pow(static_cast<double>(g.window_overlap), 1.0 - 1.0 / r) *
               std::pow(g.translate_mass_max, 1.0 / r);
      },
      true);

  b.continuous_step.lower = b.continuous_discrete.lower / b.step_discrete.upper;
  b.continuous_step.upper = b.continuous_discrete.upper / b.step_discrete.lower;
  b.mass = mass_bounds(u.mass(), global);
  return b;
}

EquivalenceReport equivalence_report(const SampledFunction& f, const Window& q, const Bupu& psi,
                                     const GrandExponent& local, const GrandExponent& global,
                                     const EpsilonGrid& grid_p, const EpsilonGrid& grid_q,
                                     EquivalenceOptions options) {
  EquivalenceReport r;
  r.validation = validate_bupu(psi);
  if (!r.validation.all_pass()) {
    throw DomainError("equivalence_report: family is not a valid BUPU");
  }
  if (psi.ragged && !options.allow_ragged) {
    throw DomainError("equivalence_report: ragged BUPU (unequal translate masses) refused");
  }
  if (!f.same_space(psi.functions.front())) {
    throw DomainError("equivalence_report: f and the BUPU live on different spaces");
  }

  r.continuous = amalgam_norm(f, q, local, global, grid_p, grid_q);
  std::vector<double> c = local_norms(f, psi, local, grid_p);
  r.step = grand_norm(step_function(c, psi.window, psi.centers, f.space_ptr()), global, grid_q);
  SpacePtr index_space = counting_space(c.size());
  const SampledFunction seq(std::move(index_space), std::move(c));
  r.discrete = grand_sequence_norm(seq, global, grid_q);

  r.geometry = equivalence_geometry(q, psi);
  r.bounds = equivalence_bounds(r.geometry, psi.window, global);

  r.within_bounds = true;
  if (r.discrete > 0.0) {
    r.ratio_continuous_discrete = r.continuous / r.discrete;
    r.ratio_step_discrete = r.step / r.discrete;
    r.within_bounds = r.within_bounds &&
                      r.bounds.continuous_discrete.contains(*r.ratio_continuous_discrete) &&
                      r.bounds.step_discrete.contains(*r.ratio_step_discrete);
  }
  if (r.step > 0.0) {
    r.ratio_continuous_step = r.continuous / r.step;
    r.within_bounds =
        r.within_bounds && r.bounds.continuous_step.contains(*r.ratio_continuous_step);
  }
  return r;
}

}  // namespace grand
