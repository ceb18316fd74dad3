#include "grand/convolution.hpp"

#include <algorithm>
#include <numeric>

#include "grand/kernels.hpp"

namespace grand {

namespace {

MeasureSpace group_space(const std::vector<std::size_t>& factors,
                         HaarNormalization normalization) {
  if (factors.empty()) throw DomainError("finite abelian group needs at least one factor");
  const std::size_t n =
      std::accumulate(factors.begin(), factors.end(), std::size_t{1}, std::multiplies<>{});
  if (n == 0) throw DomainError("finite abelian group: zero-sized factor");
  const double w =
      normalization == HaarNormalization::probability ? 1.0 / static_cast<double>(n) : 1.0;
  std::vector<std::int64_t> ids(n);
  std::iota(ids.begin(), ids.end(), std::int64_t{0});
  return MeasureSpace(std::move(ids), std::vector<double>(n, w), Topology::cyclic,
                      normalization == HaarNormalization::probability ? "haar-probability"
                                                                      : "haar-counting",
                      factors);
}

void require_on_group(const SampledFunction& f, const FiniteAbelianGroup& group) {
  if (!(f.space() == *group.space())) {
    throw DomainError("function does not live on the given group");
  }
}

}  // namespace

FiniteAbelianGroup::FiniteAbelianGroup(std::vector<std::size_t> factors,
                                       HaarNormalization normalization)
    : factors_(std::move(factors)),
      normalization_(normalization),
      space_(share(group_space(factors_, normalization_))) {}

SampledFunction convolve(const SampledFunction& f, const SampledFunction& g,
                         const FiniteAbelianGroup& group) {
  require_on_group(f, group);
  require_on_group(g, group);
  const MeasureSpace& space = *group.space();
  const std::size_t n = group.order();
  const std::size_t cols = group.factors().back();
  const std::size_t rows = n / cols;

  // Each row of g reversed and doubled, so g(x - y) over consecutive y in the
  // last factor is a contiguous slice.
  std::vector<double> rev(rows * 2 * cols);
  for (std::size_t r = 0; r < rows; ++r) {
    double* out = rev.data() + r * 2 * cols;
    for (std::size_t k = 0; k < 2 * cols; ++k) {
      out[k] = g[r * cols + (2 * cols - 1 - k) % cols];
    }
  }

  std::vector<std::size_t> row_diff(rows * rows);
  for (std::size_t a = 0; a < rows; ++a) {
    for (std::size_t b = 0; b < rows; ++b) {
      row_diff[a * rows + b] = space.subtract(a * cols, b * cols) / cols;
    }
  }

  const auto& k = kernels::active();
  const double w = group.haar_weight();
  std::vector<double> out(n);
  for (std::size_t x = 0; x < n; ++x) {
    const std::size_t xr = x / cols;
    const std::size_t xc = x % cols;
    double s = 0.0;
    for (std::size_t yr = 0; yr < rows; ++yr) {
      const double* g_row = rev.data() + row_diff[xr * rows + yr] * 2 * cols;
      s += k.dot(f.values().data() + yr * cols, g_row + (cols - 1 - xc), cols);
    }
    out[x] = s * w;
  }
  return SampledFunction(group.space(), std::move(out));
}

SubmultiplicativityReport submultiplicativity_check(const SampledFunction& f,
                                                    const SampledFunction& g,
                                                    const FiniteAbelianGroup& group,
                                                    const GrandExponent& exp,
                                                    const EpsilonGrid& grid) {
  SubmultiplicativityReport r;
  const SampledFunction fg = convolve(f, g, group);
  r.hypotheses_met = group.normalization() == HaarNormalization::probability;
  r.young_constant = 1.0 / grand_factor_sup(exp);
  r.lhs = grand_norm(fg, exp, grid);
  r.rhs = grand_norm(f, exp, grid) * grand_norm(g, exp, grid);
  if (r.rhs > 0.0) r.ratio = r.lhs / r.rhs;

  const auto row = [&](double eps) {
    const double s = exp.p() - eps;
    YoungRow y{eps, lp_norm(fg, s), lp_norm(f, s) * lp_norm(g, s), false};
    y.pass = y.lhs <= (1.0 + kSubmultiplicativeSlack) * y.rhs;
    return y;
  };
  if (grid.include_zero_limit()) r.per_eps.push_back(row(0.0));
  for (double eps : grid.values()) r.per_eps.push_back(row(eps));

  const bool rows_pass =
      std::all_of(r.per_eps.begin(), r.per_eps.end(), [](const YoungRow& y) { return y.pass; });
  const bool ratio_pass = !r.ratio || *r.ratio <= 1.0 + kSubmultiplicativeSlack;
  r.pass = rows_pass && ratio_pass;
  return r;
}

std::size_t translate_cover_size(const Window& q, const MeasureSpace& space) {
  const std::size_t n = space.size();
  std::vector<char> covered(n, 0);
  std::size_t left = n;
  std::size_t used = 0;
  while (left > 0) {
    std::size_t best_gain = 0;
    std::size_t best_z = 0;
    for (std::size_t z = 0; z < n; ++z) {
      std::size_t gain = 0;
      for (std::size_t m : translate_window(q, z, space).members()) gain += !covered[m];
      if (gain > best_gain) {
        best_gain = gain;
        best_z = z;
      }
    }
    if (best_gain == 0) throw DomainError("translates of the window cannot cover the space");
    for (std::size_t m : translate_window(q, best_z, space).members()) {
      if (!covered[m]) {
        covered[m] = 1;
        --left;
      }
    }
    ++used;
  }
  return used;
}

AmalgamSubmultiplicativityReport amalgam_submultiplicativity_check(
    const SampledFunction& f, const SampledFunction& g, const FiniteAbelianGroup& group,
    const Window& q, const GrandExponent& local, const GrandExponent& global,
    const EpsilonGrid& grid_p, const EpsilonGrid& grid_q) {
  AmalgamSubmultiplicativityReport r;
  const SampledFunction fg = convolve(f, g, group);
  r.hypotheses_met = group.normalization() == HaarNormalization::probability;

  r.lhs = amalgam_norm(fg, q, local, global, grid_p, grid_q);
  r.rhs = amalgam_norm(f, q, local, global, grid_p, grid_q) *
          amalgam_norm(g, q, local, global, grid_p, grid_q);
  if (r.rhs > 0.0) r.ratio = r.lhs / r.rhs;

  // The double supremum separates into a product of single suprema.
  r.decoupled_bound = grand_norm(f, local, grid_p) * grand_norm(g, global, grid_q);
  r.decoupled_gap = r.lhs - r.decoupled_bound;

  r.cover_size = translate_cover_size(q, *group.space());
  r.factor_sup_p = grand_factor_sup(local);
  r.factor_sup_q = grand_factor_sup(global);
  const double l = static_cast<double>(r.cover_size);
  r.constant_c = l * l / (r.factor_sup_p * r.factor_sup_q);
  r.pass = !r.ratio || *r.ratio <= r.constant_c * (1.0 + kSubmultiplicativeSlack);
  return r;
}

double witness_ratio(std::size_t m, double p) {
  if (m < 2) throw DomainError("noncompact_witness: need m >= 2");
  if (!(p > 1.0)) throw DomainError("noncompact_witness: need p > 1");
  const auto group = FiniteAbelianGroup::cyclic(2 * m, HaarNormalization::counting);
  std::vector<double> v(2 * m, 0.0);
  std::fill(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(m), 1.0);
  const SampledFunction chi = group.function(std::move(v));
  const double base = lp_norm(chi, p);
  return lp_norm(convolve(chi, chi, group), p) / (base * base);
}

WitnessResult noncompact_witness(std::size_t m, double p) {
  return WitnessResult{m, p, witness_ratio(m, p), witness_ratio(2 * m, p)};
}

}  // namespace grand
