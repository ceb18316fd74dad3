#include "grand/bupu.hpp"

#include <algorithm>
#include <cmath>

namespace grand {

Bupu make_uniform_bupu(const SpacePtr& space, std::size_t block_size) {
  if (block_size == 0) throw DomainError("make_uniform_bupu: block size must be positive");
  const std::size_t n = space->size();
  if (block_size > n) throw DomainError("make_uniform_bupu: block larger than the space");

  std::vector<SampledFunction> functions;
  std::vector<std::size_t> centers;
  for (std::size_t start = 0; start < n; start += block_size) {
    std::vector<double> v(n, 0.0);
    const std::size_t stop = std::min(n, start + block_size);
    for (std::size_t k = start; k < stop; ++k) v[k] = 1.0;
    functions.emplace_back(space, std::move(v));
    centers.push_back(start);
  }
  Bupu psi{std::move(functions), std::move(centers),
           Window::contiguous(*space, 0, block_size), 1.0, n % block_size != 0};
  if (!validate_bupu(psi).all_pass()) {
    throw DomainError("make_uniform_bupu: constructed family failed validation");
  }
  return psi;
}

std::vector<std::size_t> support_of(const SampledFunction& psi) {
  std::vector<std::size_t> s;
  for (std::size_t x = 0; x < psi.size(); ++x) {
    if (psi[x] != 0.0) s.push_back(x);
  }
  return s;
}

BupuValidation validate_bupu(const Bupu& psi) {
  BupuValidation r;
  if (psi.functions.empty() || psi.functions.size() != psi.centers.size()) {
    return r;
  }
  const MeasureSpace& space = psi.functions.front().space();
  const std::size_t n = space.size();

  std::vector<double> sum(n, 0.0);
  for (const auto& f : psi.functions) {
    if (!f.same_space(psi.functions.front())) return r;
    for (std::size_t x = 0; x < n; ++x) {
      sum[x] += f[x];
      if (f[x] < 0.0) r.nonnegative = false;
      r.measured_sup = std::max(r.measured_sup, std::fabs(f[x]));
    }
  }
  for (std::size_t x = 0; x < n; ++x) {
    const double dev = std::fabs(sum[x] - 1.0);
    r.max_sum_deviation = std::max(r.max_sum_deviation, dev);
    if (dev > kPartitionTolerance) r.sum_violations.push_back(x);
  }
  r.partition_pass = r.sum_violations.empty();
  r.bound_pass = r.measured_sup <= psi.sup_bound;

  std::vector<std::size_t> cover_count(n, 0);
  for (std::size_t i = 0; i < psi.functions.size(); ++i) {
    const Window moved = translate_window(psi.window, psi.centers[i], space);
    for (std::size_t m : moved.members()) ++cover_count[m];
    for (std::size_t x : support_of(psi.functions[i])) {
      if (!moved.contains(x)) ++r.support_violations;
    }
  }
  r.support_pass = r.support_violations == 0;
  r.max_overlap = *std::max_element(cover_count.begin(), cover_count.end());
  // Any finite index set has finite overlap; the count is what matters.
  r.overlap_pass = true;
  return r;
}

WellSpreadReport well_spread_check(std::span<const std::size_t> points, const Window& u,
                                   const MeasureSpace& space) {
  WellSpreadReport r;
  const std::size_t n = space.size();
  std::vector<std::vector<char>> member(points.size(), std::vector<char>(n, 0));
  std::vector<char> covered(n, 0);
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (std::size_t m : translate_window(u, points[i], space).members()) {
      member[i][m] = 1;
      covered[m] = 1;
    }
  }
  for (std::size_t x = 0; x < n; ++x) {
    if (!covered[x]) r.uncovered.push_back(x);
  }
  r.is_u_dense = r.uncovered.empty();

  const auto intersects = [&](std::size_t i, std::size_t j) {
    for (std::size_t x = 0; x < n; ++x) {
      if (member[i][x] && member[j][x]) return true;
    }
    return false;
  };

  constexpr std::size_t kUncoloured = static_cast<std::size_t>(-1);
  std::vector<std::size_t> colour(points.size(), kUncoloured);
  std::size_t colours = 0;
  r.is_separated = true;
  for (std::size_t i = 0; i < points.size(); ++i) {
    std::vector<char> used(colours + 1, 0);
    for (std::size_t j = 0; j < i; ++j) {
      if (intersects(i, j)) {
        used[colour[j]] = 1;
        r.is_separated = false;
      }
    }
    std::size_t c = 0;
    while (used[c]) ++c;
    colour[i] = c;
    colours = std::max(colours, c + 1);
  }
  r.separation_partition_count = colours;
  r.is_relatively_separated = true;
  return r;
}

}  // namespace grand
