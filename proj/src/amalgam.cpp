#include "grand/amalgam.hpp"

#include "grand/kernels.hpp"

namespace grand {

SampledFunction control_function(const SampledFunction& f, const Window& q,
                                 const GrandExponent& exp, const EpsilonGrid& grid) {
  detail::require_grid_matches(exp, grid);
  const MeasureSpace& space = f.space();
  const double scale = kernels::max_abs(f.values());
  std::vector<double> out(space.size(), 0.0);
  if (scale == 0.0) return SampledFunction(f.space_ptr(), std::move(out));

  std::vector<double> w;
  std::vector<double> v;
  for (std::size_t x = 0; x < space.size(); ++x) {
    const Window moved = translate_window(q, x, space);
    if (moved.empty()) continue;
    w.clear();
    v.clear();
    for (std::size_t m : moved.members()) {
      w.push_back(space.weight(m));
      v.push_back(f[m]);
    }
    out[x] = detail::grand_profile(detail::PowerNorm(w, v, scale), exp, grid).sup_value;
  }
  return SampledFunction(f.space_ptr(), std::move(out));
}

double amalgam_norm(const SampledFunction& f, const Window& q, const GrandExponent& local,
                    const GrandExponent& global, const EpsilonGrid& grid_p,
                    const EpsilonGrid& grid_q) {
  return grand_norm(control_function(f, q, local, grid_p), global, grid_q);
}

}  // namespace grand
