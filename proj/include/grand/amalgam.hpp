#pragma once

// Grand Wiener amalgam norm
//
//   ||f||_W = || x -> ||f chi_{Q+x}||_{p),theta} ||_{q),theta}
//
// The control function is sampled at every atom position x of the space.

#include "grand/grand_norm.hpp"
#include "grand/window.hpp"

namespace grand {

/// x -> ||f chi_{Q+x}||_{p),theta}. Magnitudes are scaled by max |f| over the
/// whole space, so restricted norms of nested windows compare consistently.
SampledFunction control_function(const SampledFunction& f, const Window& q,
                                 const GrandExponent& exp, const EpsilonGrid& grid);

double amalgam_norm(const SampledFunction& f, const Window& q, const GrandExponent& local,
                    const GrandExponent& global, const EpsilonGrid& grid_p,
                    const EpsilonGrid& grid_q);

}  // namespace grand
