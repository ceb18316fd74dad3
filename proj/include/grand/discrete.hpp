#pragma once

// Discrete descriptions of grand Lebesgue and grand amalgam norms: the
// associated sequence space of a well-spread family, the BUPU-based discrete
// amalgam norm, and per-instance equivalence bounds between the continuous,
// step-function and discrete forms.

#include <optional>
#include <span>
#include <vector>

#include "grand/amalgam.hpp"
#include "grand/bupu.hpp"

namespace grand {

/// || sum_i |lambda_i| chi_{x_i+U} ||_{p),theta}.
///
/// The translates must be pairwise disjoint. When every translate has
/// measure mu(U) the norm is evaluated as
///   sup_eps eps^(theta/(p-eps)) mu(U)^(1/(p-eps)) ||lambda||_{l^{p-eps}},
/// which is bit-identical to grand_sequence_norm for mu(U) == 1; otherwise
/// the translate masses weight the sequence directly.
double discrete_space_norm(const SampledFunction& lambda, const Window& u,
                           std::span<const std::size_t> centers, const MeasureSpace& space,
                           const GrandExponent& exp, const EpsilonGrid& grid);

/// sum_i coeffs_i chi_{centers_i + U} as a function on `space`.
SampledFunction step_function(std::span<const double> coeffs, const Window& u,
                              std::span<const std::size_t> centers, const SpacePtr& space);

/// Range of mass^(1/(p-eps)) over every eps a supremum may evaluate
/// (r = p - eps in [1, p]).
struct MassBounds {
  double m_low = 0.0;
  double m_high = 0.0;
};

MassBounds mass_bounds(double mass, const GrandExponent& exp);

/// i -> ||f psi_i||_{p),theta}.
std::vector<double> local_norms(const SampledFunction& f, const Bupu& psi,
                                const GrandExponent& local, const EpsilonGrid& grid_p);

/// || { ||f psi_i||_{p),theta} }_i ||_{l^{q),theta}}. Throws on a BUPU that
/// fails validation.
double discrete_amalgam_norm(const SampledFunction& f, const Bupu& psi,
                             const GrandExponent& local, const GrandExponent& global,
                             const EpsilonGrid& grid_p, const EpsilonGrid& grid_q);

struct RatioBounds {
  double lower = 0.0;
  double upper = 0.0;

  bool contains(double ratio, double rel_slack = 1e-12) const {
    return ratio >= lower * (1.0 - rel_slack) && ratio <= upper * (1.0 + rel_slack);
  }
};

/// Geometry behind the equivalence constants. For a window Q and BUPU psi:
///   N_i = {x : supp psi_i meets Q+x},  C_i = {x : supp psi_i inside Q+x}.
/// With r = q - eta ranging over [1, q]:
///   continuous <= max_r overlap^(1-1/r) max mu(N_i)^(1/r)            * discrete
///   continuous >= min_r (min mu(C_i) / containment_overlap)^(1/r) / M * discrete
/// When some C_i is empty the lower constant falls back to a cover of each
/// support by translates of Q:
///   continuous >= min_r (w_min / (cover_multiplicity cover_size^(r-1)))^(1/r) / M * discrete.
/// For the step function s = sum_i c_i chi_{U+y_i}:
///   min_r min mu(U+y_i)^(1/r) <= step / discrete <= max_r window_overlap^(1-1/r) max mu(U+y_i)^(1/r).
struct EquivalenceGeometry {
  std::size_t touch_overlap = 0;
  double touch_mass_max = 0.0;
  bool containment = false;
  std::size_t containment_overlap = 0;
  double containment_mass_min = 0.0;
  std::size_t cover_size = 0;
  std::size_t cover_multiplicity = 0;
  double min_weight = 0.0;
  double sup_bound = 0.0;
  std::size_t window_overlap = 0;
  double translate_mass_min = 0.0;
  double translate_mass_max = 0.0;
};

EquivalenceGeometry equivalence_geometry(const Window& q, const Bupu& psi);

struct EquivalenceBounds {
  RatioBounds continuous_discrete;
  RatioBounds step_discrete;
  RatioBounds continuous_step;
  MassBounds mass;  // for mu(U) against the global exponent
};

EquivalenceBounds equivalence_bounds(const EquivalenceGeometry& g, const Window& u,
                                     const GrandExponent& global);

struct EquivalenceReport {
  double continuous = 0.0;
  double discrete = 0.0;
  double step = 0.0;
  std::optional<double> ratio_continuous_discrete;
  std::optional<double> ratio_step_discrete;
  std::optional<double> ratio_continuous_step;
  EquivalenceGeometry geometry;
  EquivalenceBounds bounds;
  BupuValidation validation;
  /// Every defined ratio inside its bounds.
  bool within_bounds = false;
};

struct EquivalenceOptions {
  /// Ragged block BUPUs have unequal translate masses; refused unless set.
  bool allow_ragged = false;
};

EquivalenceReport equivalence_report(const SampledFunction& f, const Window& q, const Bupu& psi,
                                     const GrandExponent& local, const GrandExponent& global,
                                     const EpsilonGrid& grid_p, const EpsilonGrid& grid_q,
                                     EquivalenceOptions options = {});

}  // namespace grand
