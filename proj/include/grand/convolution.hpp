#pragma once

// Convolution on finite abelian groups Z_{n1} x ... x Z_{nk} with uniform Haar
// weights, and numerical checks of when grand Lebesgue and grand amalgam
// norms are submultiplicative under it.
//
// Probability normalization stands in for a compact group. Counting measure
// on a cyclic group large enough that supports never wrap stands in for Z.

#include <cstddef>
#include <optional>
#include <vector>

#include "grand/amalgam.hpp"

namespace grand {

enum class HaarNormalization { probability, counting };

class FiniteAbelianGroup {
 public:
  FiniteAbelianGroup(std::vector<std::size_t> factors, HaarNormalization normalization);
  static FiniteAbelianGroup cyclic(std::size_t n, HaarNormalization normalization) {
    return FiniteAbelianGroup({n}, normalization);
  }

  std::size_t order() const { return space_->size(); }
  const std::vector<std::size_t>& factors() const { return factors_; }
  HaarNormalization normalization() const { return normalization_; }
  double haar_weight() const { return space_->weight(0); }
  const SpacePtr& space() const { return space_; }

  SampledFunction function(std::vector<double> values) const {
    return SampledFunction(space_, std::move(values));
  }

 private:
  std::vector<std::size_t> factors_;
  HaarNormalization normalization_;
  SpacePtr space_;
};

/// (f * g)(x) = sum_y f(y) g(x - y) haar_weight.
SampledFunction convolve(const SampledFunction& f, const SampledFunction& g,
                         const FiniteAbelianGroup& group);

struct YoungRow {
  double eps = 0.0;  // 0 marks the eps -> 0 row (r = p)
  double lhs = 0.0;  // ||f*g||_{p-eps}
  double rhs = 0.0;  // ||f||_{p-eps} ||g||_{p-eps}
  bool pass = false;
};

/// Relative slack used by every submultiplicativity comparison.
inline constexpr double kSubmultiplicativeSlack = 1e-12;

struct SubmultiplicativityReport {
  double lhs = 0.0;  // ||f*g||_{p),theta}
  double rhs = 0.0;  // ||f||_{p),theta} ||g||_{p),theta}
  std::optional<double> ratio;
  std::vector<YoungRow> per_eps;
  /// Sharp constant K with ||f*g|| <= K ||f|| ||g|| on probability-normalized
  /// groups: 1 / sup_eps eps^(theta/(p-eps)) = (p-1)^(-theta).
  double young_constant = 1.0;
  bool hypotheses_met = false;
  /// ratio <= 1 + slack and every per-eps row passes.
  bool pass = false;
};

SubmultiplicativityReport submultiplicativity_check(const SampledFunction& f,
                                                    const SampledFunction& g,
                                                    const FiniteAbelianGroup& group,
                                                    const GrandExponent& exp,
                                                    const EpsilonGrid& grid);

struct AmalgamSubmultiplicativityReport {
  double lhs = 0.0;  // ||f*g||_W
  double rhs = 0.0;  // ||f||_W ||g||_W
  std::optional<double> ratio;
  /// sup_eta sup_eps eta^(theta/(q-eta)) eps^(theta/(p-eps)) ||f||_{p-eps} ||g||_{q-eta}
  double decoupled_bound = 0.0;
  /// lhs - decoupled_bound; positive means the decoupled product is not an upper bound.
  double decoupled_gap = 0.0;
  /// Translates of Q needed to cover the group.
  std::size_t cover_size = 0;
  double factor_sup_p = 1.0;
  double factor_sup_q = 1.0;
  /// ratio <= constant_c on probability-normalized groups, with
  /// constant_c = cover_size^2 / (factor_sup_p factor_sup_q).
  double constant_c = 0.0;
  bool hypotheses_met = false;
  bool pass = false;
};

AmalgamSubmultiplicativityReport amalgam_submultiplicativity_check(
    const SampledFunction& f, const SampledFunction& g, const FiniteAbelianGroup& group,
    const Window& q, const GrandExponent& local, const GrandExponent& global,
    const EpsilonGrid& grid_p, const EpsilonGrid& grid_q);

/// Number of translates Q + z needed to cover the group (greedy).
std::size_t translate_cover_size(const Window& q, const MeasureSpace& space);

struct WitnessResult {
  std::size_t m = 0;
  double p = 0.0;
  double ratio_m = 0.0;
  double ratio_2m = 0.0;
};

/// ||chi_[0,m) * chi_[0,m)||_p / ||chi_[0,m)||_p^2 on Z with counting measure.
double witness_ratio(std::size_t m, double p);

WitnessResult noncompact_witness(std::size_t m, double p);

}  // namespace grand
