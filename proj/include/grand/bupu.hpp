#pragma once

// Bounded uniform partitions of unity and well-spread point families.

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "grand/measure.hpp"
#include "grand/window.hpp"

namespace grand {

/// psi_i >= 0 with sum_i psi_i == 1, sup_i ||psi_i||_inf <= sup_bound,
/// supp psi_i inside window + centers[i], and finitely many overlaps.
struct Bupu {
  std::vector<SampledFunction> functions;
  std::vector<std::size_t> centers;
  Window window;
  double sup_bound = 1.0;
  /// Set by make_uniform_bupu when the last block is shorter than the rest.
  bool ragged = false;
};

/// Indicator functions of consecutive blocks; y_i is the block start, the
/// window is the first block, and the sup bound is 1.
Bupu make_uniform_bupu(const SpacePtr& space, std::size_t block_size);

struct BupuValidation {
  // (a) partition of unity
  bool partition_pass = false;
  double max_sum_deviation = 0.0;
  std::vector<std::size_t> sum_violations;  // positions
  bool nonnegative = true;
  // (b) uniform bound
  bool bound_pass = false;
  double measured_sup = 0.0;
  // (c) support inside the translated window
  bool support_pass = false;
  std::size_t support_violations = 0;
  // (d) finite overlap, measured with K = window
  bool overlap_pass = false;
  std::size_t max_overlap = 0;

  bool all_pass() const {
    return partition_pass && nonnegative && bound_pass && support_pass && overlap_pass;
  }
};

/// Absolute tolerance on |sum_i psi_i(x) - 1| for condition (a).
inline constexpr double kPartitionTolerance = 1e-12;

/// Failures are reported, never thrown.
BupuValidation validate_bupu(const Bupu& psi);

/// Positions where psi_i is nonzero.
std::vector<std::size_t> support_of(const SampledFunction& psi);

struct WellSpreadReport {
  bool is_u_dense = false;
  bool is_relatively_separated = false;
  std::size_t separation_partition_count = 0;
  std::vector<std::size_t> uncovered;
  /// True when the translates x_i + U are pairwise disjoint.
  bool is_separated = false;
};

/// U-density by exact cover of the atom set; relative separation by greedy
/// colouring of the graph whose edges join intersecting translates.
WellSpreadReport well_spread_check(std::span<const std::size_t> points, const Window& u,
                                   const MeasureSpace& space);

}  // namespace grand
