#pragma once

// Data-parallel inner loops shared by every norm in the library.
//
// Each kernel exists as a scalar reference implementation and, where the
// build and the CPU allow it, as an AVX2/FMA variant. The variant is chosen
// once per process; `GRAND_KERNELS=scalar` in the environment forces the
// reference path.

#include <cstddef>
#include <span>
#include <string_view>

namespace grand::kernels {

enum class Isa { scalar, avx2 };

struct KernelTable {
  Isa isa;
  const char* name;

  /// max_i |x_i|
  double (*max_abs)(const double* x, std::size_t n);

  /// sum_i w_i * a_i^r for a_i in [0, 1] and r >= 1. Entries with a_i == 0
  /// contribute nothing.
  double (*weighted_power_sum)(const double* w, const double* a, std::size_t n,
                               double r);

  /// sum_i a_i * b_i
  double (*dot)(const double* a, const double* b, std::size_t n);
};

const KernelTable& scalar_table();

/// The AVX2 table, or nullptr when it was not compiled in or the running CPU
/// lacks AVX2+FMA.
const KernelTable* avx2_table();

/// Table for a given ISA; nullptr when unavailable.
const KernelTable* table_for(Isa isa);

/// The process-wide selection. Immutable after first use.
const KernelTable& active();

std::string_view isa_name(Isa isa);

inline double max_abs(std::span<const double> x) {
  return active().max_abs(x.data(), x.size());
}

inline double weighted_power_sum(std::span<const double> w,
                                 std::span<const double> a, double r) {
  return active().weighted_power_sum(w.data(), a.data(), a.size(), r);
}

inline double dot(std::span<const double> a, std::span<const double> b) {
  return active().dot(a.data(), b.data(), a.size());
}

}  // namespace grand::kernels
