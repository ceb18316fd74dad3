#include <cmath>

#include "grand/kernels.hpp"

namespace grand::kernels {
namespace {

double max_abs_scalar(const double* x, std::size_t n) {
  double m = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double v = std::fabs(x[i]);
    if (v > m) m = v;
  }
  return m;
}

double weighted_power_sum_scalar(const double* w, const double* a,
                                 std::size_t n, double r) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (a[i] > 0.0) s += w[i] * std::pow(a[i], r);
  }
  return s;
}

double dot_scalar(const double* a, const double* b, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += a[i] * b[i];
  return s;
}

constexpr KernelTable kScalar{
    Isa::scalar,
    "scalar",
    &max_abs_scalar,
    &weighted_power_sum_scalar,
    &dot_scalar,
};

}  // namespace

const KernelTable& scalar_table() { return kScalar; }

}  // namespace grand::kernels
