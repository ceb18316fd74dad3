// AVX2/FMA variants of the kernels in scalar.cpp. Compiled with -mavx2 -mfma
// and only reached through the runtime dispatch in dispatch.cpp.

#include <immintrin.h>

#include <cstdint>

#include "grand/kernels.hpp"

namespace grand::kernels {
namespace {

constexpr std::size_t kLanes = 4;

inline __m256i tail_mask(std::size_t remaining) {
  alignas(32) static const std::int64_t table[8] = {-1, -1, -1, -1, 0, 0, 0, 0};
  return _mm256_loadu_si256(
      reinterpret_cast<const __m256i*>(table + (kLanes - remaining)));
}

inline double hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

inline double hmax(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d m = _mm_max_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_max_sd(m, _mm_unpackhi_pd(m, m)));
}

// ln2 split so that k * kLn2Hi is exact for |k| < 2^11.
constexpr double kLn2Hi = 0.693145751953125;
constexpr double kLn2Lo = 1.42860682030941723212e-6;

// Natural log for normal positive inputs. The mantissa is reduced to
// [sqrt(1/2), sqrt(2)) and log(m) = 2 atanh(s), s = (m-1)/(m+1), |s| < 0.1716,
// evaluated by its odd series truncated after s^23.
inline __m256d log_pd(__m256d x) {
  const __m256i bits = _mm256_castpd_si256(x);
  const __m256i exp_bits = _mm256_srli_epi64(bits, 52);
  const __m256d two52 = _mm256_castsi256_pd(_mm256_set1_epi64x(0x4330000000000000LL));
  __m256d e = _mm256_sub_pd(
      _mm256_castsi256_pd(_mm256_or_si256(exp_bits, _mm256_castpd_si256(two52))), two52);
  e = _mm256_sub_pd(e, _mm256_set1_pd(1023.0));

  const __m256i mant_mask = _mm256_set1_epi64x(0x000FFFFFFFFFFFFFLL);
  const __m256i one_bits = _mm256_set1_epi64x(0x3FF0000000000000LL);
  __m256d m = _mm256_castsi256_pd(_mm256_or_si256(_mm256_and_si256(bits, mant_mask), one_bits));

  const __m256d big = _mm256_cmp_pd(m, _mm256_set1_pd(1.4142135623730951), _CMP_GT_OQ);
  m = _mm256_blendv_pd(m, _mm256_mul_pd(m, _mm256_set1_pd(0.5)), big);
  e = _mm256_add_pd(e, _mm256_and_pd(big, _mm256_set1_pd(1.0)));

  const __m256d one = _mm256_set1_pd(1.0);
  const __m256d s = _mm256_div_pd(_mm256_sub_pd(m, one), _mm256_add_pd(m, one));
  const __m256d z = _mm256_mul_pd(s, s);

  __m256d p = _mm256_set1_pd(1.0 / 23.0);
  p = _mm256_fmadd_pd(p, z, _mm256_set1_pd(1.0 / 21.0));
  p = _mm256_fmadd_pd(p, z, _mm256_set1_pd(1.0 / 19.0));
  p = _mm256_fmadd_pd(p, z, _mm256_set1_pd(1.0 / 17.0));
  p = _mm256_fmadd_pd(p, z, _mm256_set1_pd(1.0 / 15.0));
  p = _mm256_fmadd_pd(p, z, _mm256_set1_pd(1.0 / 13.0));
  p = _mm256_fmadd_pd(p, z, _mm256_set1_pd(1.0 / 11.0));
  p = _mm256_fmadd_pd(p, z, _mm256_set1_pd(1.0 / 9.0));
  p = _mm256_fmadd_pd(p, z, _mm256_set1_pd(1.0 / 7.0));
  p = _mm256_fmadd_pd(p, z, _mm256_set1_pd(1.0 / 5.0));
  p = _mm256_fmadd_pd(p, z, _mm256_set1_pd(1.0 / 3.0));
  // 2 s (1 + z p) = 2s + 2s z p
  const __m256d two_s = _mm256_add_pd(s, s);
  const __m256d log_m = _mm256_fmadd_pd(_mm256_mul_pd(two_s, z), p, two_s);

  return _mm256_fmadd_pd(e, _mm256_set1_pd(kLn2Hi),
                         _mm256_fmadd_pd(e, _mm256_set1_pd(kLn2Lo), log_m));
}

// exp for arguments in [-700, 0]; callers mask anything below.
inline __m256d exp_pd(__m256d y) {
  const __m256d n = _mm256_round_pd(_mm256_mul_pd(y, _mm256_set1_pd(1.4426950408889634)),
                                    _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC);
  __m256d t = _mm256_fnmadd_pd(n, _mm256_set1_pd(kLn2Hi), y);
  t = _mm256_fnmadd_pd(n, _mm256_set1_pd(kLn2Lo), t);

  // Taylor series of exp(t), |t| <= 0.35, through t^13.
  __m256d p = _mm256_set1_pd(1.0 / 6227020800.0);
  p = _mm256_fmadd_pd(p, t, _mm256_set1_pd(1.0 / 479001600.0));
  p = _mm256_fmadd_pd(p, t, _mm256_set1_pd(1.0 / 39916800.0));
  p = _mm256_fmadd_pd(p, t, _mm256_set1_pd(1.0 / 3628800.0));
  p = _mm256_fmadd_pd(p, t, _mm256_set1_pd(1.0 / 362880.0));
  p = _mm256_fmadd_pd(p, t, _mm256_set1_pd(1.0 / 40320.0));
  p = _mm256_fmadd_pd(p, t, _mm256_set1_pd(1.0 / 5040.0));
  p = _mm256_fmadd_pd(p, t, _mm256_set1_pd(1.0 / 720.0));
  p = _mm256_fmadd_pd(p, t, _mm256_set1_pd(1.0 / 120.0));
  p = _mm256_fmadd_pd(p, t, _mm256_set1_pd(1.0 / 24.0));
  p = _mm256_fmadd_pd(p, t, _mm256_set1_pd(1.0 / 6.0));
  p = _mm256_fmadd_pd(p, t, _mm256_set1_pd(0.5));
  p = _mm256_fmadd_pd(p, t, _mm256_set1_pd(1.0));
  p = _mm256_fmadd_pd(p, t, _mm256_set1_pd(1.0));

  // 2^n from the integer bits of n + 1.5 * 2^52.
  const __m256d magic = _mm256_set1_pd(6755399441055744.0);
  const __m256i n_int = _mm256_sub_epi64(_mm256_castpd_si256(_mm256_add_pd(n, magic)),
                                         _mm256_castpd_si256(magic));
  const __m256i scale_bits =
      _mm256_slli_epi64(_mm256_add_epi64(n_int, _mm256_set1_epi64x(1023)), 52);
  return _mm256_mul_pd(p, _mm256_castsi256_pd(scale_bits));
}

// a^r * w for a in [0, 1]; lanes with a below the normal range or with
// r * log(a) < -700 yield 0.
inline __m256d weighted_pow(__m256d w, __m256d a, __m256d r) {
  const __m256d y = _mm256_mul_pd(r, log_pd(a));
  const __m256d keep = _mm256_and_pd(
      _mm256_cmp_pd(a, _mm256_set1_pd(2.2250738585072014e-308), _CMP_GE_OQ),
      _mm256_cmp_pd(y, _mm256_set1_pd(-700.0), _CMP_GE_OQ));
  const __m256d safe_y = _mm256_blendv_pd(_mm256_setzero_pd(), y, keep);
  return _mm256_and_pd(keep, _mm256_mul_pd(w, exp_pd(safe_y)));
}

double max_abs_avx2(const double* x, std::size_t n) {
  const __m256d sign = _mm256_set1_pd(-0.0);
  __m256d m = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) {
    m = _mm256_max_pd(m, _mm256_andnot_pd(sign, _mm256_loadu_pd(x + i)));
  }
  if (i < n) {
    const __m256d v = _mm256_maskload_pd(x + i, tail_mask(n - i));
    m = _mm256_max_pd(m, _mm256_andnot_pd(sign, v));
  }
  return hmax(m);
}

double weighted_power_sum_avx2(const double* w, const double* a, std::size_t n,
                               double r) {
  const __m256d rv = _mm256_set1_pd(r);
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) {
    acc = _mm256_add_pd(acc, weighted_pow(_mm256_loadu_pd(w + i), _mm256_loadu_pd(a + i), rv));
  }
  if (i < n) {
    const __m256i mask = tail_mask(n - i);
    acc = _mm256_add_pd(
        acc, weighted_pow(_mm256_maskload_pd(w + i, mask), _mm256_maskload_pd(a + i, mask), rv));
  }
  return hsum(acc);
}

double dot_avx2(const double* a, const double* b, std::size_t n) {
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 2 * kLanes <= n; i += 2 * kLanes) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc0);
    acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i + kLanes), _mm256_loadu_pd(b + i + kLanes), acc1);
  }
  for (; i + kLanes <= n; i += kLanes) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc0);
  }
  if (i < n) {
    const __m256i mask = tail_mask(n - i);
    acc1 = _mm256_fmadd_pd(_mm256_maskload_pd(a + i, mask), _mm256_maskload_pd(b + i, mask), acc1);
  }
  return hsum(_mm256_add_pd(acc0, acc1));
}

}  // namespace

extern const KernelTable kAvx2Table;
const KernelTable kAvx2Table{
    Isa::avx2,
    "avx2",
    &max_abs_avx2,
    &weighted_power_sum_avx2,
    &dot_avx2,
};

}  // namespace grand::kernels
