// AVX2 variants of the rational batch kernels. Each vector body mirrors the
// scalar reference operation-for-operation (mul/add/sub/div/max/min, never
// FMA) so results are elementwise identical; tails fall through to the
// scalar kernels. On non-x86 builds this TU degrades to scalar forwarding.

#include <cstddef>

#include "maxalg/scalar_ops.hpp"

#if defined(__x86_64__) || defined(__i386__)
#define MAXALG_X86 1
#include <immintrin.h>
#else
#define MAXALG_X86 0
#endif

namespace maxalg::kernels {

namespace scalar {
void classical_max(const double* u, const double* v, double* out, std::size_t n);
void free_max(const double* u, const double* v, double* out, std::size_t n);
void bool_max(const double* u, const double* v, double* out, std::size_t n);
void mix(double w, const double* u, const double* v, double* out, std::size_t n);
void free_power(double t, const double* u, double* out, std::size_t n);
void bool_power(double t, const double* u, double* out, std::size_t n);
void b1_fused(const double* u, double* out, std::size_t n);
void b1_inverse(const double* u, double* out, std::size_t n);
}  // namespace scalar

namespace avx2 {

#if MAXALG_X86

bool available() { return __builtin_cpu_supports("avx2") != 0; }

namespace {

// min(max(x, 0), 1). MAXPD/MINPD return the second operand on equality, so
// -0.0 normalizes to +0.0 and NaN lanes (masked out by callers) become 0,
// matching the scalar clamp01.
__attribute__((target("avx2"))) inline __m256d vclamp01(__m256d x) {
  const __m256d zero = _mm256_setzero_pd();
  const __m256d one = _mm256_set1_pd(1.0);
  return _mm256_min_pd(_mm256_max_pd(x, zero), one);
}

}  // namespace

__attribute__((target("avx2"))) void classical_max(const double* u,
                                                   const double* v, double* out,
                                                   std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d a = _mm256_loadu_pd(u + i);
    __m256d b = _mm256_loadu_pd(v + i);
    _mm256_storeu_pd(out + i, vclamp01(_mm256_mul_pd(a, b)));
  }
  scalar::classical_max(u + i, v + i, out + i, n - i);
}

__attribute__((target("avx2"))) void free_max(const double* u, const double* v,
                                              double* out, std::size_t n) {
  const __m256d one = _mm256_set1_pd(1.0);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d a = _mm256_loadu_pd(u + i);
    __m256d b = _mm256_loadu_pd(v + i);
    __m256d r = _mm256_sub_pd(_mm256_add_pd(a, b), one);
    _mm256_storeu_pd(out + i, vclamp01(r));
  }
  scalar::free_max(u + i, v + i, out + i, n - i);
}

__attribute__((target("avx2"))) void bool_max(const double* u, const double* v,
                                              double* out, std::size_t n) {
  const __m256d zero = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d a = _mm256_loadu_pd(u + i);
    __m256d b = _mm256_loadu_pd(v + i);
    __m256d w = _mm256_mul_pd(a, b);
    __m256d den = _mm256_sub_pd(_mm256_add_pd(a, b), w);
    __m256d r = vclamp01(_mm256_div_pd(w, den));
    // Convention: result is 0 when either argument is 0 (covers the 0/0 lane).
    __m256d mask = _mm256_or_pd(_mm256_cmp_pd(a, zero, _CMP_EQ_OQ),
                                _mm256_cmp_pd(b, zero, _CMP_EQ_OQ));
    _mm256_storeu_pd(out + i, _mm256_blendv_pd(r, zero, mask));
  }
  scalar::bool_max(u + i, v + i, out + i, n - i);
}

__attribute__((target("avx2"))) void mix(double w, const double* u,
                                         const double* v, double* out,
                                         std::size_t n) {
  const __m256d wa = _mm256_set1_pd(1.0 - w);
  const __m256d wb = _mm256_set1_pd(w);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d a = _mm256_loadu_pd(u + i);
    __m256d b = _mm256_loadu_pd(v + i);
    __m256d r = _mm256_add_pd(_mm256_mul_pd(wa, a), _mm256_mul_pd(wb, b));
    _mm256_storeu_pd(out + i, vclamp01(r));
  }
  scalar::mix(w, u + i, v + i, out + i, n - i);
}

__attribute__((target("avx2"))) void free_power(double t, const double* u,
                                                double* out, std::size_t n) {
  const __m256d vt = _mm256_set1_pd(t);
  const __m256d vtm1 = _mm256_set1_pd(t - 1.0);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d a = _mm256_loadu_pd(u + i);
    __m256d r = _mm256_sub_pd(_mm256_mul_pd(vt, a), vtm1);
    _mm256_storeu_pd(out + i, vclamp01(r));
  }
  scalar::free_power(t, u + i, out + i, n - i);
}

__attribute__((target("avx2"))) void bool_power(double t, const double* u,
                                                double* out, std::size_t n) {
  const __m256d vt = _mm256_set1_pd(t);
  const __m256d vtm1 = _mm256_set1_pd(t - 1.0);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d a = _mm256_loadu_pd(u + i);
    __m256d den = _mm256_sub_pd(vt, _mm256_mul_pd(vtm1, a));
    _mm256_storeu_pd(out + i, vclamp01(_mm256_div_pd(a, den)));
  }
  scalar::bool_power(t, u + i, out + i, n - i);
}

__attribute__((target("avx2"))) void b1_fused(const double* u, double* out,
                                              std::size_t n) {
  const __m256d zero = _mm256_setzero_pd();
  const __m256d one = _mm256_set1_pd(1.0);
  const __m256d two = _mm256_set1_pd(2.0);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d a = _mm256_loadu_pd(u + i);
    __m256d r = vclamp01(_mm256_sub_pd(two, _mm256_div_pd(one, a)));
    __m256d mask = _mm256_cmp_pd(a, zero, _CMP_EQ_OQ);  // 2 - 1/0 lanes -> 0
    _mm256_storeu_pd(out + i, _mm256_blendv_pd(r, zero, mask));
  }
  scalar::b1_fused(u + i, out + i, n - i);
}

__attribute__((target("avx2"))) void b1_inverse(const double* u, double* out,
                                                std::size_t n) {
  const __m256d one = _mm256_set1_pd(1.0);
  const __m256d two = _mm256_set1_pd(2.0);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d a = _mm256_loadu_pd(u + i);
    __m256d r = _mm256_div_pd(one, _mm256_sub_pd(two, a));
    _mm256_storeu_pd(out + i, vclamp01(r));
  }
  scalar::b1_inverse(u + i, out + i, n - i);
}

#else  // !MAXALG_X86

bool available() { return false; }

void classical_max(const double* u, const double* v, double* out, std::size_t n) {
  scalar::classical_max(u, v, out, n);
}
void free_max(const double* u, const double* v, double* out, std::size_t n) {
  scalar::free_max(u, v, out, n);
}
void bool_max(const double* u, const double* v, double* out, std::size_t n) {
  scalar::bool_max(u, v, out, n);
}
void mix(double w, const double* u, const double* v, double* out, std::size_t n) {
  scalar::mix(w, u, v, out, n);
}
void free_power(double t, const double* u, double* out, std::size_t n) {
  scalar::free_power(t, u, out, n);
}
void bool_power(double t, const double* u, double* out, std::size_t n) {
  scalar::bool_power(t, u, out, n);
}
void b1_fused(const double* u, double* out, std::size_t n) {
  scalar::b1_fused(u, out, n);
}
void b1_inverse(const double* u, double* out, std::size_t n) {
  scalar::b1_inverse(u, out, n);
}

#endif

}  // namespace avx2
}  // namespace maxalg::kernels
