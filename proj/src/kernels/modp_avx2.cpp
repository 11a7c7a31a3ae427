// AVX2+FMA variants of the modular kernels. This file is compiled with
// -mavx2 -mfma; nothing here may run before the CPU check in
// avx2_kernels() has passed.

#include <immintrin.h>

#include "eisenprod/kernels/modp.hpp"

namespace eisenprod::kernels {

namespace {

// r = a*b mod p for residues in [0, p), p < 2^26.
inline __m256d mulmod4(__m256d a, __m256d b, __m256d p, __m256d pinv) {
  const __m256d prod = _mm256_mul_pd(a, b);
  const __m256d q = _mm256_floor_pd(_mm256_mul_pd(prod, pinv));
  __m256d r = _mm256_fnmadd_pd(q, p, prod);
  // q may be one too large or too small.
  r = _mm256_add_pd(r, _mm256_and_pd(p, _mm256_cmp_pd(r, _mm256_setzero_pd(), _CMP_LT_OQ)));
  r = _mm256_sub_pd(r, _mm256_and_pd(p, _mm256_cmp_pd(r, p, _CMP_GE_OQ)));
  return r;
}

inline double mulmod1(double a, double b, const Modulus& m) {
  return static_cast<double>(mul_mod(static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(b), m.p));
}

void mul_avx2(double* out, const double* a, const double* b, std::size_t n, const Modulus& m) {
  const __m256d p = _mm256_set1_pd(m.pd), pinv = _mm256_set1_pd(m.pinv);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    _mm256_storeu_pd(out + i, mulmod4(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), p, pinv));
  }
  for (; i < n; ++i) out[i] = mulmod1(a[i], b[i], m);
}

void submul_avx2(double* y, const double* f, const double* x, std::size_t n, const Modulus& m) {
  const __m256d p = _mm256_set1_pd(m.pd), pinv = _mm256_set1_pd(m.pinv);
  const __m256d zero = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d t = mulmod4(_mm256_loadu_pd(f + i), _mm256_loadu_pd(x + i), p, pinv);
    __m256d r = _mm256_sub_pd(_mm256_loadu_pd(y + i), t);
    r = _mm256_add_pd(r, _mm256_and_pd(p, _mm256_cmp_pd(r, zero, _CMP_LT_OQ)));
    _mm256_storeu_pd(y + i, r);
  }
  for (; i < n; ++i) {
    double r = y[i] - mulmod1(f[i], x[i], m);
    if (r < 0) r += m.pd;
    y[i] = r;
  }
}

void horner_avx2(double* acc, const double* x, double c, std::size_t n, const Modulus& m) {
  const __m256d p = _mm256_set1_pd(m.pd), pinv = _mm256_set1_pd(m.pinv);
  const __m256d cv = _mm256_set1_pd(c);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d r = _mm256_add_pd(mulmod4(_mm256_loadu_pd(acc + i), _mm256_loadu_pd(x + i), p, pinv), cv);
    r = _mm256_sub_pd(r, _mm256_and_pd(p, _mm256_cmp_pd(r, p, _CMP_GE_OQ)));
    _mm256_storeu_pd(acc + i, r);
  }
  for (; i < n; ++i) {
    double r = mulmod1(acc[i], x[i], m) + c;
    if (r >= m.pd) r -= m.pd;
    acc[i] = r;
  }
}

constexpr KernelTable kAvx2{"avx2", &mul_avx2, &submul_avx2, &horner_avx2};

}  // namespace

const KernelTable* avx2_kernels() {
  static const bool ok = __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
  return ok ? &kAvx2 : nullptr;
}

}  // namespace eisenprod::kernels
