#if defined(__x86_64__) || defined(_M_X64)

#include "bornflea/kernels.hpp"

#include <immintrin.h>

#include <cmath>

namespace bornflea::kernels {
namespace {

inline double hsum(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  lo = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(lo, _mm_unpackhi_pd(lo, lo)));
}

double dot_avx2(const double* a, const double* b, std::size_t n) {
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc0);
    acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i + 4), _mm256_loadu_pd(b + i + 4), acc1);
  }
  for (; i + 4 <= n; i += 4)
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc0);
  double s = hsum(_mm256_add_pd(acc0, acc1));
  for (; i < n; ++i) s += a[i] * b[i];
  return s;
}

double sum_abs_dev_avx2(const double* v, double c, std::size_t n) {
  const __m256d cv = _mm256_set1_pd(c);
  const __m256d absmask = _mm256_castsi256_pd(_mm256_set1_epi64x(0x7fffffffffffffffLL));
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d d = _mm256_sub_pd(_mm256_loadu_pd(v + i), cv);
    acc = _mm256_add_pd(acc, _mm256_and_pd(d, absmask));
  }
  double s = hsum(acc);
  for (; i < n; ++i) s += std::abs(v[i] - c);
  return s;
}

// Two interleaved complex per 256-bit lane.  conj(a)*b accumulates as
//   re: ar*br + ai*bi   (even slots)
//   im: ar*bi - ai*br   (odd slots)
cplx cdot_avx2(const cplx* a, const cplx* b, std::size_t n) {
  const double* pa = reinterpret_cast<const double*>(a);
  const double* pb = reinterpret_cast<const double*>(b);
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    __m256d va = _mm256_loadu_pd(pa + 2 * i);
    __m256d vb = _mm256_loadu_pd(pb + 2 * i);
    __m256d a_re = _mm256_movedup_pd(va);          // [ar0 ar0 ar1 ar1]
    __m256d a_im = _mm256_permute_pd(va, 0xF);     // [ai0 ai0 ai1 ai1]
    __m256d b_sw = _mm256_permute_pd(vb, 0x5);     // [bi0 br0 bi1 br1]
    __m256d t = _mm256_mul_pd(a_im, b_sw);         // [ai*bi ai*br ...]
    acc = _mm256_add_pd(acc, _mm256_fmsubadd_pd(a_re, vb, t));
  }
  double re = acc[0] + acc[2];
  double im = acc[1] + acc[3];
  for (; i < n; ++i) {
    const double ar = a[i].real(), ai = a[i].imag();
    const double br = b[i].real(), bi = b[i].imag();
    re += ar * br + ai * bi;
    im += ar * bi - ai * br;
  }
  return {re, im};
}

void caxpy_avx2(cplx alpha, const cplx* x, cplx* y, std::size_t n) {
  const double sr = alpha.real(), si = alpha.imag();
  const __m256d vr = _mm256_set1_pd(sr);
  const __m256d vi = _mm256_set1_pd(si);
  const double* px = reinterpret_cast<const double*>(x);
  double* py = reinterpret_cast<double*>(y);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    __m256d vx = _mm256_loadu_pd(px + 2 * i);
    __m256d x_sw = _mm256_permute_pd(vx, 0x5);
    __m256d t = _mm256_mul_pd(vi, x_sw);           // [si*xi si*xr ...]
    __m256d prod = _mm256_fmaddsub_pd(vr, vx, t);  // [sr*xr-si*xi sr*xi+si*xr ...]
    _mm256_storeu_pd(py + 2 * i, _mm256_add_pd(_mm256_loadu_pd(py + 2 * i), prod));
  }
  for (; i < n; ++i) {
    const double xr = x[i].real(), xi = x[i].imag();
    y[i] += cplx{sr * xr - si * xi, sr * xi + si * xr};
  }
}

void abs2_avx2(const cplx* x, double* out, std::size_t n) {
  const double* px = reinterpret_cast<const double*>(x);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d v1 = _mm256_loadu_pd(px + 2 * i);
    __m256d v2 = _mm256_loadu_pd(px + 2 * i + 4);
    __m256d s1 = _mm256_mul_pd(v1, v1);
    __m256d s2 = _mm256_mul_pd(v2, v2);
    __m256d h = _mm256_hadd_pd(s1, s2);            // [|x0|^2 |x2|^2 |x1|^2 |x3|^2]
    _mm256_storeu_pd(out + i, _mm256_permute4x64_pd(h, 0xD8));
  }
  for (; i < n; ++i)
    out[i] = x[i].real() * x[i].real() + x[i].imag() * x[i].imag();
}

void wigner_row_avx2(const cplx* bra, const cplx* ket, std::size_t i,
                     std::size_t jm, cplx* g) {
  const double* pb = reinterpret_cast<const double*>(bra);
  const double* pk = reinterpret_cast<const double*>(ket);
  double* pg = reinterpret_cast<double*>(g);
  std::size_t j = 1;
  for (; j + 2 <= jm + 1; j += 2) {
    __m256d va = _mm256_loadu_pd(pb + 2 * (i + j));          // [a_j a_{j+1}]
    __m256d vm = _mm256_loadu_pd(pk + 2 * (i - j - 1));      // [b_{j+1} b_j]
    __m256d vb = _mm256_permute2f128_pd(vm, vm, 0x01);       // [b_j b_{j+1}]
    __m256d a_re = _mm256_movedup_pd(va);
    __m256d a_im = _mm256_permute_pd(va, 0xF);
    __m256d b_sw = _mm256_permute_pd(vb, 0x5);
    __m256d t = _mm256_mul_pd(a_im, b_sw);
    _mm256_storeu_pd(pg + 2 * (j - 1), _mm256_fmsubadd_pd(a_re, vb, t));
  }
  for (; j <= jm; ++j) {
    const cplx a = bra[i + j];
    const cplx b = ket[i - j];
    g[j - 1] = cplx{a.real() * b.real() + a.imag() * b.imag(),
                    a.real() * b.imag() - a.imag() * b.real()};
  }
}

}  // namespace

const Ops& avx2_ops() {
  static const Ops ops{dot_avx2,   sum_abs_dev_avx2, cdot_avx2,
                       caxpy_avx2, abs2_avx2,        wigner_row_avx2,
                       "avx2"};
  return ops;
}

}  // namespace bornflea::kernels

#endif  // x86_64
