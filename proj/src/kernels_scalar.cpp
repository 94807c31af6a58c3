#include "bornflea/kernels.hpp"

#include <cmath>

namespace bornflea::kernels {
namespace {

double dot_scalar(const double* a, const double* b, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += a[i] * b[i];
  return s;
}

double sum_abs_dev_scalar(const double* v, double c, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += std::abs(v[i] - c);
  return s;
}

cplx cdot_scalar(const cplx* a, const cplx* b, std::size_t n) {
  double re = 0.0, im = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double ar = a[i].real(), ai = a[i].imag();
    const double br = b[i].real(), bi = b[i].imag();
    re += ar * br + ai * bi;
    im += ar * bi - ai * br;
  }
  return {re, im};
}

void caxpy_scalar(cplx alpha, const cplx* x, cplx* y, std::size_t n) {
  const double sr = alpha.real(), si = alpha.imag();
  for (std::size_t i = 0; i < n; ++i) {
    const double xr = x[i].real(), xi = x[i].imag();
    y[i] += cplx{sr * xr - si * xi, sr * xi + si * xr};
  }
}

void abs2_scalar(const cplx* x, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i)
    out[i] = x[i].real() * x[i].real() + x[i].imag() * x[i].imag();
}

void wigner_row_scalar(const cplx* bra, const cplx* ket, std::size_t i,
                       std::size_t jm, cplx* g) {
  for (std::size_t j = 1; j <= jm; ++j) {
    const cplx a = bra[i + j];  // conj factor
    const cplx b = ket[i - j];
    g[j - 1] = cplx{a.real() * b.real() + a.imag() * b.imag(),
                    a.real() * b.imag() - a.imag() * b.real()};
  }
}

}  // namespace

const Ops& scalar_ops() {
  static const Ops ops{dot_scalar,   sum_abs_dev_scalar, cdot_scalar,
                       caxpy_scalar, abs2_scalar,        wigner_row_scalar,
                       "scalar"};
  return ops;
}

}  // namespace bornflea::kernels
