#pragma once

#include <complex>
#include <cstddef>
#include <string_view>

namespace bornflea::kernels {

using cplx = std::complex<double>;

// Function table for the data-parallel inner loops shared by the modules:
// grid reductions, complex inner products, eigenbasis accumulation and
// Wigner row assembly.  One table is the scalar reference, the other the
// AVX2 variant; they agree up to floating-point reassociation and are
// equivalence-tested against each other.
struct Ops {
  // sum a[i] * b[i]
  double (*dot)(const double* a, const double* b, std::size_t n);
  // sum |v[i] - c|
  double (*sum_abs_dev)(const double* v, double c, std::size_t n);
  // sum conj(a[i]) * b[i]
  cplx (*cdot)(const cplx* a, const cplx* b, std::size_t n);
  // y[i] += alpha * x[i]
  void (*caxpy)(cplx alpha, const cplx* x, cplx* y, std::size_t n);
  // out[i] = |x[i]|^2
  void (*abs2)(const cplx* x, double* out, std::size_t n);
  // g[j-1] = conj(bra[i+j]) * ket[i-j] for j = 1..jm   (Wigner row, y > 0 half)
  void (*wigner_row)(const cplx* bra, const cplx* ket, std::size_t i,
                     std::size_t jm, cplx* g);
  const char* name;
};

const Ops& scalar_ops();
#if defined(__x86_64__) || defined(_M_X64)
const Ops& avx2_ops();
#endif

// Active table: AVX2 when the CPU supports it, scalar otherwise.
// BORNFLEA_KERNELS=scalar in the environment forces the reference path.
const Ops& active();
void force_scalar(bool on);  // test hook
std::string_view selected_isa();

}  // namespace bornflea::kernels
