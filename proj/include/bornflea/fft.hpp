#pragma once

#include <complex>
#include <cstddef>

namespace bornflea::fft {

// In-place complex DFT of length n (any n; powers of two preferred).
// sign = +1 computes sum_j x[j] e^{+2 pi i jk/n} (FFTW "backward", no 1/n).
// Plans are cached per (n, sign) and execution is thread-safe.
void transform(std::complex<double>* data, std::size_t n, int sign);

}  // namespace bornflea::fft
