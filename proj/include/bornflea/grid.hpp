#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace bornflea {

using cplx = std::complex<double>;

// Uniform spatial grid with inclusive endpoints; n is a power of two so the
// Wigner transform's zero-padded FFT lengths stay powers of two.
struct Grid1D {
  double x_min, x_max;
  std::size_t n;

  Grid1D(double x_min, double x_max, std::size_t n);
  double spacing() const { return (x_max - x_min) / static_cast<double>(n - 1); }
  double x(std::size_t i) const { return x_min + spacing() * static_cast<double>(i); }
  bool operator==(const Grid1D&) const = default;
};

struct WaveFn {
  Grid1D grid;
  std::vector<cplx> values;
  double hbar;

  double norm() const;  // trapezoid L2 norm
  void normalize();
  // unit norm within 1e-9, |values| below 1e-8 at both boundaries
  void validate() const;
};

// trapezoid integral of samples with spacing h
double trapezoid(std::span<const double> f, double h);
// trapezoid <a, b> = int conj(a) b dx for same-grid wavefunctions
cplx inner(const WaveFn& a, const WaveFn& b);
// |psi|^2 samples
std::vector<double> abs_squared(const WaveFn& psi);
// integral of the piecewise-linear interpolant of |psi|^2 over [a, b]
double density_mass(const WaveFn& psi, double a, double b);

}  // namespace bornflea
