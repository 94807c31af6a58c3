#pragma once

#include <cstddef>
#include <vector>

#include "bornflea/grid.hpp"

namespace bornflea::oscillator {

// First K harmonic-oscillator eigenfunctions on the grid.  With m*omega held
// fixed the length scale sqrt(hbar/(m omega)) is shared by the whole omega
// family, so one basis serves every frequency; energies are hbar omega (n+1/2).
std::vector<WaveFn> hermite_basis(const Grid1D& grid, double hbar,
                                  double m_omega, std::size_t K);

WaveFn coherent_state(const Grid1D& grid, double hbar, double x0, double p0,
                      double m_omega = 1.0);

// expansion coefficients <basis_n, psi>
std::vector<cplx> expand(const WaveFn& psi, const std::vector<WaveFn>& basis);

// psi(t) = sum c_n e^{-i omega (n+1/2) t} basis_n
WaveFn evolve_ho(const std::vector<cplx>& coeffs,
                 const std::vector<WaveFn>& basis, double omega, double t);

}  // namespace bornflea::oscillator
