#include "bornflea/oscillator.hpp"

#include <cmath>
#include <numbers>

#include "bornflea/errors.hpp"
#include "bornflea/kernels.hpp"

namespace bornflea::oscillator {

std::vector<WaveFn> hermite_basis(const Grid1D& grid, double hbar,
                                  double m_omega, std::size_t K) {
  if (!(hbar > 0.0) || !(m_omega > 0.0) || K == 0)
    throw InvalidInputError("hermite_basis: bad parameters");
  const double ell = std::sqrt(hbar / m_omega);
  const double norm0 = std::pow(m_omega / (std::numbers::pi * hbar), 0.25);

  std::vector<WaveFn> basis(K, WaveFn{grid, std::vector<cplx>(grid.n), hbar});
  std::vector<double> prev(grid.n, 0.0), cur(grid.n), next(grid.n);
  for (std::size_t i = 0; i < grid.n; ++i) {
    const double u = grid.x(i) / ell;
    cur[i] = norm0 * std::exp(-0.5 * u * u);
    basis[0].values[i] = cur[i];
  }
  for (std::size_t n = 1; n < K; ++n) {
    const double c1 = std::sqrt(2.0 / static_cast<double>(n));
    const double c2 = std::sqrt(static_cast<double>(n - 1) / static_cast<double>(n));
    for (std::size_t i = 0; i < grid.n; ++i) {
      const double u = grid.x(i) / ell;
      next[i] = c1 * u * cur[i] - c2 * prev[i];
      basis[n].values[i] = next[i];
    }
    std::swap(prev, cur);
    std::swap(cur, next);
  }
  return basis;
}

WaveFn coherent_state(const Grid1D& grid, double hbar, double x0, double p0,
                      double m_omega) {
  if (!(hbar > 0.0) || !(m_omega > 0.0))
    throw InvalidInputError("coherent_state: bad parameters");
  WaveFn psi{grid, std::vector<cplx>(grid.n), hbar};
  for (std::size_t i = 0; i < grid.n; ++i) {
    const double x = grid.x(i);
    const double gauss = std::exp(-0.5 * m_omega * (x - x0) * (x - x0) / hbar);
    psi.values[i] = std::polar(gauss, p0 * x / hbar);
  }
  psi.normalize();
  return psi;
}

std::vector<cplx> expand(const WaveFn& psi, const std::vector<WaveFn>& basis) {
  std::vector<cplx> c(basis.size());
  for (std::size_t n = 0; n < basis.size(); ++n) c[n] = inner(basis[n], psi);
  return c;
}

WaveFn evolve_ho(const std::vector<cplx>& coeffs,
                 const std::vector<WaveFn>& basis, double omega, double t) {
  if (coeffs.size() != basis.size() || basis.empty())
    throw InvalidInputError("evolve_ho: coefficient/basis mismatch");
  WaveFn out{basis[0].grid, std::vector<cplx>(basis[0].grid.n, cplx{0.0, 0.0}),
             basis[0].hbar};
  const auto& k = kernels::active();
  for (std::size_t n = 0; n < basis.size(); ++n) {
    const cplx amp =
        coeffs[n] *
        std::polar(1.0, -omega * (static_cast<double>(n) + 0.5) * t);
    k.caxpy(amp, basis[n].values.data(), out.values.data(), out.values.size());
  }
  return out;
}

}  // namespace bornflea::oscillator
