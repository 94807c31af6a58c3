#include "bornflea/grid.hpp"

#include <algorithm>
#include <cmath>

#include "bornflea/errors.hpp"
#include "bornflea/kernels.hpp"

namespace bornflea {

Grid1D::Grid1D(double xmin, double xmax, std::size_t npts)
    : x_min(xmin), x_max(xmax), n(npts) {
  if (!(x_max > x_min)) throw InvalidInputError("Grid1D: x_max must exceed x_min");
  if (n < 2 || (n & (n - 1)) != 0)
    throw InvalidInputError("Grid1D: n_points must be a power of two >= 2");
}

double trapezoid(std::span<const double> f, double h) {
  if (f.size() < 2) return 0.0;
  double s = 0.0;
  for (double v : f) s += v;
  s -= 0.5 * (f.front() + f.back());
  return s * h;
}

cplx inner(const WaveFn& a, const WaveFn& b) {
  if (!(a.grid == b.grid))
    throw InvalidInputError("inner: wavefunctions on different grids");
  const std::size_t n = a.values.size();
  cplx s = kernels::active().cdot(a.values.data(), b.values.data(), n);
  s -= 0.5 * (std::conj(a.values.front()) * b.values.front() +
              std::conj(a.values.back()) * b.values.back());
  return s * a.grid.spacing();
}

double WaveFn::norm() const {
  std::vector<double> d = abs_squared(*this);
  return std::sqrt(trapezoid(d, grid.spacing()));
}

void WaveFn::normalize() {
  const double nm = norm();
  if (!(nm > 0.0)) throw NumericError("WaveFn: zero norm");
  for (cplx& v : values) v /= nm;
}

void WaveFn::validate() const {
  if (values.size() != grid.n)
    throw InvalidInputError("WaveFn: value count does not match grid");
  if (!(hbar > 0.0)) throw InvalidInputError("WaveFn: hbar must be positive");
  if (std::abs(norm() - 1.0) > 1e-9)
    throw InvalidInputError("WaveFn: norm deviates from 1 beyond 1e-9");
  if (std::abs(values.front()) > 1e-8 || std::abs(values.back()) > 1e-8)
    throw InvalidInputError("WaveFn: boundary values above 1e-8 decay gate");
}

std::vector<double> abs_squared(const WaveFn& psi) {
  std::vector<double> out(psi.values.size());
  kernels::active().abs2(psi.values.data(), out.data(), psi.values.size());
  return out;
}

double density_mass(const WaveFn& psi, double a, double b) {
  const Grid1D& g = psi.grid;
  const double h = g.spacing();
  a = std::max(a, g.x_min);
  b = std::min(b, g.x_max);
  if (!(b > a)) return 0.0;
  const std::vector<double> d = abs_squared(psi);
  // integral of the piecewise-linear interpolant between fractional indices
  const double sa = (a - g.x_min) / h;
  const double sb = (b - g.x_min) / h;
  auto cell_partial = [&](std::size_t k, double u0, double u1) {
    const double d0 = d[k], d1 = d[k + 1];
    // int_{u0}^{u1} (d0 + u (d1 - d0)) h du  on the unit cell
    return h * ((u1 - u0) * d0 + 0.5 * (u1 * u1 - u0 * u0) * (d1 - d0));
  };
  const std::size_t ka = std::min(static_cast<std::size_t>(sa), g.n - 2);
  const std::size_t kb = std::min(static_cast<std::size_t>(sb), g.n - 2);
  if (ka == kb) return cell_partial(ka, sa - ka, sb - kb);
  double m = cell_partial(ka, sa - ka, 1.0);
  for (std::size_t k = ka + 1; k < kb; ++k)
    m += 0.5 * h * (d[k] + d[k + 1]);
  m += cell_partial(kb, 0.0, sb - kb);
  return m;
}

}  // namespace bornflea
