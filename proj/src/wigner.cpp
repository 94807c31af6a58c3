#include "bornflea/wigner.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <memory>
#include <numbers>

#include "bornflea/errors.hpp"
#include "bornflea/fft.hpp"
#include "bornflea/kernels.hpp"
#include "bornflea/oscillator.hpp"

namespace bornflea::wigner {
namespace {

constexpr double kPi = std::numbers::pi;

std::size_t next_pow2(std::size_t v) {
  std::size_t p = 1;
  while (p < v) p <<= 1;
  return p;
}

// Geometry of the per-row DFT: y_j = j h for j in [-jm, jm], padded to
// length L, giving the native p spacing pi hbar / (L h).
struct RowPlan {
  std::size_t n;
  double h;
  double hbar;
  std::size_t L;
  double dp;
  std::size_t kmax;
  double scale;  // h / (pi hbar)
  std::size_t jm_cap = static_cast<std::size_t>(-1);
};

RowPlan make_plan(const WaveFn& psi, double p_extent, std::size_t n_p) {
  const double h = psi.grid.spacing();
  const double hbar = psi.hbar;
  if (!(p_extent > 0.0) || n_p < 2)
    throw InvalidInputError("wigner_transform: need p_extent > 0 and n_p >= 2");
  const double nyquist = kPi * hbar / (2.0 * h);
  if (p_extent >= nyquist)
    throw NumericError(
        "wigner_transform: aliasing - p_extent " + std::to_string(p_extent) +
        " reaches the resolvable bound pi*hbar/(2 dy) = " +
        std::to_string(nyquist) + "; refine the spatial grid");

  RowPlan pl;
  pl.n = psi.grid.n;
  pl.h = h;
  pl.hbar = hbar;
  pl.L = next_pow2(4 * pl.n);  // zero-padding factor >= 2 over the y span
  pl.dp = kPi * hbar / (static_cast<double>(pl.L) * h);
  pl.kmax = static_cast<std::size_t>(std::ceil(p_extent / pl.dp));
  while (2 * pl.kmax + 1 < n_p) {
    pl.L <<= 1;
    pl.dp = kPi * hbar / (static_cast<double>(pl.L) * h);
    pl.kmax = static_cast<std::size_t>(std::ceil(p_extent / pl.dp));
  }
  pl.kmax = std::min(pl.kmax, pl.L / 2 - 1);
  pl.scale = h / (kPi * hbar);
  return pl;
}

// One output row of the cross transform W_{bra,ket}(x_i, p_k) for
// k = -kmax..kmax; returns the values scaled and ordered by k.
void cross_row(const cplx* bra, const cplx* ket, std::size_t i,
               const RowPlan& pl, std::vector<cplx>& buf, cplx* out) {
  const std::size_t jm = std::min({i, pl.n - 1 - i, pl.jm_cap});
  std::fill(buf.begin(), buf.end(), cplx{0.0, 0.0});
  buf[0] = std::conj(bra[i]) * ket[i];
  const auto& k = kernels::active();
  if (jm > 0) {
    k.wigner_row(bra, ket, i, jm, buf.data() + 1);
    if (bra == ket) {
      for (std::size_t j = 1; j <= jm; ++j)
        buf[pl.L - j] = std::conj(buf[j]);
    } else {
      // g(-y) = conj(ket(x+y)) bra(x-y) conjugated
      std::vector<cplx> tmp(jm);
      k.wigner_row(ket, bra, i, jm, tmp.data());
      for (std::size_t j = 1; j <= jm; ++j)
        buf[pl.L - j] = std::conj(tmp[j - 1]);
    }
  }
  fft::transform(buf.data(), pl.L, +1);
  for (std::size_t idx = 0; idx < 2 * pl.kmax + 1; ++idx) {
    const long kk = static_cast<long>(idx) - static_cast<long>(pl.kmax);
    const std::size_t bin =
        kk >= 0 ? static_cast<std::size_t>(kk)
                : pl.L - static_cast<std::size_t>(-kk);
    out[idx] = pl.scale * buf[bin];
  }
}

}  // namespace

double WignerField::integral() const {
  double total = 0.0;
  for (std::size_t ix = 0; ix < nx; ++ix) {
    double row = 0.0;
    for (std::size_t ip = 0; ip < np; ++ip) row += at(ix, ip);
    row -= 0.5 * (at(ix, 0) + at(ix, np - 1));
    if (ix == 0 || ix == nx - 1) row *= 0.5;
    total += row;
  }
  return total * dx() * dp();
}

std::vector<double> WignerField::marginal_x() const {
  std::vector<double> m(nx);
  for (std::size_t ix = 0; ix < nx; ++ix) {
    double row = 0.0;
    for (std::size_t ip = 0; ip < np; ++ip) row += at(ix, ip);
    row -= 0.5 * (at(ix, 0) + at(ix, np - 1));
    m[ix] = row * dp();
  }
  return m;
}

double WignerField::max_abs() const {
  double m = 0.0;
  for (double v : values) m = std::max(m, std::abs(v));
  return m;
}

void WignerField::validate(const WaveFn* psi) const {
  if (values.size() != nx * np)
    throw InvalidInputError("WignerField: value count mismatch");
  if (max_imag_residue > 1e-9)
    throw InvalidInputError("WignerField: imaginary residue above 1e-9");
  if (std::abs(integral() - 1.0) > 1e-6)
    throw InvalidInputError("WignerField: mass deviates from 1 beyond 1e-6");
  if (max_abs() > 2.0 / hbar + 1e-9)
    throw InvalidInputError("WignerField: |W| exceeds the 2/hbar bound");
  if (psi != nullptr) {
    const std::vector<double> marg = marginal_x();
    const std::vector<double> dens = abs_squared(*psi);
    const double h = psi->grid.spacing();
    for (std::size_t ix = 0; ix < nx; ++ix) {
      const double x = x_min + dx() * static_cast<double>(ix);
      const auto i =
          static_cast<std::size_t>(std::llround((x - psi->grid.x_min) / h));
      if (std::abs(marg[ix] - dens[i]) > 1e-6)
        throw InvalidInputError("WignerField: position marginal deviates");
    }
  }
}

void WignerField::write_csv(std::ostream& os) const {
  char buf[512];
  os << "x_min,x_max,nx,p_min,p_max,np,hbar\n";
  std::snprintf(buf, sizeof buf, "%.17g,%.17g,%zu,%.17g,%.17g,%zu,%.17g\n",
                x_min, x_max, nx, p_min, p_max, np, hbar);
  os << buf;
  for (std::size_t ix = 0; ix < nx; ++ix) {
    for (std::size_t ip = 0; ip < np; ++ip) {
      std::snprintf(buf, sizeof buf, "%.17g", at(ix, ip));
      os << buf << (ip + 1 == np ? '\n' : ',');
    }
  }
}

void WignerField::write_binary(std::ostream& os) const {
  const char magic[4] = {'B', 'F', 'W', '1'};
  os.write(magic, 4);
  const std::uint64_t dims[2] = {nx, np};
  os.write(reinterpret_cast<const char*>(dims), sizeof dims);
  const double head[5] = {x_min, x_max, p_min, p_max, hbar};
  os.write(reinterpret_cast<const char*>(head), sizeof head);
  os.write(reinterpret_cast<const char*>(values.data()),
           static_cast<std::streamsize>(values.size() * sizeof(double)));
}

WignerField WignerField::read_binary(std::istream& is) {
  char magic[4];
  is.read(magic, 4);
  if (!is || magic[0] != 'B' || magic[1] != 'F' || magic[2] != 'W' ||
      magic[3] != '1')
    throw InvalidInputError("WignerField: bad binary magic");
  std::uint64_t dims[2];
  is.read(reinterpret_cast<char*>(dims), sizeof dims);
  double head[5];
  is.read(reinterpret_cast<char*>(head), sizeof head);
  WignerField f;
  f.nx = dims[0];
  f.np = dims[1];
  f.x_min = head[0];
  f.x_max = head[1];
  f.p_min = head[2];
  f.p_max = head[3];
  f.hbar = head[4];
  f.values.resize(f.nx * f.np);
  is.read(reinterpret_cast<char*>(f.values.data()),
          static_cast<std::streamsize>(f.values.size() * sizeof(double)));
  if (!is) throw InvalidInputError("WignerField: truncated binary dump");
  return f;
}

WignerField wigner_transform_windowed(const WaveFn& psi, double x_lo,
                                      double x_hi, double p_extent,
                                      std::size_t n_p) {
  psi.validate();
  const Grid1D& g = psi.grid;
  if (!(x_hi > x_lo) || x_lo < g.x_min - 1e-12 || x_hi > g.x_max + 1e-12)
    throw DomainError("wigner_transform: x window outside the grid");
  const double h = g.spacing();
  const auto i_lo = static_cast<std::size_t>(
      std::max(0.0, std::ceil((x_lo - g.x_min) / h - 1e-9)));
  const auto i_hi = static_cast<std::size_t>(std::min(
      static_cast<double>(g.n - 1), std::floor((x_hi - g.x_min) / h + 1e-9)));
  if (i_hi < i_lo) throw DomainError("wigner_transform: empty x window");

  const RowPlan pl = make_plan(psi, p_extent, n_p);
  WignerField f;
  f.x_min = g.x(i_lo);
  f.x_max = g.x(i_hi);
  f.nx = i_hi - i_lo + 1;
  f.np = 2 * pl.kmax + 1;
  f.p_min = -static_cast<double>(pl.kmax) * pl.dp;
  f.p_max = +static_cast<double>(pl.kmax) * pl.dp;
  f.hbar = psi.hbar;
  f.values.resize(f.nx * f.np);

  std::vector<cplx> buf(pl.L);
  std::vector<cplx> row(f.np);
  double residue = 0.0;
  for (std::size_t ix = 0; ix < f.nx; ++ix) {
    cross_row(psi.values.data(), psi.values.data(), i_lo + ix, pl, buf,
              row.data());
    for (std::size_t ip = 0; ip < f.np; ++ip) {
      f.values[ix * f.np + ip] = row[ip].real();
      residue = std::max(residue, std::abs(row[ip].imag()));
    }
  }
  f.max_imag_residue = residue;
  return f;
}

WignerField wigner_transform(const WaveFn& psi, double p_extent,
                             std::size_t n_p) {
  return wigner_transform_windowed(psi, psi.grid.x_min, psi.grid.x_max,
                                   p_extent, n_p);
}

namespace {

// C-infinity bump on (-1, 1), value 1 at 0.
double bump1(double u) {
  const double s = 1.0 - u * u;
  return s > 0.0 ? std::exp(1.0 - 1.0 / s) : 0.0;
}

// smooth step: 1 for v <= 0, 0 for v >= 1
double smooth_step_down(double v) {
  if (v <= 0.0) return 1.0;
  if (v >= 1.0) return 0.0;
  const double a = std::exp(-1.0 / (1.0 - v));
  const double b = std::exp(-1.0 / v);
  return a / (a + b);
}

}  // namespace

TestObservable TestObservable::bump(double cx, double cp, double rx, double rp,
                                    std::string label) {
  if (!(rx > 0.0) || !(rp > 0.0))
    throw InvalidInputError("TestObservable::bump: radii must be positive");
  TestObservable f;
  f.fn = [=](double x, double p) {
    return bump1((x - cx) / rx) * bump1((p - cp) / rp);
  };
  f.x_lo = cx - rx;
  f.x_hi = cx + rx;
  f.p_lo = cp - rp;
  f.p_hi = cp + rp;
  f.label = std::move(label);
  return f;
}

TestObservable TestObservable::plateau(double cx, double cp, double rx_flat,
                                       double rp_flat, double rx, double rp,
                                       std::string label) {
  if (!(rx > rx_flat) || !(rp > rp_flat) || !(rx_flat > 0.0) || !(rp_flat > 0.0))
    throw InvalidInputError("TestObservable::plateau: need 0 < flat < outer");
  TestObservable f;
  f.fn = [=](double x, double p) {
    const double ux =
        smooth_step_down((std::abs(x - cx) - rx_flat) / (rx - rx_flat));
    const double up =
        smooth_step_down((std::abs(p - cp) - rp_flat) / (rp - rp_flat));
    return ux * up;
  };
  f.x_lo = cx - rx;
  f.x_hi = cx + rx;
  f.p_lo = cp - rp;
  f.p_hi = cp + rp;
  f.label = std::move(label);
  return f;
}

double pair(const TestObservable& f, const WignerField& W) {
  if (f.x_lo < W.x_min - 1e-12 || f.x_hi > W.x_max + 1e-12 ||
      f.p_lo < W.p_min - 1e-12 || f.p_hi > W.p_max + 1e-12)
    throw DomainError("pair: observable support overflows the field box");
  const double hx = W.dx(), hp = W.dp();
  const auto ix0 = static_cast<std::size_t>(
      std::max(0.0, std::floor((f.x_lo - W.x_min) / hx)));
  const auto ix1 = static_cast<std::size_t>(std::min(
      static_cast<double>(W.nx - 1), std::ceil((f.x_hi - W.x_min) / hx)));
  const auto ip0 = static_cast<std::size_t>(
      std::max(0.0, std::floor((f.p_lo - W.p_min) / hp)));
  const auto ip1 = static_cast<std::size_t>(std::min(
      static_cast<double>(W.np - 1), std::ceil((f.p_hi - W.p_min) / hp)));

  std::vector<double> frow(ip1 - ip0 + 1);
  double total = 0.0;
  const auto& k = kernels::active();
  for (std::size_t ix = ix0; ix <= ix1; ++ix) {
    const double x = W.x_min + hx * static_cast<double>(ix);
    for (std::size_t ip = ip0; ip <= ip1; ++ip)
      frow[ip - ip0] = f(x, W.p_min + hp * static_cast<double>(ip));
    double row = k.dot(frow.data(), &W.values[ix * W.np + ip0], frow.size());
    if (ix == 0 || ix == W.nx - 1) row *= 0.5;  // field-edge trapezoid weight
    total += row;
  }
  return total * hx * hp;
}

std::pair<double, double> classical_flow_ho(double x, double p, double m,
                                            double omega, double t) {
  if (!(m > 0.0) || !(omega > 0.0))
    throw InvalidInputError("classical_flow_ho: m, omega must be positive");
  const double c = std::cos(omega * t), s = std::sin(omega * t);
  return {x * c + p / (m * omega) * s, -m * omega * x * s + p * c};
}

namespace {

constexpr std::size_t kOrbitPoints = 128;

template <typename Eval>
std::function<double(double, double)> orbit_average_impl(Eval eval,
                                                         double m_omega) {
  if (!(m_omega > 0.0))
    throw InvalidInputError("orbit_average: m*omega must be positive");
  return [eval, m_omega](double x, double p) {
    double acc = 0.0;
    for (std::size_t i = 0; i < kOrbitPoints; ++i) {
      const double t =
          2.0 * kPi * static_cast<double>(i) / static_cast<double>(kOrbitPoints);
      const double c = std::cos(t), s = std::sin(t);
      // omega = 1, m = m_omega keeps m*omega fixed and the period 2 pi
      acc += eval(x * c + p / m_omega * s, -m_omega * x * s + p * c);
    }
    return acc / static_cast<double>(kOrbitPoints);
  };
}

}  // namespace

std::function<double(double, double)> orbit_average(const WignerField& W,
                                                    double m_omega) {
  auto field = std::make_shared<const WignerField>(W);
  auto eval = [field](double x, double p) {
    const double sx = (x - field->x_min) / field->dx();
    const double sp = (p - field->p_min) / field->dp();
    if (sx < 0.0 || sp < 0.0 || sx > static_cast<double>(field->nx - 1) ||
        sp > static_cast<double>(field->np - 1))
      throw DomainError("orbit_average: orbit leaves the field grid");
    const auto ix = std::min(static_cast<std::size_t>(sx), field->nx - 2);
    const auto ip = std::min(static_cast<std::size_t>(sp), field->np - 2);
    const double wx = sx - static_cast<double>(ix);
    const double wp = sp - static_cast<double>(ip);
    return (1.0 - wx) * ((1.0 - wp) * field->at(ix, ip) +
                         wp * field->at(ix, ip + 1)) +
           wx * ((1.0 - wp) * field->at(ix + 1, ip) +
                 wp * field->at(ix + 1, ip + 1));
  };
  return orbit_average_impl(eval, m_omega);
}

std::function<double(double, double)> orbit_average(
    std::function<double(double, double)> g, double m_omega) {
  return orbit_average_impl(std::move(g), m_omega);
}

void PointMassMixture::validate() const {
  if (atoms.empty()) throw InvalidInputError("PointMassMixture: no atoms");
  double w = 0.0;
  for (const Atom& a : atoms) {
    if (a.weight < 0.0)
      throw InvalidInputError("PointMassMixture: negative weight");
    w += a.weight;
  }
  if (std::abs(w - 1.0) > 1e-12)
    throw InvalidInputError("PointMassMixture: weights must sum to 1");
}

double PointMassMixture::pair_with(const TestObservable& f) const {
  double s = 0.0;
  for (const Atom& a : atoms) s += a.weight * f(a.x, a.p);
  return s;
}

double mixture_wigner_pair(std::span<const WaveFn> states,
                           std::span<const double> weights,
                           const TestObservable& f) {
  if (states.empty() || states.size() != weights.size())
    throw InvalidInputError("mixture_wigner_pair: state/weight mismatch");
  const Grid1D& g = states[0].grid;
  for (const WaveFn& s : states)
    if (!(s.grid == g))
      throw InvalidInputError("mixture_wigner_pair: grids differ");
  const double pe = std::max(std::abs(f.p_lo), std::abs(f.p_hi));
  const double h = g.spacing();

  const auto ix0 = static_cast<std::size_t>(
      std::max(0.0, std::floor((f.x_lo - g.x_min) / h)));
  const auto ix1 = static_cast<std::size_t>(std::min(
      static_cast<double>(g.n - 1), std::ceil((f.x_hi - g.x_min) / h)));

  // The y sum only needs the union support of the states (products beyond
  // the 1e-9 tails are below the field tolerances), which shrinks the FFT.
  std::size_t lo = g.n - 1, hi = 0;
  for (std::size_t k = 0; k < states.size(); ++k) {
    if (weights[k] == 0.0) continue;
    std::size_t a = 0, b = g.n - 1;
    while (a < b && std::abs(states[k].values[a]) < 1e-9) ++a;
    while (b > a && std::abs(states[k].values[b]) < 1e-9) --b;
    lo = std::min(lo, a);
    hi = std::max(hi, b);
  }
  std::size_t max_jm = 0;
  for (std::size_t ix = ix0; ix <= ix1; ++ix) {
    const std::size_t room =
        std::min(ix >= lo ? ix - lo : 0, hi >= ix ? hi - ix : 0);
    max_jm = std::max(max_jm, room);
  }

  RowPlan pl = make_plan(states[0], pe, 2);
  pl.jm_cap = max_jm;
  pl.L = next_pow2(2 * (2 * max_jm + 1));
  pl.dp = kPi * pl.hbar / (static_cast<double>(pl.L) * h);
  pl.kmax = std::min(static_cast<std::size_t>(std::ceil(pe / pl.dp)),
                     pl.L / 2 - 1);

  std::vector<cplx> buf(pl.L);
  std::vector<cplx> row(2 * pl.kmax + 1);
  std::vector<double> frow(row.size());
  double total = 0.0;
  for (std::size_t ix = ix0; ix <= ix1; ++ix) {
    const double x = g.x(ix);
    bool any = false;
    for (std::size_t ip = 0; ip < frow.size(); ++ip) {
      const double p =
          (static_cast<double>(ip) - static_cast<double>(pl.kmax)) * pl.dp;
      frow[ip] = f(x, p);
      any = any || frow[ip] != 0.0;
    }
    if (!any) continue;
    for (std::size_t k = 0; k < states.size(); ++k) {
      if (weights[k] == 0.0) continue;
      cross_row(states[k].values.data(), states[k].values.data(), ix, pl, buf,
                row.data());
      double acc = 0.0;
      for (std::size_t ip = 0; ip < row.size(); ++ip)
        acc += frow[ip] * row[ip].real();
      total += weights[k] * acc;
    }
  }
  return total * h * pl.dp;
}

std::vector<Prop1Row> prop1_residual(double x0, double p0,
                                     const DensityRV& mu_omega,
                                     std::span<const double> hbar_list,
                                     std::span<const double> T_list,
                                     std::span<const TestObservable> fs,
                                     const Grid1D& grid) {
  if (fs.empty() || hbar_list.empty() || T_list.empty())
    throw InvalidInputError("prop1_residual: empty inputs");
  if (!(mu_omega.lo() > 0.0))
    throw InvalidInputError("prop1_residual: omega density must live on R+");

  // classical-limit target: orbit average of f through the coherent center
  std::vector<double> rhs(fs.size());
  for (std::size_t s = 0; s < fs.size(); ++s) {
    const TestObservable& f = fs[s];
    rhs[s] = orbit_average([&f](double x, double p) { return f(x, p); })(x0, p0);
  }

  std::vector<Prop1Row> rows;
  for (double hbar : hbar_list) {
    const double nbar = (x0 * x0 + p0 * p0) / (2.0 * hbar);
    const auto K = static_cast<std::size_t>(
        std::ceil(nbar + 8.0 * std::sqrt(nbar + 1.0) + 10.0));
    const auto basis = oscillator::hermite_basis(grid, hbar, 1.0, K);
    const WaveFn psi = oscillator::coherent_state(grid, hbar, x0, p0);
    const std::vector<cplx> c = oscillator::expand(psi, basis);
    double csum = 0.0;
    for (const cplx& v : c) csum += std::norm(v);
    if (csum < 1.0 - 1e-9)
      throw NumericError("prop1_residual: basis truncation deficit");

    // cross pairings F[s](m,n) for m <= n over the union of f supports
    const RowPlan pl = [&] {
      double pe = 0.0;
      for (const auto& f : fs)
        pe = std::max(pe, std::max(std::abs(f.p_lo), std::abs(f.p_hi)));
      return make_plan(psi, pe, 2);
    }();
    const double h = grid.spacing();
    double xlo = grid.x_max, xhi = grid.x_min;
    for (const auto& f : fs) {
      xlo = std::min(xlo, f.x_lo);
      xhi = std::max(xhi, f.x_hi);
    }
    const auto ix0 = static_cast<std::size_t>(
        std::max(0.0, std::floor((xlo - grid.x_min) / h)));
    const auto ix1 = static_cast<std::size_t>(std::min(
        static_cast<double>(grid.n - 1), std::ceil((xhi - grid.x_min) / h)));
    const std::size_t nrows = ix1 - ix0 + 1;
    const std::size_t npp = 2 * pl.kmax + 1;

    // f samples cached once per (row, p) lattice
    std::vector<std::vector<double>> fsamp(fs.size());
    for (std::size_t s = 0; s < fs.size(); ++s) {
      fsamp[s].resize(nrows * npp);
      for (std::size_t r = 0; r < nrows; ++r) {
        const double x = grid.x(ix0 + r);
        for (std::size_t ip = 0; ip < npp; ++ip) {
          const double p =
              (static_cast<double>(ip) - static_cast<double>(pl.kmax)) * pl.dp;
          fsamp[s][r * npp + ip] = fs[s](x, p);
        }
      }
    }

    std::vector<std::vector<cplx>> F(fs.size(),
                                     std::vector<cplx>(K * K, cplx{0, 0}));
    std::vector<cplx> buf(pl.L);
    std::vector<cplx> row(npp);
    for (std::size_t m = 0; m < K; ++m) {
      for (std::size_t n = m; n < K; ++n) {
        std::vector<cplx> acc(fs.size(), cplx{0, 0});
        for (std::size_t r = 0; r < nrows; ++r) {
          cross_row(basis[m].values.data(), basis[n].values.data(), ix0 + r,
                    pl, buf, row.data());
          for (std::size_t s = 0; s < fs.size(); ++s) {
            const double* fr = &fsamp[s][r * npp];
            cplx a{0, 0};
            for (std::size_t ip = 0; ip < npp; ++ip) a += fr[ip] * row[ip];
            acc[s] += a;
          }
        }
        for (std::size_t s = 0; s < fs.size(); ++s) {
          F[s][m * K + n] = acc[s] * (h * pl.dp);
          F[s][n * K + m] = std::conj(F[s][m * K + n]);
        }
      }
    }

    for (double T : T_list) {
      // mu-averaged off-diagonal phases: E[e^{i omega (m-n) T}]
      std::vector<cplx> phi(K, cplx{1.0, 0.0});
      for (std::size_t d = 1; d < K; ++d)
        phi[d] = char_fn(mu_omega, static_cast<double>(d) * T);
      for (std::size_t s = 0; s < fs.size(); ++s) {
        double lhs = 0.0;
        for (std::size_t m = 0; m < K; ++m)
          lhs += std::norm(c[m]) * F[s][m * K + m].real();
        for (std::size_t m = 0; m < K; ++m)
          for (std::size_t n = m + 1; n < K; ++n)
            lhs += 2.0 * (std::conj(c[m]) * c[n] * std::conj(phi[n - m]) *
                          F[s][m * K + n])
                             .real();
        rows.push_back(
            {hbar, T, fs[s].label, lhs, rhs[s], std::abs(lhs - rhs[s])});
      }
    }
  }
  return rows;
}

}  // namespace bornflea::wigner
