#include "bornflea/doublewell.hpp"

#include <lapacke.h>

#include <algorithm>
#include <cmath>
#include <limits>

#include "bornflea/kernels.hpp"
#include "bornflea/parallel.hpp"
#include "bornflea/twostate.hpp"

namespace bornflea::doublewell {
namespace {

// complex region integral int_R conj(a) b dx of the piecewise-linear
// interpolant of the product samples
cplx region_inner(const WaveFn& a, const WaveFn& b, Region r) {
  const Grid1D& g = a.grid;
  const double h = g.spacing();
  const double lo = r == Region::Right ? 0.0 : g.x_min;
  const double hi = r == Region::Right ? g.x_max : 0.0;
  std::vector<cplx> f(g.n);
  for (std::size_t i = 0; i < g.n; ++i)
    f[i] = std::conj(a.values[i]) * b.values[i];
  const double sa = (std::max(lo, g.x_min) - g.x_min) / h;
  const double sb = (std::min(hi, g.x_max) - g.x_min) / h;
  auto cell_partial = [&](std::size_t k, double u0, double u1) {
    return h * ((u1 - u0) * f[k] +
                0.5 * (u1 * u1 - u0 * u0) * (f[k + 1] - f[k]));
  };
  const auto ka = std::min(static_cast<std::size_t>(sa), g.n - 2);
  const auto kb = std::min(static_cast<std::size_t>(sb), g.n - 2);
  if (ka == kb) return cell_partial(ka, sa - ka, sb - kb);
  cplx m = cell_partial(ka, sa - ka, 1.0);
  for (std::size_t k = ka + 1; k < kb; ++k) m += 0.5 * h * (f[k] + f[k + 1]);
  m += cell_partial(kb, 0.0, sb - kb);
  return m;
}

}  // namespace

double FleaSpec::operator()(double x) const {
  const double u = (x - center) / width;
  const double s = 1.0 - u * u;
  return s > 0.0 ? amplitude * std::exp(1.0 - 1.0 / s) : 0.0;
}

void FleaSpec::validate(double a) const {
  if (!(width > 0.0) || !std::isfinite(amplitude) || !std::isfinite(center))
    throw InvalidInputError("FleaSpec: width must be positive and fields finite");
  if (std::abs(center - a) <= width || std::abs(center + a) <= width)
    throw InvalidInputError(
        "FleaSpec: support [center-width, center+width] must exclude both "
        "minima +-a");
}

double PotentialSpec::operator()(double x) const {
  const double q = x * x - a * a;
  double v = 0.25 * lambda * q * q;
  if (flea) v += (*flea)(x);
  return v;
}

void PotentialSpec::validate() const {
  if (!(lambda > 0.0) || !(a > 0.0))
    throw InvalidInputError("PotentialSpec: lambda and a must be positive");
  if (flea) flea->validate(a);
}

void TridiagOperator::apply(const cplx* in, cplx* out) const {
  const std::size_t n = grid.n;
  out[0] = diag[0] * in[0] + offdiag * in[1];
  for (std::size_t i = 1; i + 1 < n; ++i)
    out[i] = offdiag * in[i - 1] + diag[i] * in[i] + offdiag * in[i + 1];
  out[n - 1] = offdiag * in[n - 2] + diag[n - 1] * in[n - 1];
}

TridiagOperator build_hamiltonian(const Grid1D& grid, const PotentialSpec& pot,
                                  double hbar, double mass) {
  pot.validate();
  if (!(hbar > 0.0) || !(mass > 0.0))
    throw InvalidInputError("build_hamiltonian: hbar, mass must be positive");
  // ground-scale energy of the well: the boundary potential must dominate it
  // so Dirichlet walls sit deep in the forbidden region
  const double omega_well = std::sqrt(2.0 * pot.lambda * pot.a * pot.a / mass);
  const double e0_est = 0.5 * hbar * omega_well;
  const double edge = std::min(pot(grid.x_min), pot(grid.x_max));
  if (edge < 20.0 * e0_est) {
    const double need = std::sqrt(
        pot.a * pot.a + std::sqrt(80.0 * e0_est / pot.lambda));
    throw DomainError(
        "build_hamiltonian: domain too small, boundary potential " +
        std::to_string(edge) + " < 20x ground scale; extend to |x| >= " +
        std::to_string(need));
  }

  TridiagOperator H{grid, hbar, mass, std::vector<double>(grid.n), 0.0};
  const double h = grid.spacing();
  const double kin = hbar * hbar / (2.0 * mass * h * h);
  H.offdiag = -kin;
  for (std::size_t i = 0; i < grid.n; ++i) H.diag[i] = 2.0 * kin + pot(grid.x(i));
  return H;
}

SpectralDecomposition solve_eigen(const TridiagOperator& H, std::size_t K,
                                  double sign_anchor_a) {
  const std::size_t n = H.grid.n;
  if (K < 2 || K > n / 4)
    throw InvalidInputError("solve_eigen: need 2 <= K << n_points");

  std::vector<double> d = H.diag;
  std::vector<double> e(n - 1, H.offdiag);
  std::vector<double> w(n);
  std::vector<double> z(n * K);
  std::vector<lapack_int> isuppz(2 * K);
  lapack_int found = 0;
  const double abstol = 2.0 * LAPACKE_dlamch('S');
  const lapack_int info = LAPACKE_dstevr(
      LAPACK_COL_MAJOR, 'V', 'I', static_cast<lapack_int>(n), d.data(),
      e.data(), 0.0, 0.0, 1, static_cast<lapack_int>(K), abstol, &found,
      w.data(), z.data(), static_cast<lapack_int>(n), isuppz.data());
  if (info != 0 || found != static_cast<lapack_int>(K))
    throw NumericError("solve_eigen: dstevr failed (info " +
                       std::to_string(info) + ", found " +
                       std::to_string(found) + " of " + std::to_string(K) + ")");

  SpectralDecomposition sd;
  sd.hbar = H.hbar;
  sd.K = K;
  sd.energies.assign(w.begin(), w.begin() + static_cast<long>(K));
  for (std::size_t k = 0; k + 1 < K; ++k)
    if (!(sd.energies[k] < sd.energies[k + 1]))
      throw NumericError("solve_eigen: spectrum not strictly ascending");

  const double h = H.grid.spacing();
  const double inv_sqrt_h = 1.0 / std::sqrt(h);
  const auto ia = static_cast<std::size_t>(std::clamp(
      std::llround((sign_anchor_a - H.grid.x_min) / h), 0ll,
      static_cast<long long>(n - 1)));
  sd.states.reserve(K);
  for (std::size_t k = 0; k < K; ++k) {
    WaveFn psi{H.grid, std::vector<cplx>(n), H.hbar};
    const double* col = &z[k * n];
    const double anchor = col[ia];
    if (std::abs(anchor) < 1e-12)
      throw NumericError(
          "solve_eigen: eigenfunction vanishes at the +a sign anchor");
    const double sgn = anchor > 0.0 ? inv_sqrt_h : -inv_sqrt_h;
    for (std::size_t i = 0; i < n; ++i) psi.values[i] = sgn * col[i];
    if (std::abs(psi.values.front()) > 1e-8 || std::abs(psi.values.back()) > 1e-8)
      throw DomainError(
          "solve_eigen: eigenfunction does not decay at the boundary; widen "
          "the grid");
    sd.states.push_back(std::move(psi));
  }
  return sd;
}

void SpectralDecomposition::validate(const TridiagOperator& H) const {
  std::vector<cplx> out(H.grid.n);
  const double h = H.grid.spacing();
  for (std::size_t k = 0; k < K; ++k) {
    states[k].validate();
    for (std::size_t j = k; j < K; ++j) {
      const cplx ov = inner(states[k], states[j]);
      const double want = k == j ? 1.0 : 0.0;
      if (std::abs(ov - want) > 1e-8)
        throw NumericError("SpectralDecomposition: orthonormality violated");
    }
    H.apply(states[k].values.data(), out.data());
    double r2 = 0.0;
    for (std::size_t i = 0; i < H.grid.n; ++i)
      r2 += std::norm(out[i] - energies[k] * states[k].values[i]);
    const double resid = std::sqrt(r2 * h);
    if (resid > 1e-6 * std::abs(energies[k]) + 1e-8)
      throw NumericError("SpectralDecomposition: residual gate failed");
  }
}

std::vector<double> grid_doubling_shifts(const PotentialSpec& pot, double hbar,
                                         double mass, const Grid1D& grid,
                                         std::size_t K) {
  const auto sd1 =
      solve_eigen(build_hamiltonian(grid, pot, hbar, mass), K, pot.a);
  const Grid1D fine(grid.x_min, grid.x_max, grid.n * 2);
  const auto sd2 =
      solve_eigen(build_hamiltonian(fine, pot, hbar, mass), K, pot.a);
  std::vector<double> shifts(K);
  for (std::size_t k = 0; k < K; ++k)
    shifts[k] = std::abs(sd1.energies[k] - sd2.energies[k]);
  return shifts;
}

std::pair<WaveFn, WaveFn> localized_states(const SpectralDecomposition& sd) {
  if (sd.K < 2) throw InvalidInputError("localized_states: need K >= 2");
  const Grid1D& g = sd.states[0].grid;
  WaveFn plus{g, std::vector<cplx>(g.n), sd.hbar};
  WaveFn minus{g, std::vector<cplx>(g.n), sd.hbar};
  const double r = 1.0 / std::sqrt(2.0);
  for (std::size_t i = 0; i < g.n; ++i) {
    plus.values[i] = r * (sd.states[0].values[i] + sd.states[1].values[i]);
    minus.values[i] = r * (sd.states[0].values[i] - sd.states[1].values[i]);
  }
  return {std::move(plus), std::move(minus)};
}

const char* to_string(FleaClass c) {
  switch (c) {
    case FleaClass::DPlus: return "D+";
    case FleaClass::DMinus: return "D-";
    default: return "ambiguous";
  }
}

FleaClassification classify_flea(const FleaSpec& flea, const ModelParams& p,
                                 const Grid1D& grid,
                                 std::span<const double> hbar_sweep,
                                 std::size_t K) {
  p.validate();
  flea.validate(p.a);
  const PotentialSpec pert{p.lambda, p.a, flea};
  const auto sd =
      solve_eigen(build_hamiltonian(grid, pert, p.hbar, p.mass), K, p.a);
  const double rm = region_mass(sd.states[0], Region::Right);

  FleaClassification out;
  out.right_mass = rm;
  out.cls = rm > 0.55   ? FleaClass::DPlus
            : rm < 0.45 ? FleaClass::DMinus
                        : FleaClass::Ambiguous;

  const PotentialSpec unpert{p.lambda, p.a, std::nullopt};
  for (double hb : hbar_sweep) {
    const auto sdp =
        solve_eigen(build_hamiltonian(grid, pert, hb, p.mass), 2, p.a);
    const auto sd0 =
        solve_eigen(build_hamiltonian(grid, unpert, hb, p.mass), 2, p.a);
    const auto [lp, lm] = localized_states(sd0);
    auto dist = [&](const WaveFn& a, const WaveFn& b) {
      double r2 = 0.0;
      for (std::size_t i = 0; i < grid.n; ++i)
        r2 += std::norm(a.values[i] - b.values[i]);
      return std::sqrt(r2 * grid.spacing());
    };
    out.diagnostics.push_back({hb, dist(sdp.states[0], lp) / hb,
                               dist(sdp.states[0], lm) / hb});
  }
  return out;
}

Coefficients coefficients(const WaveFn& psi0, const SpectralDecomposition& sd) {
  if (!(psi0.grid == sd.states[0].grid))
    throw InvalidInputError("coefficients: grid mismatch");
  Coefficients out;
  out.c.resize(sd.K);
  out.sum_sq = 0.0;
  out.tail_sq = 0.0;
  for (std::size_t k = 0; k < sd.K; ++k) {
    out.c[k] = inner(sd.states[k], psi0);
    out.sum_sq += std::norm(out.c[k]);
    if (k >= 2) out.tail_sq += std::norm(out.c[k]);
  }
  if (out.sum_sq > 1.0 + 1e-8)
    throw NumericError("coefficients: completeness bound exceeded");
  out.truncation_ok = out.sum_sq >= 0.999;
  return out;
}

WaveFn evolve_dw(const WaveFn& psi0, const SpectralDecomposition& sd,
                 double hbar, double t) {
  const Coefficients co = coefficients(psi0, sd);
  if (!co.truncation_ok)
    throw NumericError("evolve_dw: truncation deficit above tolerance "
                       "(sum |c|^2 < 0.999)");
  const Grid1D& g = psi0.grid;
  WaveFn out{g, std::vector<cplx>(g.n, cplx{0.0, 0.0}), sd.hbar};
  const auto& kern = kernels::active();
  for (std::size_t k = 0; k < sd.K; ++k) {
    const cplx amp = co.c[k] * std::polar(1.0, -sd.energies[k] * t / hbar);
    kern.caxpy(amp, sd.states[k].values.data(), out.values.data(), g.n);
  }
  return out;
}

double region_mass(const WaveFn& psi, Region r) {
  const Grid1D& g = psi.grid;
  return r == Region::Right ? density_mass(psi, 0.0, g.x_max)
                            : density_mass(psi, g.x_min, 0.0);
}

double diagonal_ensemble_occupation(const WaveFn& psi0,
                                    const SpectralDecomposition& sd, Region r) {
  const Coefficients co = coefficients(psi0, sd);
  double occ = 0.0;
  for (std::size_t k = 0; k < sd.K; ++k)
    occ += std::norm(co.c[k]) * region_mass(sd.states[k], r);
  return occ;
}

double finite_time_occupation(const WaveFn& psi0,
                              const SpectralDecomposition& sd, Region r,
                              double T) {
  if (!(T > 0.0))
    throw InvalidInputError("finite_time_occupation: T must be positive");
  const Coefficients co = coefficients(psi0, sd);
  cplx occ{0.0, 0.0};
  for (std::size_t j = 0; j < sd.K; ++j) {
    for (std::size_t k = 0; k < sd.K; ++k) {
      const cplx rjk = region_inner(sd.states[j], sd.states[k], r);
      const cplx avg =
          j == k ? cplx{1.0, 0.0}
                 : time_average_phase(
                       (sd.energies[j] - sd.energies[k]) / sd.hbar, T);
      occ += std::conj(co.c[j]) * co.c[k] * avg * rjk;
    }
  }
  return occ.real();
}

void FleaDistribution::validate(double a) const {
  if (!(amplitude.lo() > 0.0))
    throw InvalidInputError(
        "FleaDistribution: amplitude law must be bounded away from 0");
  if (!(sign_weight >= 0.0 && sign_weight <= 1.0))
    throw InvalidInputError("FleaDistribution: sign weight must be in [0,1]");
  double w_hi;
  if (std::holds_alternative<double>(width)) {
    w_hi = std::get<double>(width);
    if (!(w_hi > 0.0))
      throw InvalidInputError("FleaDistribution: fixed width must be positive");
  } else {
    const DensityRV& wlaw = std::get<DensityRV>(width);
    if (!(wlaw.lo() > 0.0))
      throw InvalidInputError("FleaDistribution: width law must be positive");
    w_hi = wlaw.hi();
  }
  // union of all sampled supports must exclude both minima
  const double lo = center.lo() - w_hi, hi = center.hi() + w_hi;
  if ((a >= lo && a <= hi) || (-a >= lo && -a <= hi))
    throw InvalidInputError(
        "FleaDistribution: some sampled flea would cover a minimum");
}

FleaSpec FleaDistribution::sample(Philox& rng) const {
  // fixed draw order keeps streams reproducible
  const double amp = amplitude.sample(rng);
  const double ctr = center.sample(rng);
  const double wid = std::holds_alternative<double>(width)
                         ? std::get<double>(width)
                         : std::get<DensityRV>(width).sample(rng);
  const double sgn = rng.next_double() < sign_weight ? 1.0 : -1.0;
  return {sgn * amp, ctr, wid};
}

BornResult born_experiment(const FleaDistribution& dist, const BornOptions& opt,
                           const ModelParams& base, const Grid1D& grid) {
  base.validate();
  dist.validate(base.a);
  if (!(opt.alpha2 > 0.0 && opt.alpha2 < 1.0))
    throw InvalidInputError("born_experiment: alpha2 must lie in (0,1)");
  if (opt.n_samples < 1 || opt.hbar_list.empty())
    throw InvalidInputError("born_experiment: need samples and hbar values");

  const double alpha = std::sqrt(opt.alpha2);
  const double beta = std::sqrt(1.0 - opt.alpha2);
  const double nan = std::numeric_limits<double>::quiet_NaN();

  BornResult result;
  result.rows.resize(opt.hbar_list.size() * opt.n_samples);

  for (std::size_t hi = 0; hi < opt.hbar_list.size(); ++hi) {
    const double hbar = opt.hbar_list[hi];
    const PotentialSpec unpert{base.lambda, base.a, std::nullopt};
    const auto sd0 =
        solve_eigen(build_hamiltonian(grid, unpert, hbar, base.mass), opt.K,
                    base.a);
    const auto [loc_plus, loc_minus] = localized_states(sd0);
    WaveFn psi0{grid, std::vector<cplx>(grid.n), hbar};
    for (std::size_t i = 0; i < grid.n; ++i)
      psi0.values[i] =
          alpha * loc_plus.values[i] + beta * loc_minus.values[i];

    // test observables concentrated at the two outcome points (+-a, 0)
    const double omega_well =
        std::sqrt(2.0 * base.lambda * base.a * base.a / base.mass);
    const double rp = 6.0 * std::sqrt(0.5 * hbar * omega_well * base.mass);
    const double rx = 0.55 * base.a;
    const auto f_plus =
        wigner::TestObservable::bump(base.a, 0.0, rx, rp, "plus");
    const auto f_minus =
        wigner::TestObservable::bump(-base.a, 0.0, rx, rp, "minus");

    BornRow* rows = &result.rows[hi * opt.n_samples];
    parallel_for(opt.n_samples, opt.threads, [&, hbar, hi](std::size_t s) {
      Philox rng(opt.seed, (static_cast<std::uint64_t>(hi) << 48) | s);
      const FleaSpec flea = dist.sample(rng);
      const PotentialSpec pert{base.lambda, base.a, flea};
      const auto sd =
          solve_eigen(build_hamiltonian(grid, pert, hbar, base.mass), opt.K,
                      base.a);
      const double rm = region_mass(sd.states[0], Region::Right);
      const Coefficients co = coefficients(psi0, sd);

      BornRow row;
      row.hbar = hbar;
      row.sample_id = s;
      row.flea = flea;
      row.cls = rm > 0.55   ? FleaClass::DPlus
                : rm < 0.45 ? FleaClass::DMinus
                            : FleaClass::Ambiguous;
      row.c0_sq = std::norm(co.c[0]);
      row.c1_sq = std::norm(co.c[1]);
      row.tail_sq = co.tail_sq;
      row.occ_right_diag = diagonal_ensemble_occupation(psi0, sd, Region::Right);
      const double gap = sd.energies[1] - sd.energies[0];
      row.occ_right_finite_t = finite_time_occupation(
          psi0, sd, Region::Right, opt.finite_t_factor * hbar / gap);
      if (opt.wigner_pairings) {
        std::vector<double> weights(sd.K);
        for (std::size_t k = 0; k < sd.K; ++k) weights[k] = std::norm(co.c[k]);
        const double wp = wigner::mixture_wigner_pair(sd.states, weights, f_plus);
        const double wm = wigner::mixture_wigner_pair(sd.states, weights, f_minus);
        row.wigner_right_weight = wp / (wp + wm);
      } else {
        row.wigner_right_weight = nan;
      }
      rows[s] = std::move(row);
    });

    BornSummary sum;
    sum.hbar = hbar;
    sum.n_used = 0;
    sum.n_ambiguous = 0;
    double acc = 0.0, acc2 = 0.0, accw = 0.0;
    for (std::size_t s = 0; s < opt.n_samples; ++s) {
      const BornRow& row = rows[s];
      if (row.cls == FleaClass::Ambiguous) {
        ++sum.n_ambiguous;
        continue;
      }
      ++sum.n_used;
      acc += row.occ_right_diag;
      acc2 += row.occ_right_diag * row.occ_right_diag;
      accw += row.wigner_right_weight;
    }
    if (sum.n_used == 0)
      throw NumericError(
          "born_experiment: experiment failed, every sampled flea was "
          "ambiguous");
    const double n = static_cast<double>(sum.n_used);
    sum.mean_right = acc / n;
    const double var = std::max(acc2 / n - sum.mean_right * sum.mean_right, 0.0);
    sum.std_error = sum.n_used > 1 ? std::sqrt(var / (n - 1.0)) : 0.0;
    sum.mean_wigner_right = opt.wigner_pairings ? accw / n : nan;
    sum.abs_gap = std::abs(sum.mean_right - opt.alpha2);
    result.summaries.push_back(sum);
  }
  return result;
}

GapHistogram gap_histogram(std::span<const double> gaps, std::size_t bins) {
  if (gaps.size() < 2 || bins < 2)
    throw InvalidInputError("gap_histogram: need data and bins");
  const auto [mn, mx] = std::minmax_element(gaps.begin(), gaps.end());
  GapHistogram h;
  h.counts.assign(bins, 0);
  h.edges.resize(bins + 1);
  const double lo = *mn, span = std::max(*mx - *mn, 1e-300);
  for (std::size_t b = 0; b <= bins; ++b)
    h.edges[b] = lo + span * static_cast<double>(b) / static_cast<double>(bins);
  for (double g : gaps) {
    auto b = static_cast<std::size_t>((g - lo) / span * static_cast<double>(bins));
    h.counts[std::min(b, bins - 1)]++;
  }
  auto first = h.counts.begin(), last = h.counts.end();
  while (first != last && *first == 0) ++first;
  while (last != first && *(last - 1) == 0) --last;
  h.interior_filled = std::find(first, last, 0u) == last;
  return h;
}

std::vector<SplittingRow> delta_splitting_check(const ModelParams& base,
                                                std::span<const double> hbars,
                                                const Grid1D& grid) {
  base.validate();
  const PotentialSpec unpert{base.lambda, base.a, std::nullopt};
  std::vector<SplittingRow> rows;
  for (double hb : hbars) {
    const auto sd =
        solve_eigen(build_hamiltonian(grid, unpert, hb, base.mass), 2, base.a);
    const double numeric = sd.energies[1] - sd.energies[0];
    ModelParams p = base;
    p.hbar = hb;
    const double asym = twostate::splitting(p).delta_hbar;
    rows.push_back({hb, numeric, asym, numeric / asym});
  }
  return rows;
}

}  // namespace bornflea::doublewell
