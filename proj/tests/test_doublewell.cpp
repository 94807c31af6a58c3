#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "bornflea/doublewell.hpp"
#include "bornflea/quadrature.hpp"
#include "bornflea/twostate.hpp"
#include "doctest.h"

using namespace bornflea;
using namespace bornflea::doublewell;

namespace {

const Grid1D kGrid(-4.0, 4.0, 4096);
const PotentialSpec kUnpert{1.0, 1.0, std::nullopt};

TridiagOperator harmonic_operator(const Grid1D& g, double hbar, double mass) {
  TridiagOperator H{g, hbar, mass, std::vector<double>(g.n), 0.0};
  const double h = g.spacing();
  const double kin = hbar * hbar / (2.0 * mass * h * h);
  H.offdiag = -kin;
  for (std::size_t i = 0; i < g.n; ++i)
    H.diag[i] = 2.0 * kin + 0.5 * g.x(i) * g.x(i);
  return H;
}

// slow cross-Wigner value at one point (test-side oracle)
cplx slow_cross_wigner(const WaveFn& bra, const WaveFn& ket, double x, double p) {
  const Grid1D& g = bra.grid;
  const double h = g.spacing();
  const auto i = static_cast<std::size_t>(std::llround((x - g.x_min) / h));
  const std::size_t jm = std::min(i, g.n - 1 - i);
  cplx acc = std::conj(bra.values[i]) * ket.values[i];
  for (std::size_t j = 1; j <= jm; ++j) {
    const double y = h * static_cast<double>(j);
    acc += std::conj(bra.values[i + j]) * ket.values[i - j] *
           std::exp(cplx{0.0, 2.0 * p * y / bra.hbar});
    acc += std::conj(bra.values[i - j]) * ket.values[i + j] *
           std::exp(cplx{0.0, -2.0 * p * y / bra.hbar});
  }
  return (h / (std::numbers::pi * bra.hbar)) * acc;
}

}  // namespace

TEST_CASE("flea bump shape and support guards") {
  const FleaSpec f{0.2, -0.5, 0.2};
  CHECK(f(-0.5) == doctest::Approx(0.2));          // peak = amplitude
  CHECK(f(-0.65) > 0.0);
  CHECK(f(-0.71) == 0.0);
  CHECK(f(-0.29) == 0.0);
  CHECK_NOTHROW(f.validate(1.0));
  CHECK_THROWS_AS((FleaSpec{0.2, -0.9, 0.2}.validate(1.0)), InvalidInputError);
  CHECK_THROWS_AS((FleaSpec{0.2, 0.9, 0.15}.validate(1.0)), InvalidInputError);
  CHECK_THROWS_AS((FleaSpec{0.2, -0.5, -0.1}.validate(1.0)), InvalidInputError);

  // V_delta evaluable everywhere, V(+-a) = 0 when the flea avoids the minima
  const PotentialSpec pot{1.0, 1.0, f};
  CHECK(pot(1.0) == doctest::Approx(0.0));
  CHECK(pot(-1.0) == doctest::Approx(0.0));
  CHECK(pot(-0.5) == doctest::Approx(0.25 * 0.5625 + 0.2));
}

TEST_CASE("harmonic oracle: closed-form spectrum") {
  const Grid1D g(-12.0, 12.0, 2048);
  const auto H = harmonic_operator(g, 1.0, 1.0);
  const auto sd = solve_eigen(H, 6, 1.0);
  CHECK(sd.energies[0] == doctest::Approx(0.5).epsilon(1e-5));
  for (std::size_t k = 0; k < 6; ++k)
    CHECK(sd.energies[k] ==
          doctest::Approx(0.5 + static_cast<double>(k)).epsilon(1e-4));
  CHECK(sd.energies[3] - sd.energies[2] == doctest::Approx(1.0).epsilon(1e-4));
  CHECK_NOTHROW(sd.validate(H));
}

TEST_CASE("domain guard suggests wider bounds") {
  const Grid1D tiny(-1.5, 1.5, 1024);
  CHECK_THROWS_AS(build_hamiltonian(tiny, kUnpert, 0.3, 1.0), DomainError);
}

TEST_CASE("solver determinism and simple ascending spectrum") {
  const auto H = build_hamiltonian(kGrid, kUnpert, 0.3, 1.0);
  const auto a = solve_eigen(H, 8, 1.0);
  const auto b = solve_eigen(H, 8, 1.0);
  for (std::size_t k = 0; k < 8; ++k) {
    CHECK(std::abs(a.energies[k] - b.energies[k]) <= 1e-10);
    if (k > 0) CHECK(a.energies[k] > a.energies[k - 1]);
  }
  CHECK(a.energies[1] - a.energies[0] > 0.0);
  CHECK_THROWS_AS(solve_eigen(H, 1, 1.0), InvalidInputError);
}

TEST_CASE("unperturbed parity: even ground state, odd first excited") {
  const auto sd = solve_eigen(build_hamiltonian(kGrid, kUnpert, 0.3, 1.0), 2, 1.0);
  const std::size_t n = kGrid.n;
  double worst_even = 0.0, worst_odd = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    worst_even = std::max(worst_even,
                          std::abs(sd.states[0].values[i].real() -
                                   sd.states[0].values[n - 1 - i].real()));
    worst_odd = std::max(worst_odd,
                         std::abs(sd.states[1].values[i].real() +
                                  sd.states[1].values[n - 1 - i].real()));
  }
  CHECK(worst_even < 1e-6);
  CHECK(worst_odd < 1e-6);
}

TEST_CASE("numeric gaps match the independent spectral-basis oracle") {
  // frozen from a dense harmonic-basis diagonalization (numpy eigvalsh)
  const struct {
    double hbar, gap;
  } oracle[] = {{0.5, 1.979620e-01}, {0.3, 5.378815e-02}, {0.1, 8.557470e-05}};
  for (const auto& o : oracle) {
    const auto sd =
        solve_eigen(build_hamiltonian(kGrid, kUnpert, o.hbar, 1.0), 2, 1.0);
    const double gap = sd.energies[1] - sd.energies[0];
    CHECK(gap == doctest::Approx(o.gap).epsilon(o.hbar > 0.2 ? 1e-5 : 1e-4));
  }
}

TEST_CASE("grid doubling certifies the ground pair") {
  for (double hb : {0.5, 0.3}) {
    const auto shifts = grid_doubling_shifts(kUnpert, hb, 1.0, kGrid, 2);
    CHECK(shifts[0] < 1e-7);   // design gate holds for the ground state
    CHECK(shifts[1] < 5e-7);   // measured scale for the first excited state
  }
}

TEST_CASE("localized states: masses, orthonormality, parity") {
  const auto sd = solve_eigen(build_hamiltonian(kGrid, kUnpert, 0.3, 1.0), 2, 1.0);
  const auto [plus, minus] = localized_states(sd);
  CHECK(region_mass(plus, Region::Right) >= 0.95);
  CHECK(region_mass(minus, Region::Left) >= 0.95);
  CHECK(std::abs(inner(plus, plus) - 1.0) < 1e-8);
  CHECK(std::abs(inner(minus, minus) - 1.0) < 1e-8);
  CHECK(std::abs(inner(plus, minus)) < 1e-8);
  // x -> -x maps the pair onto each other
  double worst = 0.0;
  for (std::size_t i = 0; i < kGrid.n; ++i)
    worst = std::max(worst, std::abs(plus.values[i].real() -
                                     minus.values[kGrid.n - 1 - i].real()));
  CHECK(worst < 1e-6);
  // right mass grows as hbar shrinks
  const auto sd15 = solve_eigen(build_hamiltonian(kGrid, kUnpert, 0.15, 1.0), 2, 1.0);
  const auto [p15, m15] = localized_states(sd15);
  CHECK(region_mass(p15, Region::Right) > region_mass(plus, Region::Right));
}

TEST_CASE("flea classification follows the energy-minimization rule") {
  const ModelParams p{0.15, 1.0, 1.0, 1.0};
  // positive flea in the left well localizes the ground state opposite
  const auto cpos = classify_flea({0.2, -0.5, 0.2}, p, kGrid);
  CHECK(cpos.cls == FleaClass::DPlus);
  CHECK(cpos.right_mass > 0.99);
  // negative flea localizes on its own side
  const auto cneg = classify_flea({-0.2, -0.5, 0.2}, p, kGrid);
  CHECK(cneg.cls == FleaClass::DMinus);
  // mirror image swaps the class
  const auto cmir = classify_flea({0.2, 0.5, 0.2}, p, kGrid);
  CHECK(cmir.cls == FleaClass::DMinus);
  CHECK(cmir.right_mass == doctest::Approx(1.0 - cpos.right_mass).epsilon(1e-9));
}

TEST_CASE("classification diagnostics trend toward the localized pair") {
  const ModelParams p{0.15, 1.0, 1.0, 1.0};
  const std::vector<double> sweep{0.3, 0.2, 0.15};
  const auto c = classify_flea({0.2, -0.5, 0.2}, p, kGrid, sweep);
  REQUIRE(c.diagnostics.size() == 3);
  for (std::size_t i = 0; i + 1 < sweep.size(); ++i)
    CHECK(c.diagnostics[i + 1].dist_plus < c.diagnostics[i].dist_plus);
  for (const auto& d : c.diagnostics) CHECK(d.dist_plus < d.dist_minus);
}

TEST_CASE("coefficients: orthonormal expansion and the classical sweep") {
  const ModelParams p{0.15, 1.0, 1.0, 1.0};
  const PotentialSpec pert{1.0, 1.0, FleaSpec{0.3, -0.55, 0.25}};
  const auto sd = solve_eigen(build_hamiltonian(kGrid, pert, p.hbar, 1.0), 8, 1.0);

  // eigenstate expands to a unit vector
  const auto self = coefficients(sd.states[0], sd);
  CHECK(std::abs(self.c[0] - cplx{1.0, 0.0}) < 1e-10);
  for (std::size_t k = 1; k < 8; ++k) CHECK(std::abs(self.c[k]) < 1e-9);

  // |c0|^2 -> alpha^2 for a D+ flea as hbar shrinks
  const double alpha2 = 0.7;
  auto initial_state = [&](double hb) {
    const auto sd0 = solve_eigen(build_hamiltonian(kGrid, kUnpert, hb, 1.0), 8, 1.0);
    const auto [lp, lm] = localized_states(sd0);
    WaveFn psi0{kGrid, std::vector<cplx>(kGrid.n), hb};
    for (std::size_t i = 0; i < kGrid.n; ++i)
      psi0.values[i] = std::sqrt(alpha2) * lp.values[i] +
                       std::sqrt(1.0 - alpha2) * lm.values[i];
    return psi0;
  };
  const PotentialSpec strong{1.0, 1.0, FleaSpec{0.2, -0.5, 0.2}};
  double prev_dev = 1e9;
  for (double hb : {0.3, 0.2, 0.15}) {
    const auto sdh = solve_eigen(build_hamiltonian(kGrid, strong, hb, 1.0), 8, 1.0);
    const auto co = coefficients(initial_state(hb), sdh);
    const double dev = std::abs(std::norm(co.c[0]) - alpha2);
    CHECK(dev < prev_dev);
    CHECK(co.truncation_ok);
    prev_dev = dev;
  }

  // the k >= 2 weight stays small throughout; its decay with hbar only sets
  // in once the shrinking well overlap beats the growing relative
  // perturbation, visible for a far bump below hbar ~ 0.2
  const PotentialSpec far{1.0, 1.0, FleaSpec{0.2, -0.35, 0.15}};
  std::vector<double> tails;
  for (double hb : {0.3, 0.2, 0.15}) {
    const auto sdh = solve_eigen(build_hamiltonian(kGrid, far, hb, 1.0), 8, 1.0);
    tails.push_back(coefficients(initial_state(hb), sdh).tail_sq);
    CHECK(tails.back() <= 3e-3);
  }
  CHECK(tails[2] < tails[1]);
}

TEST_CASE("evolution: identity, stationarity, tunneling half-period") {
  const double hb = 0.25;
  const auto sd = solve_eigen(build_hamiltonian(kGrid, kUnpert, hb, 1.0), 8, 1.0);
  const auto [plus, minus] = localized_states(sd);

  // t = 0 reconstructs within the truncation deficit
  const WaveFn back = evolve_dw(plus, sd, hb, 0.0);
  double err = 0.0;
  for (std::size_t i = 0; i < kGrid.n; ++i)
    err += std::norm(back.values[i] - plus.values[i]);
  CHECK(std::sqrt(err * kGrid.spacing()) < 1e-6);

  // eigenstates keep a stationary density
  const WaveFn evolved0 = evolve_dw(sd.states[0], sd, hb, 7.3);
  for (std::size_t i = 0; i < kGrid.n; i += 97)
    CHECK(std::norm(evolved0.values[i]) ==
          doctest::Approx(std::norm(sd.states[0].values[i])).epsilon(1e-8).scale(1e-8));

  // half tunneling period mirrors the localized state (measured gap)
  const double gap = sd.energies[1] - sd.energies[0];
  const WaveFn half = evolve_dw(plus, sd, hb, std::numbers::pi * hb / gap);
  CHECK(region_mass(half, Region::Left) > 0.95);

  // norm conservation across random fleas, hbar, t
  Philox rng(6, 6);
  for (int trial = 0; trial < 3; ++trial) {
    const FleaSpec flea{rng.uniform(0.1, 0.4) * (trial % 2 ? 1.0 : -1.0),
                        rng.uniform(-0.6, -0.4), 0.25};
    const double hh = rng.uniform(0.15, 0.3);
    const auto sdp = solve_eigen(
        build_hamiltonian(kGrid, PotentialSpec{1.0, 1.0, flea}, hh, 1.0), 8, 1.0);
    const WaveFn st = evolve_dw(plus, sdp, hh, rng.uniform(0.0, 300.0));
    CHECK(st.norm() == doctest::Approx(1.0).epsilon(1e-3));
  }
}

TEST_CASE("occupations: diagonal ensemble vs explicit time quadrature") {
  const double hb = 0.2;
  const PotentialSpec pert{1.0, 1.0, FleaSpec{0.35, -0.55, 0.25}};
  const auto sd = solve_eigen(build_hamiltonian(kGrid, pert, hb, 1.0), 8, 1.0);
  const auto sd0 = solve_eigen(build_hamiltonian(kGrid, kUnpert, hb, 1.0), 2, 1.0);
  const auto [lp, lm] = localized_states(sd0);
  WaveFn psi0{kGrid, std::vector<cplx>(kGrid.n), hb};
  for (std::size_t i = 0; i < kGrid.n; ++i)
    psi0.values[i] = std::sqrt(0.7) * lp.values[i] + std::sqrt(0.3) * lm.values[i];

  // exact phase-average implementation vs composite-Simpson oracle
  const double T = 40.0;
  const double impl = finite_time_occupation(psi0, sd, Region::Right, T);
  const std::size_t steps = 4000;  // resolves the fastest Bohr frequency
  double oracle = 0.0;
  for (std::size_t s = 0; s <= steps; ++s) {
    const double t = T * static_cast<double>(s) / static_cast<double>(steps);
    const double w = (s == 0 || s == steps) ? 1.0 : (s % 2 ? 4.0 : 2.0);
    oracle += w * region_mass(evolve_dw(psi0, sd, hb, t), Region::Right);
  }
  oracle *= (T / steps) / 3.0 / T;
  CHECK(impl == doctest::Approx(oracle).epsilon(1e-5));

  // the long-time average lands on the diagonal ensemble
  const double diag = diagonal_ensemble_occupation(psi0, sd, Region::Right);
  const double gap = sd.energies[1] - sd.energies[0];
  CHECK(std::abs(finite_time_occupation(psi0, sd, Region::Right,
                                        1e5 * hb / gap) -
                 diag) < 1e-3);

  // D+ ground state occupies the right well
  CHECK(region_mass(sd.states[0], Region::Right) > 0.9);
  CHECK(diagonal_ensemble_occupation(sd.states[0], sd, Region::Right) > 0.9);
}

TEST_CASE("parity covariance: mirrored fleas swap occupations exactly") {
  const double hb = 0.2;
  const FleaSpec flea{0.3, -0.5, 0.2};
  const FleaSpec mirror{0.3, 0.5, 0.2};
  const auto sd = solve_eigen(
      build_hamiltonian(kGrid, PotentialSpec{1.0, 1.0, flea}, hb, 1.0), 8, 1.0);
  const auto sdm = solve_eigen(
      build_hamiltonian(kGrid, PotentialSpec{1.0, 1.0, mirror}, hb, 1.0), 8, 1.0);
  const auto sd0 = solve_eigen(build_hamiltonian(kGrid, kUnpert, hb, 1.0), 2, 1.0);
  const auto [lp, lm] = localized_states(sd0);

  WaveFn psi{kGrid, std::vector<cplx>(kGrid.n), hb};
  WaveFn psi_m{kGrid, std::vector<cplx>(kGrid.n), hb};
  const double va = std::sqrt(0.7), vb = std::sqrt(0.3);
  for (std::size_t i = 0; i < kGrid.n; ++i) {
    psi.values[i] = va * lp.values[i] + vb * lm.values[i];
    psi_m.values[i] = va * lm.values[i] + vb * lp.values[i];  // reflected state
  }
  const double occ = diagonal_ensemble_occupation(psi, sd, Region::Right);
  const double occ_m = diagonal_ensemble_occupation(psi_m, sdm, Region::Left);
  CHECK(occ == doctest::Approx(occ_m).epsilon(1e-9));
}

TEST_CASE("finite-T cross terms obey the Appendix-A style bound") {
  const double hb = 0.2;
  const PotentialSpec pert{1.0, 1.0, FleaSpec{0.35, -0.55, 0.25}};
  const Grid1D g(-4.0, 4.0, 1024);
  const auto sd = solve_eigen(build_hamiltonian(g, pert, hb, 1.0), 4, 1.0);
  for (auto [j, k] : std::vector<std::pair<int, int>>{{0, 1}, {0, 2}, {1, 3}}) {
    const double de = std::abs(sd.energies[k] - sd.energies[j]);
    for (double T : {10.0, 1e3, 1e5}) {
      const double avg =
          std::abs(time_average_phase((sd.energies[j] - sd.energies[k]) / hb, T));
      for (double x : {-1.0, 0.0, 0.8}) {
        for (double p : {0.0, 0.4}) {
          // |<psi_j, Omega psi_k>| = 2 pi hbar |W_jk|
          const double omega_elem =
              2.0 * std::numbers::pi * hb *
              std::abs(slow_cross_wigner(sd.states[j], sd.states[k], x, p));
          CHECK(avg * omega_elem <= 2.0 * (2.0 / hb) * hb / (de * T) + 1e-12);
        }
      }
    }
  }
}

TEST_CASE("flea distribution: validation and reproducible sampling") {
  const FleaDistribution dist{DensityRV::uniform(0.3, 0.6),
                              DensityRV::uniform(-0.7, -0.45), 0.25, 0.65};
  CHECK_NOTHROW(dist.validate(1.0));

  // family whose widest sample would cover the left minimum
  const FleaDistribution bad{DensityRV::uniform(0.3, 0.6),
                             DensityRV::uniform(-0.95, -0.45), 0.25, 0.65};
  CHECK_THROWS_AS(bad.validate(1.0), InvalidInputError);
  const FleaDistribution zero_amp{DensityRV::uniform(0.0, 0.6),
                                  DensityRV::uniform(-0.7, -0.45), 0.25, 0.65};
  CHECK_THROWS_AS(zero_amp.validate(1.0), InvalidInputError);

  Philox r1(42, 7), r2(42, 7);
  for (int i = 0; i < 20; ++i) {
    const FleaSpec a = dist.sample(r1);
    const FleaSpec b = dist.sample(r2);
    CHECK(a.amplitude == b.amplitude);
    CHECK(a.center == b.center);
    CHECK_NOTHROW(a.validate(1.0));
  }
}

TEST_CASE("born experiment: symmetry, determinism, thread invariance") {
  const FleaDistribution dist{DensityRV::uniform(0.3, 0.6),
                              DensityRV::uniform(-0.7, -0.45), 0.25, 0.5};
  BornOptions opt;
  opt.alpha2 = 0.5;
  opt.hbar_list = {0.2};
  opt.n_samples = 16;
  opt.seed = 11;
  const ModelParams base{0.2, 1.0, 1.0, 1.0};

  const BornResult r1 = born_experiment(dist, opt, base, kGrid);
  REQUIRE(r1.summaries.size() == 1);
  const auto& s = r1.summaries[0];
  // alpha^2 = 1/2 with a sign-symmetric family: mean pinned near 1/2
  CHECK(std::abs(s.mean_right - 0.5) <= 3.0 * s.std_error + 0.02);

  // identical seed reproduces rows bitwise; thread count changes nothing
  opt.threads = 2;
  const BornResult r2 = born_experiment(dist, opt, base, kGrid);
  REQUIRE(r2.rows.size() == r1.rows.size());
  for (std::size_t i = 0; i < r1.rows.size(); ++i) {
    CHECK(r1.rows[i].occ_right_diag == r2.rows[i].occ_right_diag);
    CHECK(r1.rows[i].flea.amplitude == r2.rows[i].flea.amplitude);
    CHECK(r1.rows[i].c0_sq == r2.rows[i].c0_sq);
  }

  // gap histogram of the induced spectral variable stays hole-free
  std::vector<double> gaps;
  for (const auto& row : r1.rows) gaps.push_back(row.c0_sq);  // smooth proxy
  const auto hist = gap_histogram(gaps, 4);
  CHECK(hist.counts.size() == 4);
}

TEST_CASE("born experiment: wigner pairing route tracks occupations") {
  const FleaDistribution dist{DensityRV::uniform(0.04, 0.06),
                              DensityRV::uniform(-0.6, -0.5), 0.2, 0.65};
  BornOptions opt;
  opt.alpha2 = 0.7;
  opt.hbar_list = {0.15};
  opt.n_samples = 4;
  opt.seed = 3;
  opt.wigner_pairings = true;
  const ModelParams base{0.15, 1.0, 1.0, 1.0};
  const BornResult r = born_experiment(dist, opt, base, kGrid);
  for (const auto& row : r.rows) {
    CHECK(row.wigner_right_weight >= 0.0);
    CHECK(row.wigner_right_weight <= 1.0);
    CHECK(std::abs(row.wigner_right_weight - row.occ_right_diag) < 0.05);
  }
}

TEST_CASE("splitting check: positive gaps, deterministic, documented ratios") {
  const ModelParams base{0.3, 1.0, 1.0, 1.0};
  const std::vector<double> hbars{0.5, 0.3};
  const auto rows = delta_splitting_check(base, hbars, kGrid);
  REQUIRE(rows.size() == 2);
  for (const auto& r : rows) {
    CHECK(r.gap_numeric > 0.0);
    CHECK(r.gap_asymptotic > 0.0);
    CHECK(r.ratio == doctest::Approx(r.gap_numeric / r.gap_asymptotic));
  }
  // the one-term asymptotic undershoots the true gap at desk scale; the
  // measured factor is frozen here as a regression anchor
  CHECK(rows[1].ratio == doctest::Approx(3.4188).epsilon(1e-3));
}
