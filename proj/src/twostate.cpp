#include "bornflea/twostate.hpp"

#include <cmath>
#include <numbers>

#include "bornflea/quadrature.hpp"

namespace bornflea::twostate {
namespace {

cplx matrix_element(const std::array<double, 2>& u, const Observable2& A,
                    const std::array<double, 2>& v) {
  return u[0] * (A.m[0] * v[0] + A.m[1] * v[1]) +
         u[1] * (A.m[2] * v[0] + A.m[3] * v[1]);
}

}  // namespace

Splitting splitting(const ModelParams& p) {
  p.validate();
  const double a = p.a, lam = p.lambda;
  const double d_V = adaptive_simpson(
      [=](double x) { return std::sqrt(0.25 * lam) * std::abs(x * x - a * a); },
      -a, a, 1e-12);
  const double pref =
      std::sqrt(2.0 * a * a * lam / (std::numbers::e * std::numbers::pi));
  return {p.hbar * pref * std::exp(-d_V / p.hbar), d_V};
}

void QState2::validate() const {
  const double n2 = std::norm(amp_minus) + std::norm(amp_plus);
  if (std::abs(n2 - 1.0) > 1e-12)
    throw InvalidInputError("QState2: norm deviates from 1 beyond 1e-12");
}

QState2 make_state(cplx alpha_plus, cplx beta_minus) {
  const double n = std::sqrt(std::norm(alpha_plus) + std::norm(beta_minus));
  if (!(n > 0.0)) throw InvalidInputError("make_state: zero state");
  return {beta_minus / n, alpha_plus / n};
}

SpectralPair2 eigensystem2(double delta, double delta_hbar) {
  if (delta_hbar < 0.0)
    throw InvalidInputError("eigensystem2: delta_hbar must be nonnegative");
  if (delta == 0.0 && delta_hbar == 0.0)
    throw InvalidInputError("eigensystem2: degenerate spectrum at delta = Delta = 0");

  const double s = std::hypot(delta, delta_hbar);
  // catastrophic cancellation guards: s -+ delta via Delta^2/(s +- delta)
  const double sp = delta >= 0.0 ? delta + s
                                 : delta_hbar * delta_hbar / (s - delta);
  const double sm = delta <= 0.0 ? s - delta
                                 : delta_hbar * delta_hbar / (s + delta);

  SpectralPair2 out;
  out.e0 = -0.5 * sm;
  out.e1 = 0.5 * sp;
  out.gap = s;

  if (delta_hbar == 0.0) {
    if (delta > 0.0) {
      out.v0 = {0.0, 1.0};
      out.v1 = {1.0, 0.0};
    } else {
      out.v0 = {1.0, 0.0};
      out.v1 = {0.0, -1.0};
    }
    return out;
  }
  const double n = std::hypot(delta_hbar, sp);
  out.v0 = {delta_hbar / n, sp / n};
  out.v1 = {sp / n, -delta_hbar / n};
  return out;
}

QState2 evolve2(const QState2& state0, const SpectralPair2& spec, double hbar,
                double t) {
  if (!(hbar > 0.0)) throw InvalidInputError("evolve2: hbar must be positive");
  state0.validate();
  const cplx c0 = spec.v0[0] * state0.amp_minus + spec.v0[1] * state0.amp_plus;
  const cplx c1 = spec.v1[0] * state0.amp_minus + spec.v1[1] * state0.amp_plus;
  const cplx u0 = std::polar(1.0, -spec.e0 * t / hbar) * c0;
  const cplx u1 = std::polar(1.0, -spec.e1 * t / hbar) * c1;
  return {u0 * spec.v0[0] + u1 * spec.v1[0], u0 * spec.v0[1] + u1 * spec.v1[1]};
}

cplx Observable2::expect(const QState2& s) const {
  const cplx a = s.amp_minus, b = s.amp_plus;
  return std::conj(a) * (m[0] * a + m[1] * b) + std::conj(b) * (m[2] * a + m[3] * b);
}

double Observable2::op_norm() const {
  // largest singular value of the 2x2 block
  const cplx a = m[0], b = m[1], c = m[2], d = m[3];
  const double g00 = std::norm(a) + std::norm(c);
  const double g11 = std::norm(b) + std::norm(d);
  const cplx g01 = std::conj(a) * b + std::conj(c) * d;
  const double tr = g00 + g11;
  const double disc = std::sqrt(std::max(
      0.25 * (g00 - g11) * (g00 - g11) + std::norm(g01), 0.0));
  return std::sqrt(std::max(0.5 * tr + disc, 0.0));
}

Observable2 Observable2::identity() { return {{1.0, 0.0, 0.0, 1.0}, "I"}; }
Observable2 Observable2::proj_plus() { return {{0.0, 0.0, 0.0, 1.0}, "Pi+"}; }
Observable2 Observable2::proj_minus() { return {{1.0, 0.0, 0.0, 0.0}, "Pi-"}; }
Observable2 Observable2::a_plus_minus() { return {{0.0, 0.0, 1.0, 0.0}, "A+-"}; }
Observable2 Observable2::a_minus_plus() { return {{0.0, 1.0, 0.0, 0.0}, "A-+"}; }
Observable2 Observable2::q_position() { return {{-1.0, 0.0, 0.0, 1.0}, "Q"}; }

void MixtureState2::validate() const {
  if (weight_plus < 0.0 || weight_minus < 0.0 ||
      std::abs(weight_plus + weight_minus - 1.0) > 1e-12)
    throw InvalidInputError("MixtureState2: weights must be in [0,1] and sum to 1");
}

cplx MixtureState2::value(const Observable2& A) const {
  // omega_+(A) = <Phi+, A Phi+> is the (+,+) entry; omega_- the (-,-) one.
  return weight_plus * A.m[3] + weight_minus * A.m[0];
}

MixtureState2 born_state(const QState2& state0) {
  state0.validate();
  return {std::norm(state0.amp_plus), std::norm(state0.amp_minus)};
}

namespace {

// evolved expectation at fixed delta with the t -> infinity mode applied
cplx delta_expectation(const Observable2& A, const QState2& s0, double delta,
                       double delta_hbar, double hbar, TimeMode mode) {
  const SpectralPair2 sp = eigensystem2(delta, delta_hbar);
  const cplx c0 = sp.v0[0] * s0.amp_minus + sp.v0[1] * s0.amp_plus;
  const cplx c1 = sp.v1[0] * s0.amp_minus + sp.v1[1] * s0.amp_plus;
  cplx val = std::norm(c0) * matrix_element(sp.v0, A, sp.v0) +
             std::norm(c1) * matrix_element(sp.v1, A, sp.v1);
  if (!mode.diagonal) {
    const double nu = (sp.e0 - sp.e1) / hbar;
    val += std::conj(c0) * c1 * time_average_phase(nu, mode.T) *
           matrix_element(sp.v0, A, sp.v1);
    val += std::conj(c1) * c0 * time_average_phase(-nu, mode.T) *
           matrix_element(sp.v1, A, sp.v0);
  }
  return val;
}

cplx gauss_component(const std::function<cplx(double)>& f, double a, double b,
                     std::size_t n) {
  const GaussRule& r = gauss_legendre(n);
  const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  cplx s{0.0, 0.0};
  for (std::size_t i = 0; i < n; ++i)
    s += r.weights[i] * f(mid + half * r.nodes[i]);
  return half * s;
}

}  // namespace

cplx mixture_expectation(const Observable2& A, const QState2& state0,
                         const DeltaMixture& mu, const ModelParams& p,
                         TimeMode mode, std::size_t nodes) {
  p.validate();
  state0.validate();
  if (!mode.diagonal && !(mode.T > 0.0))
    throw InvalidInputError("mixture_expectation: finite mode needs T > 0");
  mu.require_excludes_zero();
  const double dh = splitting(p).delta_hbar;

  cplx total{0.0, 0.0};
  for (const auto& comp : mu.components) {
    auto integrand = [&](double delta) {
      return comp.law(delta) *
             delta_expectation(A, state0, delta, dh, p.hbar, mode);
    };
    // adaptive: double the rule until two consecutive levels agree
    std::size_t n = std::max<std::size_t>(nodes / 2, 32);
    cplx prev = gauss_component(integrand, comp.law.lo(), comp.law.hi(), n);
    cplx val = prev;
    while (n < 4096) {
      n *= 2;
      val = gauss_component(integrand, comp.law.lo(), comp.law.hi(), n);
      if (std::abs(val - prev) <= 1e-11 * (1.0 + std::abs(val))) break;
      prev = val;
    }
    total += comp.weight * val;
  }
  if (std::abs(total) > A.op_norm() + 1e-8)
    throw NumericError("mixture_expectation: result exceeds operator norm");
  return total;
}

McEstimate mixture_expectation_mc(const Observable2& A, const QState2& state0,
                                  const DeltaMixture& mu, const ModelParams& p,
                                  TimeMode mode, std::size_t n_samples,
                                  Philox& rng) {
  p.validate();
  state0.validate();
  if (n_samples < 2)
    throw InvalidInputError("mixture_expectation_mc: need n_samples >= 2");
  mu.require_excludes_zero();
  const double dh = splitting(p).delta_hbar;

  cplx sum{0.0, 0.0};
  double sum_re2 = 0.0, sum_im2 = 0.0;
  for (std::size_t i = 0; i < n_samples; ++i) {
    const double d = mu.sample(rng);
    const cplx v = delta_expectation(A, state0, d, dh, p.hbar, mode);
    sum += v;
    sum_re2 += v.real() * v.real();
    sum_im2 += v.imag() * v.imag();
  }
  const double n = static_cast<double>(n_samples);
  const cplx mean = sum / n;
  const double var_re =
      std::max(sum_re2 / n - mean.real() * mean.real(), 0.0);
  const double var_im =
      std::max(sum_im2 / n - mean.imag() * mean.imag(), 0.0);
  return {mean, std::sqrt((var_re + var_im) / (n - 1.0))};
}

double born_gap(const QState2& state0, const DeltaMixture& mu,
                const ModelParams& p, TimeMode mode, std::size_t nodes) {
  const MixtureState2 target = born_state(state0);
  double worst = 0.0;
  for (const Observable2& A :
       {Observable2::proj_plus(), Observable2::proj_minus(),
        Observable2::a_plus_minus(), Observable2::a_minus_plus()}) {
    const cplx got = mixture_expectation(A, state0, mu, p, mode, nodes);
    worst = std::max(worst, std::abs(got - target.value(A)));
  }
  return worst;
}

}  // namespace bornflea::twostate
