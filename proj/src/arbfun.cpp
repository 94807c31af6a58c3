#include "bornflea/arbfun.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "bornflea/errors.hpp"
#include "bornflea/kernels.hpp"

namespace bornflea {

DensityRV::DensityRV(double lo, double hi, std::vector<double> samples)
    : lo_(lo), hi_(hi), density_(std::move(samples)) {
  if (!(hi_ > lo_) || !std::isfinite(lo_) || !std::isfinite(hi_))
    throw InvalidInputError("DensityRV: support must have positive length");
  if (density_.size() < 2)
    throw InvalidInputError("DensityRV: need at least two samples");
  h_ = (hi_ - lo_) / static_cast<double>(density_.size() - 1);
  double mass = 0.0;
  for (std::size_t k = 0; k + 1 < density_.size(); ++k) {
    if (density_[k] < 0.0 || !std::isfinite(density_[k]))
      throw InvalidInputError("DensityRV: density must be nonnegative");
    mass += 0.5 * h_ * (density_[k] + density_[k + 1]);
  }
  if (density_.back() < 0.0 || !std::isfinite(density_.back()))
    throw InvalidInputError("DensityRV: density must be nonnegative");
  if (!(mass > 0.0))
    throw InvalidInputError("DensityRV: density integrates to zero");
  for (double& d : density_) d /= mass;
  cum_.resize(density_.size());
  cum_[0] = 0.0;
  for (std::size_t k = 0; k + 1 < density_.size(); ++k)
    cum_[k + 1] = cum_[k] + 0.5 * h_ * (density_[k] + density_[k + 1]);
}

DensityRV DensityRV::from_function(double lo, double hi,
                                   const std::function<double(double)>& f,
                                   std::size_t n) {
  std::vector<double> s(n);
  const double h = (hi - lo) / static_cast<double>(n - 1);
  for (std::size_t k = 0; k < n; ++k) s[k] = f(lo + h * static_cast<double>(k));
  return DensityRV(lo, hi, std::move(s));
}

DensityRV DensityRV::uniform(double lo, double hi, std::size_t n) {
  return DensityRV(lo, hi, std::vector<double>(n, 1.0));
}

DensityRV DensityRV::triangular(double lo, double peak, double hi,
                                std::size_t n) {
  if (!(lo < peak && peak < hi))
    throw InvalidInputError("triangular: need lo < peak < hi");
  return from_function(
      lo, hi,
      [=](double x) {
        return x <= peak ? (x - lo) / (peak - lo) : (hi - x) / (hi - peak);
      },
      n);
}

DensityRV DensityRV::truncated_gaussian(double mean, double sigma, double lo,
                                        double hi, std::size_t n) {
  if (!(sigma > 0.0)) throw InvalidInputError("truncated_gaussian: sigma > 0");
  return from_function(
      lo, hi,
      [=](double x) {
        const double u = (x - mean) / sigma;
        return std::exp(-0.5 * u * u);
      },
      n);
}

DensityRV DensityRV::raised_cosine(double lo, double hi, std::size_t n) {
  return from_function(
      lo, hi,
      [=](double x) {
        const double u = (x - lo) / (hi - lo);
        return 1.0 - std::cos(2.0 * std::numbers::pi * u);
      },
      n);
}

double DensityRV::operator()(double x) const {
  if (x < lo_ || x > hi_) return 0.0;
  const double s = (x - lo_) / h_;
  const std::size_t k =
      std::min(static_cast<std::size_t>(s), density_.size() - 2);
  const double w = s - static_cast<double>(k);
  return density_[k] + w * (density_[k + 1] - density_[k]);
}

double DensityRV::cdf(double x) const {
  if (x <= lo_) return 0.0;
  if (x >= hi_) return cum_.back();
  const double s = (x - lo_) / h_;
  const std::size_t k =
      std::min(static_cast<std::size_t>(s), density_.size() - 2);
  const double xi = x - (lo_ + h_ * static_cast<double>(k));
  const double slope = (density_[k + 1] - density_[k]) / h_;
  return cum_[k] + density_[k] * xi + 0.5 * slope * xi * xi;
}

double DensityRV::mass_between(double a, double b) const {
  if (b <= a) return 0.0;
  return cdf(b) - cdf(a);
}

double DensityRV::quantile(double u) const {
  if (u <= 0.0) return lo_;
  if (u >= cum_.back()) return hi_;
  const auto it = std::upper_bound(cum_.begin(), cum_.end(), u);
  const std::size_t k = static_cast<std::size_t>(it - cum_.begin()) - 1;
  const double m = u - cum_[k];
  const double a = density_[k];
  const double bslope = (density_[k + 1] - density_[k]) / h_;
  // solve a*xi + b/2 xi^2 = m for xi in [0, h]
  const double disc = a * a + 2.0 * bslope * m;
  const double root = std::sqrt(std::max(disc, 0.0));
  double xi;
  if (a + root > 0.0)
    xi = 2.0 * m / (a + root);
  else
    xi = 0.0;
  return lo_ + h_ * static_cast<double>(k) + std::min(xi, h_);
}

double DensityRV::sample(Philox& rng) const { return quantile(rng.next_double()); }

void CircularLaw::validate() const {
  if (!(period > 0.0)) throw InvalidInputError("CircularLaw: period > 0");
  if (density.empty()) throw InvalidInputError("CircularLaw: empty density");
  const double cell = period / static_cast<double>(density.size());
  double mass = 0.0;
  for (double d : density) {
    if (d < -1e-12) throw InvalidInputError("CircularLaw: negative density");
    mass += d * cell;
  }
  if (std::abs(mass - 1.0) > 1e-9)
    throw InvalidInputError("CircularLaw: mass deviates from 1 beyond 1e-9");
}

CircularLaw pushforward_mod(const DensityRV& rv, double t, double period,
                            std::size_t cells) {
  if (!(t > 0.0)) throw InvalidInputError("pushforward_mod: t must be > 0");
  if (!(period > 0.0))
    throw InvalidInputError("pushforward_mod: period must be > 0");

  const double ylo = t * rv.lo();
  const double yhi = t * rv.hi();
  const double cell = period / static_cast<double>(cells);
  // Branch count cap from the support width; exceeding it means the branch
  // enumeration is broken, not that the input is bad.
  const long cap =
      static_cast<long>(std::ceil((yhi - ylo) / period)) + 2;

  CircularLaw law;
  law.period = period;
  law.density.assign(cells, 0.0);

  double total = 0.0;
  for (std::size_t j = 0; j < cells; ++j) {
    const double th0 = cell * static_cast<double>(j);
    const double th1 = th0 + cell;
    const long kmin = static_cast<long>(std::ceil((ylo - th1) / period));
    const long kmax = static_cast<long>(std::floor((yhi - th0) / period));
    if (kmax - kmin + 1 > cap)
      throw NumericError("pushforward_mod: branch count exceeded cap");
    double mass = 0.0;
    for (long k = kmin; k <= kmax; ++k) {
      const double a = (th0 + period * static_cast<double>(k)) / t;
      const double b = (th1 + period * static_cast<double>(k)) / t;
      mass += rv.mass_between(a, b);
    }
    law.density[j] = mass / cell;
    total += mass;
  }
  if (std::abs(total - 1.0) > 1e-9)
    throw NumericError("pushforward_mod: accumulated mass deviates from 1");
  return law;
}

double tv_distance(const CircularLaw& law) {
  law.validate();
  const double cell = law.period / static_cast<double>(law.density.size());
  const double uniform = 1.0 / law.period;
  const double sum = kernels::active().sum_abs_dev(
      law.density.data(), uniform, law.density.size());
  return std::clamp(0.5 * sum * cell, 0.0, 1.0);
}

namespace {

// I = int_0^h e^{iut} du and J = int_0^h u e^{iut} du, stable in ht.
void phase_cell_integrals(double t, double h, cplx& I, cplx& J) {
  const double x = t * h;
  if (std::abs(x) < 1e-3) {
    const double x2 = x * x;
    // series with relative error below ~1e-19 for |x| < 1e-3
    const cplx ih(0.0, 1.0);
    I = h * (1.0 + ih * (x / 2.0) - x2 / 6.0 - ih * (x * x2 / 24.0) +
             x2 * x2 / 120.0);
    J = h * h *
        (0.5 + ih * (x / 3.0) - x2 / 8.0 - ih * (x * x2 / 30.0) +
         x2 * x2 / 144.0);
    return;
  }
  // e^{ix} - 1 without cancellation
  const double sh = std::sin(0.5 * x);
  const cplx em1(-2.0 * sh * sh, std::sin(x));
  const cplx eix = em1 + 1.0;
  const cplx it(0.0, t);
  I = em1 / it;
  J = (h * eix - I) / it;
}

}  // namespace

cplx char_fn(const DensityRV& rv, double t) {
  if (t == 0.0) return {1.0, 0.0};
  const std::size_t n = rv.resolution();
  const double h = rv.spacing();
  const auto& d = rv.samples();
  cplx I, J;
  phase_cell_integrals(t, h, I, J);
  cplx acc{0.0, 0.0};
  for (std::size_t k = 0; k + 1 < n; ++k) {
    const double xk = rv.lo() + h * static_cast<double>(k);
    const double slope = (d[k + 1] - d[k]) / h;
    const cplx phase = std::polar(1.0, t * xk);
    acc += phase * (d[k] * I + slope * J);
  }
  return acc;
}

double char_fn_magnitude(const DensityRV& rv, double t) {
  return std::abs(char_fn(rv, t));
}

cplx time_average_phase(double nu, double T) {
  if (!(T > 0.0)) throw InvalidInputError("time_average_phase: T must be > 0");
  if (nu == 0.0) return {1.0, 0.0};
  const double x = nu * T;
  const double sh = std::sin(0.5 * x);
  const cplx em1(-2.0 * sh * sh, std::sin(x));
  return em1 / cplx(0.0, x);
}

DeltaMixture::DeltaMixture(DensityRV single) {
  components.push_back({1.0, std::move(single)});
}

DeltaMixture::DeltaMixture(std::vector<Component> comps)
    : components(std::move(comps)) {
  if (components.empty())
    throw InvalidInputError("DeltaMixture: at least one component");
  double wsum = 0.0;
  for (const auto& c : components) {
    if (!(c.weight >= 0.0))
      throw InvalidInputError("DeltaMixture: negative weight");
    wsum += c.weight;
  }
  if (std::abs(wsum - 1.0) > 1e-12)
    throw InvalidInputError("DeltaMixture: weights must sum to 1");
}

double DeltaMixture::mass_between(double a, double b) const {
  double m = 0.0;
  for (const auto& c : components) m += c.weight * c.law.mass_between(a, b);
  return m;
}

double DeltaMixture::sample(Philox& rng) const {
  double u = rng.next_double();
  for (const auto& c : components) {
    if (u < c.weight || &c == &components.back()) return c.law.sample(rng);
    u -= c.weight;
  }
  return components.back().law.sample(rng);
}

void DeltaMixture::require_excludes_zero(double margin, double tol) const {
  if (mass_between(-margin, margin) > tol)
    throw InvalidInputError(
        "invalid measure: density must assign no mass near delta = 0 "
        "(the flea takes real nonzero values)");
}

}  // namespace bornflea
