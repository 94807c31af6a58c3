#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "bornflea/rng.hpp"

namespace bornflea {

using cplx = std::complex<double>;

// A scalar random variable carrying a density: uniform grid samples over a
// closed support, trapezoid-normalized at construction.  Interpolation is
// piecewise linear and the CDF is the exact integral of that interpolant,
// so pushforwards conserve mass to rounding.
class DensityRV {
 public:
  DensityRV(double lo, double hi, std::vector<double> samples);

  static DensityRV from_function(double lo, double hi,
                                 const std::function<double(double)>& f,
                                 std::size_t n = kDefaultResolution);
  static DensityRV uniform(double lo, double hi,
                           std::size_t n = kDefaultResolution);
  static DensityRV triangular(double lo, double peak, double hi,
                              std::size_t n = kDefaultResolution);
  static DensityRV truncated_gaussian(double mean, double sigma, double lo,
                                      double hi,
                                      std::size_t n = kDefaultResolution);
  static DensityRV raised_cosine(double lo, double hi,
                                 std::size_t n = kDefaultResolution);

  double lo() const { return lo_; }
  double hi() const { return hi_; }
  double spacing() const { return h_; }
  std::size_t resolution() const { return density_.size(); }
  const std::vector<double>& samples() const { return density_; }

  double operator()(double x) const;   // interpolated density, 0 outside
  double cdf(double x) const;          // exact for the interpolant
  double quantile(double u) const;     // inverse CDF, u in [0,1]
  double mass_between(double a, double b) const;
  double sample(Philox& rng) const;

  static constexpr std::size_t kDefaultResolution = std::size_t{1} << 14;

 private:
  double lo_, hi_, h_;
  std::vector<double> density_;
  std::vector<double> cum_;  // CDF at grid nodes
};

// Law of a circle-valued random variable: per-cell average densities on
// [0, period), m uniform cells.
struct CircularLaw {
  double period;
  std::vector<double> density;
  void validate() const;  // nonnegative, unit mass within 1e-9
};

// Law of (omega * t) mod period for omega ~ rv, via exact branch summation
// of CDF differences over every wrap-around branch meeting the support.
CircularLaw pushforward_mod(const DensityRV& rv, double t, double period,
                            std::size_t cells = std::size_t{1} << 14);

// Total variation distance to the uniform law on the same period.
double tv_distance(const CircularLaw& law);

// E[e^{i omega t}] via per-cell closed-form integration of the linear
// interpolant against the oscillatory factor (accuracy independent of t).
cplx char_fn(const DensityRV& rv, double t);
double char_fn_magnitude(const DensityRV& rv, double t);

// (1/T) int_0^T e^{i nu t} dt, exactly; 1 at nu = 0.
cplx time_average_phase(double nu, double T);

// Weighted mixture of densities; the split positive/negative representation
// used for flea measures whose support must exclude zero.
struct DeltaMixture {
  struct Component {
    double weight;
    DensityRV law;
  };
  std::vector<Component> components;

  DeltaMixture(DensityRV single);  // NOLINT: implicit on purpose
  DeltaMixture(std::vector<Component> comps);

  double mass_between(double a, double b) const;
  double sample(Philox& rng) const;
  // Throws when mass within [-margin, margin] exceeds tol (Prop. 2 needs
  // densities over nonzero delta only).
  void require_excludes_zero(double margin = 1e-3, double tol = 1e-12) const;
};

}  // namespace bornflea
