#pragma once

#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "bornflea/arbfun.hpp"
#include "bornflea/grid.hpp"

namespace bornflea::wigner {

using bornflea::cplx;

// W(x,p) sampled on a phase-space box; produced by the transform below with
//   W(x,p) = (1/pi hbar) int conj(psi(x+y)) psi(x-y) e^{2ipy/hbar} dy.
struct WignerField {
  double x_min, x_max;
  std::size_t nx;
  double p_min, p_max;
  std::size_t np;
  double hbar;
  std::vector<double> values;  // row-major, [ix * np + ip]
  double max_imag_residue = 0.0;

  double dx() const { return (x_max - x_min) / static_cast<double>(nx - 1); }
  double dp() const { return (p_max - p_min) / static_cast<double>(np - 1); }
  double at(std::size_t ix, std::size_t ip) const { return values[ix * np + ip]; }

  double integral() const;                  // 2D trapezoid
  std::vector<double> marginal_x() const;   // int W dp per x row
  double max_abs() const;
  // normalization, 2/hbar bound, imaginary residue; with psi also the
  // position-marginal identity (all at the invariant tolerances)
  void validate(const WaveFn* psi = nullptr) const;

  void write_csv(std::ostream& os) const;
  void write_binary(std::ostream& os) const;
  static WignerField read_binary(std::istream& is);
};

// Per-x discrete Fourier transform over y with zero padding >= 2x; the p grid
// is the DFT-native one (spacing pi hbar / (L dy)) truncated to cover
// [-p_extent, p_extent] with at least n_p points.
WignerField wigner_transform(const WaveFn& psi, double p_extent,
                             std::size_t n_p);
// Same, with output x rows restricted to [x_lo, x_hi].
WignerField wigner_transform_windowed(const WaveFn& psi, double x_lo,
                                      double x_hi, double p_extent,
                                      std::size_t n_p);

// Compactly supported phase-space test function; zero outside its box by
// construction.
struct TestObservable {
  std::function<double(double, double)> fn;
  double x_lo, x_hi, p_lo, p_hi;
  std::string label;

  double operator()(double x, double p) const {
    if (x <= x_lo || x >= x_hi || p <= p_lo || p >= p_hi) return 0.0;
    return fn(x, p);
  }
  // product of 1D C-infinity bumps, peak value 1 at (cx, cp)
  static TestObservable bump(double cx, double cp, double rx, double rp,
                             std::string label);
  // identically 1 on the inner box, smooth falloff to the outer one
  static TestObservable plateau(double cx, double cp, double rx_flat,
                                double rp_flat, double rx, double rp,
                                std::string label);
};

// 2D trapezoid of f * W; f's support must lie inside the field box.
double pair(const TestObservable& f, const WignerField& W);

// Harmonic flow (x cos wt + p/(m w) sin wt, -m w x sin wt + p cos wt);
// conserves p^2/2m + m w^2 x^2 / 2 exactly.
std::pair<double, double> classical_flow_ho(double x, double p, double m,
                                            double omega, double t);

// (1/2pi) int_0^{2pi} along the constant-(m omega) orbit through (x,p),
// 128-point periodic rule.  Field version interpolates bilinearly and
// throws DomainError when the orbit leaves the grid.
std::function<double(double, double)> orbit_average(const WignerField& W,
                                                    double m_omega = 1.0);
std::function<double(double, double)> orbit_average(
    std::function<double(double, double)> g, double m_omega = 1.0);

// Weighted point masses (the classical-limit targets).
struct PointMassMixture {
  struct Atom {
    double x, p, weight;
  };
  std::vector<Atom> atoms;
  void validate() const;
  double pair_with(const TestObservable& f) const;
};

// sum_k w_k * ( int f W^{psi_k} ), accumulated row-by-row over f's support
// without materializing the fields.
double mixture_wigner_pair(std::span<const WaveFn> states,
                           std::span<const double> weights,
                           const TestObservable& f);

// One row of the Prop-1 verification: the omega-averaged, time-averaged
// Wigner pairing against f at (hbar, T) versus the orbit-averaged classical
// limit of the coherent state at (x0, p0).
struct Prop1Row {
  double hbar;
  double T;
  std::string observable;
  double lhs;
  double rhs;
  double residual;
};
std::vector<Prop1Row> prop1_residual(double x0, double p0,
                                     const DensityRV& mu_omega,
                                     std::span<const double> hbar_list,
                                     std::span<const double> T_list,
                                     std::span<const TestObservable> fs,
                                     const Grid1D& grid);

}  // namespace bornflea::wigner
