#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <string>

#include "bornflea/arbfun.hpp"
#include "bornflea/model.hpp"

namespace bornflea::twostate {

using cplx = std::complex<double>;

// Tunneling gap of the unperturbed well and its WKB action factor:
//   d_V = int_{-a}^{a} sqrt(V0) dx,
//   Delta_hbar = hbar sqrt(2 a^2 lambda / (e pi)) exp(-d_V / hbar).
struct Splitting {
  double delta_hbar;
  double d_V;
};
Splitting splitting(const ModelParams& p);

// State in the localized basis (Phi-, Phi+) = ((1,0), (0,1)).
struct QState2 {
  cplx amp_minus;
  cplx amp_plus;
  void validate() const;  // unit norm within 1e-12
};
QState2 make_state(cplx alpha_plus, cplx beta_minus);  // normalizes

// Eigensystem of H = [[delta, -Delta/2], [-Delta/2, 0]] in the (Phi-, Phi+)
// basis; e0 <= e1, unit orthogonal eigenvectors.
struct SpectralPair2 {
  double e0, e1, gap;
  std::array<double, 2> v0, v1;
};
SpectralPair2 eigensystem2(double delta, double delta_hbar);

QState2 evolve2(const QState2& state0, const SpectralPair2& spec, double hbar,
                double t);

struct Observable2 {
  std::array<cplx, 4> m;  // row-major in the (Phi-, Phi+) basis
  std::string label;

  cplx expect(const QState2& s) const;
  double op_norm() const;  // spectral norm

  static Observable2 identity();
  static Observable2 proj_plus();     // |Phi+><Phi+|
  static Observable2 proj_minus();    // |Phi-><Phi-|
  static Observable2 a_plus_minus();  // |Phi+><Phi-|
  static Observable2 a_minus_plus();  // |Phi-><Phi+|
  static Observable2 q_position();    // diag(-1, +1)
};

// Born target omega_B = |alpha|^2 omega_+ + |beta|^2 omega_-.
struct MixtureState2 {
  double weight_plus;
  double weight_minus;
  void validate() const;
  cplx value(const Observable2& A) const;
};
MixtureState2 born_state(const QState2& state0);

// t -> infinity handling: the diagonal ensemble deletes cross terms exactly;
// the finite-T mode averages them with time_average_phase instead.
struct TimeMode {
  bool diagonal;
  double T;
  static TimeMode diag() { return {true, 0.0}; }
  static TimeMode finite(double T) { return {false, T}; }
};

// omega_mu^t(A): quadrature over the flea variable delta of the evolved
// expectation, per component of mu (adaptive Gauss-Legendre per piece).
cplx mixture_expectation(const Observable2& A, const QState2& state0,
                         const DeltaMixture& mu, const ModelParams& p,
                         TimeMode mode, std::size_t nodes = 256);

// Monte Carlo alternative path; must agree with the quadrature within a few
// standard errors.
struct McEstimate {
  cplx mean;
  double std_error;
};
McEstimate mixture_expectation_mc(const Observable2& A, const QState2& state0,
                                  const DeltaMixture& mu, const ModelParams& p,
                                  TimeMode mode, std::size_t n_samples,
                                  Philox& rng);

// max over the basis {Pi+, Pi-, A+-, A-+} of |omega_mu^t(A) - omega_B(A)|.
double born_gap(const QState2& state0, const DeltaMixture& mu,
                const ModelParams& p, TimeMode mode, std::size_t nodes = 256);

}  // namespace bornflea::twostate
