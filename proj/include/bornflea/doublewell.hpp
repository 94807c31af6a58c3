#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "bornflea/arbfun.hpp"
#include "bornflea/grid.hpp"
#include "bornflea/model.hpp"
#include "bornflea/wigner.hpp"

namespace bornflea::doublewell {

// Smooth compactly supported bump added to the quartic well:
//   amplitude * exp(1 - 1/(1 - u^2)),  u = (x - center)/width,  |u| < 1.
struct FleaSpec {
  double amplitude;
  double center;
  double width;

  double operator()(double x) const;
  // support [center - width, center + width] must exclude both minima
  void validate(double a) const;
};

struct PotentialSpec {
  double lambda;
  double a;
  std::optional<FleaSpec> flea;

  double operator()(double x) const;
  void validate() const;
};

// Second-order central differences with Dirichlet boundaries.
struct TridiagOperator {
  Grid1D grid;
  double hbar, mass;
  std::vector<double> diag;
  double offdiag;  // constant kinetic coupling

  void apply(const cplx* in, cplx* out) const;
};

TridiagOperator build_hamiltonian(const Grid1D& grid, const PotentialSpec& pot,
                                  double hbar, double mass);

struct SpectralDecomposition {
  std::vector<double> energies;  // strictly ascending
  std::vector<WaveFn> states;    // sign fixed positive at the point nearest +a
  double hbar;
  std::size_t K;

  void validate(const TridiagOperator& H) const;
};

// Lowest K eigenpairs (LAPACK dstevr behind the spec contract); deterministic,
// eigenvector phases fixed by the +a sign convention.
SpectralDecomposition solve_eigen(const TridiagOperator& H, std::size_t K,
                                  double sign_anchor_a);

// Largest eigenvalue shift when the grid is doubled; the refinement check.
std::vector<double> grid_doubling_shifts(const PotentialSpec& pot, double hbar,
                                         double mass, const Grid1D& grid,
                                         std::size_t K);

// Psi_pm = (Psi0 +- Psi1)/sqrt(2) from the unperturbed decomposition.
std::pair<WaveFn, WaveFn> localized_states(const SpectralDecomposition& sd);

enum class FleaClass { DPlus, DMinus, Ambiguous };
const char* to_string(FleaClass c);

struct FleaClassification {
  FleaClass cls;
  double right_mass;  // of the perturbed ground state
  struct Diag {
    double hbar;
    double dist_plus;   // hbar^{-1} ||Psi0_delta - Psi+||
    double dist_minus;  // hbar^{-1} ||Psi1_delta - Psi-||
  };
  std::vector<Diag> diagnostics;
};

FleaClassification classify_flea(const FleaSpec& flea, const ModelParams& p,
                                 const Grid1D& grid,
                                 std::span<const double> hbar_sweep = {},
                                 std::size_t K = 2);

struct Coefficients {
  std::vector<cplx> c;
  double sum_sq;
  double tail_sq;  // sum over k >= 2
  bool truncation_ok;  // sum_sq >= 0.999
};
Coefficients coefficients(const WaveFn& psi0, const SpectralDecomposition& sd);

WaveFn evolve_dw(const WaveFn& psi0, const SpectralDecomposition& sd,
                 double hbar, double t);

enum class Region { Right, Left };
double region_mass(const WaveFn& psi, Region r);

double diagonal_ensemble_occupation(const WaveFn& psi0,
                                    const SpectralDecomposition& sd, Region r);
// finite-T average of the region occupation via exact phase averages
double finite_time_occupation(const WaveFn& psi0,
                              const SpectralDecomposition& sd, Region r,
                              double T);

// Three-parameter flea family with laws on each parameter and a sign-mixing
// weight; every sample must satisfy the support constraint.
struct FleaDistribution {
  DensityRV amplitude;  // positive magnitudes bounded away from 0
  DensityRV center;
  std::variant<double, DensityRV> width;
  double sign_weight;  // P(amplitude > 0)

  void validate(double a) const;
  FleaSpec sample(Philox& rng) const;
};

struct BornRow {
  double hbar;
  std::uint64_t sample_id;
  FleaSpec flea;
  FleaClass cls;
  double c0_sq, c1_sq, tail_sq;
  double occ_right_diag;
  double occ_right_finite_t;
  double wigner_right_weight;  // NaN when pairings are disabled
};

struct BornSummary {
  double hbar;
  std::size_t n_used, n_ambiguous;
  double mean_right;
  double std_error;
  double mean_wigner_right;  // NaN when pairings are disabled
  double abs_gap;            // |mean_right - alpha2|
};

struct BornResult {
  std::vector<BornRow> rows;
  std::vector<BornSummary> summaries;
};

struct BornOptions {
  double alpha2;
  std::vector<double> hbar_list;
  std::size_t n_samples;
  std::uint64_t seed;
  std::size_t K = 8;
  bool wigner_pairings = false;
  double finite_t_factor = 1e5;  // T = factor * hbar / perturbed gap
  unsigned threads = 1;
};

BornResult born_experiment(const FleaDistribution& dist, const BornOptions& opt,
                           const ModelParams& base, const Grid1D& grid);

// Histogram smoothness diagnostic for the induced gap variable E1 - E0:
// absolute continuity surrogate (no empty interior bins at this resolution).
struct GapHistogram {
  std::vector<double> edges;
  std::vector<std::size_t> counts;
  bool interior_filled;
};
GapHistogram gap_histogram(std::span<const double> gaps, std::size_t bins);

struct SplittingRow {
  double hbar;
  double gap_numeric;
  double gap_asymptotic;
  double ratio;
};
std::vector<SplittingRow> delta_splitting_check(const ModelParams& base,
                                                std::span<const double> hbars,
                                                const Grid1D& grid);

}  // namespace bornflea::doublewell
