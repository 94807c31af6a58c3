#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace bornflea {

// Gauss-Legendre nodes and weights on [-1, 1].
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};
const GaussRule& gauss_legendre(std::size_t n);  // cached per n

// integral of f over [a, b] with an n-point rule
double gauss_integrate(const std::function<double(double)>& f, double a,
                       double b, std::size_t n);

// Adaptive Simpson; throws NumericError when the depth limit is hit before
// the tolerance is met.
double adaptive_simpson(const std::function<double(double)>& f, double a,
                        double b, double tol = 1e-12, int max_depth = 60);

}  // namespace bornflea
