#pragma once

#include <functional>
#include <span>
#include <utility>
#include <vector>

namespace weightlab {

struct GaussRule {
  std::vector<double> nodes;    // on [-1, 1]
  std::vector<double> weights;
};

/// Gauss-Legendre rule with n nodes (cached per n).
const GaussRule& gauss_legendre(int n);

/// Fixed Gauss rule on [a, b].
double gauss_integrate(const std::function<double(double)>& f, double a, double b, int nodes = 8);

/// Integral over [a, b] split at the given breakpoints, each piece refined
/// geometrically toward both ends so integrable endpoint singularities are
/// resolved. Panels use an 8-node Gauss rule. Grading stops about 1e-13
/// (relative to the endpoint magnitude) short of a nonzero endpoint, so a
/// singularity there loses the mass of that last sliver.
double graded_integrate(const std::function<double(double)>& f, double a, double b,
                        std::span<const double> breakpoints = {}, int depth = 80);

}  // namespace weightlab
