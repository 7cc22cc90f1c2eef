#pragma once

#include <functional>
#include <string>

#include "weightlab/grid.hpp"
#include "weightlab/matrix.hpp"
#include "weightlab/segment_weight.hpp"

namespace weightlab {

/// Reference measures on the line: dx and e^{|x|}dx.
enum class Measure { lebesgue, exp_abs };

std::string to_string(Measure m);
Measure parse_measure(const std::string& name);

/// mu([a, b]).
double measure_mass(Measure mu, double a, double b);

/// ∫_a^b w dmu, exact. Power segments are supported for Lebesgue only.
double weighted_mass(const SegmentWeight1D& w, Measure mu, double a, double b);

/// The weight w_A(x) = w(Ax) for a 1x1 matrix A = (lambda).
SegmentWeight1D compose_matrix(const SegmentWeight1D& w, const SquareMatrix& A);

/// Cell averages of a 1D weight: exact cell mass divided by cell length.
GridFunction sample_to_grid(const SegmentWeight1D& w, const GridGeometry& g);

/// Cell averages of a 2D density by a tensor Gauss rule per cell.
GridFunction sample_to_grid(const std::function<double(double, double)>& density,
                            const GridGeometry& g, int nodes = 4);

/// Exact cell masses (not averages) of a 1D weight.
std::vector<double> cell_masses(const SegmentWeight1D& w, const GridGeometry& g);

}  // namespace weightlab
