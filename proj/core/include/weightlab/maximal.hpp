#pragma once

#include <functional>
#include <optional>

#include "weightlab/grid.hpp"
#include "weightlab/matrix.hpp"
#include "weightlab/young.hpp"

namespace weightlab {

/// Value of a grid-aligned cube, e.g. its average.
using CubeValue = std::function<double(const IndexCube&)>;

/// Per cell, the max of cube_value over the family cubes containing the cell
/// together with the one-cell cube of the cell itself.
GridFunction family_sup(const GridGeometry& g, const CubeFamily& family, const CubeValue& cube_value);

/// Hardy-Littlewood maximal function at cell centers over the family (a lower
/// bound of the maximal function over all cubes).
GridFunction hl_maximal(const GridFunction& f, const CubeFamily& family);

/// Maximal function with respect to the measure whose cell masses are given
/// by mu (cube average = ∫_Q f dmu / mu(Q)).
GridFunction hl_maximal(const GridFunction& f, const CubeFamily& family, const GridFunction& mu);

/// Dyadic maximal function over ancestors at levels [level_min, level_max]
/// (default: root to single cells). Requires a power-of-two resolution.
GridFunction dyadic_maximal(const GridFunction& f, int level_min = 0,
                            std::optional<int> level_max = std::nullopt);

/// sup over Q ∋ x of |Q|^{alpha/n - 1} ∫_Q f, 0 <= alpha < n; alpha = 0 is
/// the Hardy-Littlewood path itself.
GridFunction fractional_maximal(const GridFunction& f, double alpha, const CubeFamily& family);

/// sup over Q ∋ x of |Q|^{alpha/n} ||f||_{phi,Q}.
GridFunction orlicz_maximal(const GridFunction& f, const YoungFn& phi, double alpha,
                            const CubeFamily& family);

/// Image box of g under A with the same resolution: the scaled interval in
/// 1D, the bounding square of the image in 2D.
GridGeometry image_geometry(const GridGeometry& g, const SquareMatrix& A);

/// Pull-back of a field: output at target cell center x is the field value
/// of the cell containing A^{-1}x (no interpolation). Cells mapping outside
/// the field box are flagged out of domain.
GridFunction matrix_compose(const GridFunction& field, const SquareMatrix& A,
                            const GridGeometry& target);
GridFunction matrix_compose(const GridFunction& field, const SquareMatrix& A);

}  // namespace weightlab
