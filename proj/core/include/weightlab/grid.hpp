#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "weightlab/matrix.hpp"

namespace weightlab {

/// Axis-parallel cube in dimension 1 or 2.
struct Cube {
  int dim = 1;
  Point corner{0.0, 0.0};
  double side = 1.0;

  double volume() const { return dim == 1 ? side : side * side; }
  bool contains(const Point& x) const;
  Cube tripled() const;
  bool operator==(const Cube&) const = default;
};

/// Lexicographic order on the corner, then side; used for argmax tie-breaks.
bool corner_less(const Cube& a, const Cube& b);

/// A cube-shaped box split into n cells per side.
struct GridGeometry {
  int dim = 1;
  Point lo{0.0, 0.0};
  double side = 1.0;
  std::size_t n = 1;

  double cell_width() const { return side / static_cast<double>(n); }
  double cell_volume() const;
  std::size_t cell_count() const { return dim == 1 ? n : n * n; }
  Point cell_center(std::size_t cell) const;
  std::array<std::size_t, 2> cell_coords(std::size_t cell) const;
  std::size_t cell_index(std::size_t i0, std::size_t i1 = 0) const { return i1 * n + i0; }
  /// Cell containing x, or cell_count() when x is outside the box.
  std::size_t locate(const Point& x) const;
  Cube bounding_cube() const { return Cube{dim, lo, side}; }
  bool operator==(const GridGeometry&) const = default;

  void validate() const;
};

/// Grid-aligned cube: start cell per axis and side length in cells.
struct IndexCube {
  std::array<std::size_t, 2> start{0, 0};
  std::size_t len = 1;

  bool contains(std::size_t i0, std::size_t i1 = 0) const {
    return i0 >= start[0] && i0 < start[0] + len && i1 >= start[1] && i1 < start[1] + len;
  }
  bool operator==(const IndexCube&) const = default;
};

Cube to_cube(const GridGeometry& g, const IndexCube& q);
/// The tripled cube 3q intersected with the box (1D grids only).
IndexCube triple_clipped(const GridGeometry& g, const IndexCube& q);

/// Per-cell function on a grid with prefix sums for O(1) cube sums.
///
/// Cells may carry an out-of-domain flag (set by matrix pull-backs); such
/// cells hold value 0 and are excluded by the norm helpers.
class GridFunction {
 public:
  GridFunction() = default;
  GridFunction(GridGeometry geometry, std::vector<double> values);
  GridFunction(GridGeometry geometry, std::vector<double> values, std::vector<std::uint8_t> domain);

  const GridGeometry& geometry() const { return geometry_; }
  int dim() const { return geometry_.dim; }
  std::size_t n() const { return geometry_.n; }
  std::span<const double> values() const { return values_; }
  std::span<const std::uint8_t> domain() const { return domain_; }
  double operator[](std::size_t cell) const { return values_[cell]; }
  bool in_domain(std::size_t cell) const { return domain_[cell] != 0; }

  double cube_sum(const IndexCube& q) const;
  /// Sum of the cube cells by direct loop (reference for the prefix path).
  double cube_sum_direct(const IndexCube& q) const;
  double cube_volume(const IndexCube& q) const;
  double cube_average(const IndexCube& q) const { return cube_sum(q) / cube_volume_cells(q); }
  double cube_integral(const IndexCube& q) const { return cube_sum(q) * geometry_.cell_volume(); }
  std::vector<double> cube_values(const IndexCube& q) const;

  /// Pointwise map f -> op(f) keeping geometry and domain.
  template <class Op>
  GridFunction map(Op op) const {
    std::vector<double> out(values_.size());
    for (std::size_t i = 0; i < values_.size(); ++i) out[i] = domain_[i] ? op(values_[i]) : 0.0;
    return GridFunction(geometry_, std::move(out), domain_);
  }

  double max_value() const;

 private:
  double cube_volume_cells(const IndexCube& q) const;
  void build_prefix();

  GridGeometry geometry_;
  std::vector<double> values_;
  std::vector<std::uint8_t> domain_;
  std::vector<double> prefix_;
};

/// Deterministic finite surrogate for "all cubes": for each level j the box
/// is cut into 2^j cubes per side and every cube is translated by multiples
/// of side/shifts while it stays inside the box. Extra cubes can be listed
/// explicitly.
class CubeFamily {
 public:
  CubeFamily(Cube box, int level_min, int level_max, int shifts, std::vector<Cube> extra = {});

  const Cube& box() const { return box_; }
  int level_min() const { return level_min_; }
  int level_max() const { return level_max_; }
  int shifts() const { return shifts_; }
  std::span<const Cube> extra() const { return extra_; }

  /// Real cubes of the family, in a fixed order.
  std::vector<Cube> cubes() const;

  /// Grid-aligned view: per level the side and stride in cells.
  struct GridLevel {
    std::size_t len;
    std::size_t stride;
    std::size_t positions;  // per axis
  };
  std::vector<GridLevel> grid_levels(const GridGeometry& g) const;
  /// All grid-aligned cubes, structured levels first then snapped extras.
  std::vector<IndexCube> grid_cubes(const GridGeometry& g) const;
  /// Snapped extra cubes; ConfigurationError if an extra cube is not grid-aligned.
  std::vector<IndexCube> grid_extra(const GridGeometry& g) const;

  CubeFamily with_extra(std::vector<Cube> more) const;

  std::string describe() const;

 private:
  Cube box_;
  int level_min_;
  int level_max_;
  int shifts_;
  std::vector<Cube> extra_;
};

}  // namespace weightlab
