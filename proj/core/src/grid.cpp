#include "weightlab/grid.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <tuple>

#include "weightlab/errors.hpp"

namespace weightlab {

bool Cube::contains(const Point& x) const {
  for (int a = 0; a < dim; ++a) {
    if (x[a] < corner[a] || x[a] > corner[a] + side) return false;
  }
  return true;
}

Cube Cube::tripled() const {
  Cube c = *this;
  for (int a = 0; a < dim; ++a) c.corner[a] -= side;
  c.side *= 3.0;
  return c;
}

bool corner_less(const Cube& a, const Cube& b) {
  return std::tie(a.corner[0], a.corner[1], a.side) < std::tie(b.corner[0], b.corner[1], b.side);
}

double GridGeometry::cell_volume() const {
  const double h = cell_width();
  return dim == 1 ? h : h * h;
}

Point GridGeometry::cell_center(std::size_t cell) const {
  const auto c = cell_coords(cell);
  const double h = cell_width();
  return {lo[0] + (static_cast<double>(c[0]) + 0.5) * h,
          dim == 1 ? 0.0 : lo[1] + (static_cast<double>(c[1]) + 0.5) * h};
}

std::array<std::size_t, 2> GridGeometry::cell_coords(std::size_t cell) const {
  if (dim == 1) return {cell, 0};
  return {cell % n, cell / n};
}

std::size_t GridGeometry::locate(const Point& x) const {
  const double h = cell_width();
  std::array<std::size_t, 2> idx{0, 0};
  for (int a = 0; a < dim; ++a) {
    const double t = std::floor((x[a] - lo[a]) / h);
    if (!(t >= 0.0) || t >= static_cast<double>(n)) return cell_count();
    idx[a] = static_cast<std::size_t>(t);
  }
  return cell_index(idx[0], idx[1]);
}

void GridGeometry::validate() const {
  if (dim != 1 && dim != 2) throw ConfigurationError("grid dimension must be 1 or 2");
  if (n < 1) throw ConfigurationError("grid needs at least one cell per side");
  if (!(side > 0.0) || !std::isfinite(side)) throw ConfigurationError("grid box is degenerate");
}

Cube to_cube(const GridGeometry& g, const IndexCube& q) {
  const double h = g.cell_width();
  Cube c{g.dim, g.lo, static_cast<double>(q.len) * h};
  for (int a = 0; a < g.dim; ++a) c.corner[a] = g.lo[a] + static_cast<double>(q.start[a]) * h;
  if (g.dim == 1) c.corner[1] = 0.0;
  return c;
}

IndexCube triple_clipped(const GridGeometry& g, const IndexCube& q) {
  if (g.dim != 1) throw ConfigurationError("clipped triple cubes are one-dimensional");
  const std::size_t lo = q.start[0] >= q.len ? q.start[0] - q.len : 0;
  const std::size_t hi = std::min(g.n, q.start[0] + 2 * q.len);
  return IndexCube{{lo, 0}, hi - lo};
}

GridFunction::GridFunction(GridGeometry geometry, std::vector<double> values)
    : GridFunction(geometry, std::move(values),
                   std::vector<std::uint8_t>(geometry.cell_count(), 1)) {}

GridFunction::GridFunction(GridGeometry geometry, std::vector<double> values,
                           std::vector<std::uint8_t> domain)
    : geometry_(geometry), values_(std::move(values)), domain_(std::move(domain)) {
  geometry_.validate();
  if (values_.size() != geometry_.cell_count() || domain_.size() != geometry_.cell_count()) {
    throw ConfigurationError("grid values do not match the geometry");
  }
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (!domain_[i]) values_[i] = 0.0;
  }
  build_prefix();
}

void GridFunction::build_prefix() {
  const std::size_t n = geometry_.n;
  if (geometry_.dim == 1) {
    prefix_.assign(n + 1, 0.0);
    for (std::size_t i = 0; i < n; ++i) prefix_[i + 1] = prefix_[i] + values_[i];
    return;
  }
  const std::size_t m = n + 1;
  prefix_.assign(m * m, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    double row = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      row += values_[j * n + i];
      prefix_[(j + 1) * m + (i + 1)] = prefix_[j * m + (i + 1)] + row;
    }
  }
}

double GridFunction::cube_sum(const IndexCube& q) const {
  if (geometry_.dim == 1) return prefix_[q.start[0] + q.len] - prefix_[q.start[0]];
  const std::size_t m = geometry_.n + 1;
  const std::size_t x0 = q.start[0], x1 = q.start[0] + q.len;
  const std::size_t y0 = q.start[1], y1 = q.start[1] + q.len;
  return prefix_[y1 * m + x1] - prefix_[y0 * m + x1] - prefix_[y1 * m + x0] + prefix_[y0 * m + x0];
}

double GridFunction::cube_sum_direct(const IndexCube& q) const {
  double s = 0.0;
  if (geometry_.dim == 1) {
    for (std::size_t i = q.start[0]; i < q.start[0] + q.len; ++i) s += values_[i];
    return s;
  }
  for (std::size_t j = q.start[1]; j < q.start[1] + q.len; ++j) {
    for (std::size_t i = q.start[0]; i < q.start[0] + q.len; ++i) s += values_[j * geometry_.n + i];
  }
  return s;
}

double GridFunction::cube_volume(const IndexCube& q) const {
  const double side = static_cast<double>(q.len) * geometry_.cell_width();
  return geometry_.dim == 1 ? side : side * side;
}

double GridFunction::cube_volume_cells(const IndexCube& q) const {
  const double l = static_cast<double>(q.len);
  return geometry_.dim == 1 ? l : l * l;
}

std::vector<double> GridFunction::cube_values(const IndexCube& q) const {
  std::vector<double> out;
  if (geometry_.dim == 1) {
    out.assign(values_.begin() + static_cast<std::ptrdiff_t>(q.start[0]),
               values_.begin() + static_cast<std::ptrdiff_t>(q.start[0] + q.len));
    return out;
  }
  out.reserve(q.len * q.len);
  for (std::size_t j = q.start[1]; j < q.start[1] + q.len; ++j) {
    for (std::size_t i = q.start[0]; i < q.start[0] + q.len; ++i) {
      out.push_back(values_[j * geometry_.n + i]);
    }
  }
  return out;
}

double GridFunction::max_value() const {
  double m = 0.0;
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (domain_[i]) m = std::max(m, values_[i]);
  }
  return m;
}

CubeFamily::CubeFamily(Cube box, int level_min, int level_max, int shifts, std::vector<Cube> extra)
    : box_(box), level_min_(level_min), level_max_(level_max), shifts_(shifts),
      extra_(std::move(extra)) {
  if (box_.dim != 1 && box_.dim != 2) throw ConfigurationError("family dimension must be 1 or 2");
  if (!(box_.side > 0.0)) throw ConfigurationError("family box is degenerate");
  if (level_min_ < 0 || level_max_ < level_min_ || level_max_ > 30) {
    throw ConfigurationError("family levels must satisfy 0 <= j_min <= j_max <= 30");
  }
  if (shifts_ < 1) throw ConfigurationError("family needs at least one shift per level");
  for (const auto& c : extra_) {
    if (c.dim != box_.dim || !(c.side > 0.0)) throw ConfigurationError("bad extra cube");
  }
}

std::vector<Cube> CubeFamily::cubes() const {
  std::vector<Cube> out;
  for (int j = level_min_; j <= level_max_; ++j) {
    const double per_side = std::ldexp(1.0, j);
    const double side = box_.side / per_side;
    const std::size_t positions =
        (static_cast<std::size_t>(per_side) - 1) * static_cast<std::size_t>(shifts_) + 1;
    const double step = box_.side / (per_side * shifts_);
    const std::size_t ny = box_.dim == 2 ? positions : 1;
    for (std::size_t ty = 0; ty < ny; ++ty) {
      for (std::size_t tx = 0; tx < positions; ++tx) {
        Cube c{box_.dim, box_.corner, side};
        c.corner[0] = box_.corner[0] + static_cast<double>(tx) * step;
        if (box_.dim == 2) c.corner[1] = box_.corner[1] + static_cast<double>(ty) * step;
        out.push_back(c);
      }
    }
  }
  out.insert(out.end(), extra_.begin(), extra_.end());
  return out;
}

std::vector<CubeFamily::GridLevel> CubeFamily::grid_levels(const GridGeometry& g) const {
  const double tol = 1e-9 * box_.side;
  if (g.dim != box_.dim || std::abs(g.side - box_.side) > tol ||
      std::abs(g.lo[0] - box_.corner[0]) > tol ||
      (g.dim == 2 && std::abs(g.lo[1] - box_.corner[1]) > tol)) {
    throw ConfigurationError("cube family box does not match the grid box");
  }
  std::vector<GridLevel> out;
  for (int j = level_min_; j <= level_max_; ++j) {
    const std::size_t per_side = std::size_t{1} << j;
    if (per_side > g.n || g.n % per_side != 0) continue;
    const std::size_t len = g.n / per_side;
    const std::size_t stride = std::max<std::size_t>(1, len / static_cast<std::size_t>(shifts_));
    out.push_back({len, stride, (g.n - len) / stride + 1});
  }
  return out;
}

std::vector<IndexCube> CubeFamily::grid_extra(const GridGeometry& g) const {
  std::vector<IndexCube> out;
  const double h = g.cell_width();
  auto snap = [&](double v) {
    const double r = std::round(v);
    if (std::abs(v - r) > 1e-6) throw ConfigurationError("extra cube is not grid-aligned");
    return r;
  };
  for (const auto& c : extra_) {
    IndexCube q;
    const double len = snap(c.side / h);
    if (len < 1.0) throw ConfigurationError("extra cube smaller than a cell");
    q.len = static_cast<std::size_t>(len);
    for (int a = 0; a < g.dim; ++a) {
      const double s = snap((c.corner[a] - g.lo[a]) / h);
      if (s < 0.0 || s + len > static_cast<double>(g.n)) {
        throw ConfigurationError("extra cube leaves the grid box");
      }
      q.start[a] = static_cast<std::size_t>(s);
    }
    out.push_back(q);
  }
  return out;
}

std::vector<IndexCube> CubeFamily::grid_cubes(const GridGeometry& g) const {
  std::vector<IndexCube> out;
  for (const auto& lv : grid_levels(g)) {
    const std::size_t ny = g.dim == 2 ? lv.positions : 1;
    for (std::size_t ty = 0; ty < ny; ++ty) {
      for (std::size_t tx = 0; tx < lv.positions; ++tx) {
        out.push_back(IndexCube{{tx * lv.stride, g.dim == 2 ? ty * lv.stride : 0}, lv.len});
      }
    }
  }
  const auto extra = grid_extra(g);
  out.insert(out.end(), extra.begin(), extra.end());
  return out;
}

CubeFamily CubeFamily::with_extra(std::vector<Cube> more) const {
  std::vector<Cube> all = extra_;
  all.insert(all.end(), more.begin(), more.end());
  return CubeFamily(box_, level_min_, level_max_, shifts_, std::move(all));
}

std::string CubeFamily::describe() const {
  std::ostringstream os;
  os.precision(17);
  os << "levels [" << level_min_ << ',' << level_max_ << "], shifts " << shifts_ << ", box corner ("
     << box_.corner[0];
  if (box_.dim == 2) os << ',' << box_.corner[1];
  os << ") side " << box_.side << ", extra " << extra_.size();
  return os.str();
}

}  // namespace weightlab
