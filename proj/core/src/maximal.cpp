#include "weightlab/maximal.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "weightlab/errors.hpp"
#include "weightlab/parallel.hpp"

namespace weightlab {

namespace {

struct LevelTable {
  CubeFamily::GridLevel level;
  std::vector<double> values;  // row-major over (ty, tx)
};

// Range of cube positions t with t*stride <= i < t*stride + len.
std::pair<std::size_t, std::size_t> covering(const CubeFamily::GridLevel& lv, std::size_t i) {
  const std::size_t hi = std::min(i / lv.stride, lv.positions - 1);
  const std::size_t lo = i + 1 > lv.len ? (i + 1 - lv.len + lv.stride - 1) / lv.stride : 0;
  return {lo, hi};
}

void check_nonnegative(const GridFunction& f) {
  for (double v : f.values()) {
    if (v < 0.0 || std::isnan(v)) throw std::domain_error("maximal operators expect f >= 0");
  }
}

}  // namespace

GridFunction family_sup(const GridGeometry& g, const CubeFamily& family, const CubeValue& cube_value) {
  const auto levels = family.grid_levels(g);
  const bool two_d = g.dim == 2;

  std::vector<LevelTable> tables;
  tables.reserve(levels.size());
  for (const auto& lv : levels) {
    const std::size_t ny = two_d ? lv.positions : 1;
    LevelTable t{lv, std::vector<double>(lv.positions * ny)};
    parallel_for(t.values.size(), [&](std::size_t b, std::size_t e) {
      for (std::size_t k = b; k < e; ++k) {
        const std::size_t tx = k % lv.positions;
        const std::size_t ty = k / lv.positions;
        t.values[k] = cube_value(IndexCube{{tx * lv.stride, ty * lv.stride}, lv.len});
      }
    });
    tables.push_back(std::move(t));
  }

  std::vector<double> out(g.cell_count());
  parallel_for(out.size(), [&](std::size_t b, std::size_t e) {
    for (std::size_t cell = b; cell < e; ++cell) {
      const auto c = g.cell_coords(cell);
      double m = cube_value(IndexCube{{c[0], c[1]}, 1});
      for (const auto& t : tables) {
        const auto [x0, x1] = covering(t.level, c[0]);
        if (two_d) {
          const auto [y0, y1] = covering(t.level, c[1]);
          for (std::size_t ty = y0; ty <= y1; ++ty) {
            for (std::size_t tx = x0; tx <= x1; ++tx) {
              m = std::max(m, t.values[ty * t.level.positions + tx]);
            }
          }
        } else {
          for (std::size_t tx = x0; tx <= x1; ++tx) m = std::max(m, t.values[tx]);
        }
      }
      out[cell] = m;
    }
  });

  for (const auto& q : family.grid_extra(g)) {
    const double v = cube_value(q);
    const std::size_t ny = two_d ? q.len : 1;
    for (std::size_t j = 0; j < ny; ++j) {
      for (std::size_t i = 0; i < q.len; ++i) {
        const std::size_t cell = g.cell_index(q.start[0] + i, two_d ? q.start[1] + j : 0);
        out[cell] = std::max(out[cell], v);
      }
    }
  }
  return GridFunction(g, std::move(out));
}

GridFunction hl_maximal(const GridFunction& f, const CubeFamily& family) {
  return fractional_maximal(f, 0.0, family);
}

GridFunction hl_maximal(const GridFunction& f, const CubeFamily& family, const GridFunction& mu) {
  if (!(mu.geometry() == f.geometry())) throw ConfigurationError("measure grid does not match f");
  check_nonnegative(f);
  std::vector<double> fm(f.values().size());
  for (std::size_t i = 0; i < fm.size(); ++i) fm[i] = f[i] * mu[i];
  const GridFunction weighted(f.geometry(), std::move(fm));
  return family_sup(f.geometry(), family, [&](const IndexCube& q) {
    const double m = mu.cube_sum(q);
    return m > 0.0 ? weighted.cube_sum(q) / m : 0.0;
  });
}

GridFunction dyadic_maximal(const GridFunction& f, int level_min, std::optional<int> level_max) {
  check_nonnegative(f);
  const std::size_t n = f.n();
  if (!std::has_single_bit(n)) {
    throw ConfigurationError("dyadic maximal function needs a power-of-two resolution");
  }
  const int depth = std::countr_zero(n);
  const int jmax = level_max.value_or(depth);
  if (level_min < 0 || jmax > depth || level_min > jmax) {
    throw ConfigurationError("dyadic levels out of range");
  }
  const auto& g = f.geometry();
  std::vector<double> out(g.cell_count(), 0.0);
  parallel_for(out.size(), [&](std::size_t b, std::size_t e) {
    for (std::size_t cell = b; cell < e; ++cell) {
      const auto c = g.cell_coords(cell);
      double m = 0.0;
      for (int j = level_min; j <= jmax; ++j) {
        const std::size_t len = n >> j;
        const IndexCube q{{c[0] / len * len, g.dim == 2 ? c[1] / len * len : 0}, len};
        m = std::max(m, f.cube_average(q));
      }
      out[cell] = m;
    }
  });
  return GridFunction(g, std::move(out));
}

GridFunction fractional_maximal(const GridFunction& f, double alpha, const CubeFamily& family) {
  const int d = f.dim();
  if (!(alpha >= 0.0) || alpha >= d) throw ConfigurationError("fractional order must satisfy 0 <= alpha < n");
  check_nonnegative(f);
  if (alpha == 0.0) {
    return family_sup(f.geometry(), family, [&](const IndexCube& q) { return f.cube_average(q); });
  }
  const double expo = alpha / d - 1.0;
  return family_sup(f.geometry(), family, [&](const IndexCube& q) {
    return f.cube_integral(q) * std::pow(f.cube_volume(q), expo);
  });
}

GridFunction orlicz_maximal(const GridFunction& f, const YoungFn& phi, double alpha,
                            const CubeFamily& family) {
  const int d = f.dim();
  if (!(alpha >= 0.0) || alpha >= d) throw ConfigurationError("fractional order must satisfy 0 <= alpha < n");
  check_nonnegative(f);
  auto scale = [&](const IndexCube& q) {
    return alpha == 0.0 ? 1.0 : std::pow(f.cube_volume(q), alpha / d);
  };
  if (auto pl = phi.power_law()) {
    const double r = pl->exponent;
    const GridFunction fr = f.map([r](double v) { return std::pow(v, r); });
    return family_sup(f.geometry(), family, [&, pl](const IndexCube& q) {
      return scale(q) * std::pow(pl->coef * fr.cube_average(q), 1.0 / r);
    });
  }
  return family_sup(f.geometry(), family,
                    [&](const IndexCube& q) { return scale(q) * luxemburg_norm(f, q, phi); });
}

GridGeometry image_geometry(const GridGeometry& g, const SquareMatrix& A) {
  if (A.dim() != g.dim) throw ConfigurationError("matrix and grid dimensions differ");
  GridGeometry out = g;
  if (g.dim == 1) {
    const double l = A.as_scalar();
    out.lo[0] = l > 0 ? l * g.lo[0] : l * (g.lo[0] + g.side);
    out.side = std::abs(l) * g.side;
    return out;
  }
  Point mn{INFINITY, INFINITY}, mx{-INFINITY, -INFINITY};
  for (int cx = 0; cx < 2; ++cx) {
    for (int cy = 0; cy < 2; ++cy) {
      const Point p = A.apply({g.lo[0] + cx * g.side, g.lo[1] + cy * g.side});
      for (int a = 0; a < 2; ++a) {
        mn[a] = std::min(mn[a], p[a]);
        mx[a] = std::max(mx[a], p[a]);
      }
    }
  }
  out.side = std::max(mx[0] - mn[0], mx[1] - mn[1]);
  out.lo = {0.5 * (mn[0] + mx[0]) - 0.5 * out.side, 0.5 * (mn[1] + mx[1]) - 0.5 * out.side};
  return out;
}

GridFunction matrix_compose(const GridFunction& field, const SquareMatrix& A,
                            const GridGeometry& target) {
  if (A.dim() != field.dim() || target.dim != field.dim()) {
    throw ConfigurationError("matrix and grid dimensions differ");
  }
  target.validate();
  const SquareMatrix inv = A.inverse();
  const auto& src = field.geometry();
  std::vector<double> out(target.cell_count(), 0.0);
  std::vector<std::uint8_t> dom(target.cell_count(), 0);
  parallel_for(out.size(), [&](std::size_t b, std::size_t e) {
    for (std::size_t cell = b; cell < e; ++cell) {
      const std::size_t s = src.locate(inv.apply(target.cell_center(cell)));
      if (s < src.cell_count() && field.in_domain(s)) {
        out[cell] = field[s];
        dom[cell] = 1;
      }
    }
  });
  return GridFunction(target, std::move(out), std::move(dom));
}

GridFunction matrix_compose(const GridFunction& field, const SquareMatrix& A) {
  return matrix_compose(field, A, field.geometry());
}

}  // namespace weightlab
