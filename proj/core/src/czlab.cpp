#include "weightlab/czlab.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>

#include "weightlab/errors.hpp"
#include "weightlab/maximal.hpp"

namespace weightlab {

namespace {

constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

double threshold(double a, int k, int d) { return std::pow(a, k) / std::pow(4.0, d); }

bool cube_less(const StoppingCube& x, const StoppingCube& y) {
  return x.cube.start[0] != y.cube.start[0] ? x.cube.start[0] < y.cube.start[0]
                                            : x.cube.start[1] < y.cube.start[1];
}

std::size_t cube_cells(const IndexCube& q, int d) { return d == 1 ? q.len : q.len * q.len; }

template <class F>
void for_cells(const GridGeometry& g, const IndexCube& q, F&& fn) {
  const std::size_t ny = g.dim == 2 ? q.len : 1;
  for (std::size_t j = 0; j < ny; ++j) {
    for (std::size_t i = 0; i < q.len; ++i) {
      fn(g.cell_index(q.start[0] + i, g.dim == 2 ? q.start[1] + j : 0));
    }
  }
}

std::vector<StoppingCube> select(const GridFunction& f, double t, double alpha) {
  const int d = f.dim();
  std::vector<StoppingCube> out;
  std::vector<IndexCube> stack{IndexCube{{0, 0}, f.n()}};
  while (!stack.empty()) {
    const IndexCube q = stack.back();
    stack.pop_back();
    const double avg = fractional_average(f, q, alpha);
    if (avg > t) {
      out.push_back({q, avg});
      continue;
    }
    if (q.len == 1) continue;
    const std::size_t h = q.len / 2;
    const std::size_t ny = d == 2 ? 2 : 1;
    for (std::size_t j = 0; j < ny; ++j) {
      for (std::size_t i = 0; i < 2; ++i) {
        stack.push_back(IndexCube{{q.start[0] + i * h, q.start[1] + j * h}, h});
      }
    }
  }
  std::sort(out.begin(), out.end(), cube_less);
  return out;
}

// Largest fractional average over all dyadic cubes.
double dyadic_frac_max(const GridFunction& f, double alpha) {
  const int depth = std::countr_zero(f.n());
  double m = 0.0;
  const auto& g = f.geometry();
  for (int j = 0; j <= depth; ++j) {
    const std::size_t len = f.n() >> j;
    const std::size_t per = std::size_t{1} << j;
    const std::size_t ny = g.dim == 2 ? per : 1;
    for (std::size_t y = 0; y < ny; ++y) {
      for (std::size_t x = 0; x < per; ++x) {
        m = std::max(m, fractional_average(f, IndexCube{{x * len, y * len}, len}, alpha));
      }
    }
  }
  return m;
}

// Per cell, the max fractional average over its dyadic ancestors.
GridFunction dyadic_fractional(const GridFunction& f, double alpha) {
  if (alpha == 0.0) return dyadic_maximal(f);
  const auto& g = f.geometry();
  const int depth = std::countr_zero(f.n());
  std::vector<double> out(g.cell_count(), 0.0);
  for (std::size_t cell = 0; cell < out.size(); ++cell) {
    const auto c = g.cell_coords(cell);
    double m = 0.0;
    for (int j = 0; j <= depth; ++j) {
      const std::size_t len = f.n() >> j;
      m = std::max(m, fractional_average(
                          f, IndexCube{{c[0] / len * len, g.dim == 2 ? c[1] / len * len : 0}, len}, alpha));
    }
    out[cell] = m;
  }
  return GridFunction(g, std::move(out));
}

void validate_dyadic(const GridFunction& f, double a) {
  if (!std::has_single_bit(f.n())) throw ConfigurationError("decomposition needs a power-of-two resolution");
  if (!(a > std::pow(2.0, f.dim()))) throw ConfigurationError("level parameter must satisfy a > 2^n");
  for (double v : f.values()) {
    if (v < 0.0 || std::isnan(v)) throw std::domain_error("decomposition expects f >= 0");
  }
}

}  // namespace

double fractional_average(const GridFunction& f, const IndexCube& q, double alpha) {
  if (alpha == 0.0) return f.cube_average(q);
  return f.cube_integral(q) * std::pow(f.cube_volume(q), alpha / f.dim() - 1.0);
}

CZDecomposition cz_decompose(const GridFunction& f, double a, std::optional<std::pair<int, int>> k_range,
                             double alpha) {
  validate_dyadic(f, a);
  const int d = f.dim();
  if (!(alpha >= 0.0) || alpha >= d) throw ConfigurationError("fractional order must satisfy 0 <= alpha < n");
  CZDecomposition dec;
  dec.geometry = f.geometry();
  dec.a = a;
  dec.alpha = alpha;

  int k_min = 0;
  int k_max = -1;
  if (k_range) {
    k_min = k_range->first;
    k_max = k_range->second;
    if (k_min > k_max) throw ConfigurationError("empty k range");
  } else {
    const double m = dyadic_frac_max(f, alpha);
    if (m == 0.0) return dec;
    const double root = fractional_average(f, IndexCube{{0, 0}, f.n()}, alpha);
    const double up = std::pow(2.0, d) * root;
    k_min = static_cast<int>(std::ceil(std::log(up) / std::log(a)));
    while (std::pow(a, k_min - 1) >= up) --k_min;
    while (std::pow(a, k_min) < up) ++k_min;
    const double lim = std::pow(4.0, d) * m;
    k_max = static_cast<int>(std::floor(std::log(lim) / std::log(a)));
    while (std::pow(a, k_max) >= lim) --k_max;
    while (std::pow(a, k_max + 1) < lim) ++k_max;
    if (k_max < k_min) return dec;
  }

  const auto& g = f.geometry();
  std::vector<CZLevel> levels;
  for (int k = k_min; k <= k_max + 1; ++k) {
    CZLevel lv;
    lv.k = k;
    lv.threshold = threshold(a, k, d);
    lv.cubes = select(f, lv.threshold, alpha);
    levels.push_back(std::move(lv));
  }
  std::vector<std::size_t> owner(g.cell_count());
  for (std::size_t i = 0; i + 1 < levels.size(); ++i) {
    auto& lv = levels[i];
    std::fill(owner.begin(), owner.end(), kNone);
    for (std::size_t j = 0; j < lv.cubes.size(); ++j) {
      for_cells(g, lv.cubes[j].cube, [&](std::size_t c) { owner[c] = j; });
    }
    lv.removed.assign(lv.cubes.size(), {});
    lv.e_cells.assign(lv.cubes.size(), 0);
    std::vector<std::size_t> removed_cells(lv.cubes.size(), 0);
    const auto& next = levels[i + 1].cubes;
    for (std::size_t t = 0; t < next.size(); ++t) {
      const auto& q = next[t].cube;
      const std::size_t o = owner[g.cell_index(q.start[0], q.start[1])];
      if (o == kNone) continue;
      lv.removed[o].push_back(q);
      removed_cells[o] += cube_cells(q, d);
    }
    for (std::size_t j = 0; j < lv.cubes.size(); ++j) {
      lv.e_cells[j] = cube_cells(lv.cubes[j].cube, d) - removed_cells[j];
    }
  }
  levels.pop_back();
  dec.levels = std::move(levels);
  return dec;
}

SandwichReport verify_sandwich(const GridFunction& f, const CZDecomposition& dec) {
  SandwichReport r;
  const double up = std::pow(2.0, f.dim());
  for (const auto& lv : dec.levels) {
    for (const auto& sc : lv.cubes) {
      ++r.cubes;
      if (!(sc.average > lv.threshold && sc.average <= up * lv.threshold)) ++r.violations;
      if (sc.cube.len < f.n()) {
        const std::size_t pl = 2 * sc.cube.len;
        const IndexCube parent{{sc.cube.start[0] / pl * pl, sc.cube.start[1] / pl * pl}, pl};
        if (fractional_average(f, parent, dec.alpha) > lv.threshold) r.maximal = false;
      }
    }
  }
  return r;
}

std::vector<std::size_t> e_cells(const CZDecomposition& dec, std::size_t level, std::size_t j) {
  const auto& g = dec.geometry;
  const auto& lv = dec.levels.at(level);
  const IndexCube& q = lv.cubes.at(j).cube;
  const std::size_t ny = g.dim == 2 ? q.len : 1;
  std::vector<std::uint8_t> keep(q.len * ny, 1);
  for (const IndexCube& r : lv.removed[j]) {
    const std::size_t rny = g.dim == 2 ? r.len : 1;
    for (std::size_t y = 0; y < rny; ++y) {
      for (std::size_t x = 0; x < r.len; ++x) {
        const std::size_t lx = r.start[0] + x - q.start[0];
        const std::size_t ly = g.dim == 2 ? r.start[1] + y - q.start[1] : 0;
        keep[ly * q.len + lx] = 0;
      }
    }
  }
  std::vector<std::size_t> out;
  for (std::size_t y = 0; y < ny; ++y) {
    for (std::size_t x = 0; x < q.len; ++x) {
      if (keep[y * q.len + x]) out.push_back(g.cell_index(q.start[0] + x, g.dim == 2 ? q.start[1] + y : 0));
    }
  }
  return out;
}

ExpansionReport ekj_expansion_check(const CZDecomposition& dec) {
  ExpansionReport r;
  std::vector<std::uint8_t> mark(dec.geometry.cell_count(), 0);
  for (std::size_t l = 0; l < dec.levels.size(); ++l) {
    const auto& lv = dec.levels[l];
    for (std::size_t j = 0; j < lv.cubes.size(); ++j) {
      const auto cells = e_cells(dec, l, j);
      if (cells.empty()) {
        r.beta = std::numeric_limits<double>::infinity();
        if (!r.witness) r.witness = std::make_pair(lv.k, lv.cubes[j].cube);
        continue;
      }
      for (std::size_t c : cells) {
        if (mark[c]) r.disjoint = false;
        mark[c] = 1;
      }
      const double ratio =
          static_cast<double>(cube_cells(lv.cubes[j].cube, dec.geometry.dim)) / static_cast<double>(cells.size());
      r.beta = std::max(r.beta, ratio);
    }
  }
  return r;
}

LevelSetReport level_sets(const GridFunction& f, const SquareMatrix& A, double a, std::pair<int, int> k_range,
                          const CubeFamily& F, double alpha, std::optional<GridGeometry> target) {
  validate_dyadic(f, a);
  const auto& g = f.geometry();
  const int d = g.dim;
  LevelSetReport rep;
  rep.source = g;
  rep.target = target.value_or(image_geometry(g, A));
  const auto& tg = rep.target;

  const GridFunction mf = fractional_maximal(f, alpha, F);
  const GridFunction md = dyadic_fractional(f, alpha);
  const GridFunction ma = matrix_compose(mf, A, tg);
  const GridFunction mda = matrix_compose(md, A, tg);
  const CZDecomposition dec = cz_decompose(f, a, k_range, alpha);

  const double det = std::abs(A.det());
  std::vector<std::uint8_t> omega_prev, d_prev;
  for (int k = k_range.first; k <= k_range.second; ++k) {
    LevelSetEntry e;
    e.k = k;
    const double ak = std::pow(a, k);
    const double t = threshold(a, k, d);
    std::vector<std::uint8_t> omega(g.cell_count()), dset(g.cell_count()), forward(tg.cell_count(), 0);
    for (std::size_t c = 0; c < g.cell_count(); ++c) {
      omega[c] = mf[c] > ak;
      dset[c] = md[c] > t;
      e.omega_cells += omega[c];
      e.d_cells += dset[c];
      if (omega[c]) {
        const std::size_t img = tg.locate(A.apply(g.cell_center(c)));
        if (img < tg.cell_count()) forward[img] = 1;
      }
    }
    bool same = true;
    for (std::size_t c = 0; c < tg.cell_count(); ++c) {
      const bool in = ma.in_domain(c) && ma[c] > ak;
      e.omega_a_cells += in;
      e.d_a_cells += mda.in_domain(c) && mda[c] > t;
      if (in != static_cast<bool>(forward[c])) same = false;
    }
    e.set_identity = same;
    e.omega_measure = e.omega_cells * g.cell_volume();
    e.d_measure = e.d_cells * g.cell_volume();
    e.omega_a_measure = e.omega_a_cells * tg.cell_volume();
    e.d_a_measure = e.d_a_cells * tg.cell_volume();
    e.measure_defect = std::abs(e.omega_a_measure - det * e.omega_measure) / tg.cell_volume();

    // D_k against the stopping cubes, Omega_k against their triples.
    const auto& lv = dec.levels[static_cast<std::size_t>(k - k_range.first)];
    std::vector<std::uint8_t> uni(g.cell_count(), 0), cover(g.cell_count(), 0);
    for (const auto& sc : lv.cubes) {
      for_cells(g, sc.cube, [&](std::size_t c) { uni[c] = 1; });
      const long len = static_cast<long>(sc.cube.len);
      const long n = static_cast<long>(g.n);
      const long x0 = std::max(0L, static_cast<long>(sc.cube.start[0]) - len);
      const long x1 = std::min(n, static_cast<long>(sc.cube.start[0]) + 2 * len);
      long y0 = 0, y1 = 1;
      if (d == 2) {
        y0 = std::max(0L, static_cast<long>(sc.cube.start[1]) - len);
        y1 = std::min(n, static_cast<long>(sc.cube.start[1]) + 2 * len);
      }
      for (long y = y0; y < y1; ++y) {
        for (long x = x0; x < x1; ++x) cover[g.cell_index(static_cast<std::size_t>(x), static_cast<std::size_t>(y))] = 1;
      }
    }
    for (std::size_t c = 0; c < g.cell_count(); ++c) {
      if (uni[c] != dset[c]) e.d_union = false;
      if (omega[c] && !cover[c]) e.triple_cover = false;
    }
    if (!omega_prev.empty()) {
      auto& prev = rep.entries.back();
      for (std::size_t c = 0; c < g.cell_count(); ++c) {
        if ((omega[c] && !omega_prev[c]) || (dset[c] && !d_prev[c])) prev.nested = false;
      }
    }
    omega_prev = std::move(omega);
    d_prev = std::move(dset);
    rep.entries.push_back(e);
  }
  return rep;
}

}  // namespace weightlab
