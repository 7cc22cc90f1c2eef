// Independent reference implementations used only by the tests.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <random>
#include <vector>

#include "weightlab/grid.hpp"

namespace oracle {

// Tanh-sinh quadrature of F(t) over t in [0, L]. F receives the offset t from
// the left end, so a singularity placed at t = 0 is evaluated without
// cancellation. The right half uses L - s, so keep singularities on the left.
inline double tanh_sinh(const std::function<double(double)>& F, double L, double tol = 1e-14) {
  const double half = 0.5 * L;
  double h = 1.0;
  double prev = 0.0;
  for (int level = 0; level < 12; ++level) {
    double sum = 0.0;
    for (int side = -1; side <= 1; side += 2) {
      for (int i = (side == -1 ? 1 : 0); i < 4000; ++i) {
        const double t = side * i * h;
        const double u = 0.5 * M_PI * std::sinh(t);
        const double cu = std::cosh(u);
        const double w = 0.5 * M_PI * std::cosh(t) / (cu * cu);
        // distance of the node from the nearer end, computed without cancellation
        const double d = half * std::exp(-std::abs(u)) / cu;
        if (d <= 0.0 || w * half < 1e-300) break;
        const double x = u < 0.0 ? d : L - d;
        const double fx = F(x);
        if (!std::isfinite(fx)) continue;
        sum += w * fx;
        if (i > 10 && std::abs(w * fx * half) < 1e-18 * std::abs(sum * half + 1e-300)) break;
      }
    }
    const double est = sum * h * half;
    if (level > 2 && std::abs(est - prev) <= tol * std::abs(est)) return est;
    prev = est;
    h *= 0.5;
  }
  return prev;
}

// sup_Q ∋ cell of avg_Q f over an explicit cube list, by direct summation.
inline std::vector<double> brute_maximal(const weightlab::GridFunction& f, const std::vector<weightlab::IndexCube>& cubes) {
  const auto& g = f.geometry();
  std::vector<double> out(g.cell_count(), 0.0);
  for (std::size_t c = 0; c < out.size(); ++c) out[c] = f[c];
  for (const auto& q : cubes) {
    const double cells = g.dim == 1 ? q.len : double(q.len) * q.len;
    const double avg = f.cube_sum_direct(q) / cells;
    for (std::size_t c = 0; c < out.size(); ++c) {
      const auto xy = g.cell_coords(c);
      if (q.contains(xy[0], xy[1])) out[c] = std::max(out[c], avg);
    }
  }
  return out;
}

// Every dyadic cube of a power-of-two grid.
inline std::vector<weightlab::IndexCube> dyadic_cubes(const weightlab::GridGeometry& g) {
  std::vector<weightlab::IndexCube> out;
  for (std::size_t len = g.n; len >= 1; len /= 2) {
    const std::size_t per = g.n / len;
    for (std::size_t y = 0; y < (g.dim == 2 ? per : 1); ++y) {
      for (std::size_t x = 0; x < per; ++x) out.push_back({{x * len, y * len}, len});
    }
    if (len == 1) break;
  }
  return out;
}

// Maximal dyadic cubes with average > t: a cube is selected when its average
// exceeds t and no strict dyadic ancestor does.
inline std::vector<weightlab::IndexCube> cz_select(const weightlab::GridFunction& f, double t) {
  const auto& g = f.geometry();
  auto avg = [&](const weightlab::IndexCube& q) {
    return f.cube_sum_direct(q) / (g.dim == 1 ? double(q.len) : double(q.len) * q.len);
  };
  std::vector<weightlab::IndexCube> out;
  for (const auto& q : dyadic_cubes(g)) {
    if (!(avg(q) > t)) continue;
    bool top = true;
    for (std::size_t len = q.len * 2; len <= g.n; len *= 2) {
      const weightlab::IndexCube p{{q.start[0] / len * len, q.start[1] / len * len}, len};
      if (avg(p) > t) top = false;
    }
    if (top) out.push_back(q);
  }
  return out;
}

// sup_t (s t - phi(t)) on a dense geometric-plus-linear grid.
inline double dense_legendre(const std::function<double(double)>& phi, double s, double tmax = 1e3) {
  double best = 0.0;
  for (int i = 0; i <= 200000; ++i) {
    const double t = tmax * i / 200000.0;
    best = std::max(best, s * t - phi(t));
  }
  return best;
}

// Hand-rolled generators.
struct Gen {
  std::mt19937_64 rng;
  explicit Gen(std::uint64_t seed) : rng(seed) {}
  double uniform(double a, double b) { return std::uniform_real_distribution<double>(a, b)(rng); }
  int integer(int a, int b) { return std::uniform_int_distribution<int>(a, b)(rng); }
  bool coin() { return integer(0, 1) == 1; }
  template <class T>
  const T& pick(const std::vector<T>& v) { return v[std::size_t(integer(0, int(v.size()) - 1))]; }

  // Nonnegative grid values with a few spikes and zero runs.
  std::vector<double> field(std::size_t cells, bool integer_valued = false) {
    std::vector<double> v(cells);
    for (auto& x : v) x = integer_valued ? double(integer(0, 9)) : uniform(0.0, 1.0);
    const int spikes = integer(0, 4);
    for (int s = 0; s < spikes; ++s) v[std::size_t(integer(0, int(cells) - 1))] = integer_valued ? 50.0 : uniform(5.0, 50.0);
    if (coin()) {
      const std::size_t a = std::size_t(integer(0, int(cells) - 1));
      const std::size_t len = std::min(cells - a, std::size_t(integer(1, int(cells) / 4 + 1)));
      std::fill(v.begin() + long(a), v.begin() + long(a + len), 0.0);
    }
    return v;
  }

  weightlab::IndexCube cube(const weightlab::GridGeometry& g) {
    const std::size_t len = std::size_t(integer(1, int(g.n)));
    const std::size_t x = std::size_t(integer(0, int(g.n - len)));
    const std::size_t y = g.dim == 2 ? std::size_t(integer(0, int(g.n - len))) : 0;
    return {{x, y}, len};
  }
};

}  // namespace oracle
