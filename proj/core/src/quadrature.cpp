#include "weightlab/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>

#include "weightlab/summation.hpp"

namespace weightlab {

namespace {

GaussRule build_rule(int n) {
  GaussRule rule;
  rule.nodes.resize(static_cast<std::size_t>(n));
  rule.weights.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    rule.nodes[static_cast<std::size_t>(i)] = x;
    rule.weights[static_cast<std::size_t>(i)] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
  return rule;
}

}  // namespace

const GaussRule& gauss_legendre(int n) {
  if (n < 1 || n > 256) throw std::invalid_argument("Gauss rule size out of range");
  static std::mutex mu;
  static std::map<int, GaussRule> cache;
  std::lock_guard lock(mu);
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, build_rule(n)).first;
  return it->second;
}

double gauss_integrate(const std::function<double(double)>& f, double a, double b, int nodes) {
  const GaussRule& r = gauss_legendre(nodes);
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  CompensatedSum s;
  for (std::size_t i = 0; i < r.nodes.size(); ++i) s += r.weights[i] * f(mid + half * r.nodes[i]);
  return half * s.value();
}

double graded_integrate(const std::function<double(double)>& f, double a, double b,
                        std::span<const double> breakpoints, int depth) {
  if (!(a < b)) return 0.0;
  std::vector<double> cuts{a};
  for (double p : breakpoints) {
    if (p > a && p < b) cuts.push_back(p);
  }
  cuts.push_back(b);
  CompensatedSum total;
  for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
    const double l = cuts[k];
    const double r = cuts[k + 1];
    const double m = 0.5 * (l + r);
    // Panels [l + (m-l)2^{-i-1}, l + (m-l)2^{-i}] toward l, mirrored toward r.
    // Grade toward each end until the innermost Gauss node would round onto it.
    auto grade = [&](double end, double sign) {
      const double floor = 1024.0 * std::numeric_limits<double>::epsilon() * std::abs(end);
      double outer = m - l;
      for (int i = 0; i < depth && 0.5 * outer > floor; ++i) {
        const double inner = 0.5 * outer;
        total += sign * gauss_integrate(f, end + sign * inner, end + sign * outer);
        outer = inner;
      }
      total += sign * gauss_integrate(f, end, end + sign * outer);
    };
    grade(l, 1.0);
    grade(r, -1.0);
  }
  return total.value();
}

}  // namespace weightlab
