#include "weightlab/funcspace.hpp"

#include <cmath>
#include <stdexcept>

#include "weightlab/errors.hpp"
#include "weightlab/quadrature.hpp"

namespace weightlab {

std::string to_string(Measure m) { return m == Measure::lebesgue ? "lebesgue" : "exp"; }

Measure parse_measure(const std::string& name) {
  if (name == "lebesgue") return Measure::lebesgue;
  if (name == "exp") return Measure::exp_abs;
  throw std::invalid_argument("unknown measure '" + name + "'");
}

double measure_mass(Measure mu, double a, double b) {
  if (a > b) throw std::invalid_argument("measure_mass requires a <= b");
  if (mu == Measure::lebesgue) return b - a;
  // ∫ e^{|x|}: e^b - e^a on the right half, e^{-a} - e^{-b} on the left.
  double m = 0.0;
  if (b > 0.0) {
    const double l = std::max(a, 0.0);
    m += std::exp(l) * std::expm1(b - l);
  }
  if (a < 0.0) {
    const double r = std::min(b, 0.0);
    m += std::exp(-r) * std::expm1(r - a);
  }
  return m;
}

double weighted_mass(const SegmentWeight1D& w, Measure mu, double a, double b) {
  if (mu == Measure::lebesgue) return w.mass(a, b);
  return w.times_exp_abs().mass(a, b);
}

SegmentWeight1D compose_matrix(const SegmentWeight1D& w, const SquareMatrix& A) {
  if (A.dim() != 1) throw ConfigurationError("analytic composition is one-dimensional");
  return w.composed(A.as_scalar());
}

std::vector<double> cell_masses(const SegmentWeight1D& w, const GridGeometry& g) {
  if (g.dim != 1) throw ConfigurationError("segment weights sample onto 1D grids only");
  g.validate();
  std::vector<double> out(g.n);
  const double h = g.cell_width();
  for (std::size_t i = 0; i < g.n; ++i) {
    const double a = g.lo[0] + static_cast<double>(i) * h;
    const double b = i + 1 == g.n ? g.lo[0] + g.side : g.lo[0] + static_cast<double>(i + 1) * h;
    out[i] = w.mass(a, b);
  }
  return out;
}

GridFunction sample_to_grid(const SegmentWeight1D& w, const GridGeometry& g) {
  if (g.n < 2) throw ConfigurationError("sampling needs at least two cells");
  auto masses = cell_masses(w, g);
  const double h = g.cell_width();
  for (double& m : masses) m /= h;
  return GridFunction(g, std::move(masses));
}

GridFunction sample_to_grid(const std::function<double(double, double)>& density,
                            const GridGeometry& g, int nodes) {
  if (g.dim != 2) throw ConfigurationError("density sampling expects a 2D grid");
  if (g.n < 2) throw ConfigurationError("sampling needs at least two cells");
  const GaussRule& r = gauss_legendre(nodes);
  const double h = g.cell_width();
  std::vector<double> out(g.cell_count());
  for (std::size_t cell = 0; cell < out.size(); ++cell) {
    const Point c = g.cell_center(cell);
    double s = 0.0;
    for (std::size_t i = 0; i < r.nodes.size(); ++i) {
      for (std::size_t j = 0; j < r.nodes.size(); ++j) {
        s += r.weights[i] * r.weights[j] *
             density(c[0] + 0.5 * h * r.nodes[i], c[1] + 0.5 * h * r.nodes[j]);
      }
    }
    out[cell] = 0.25 * s;
  }
  return GridFunction(g, std::move(out));
}

}  // namespace weightlab
