#include <cmath>

#include "doctest.h"
#include "oracles.hpp"
#include "weightlab/errors.hpp"
#include "weightlab/funcspace.hpp"
#include "weightlab/matrix.hpp"
#include "weightlab/quadrature.hpp"
#include "weightlab/segment_weight.hpp"
#include "weightlab/summation.hpp"

using namespace weightlab;

TEST_CASE("matrix basics") {
  const auto A = SquareMatrix::of(0.0, -1.0, 1.0, 0.0);
  CHECK(A.det() == 1.0);
  CHECK(A.order() == 4);
  CHECK(A.power(4).distance(SquareMatrix::identity(2)) == 0.0);
  const auto x = A.inverse().apply(A.apply({0.3, -2.0}));
  CHECK(x[0] == doctest::Approx(0.3));
  CHECK(x[1] == doctest::Approx(-2.0));
  CHECK(SquareMatrix::scalar(-2.0).as_scalar() == -2.0);
  CHECK_FALSE(SquareMatrix::scalar(2.0).order().has_value());
  CHECK_THROWS_AS(SquareMatrix::diag(1.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(A.as_scalar(), std::logic_error);
}

TEST_CASE("compensated sum") {
  CompensatedSum s;
  s += 1e16;
  s += 1.0;
  s += -1e16;
  CHECK(s.value() == 1.0);
}

TEST_CASE("segment masses against quadrature") {
  const auto seg = Segment::power(0.0, 2.0, 3.0, 0.0, -0.5);
  CHECK(seg.mass(0.0, 1.0) == doctest::Approx(6.0).epsilon(1e-15));
  const double ref = oracle::tanh_sinh([](double t) { return 3.0 / std::sqrt(t); }, 0.5);
  CHECK(seg.mass(0.0, 0.5) == doctest::Approx(ref).epsilon(1e-13));

  const auto ex = Segment::exponential(-1.0, 1.0, 2.0, 1.5);
  const double ref_ex = oracle::tanh_sinh([](double t) { return 2.0 * std::exp(1.5 * (t - 1.0)); }, 2.0);
  CHECK(ex.mass(-1.0, 1.0) == doctest::Approx(ref_ex).epsilon(1e-13));
  CHECK_THROWS_AS(ex.mass(-2.0, 0.0), std::domain_error);
}

TEST_CASE("power singularities must stay integrable") {
  CHECK_THROWS(Segment::power(-1.0, 1.0, 1.0, 0.0, -1.0));
  const auto w = SegmentWeight1D::power_law(-0.5);
  CHECK_THROWS_AS(w.raised(2.0), NonIntegrableError);
  CHECK_NOTHROW(w.raised(1.5));
  CHECK(w.raised(-2.0).mass(0.0, 1.0) == doctest::Approx(0.5));
}

TEST_CASE("weight composition and tails") {
  const auto w = SegmentWeight1D::power_law(0.5);
  const auto w2 = w.composed(-2.0);
  // ∫_a^b w(λx) dx = |λ|^{-1} ∫_{λa}^{λb} w
  CHECK(w2.mass(0.25, 1.0) == doctest::Approx(w.mass(-2.0, -0.5) / 2.0).epsilon(1e-14));
  CHECK(w.mass(-1.0, 1.0) == doctest::Approx(4.0 / 3.0));

  const auto c = SegmentWeight1D::constant(2.0, 0.0, 1.0);
  CHECK(c.mass(-5.0, 5.0) == 2.0);
  CHECK(c.density(3.0) == 0.0);
  const auto ce = SegmentWeight1D::constant(2.0, 0.0, 1.0, Tail::extend);
  CHECK(ce.mass(-5.0, 5.0) == 20.0);
}

TEST_CASE("exp-abs measure") {
  CHECK(measure_mass(Measure::exp_abs, -1.0, 1.0) == doctest::Approx(2.0 * (std::exp(1.0) - 1.0)));
  const auto w = SegmentWeight1D(std::vector<Segment>{Segment::exponential(-3.0, 3.0, 1.0, 0.5)});
  const double ref = oracle::tanh_sinh([](double t) {
    const double x = t - 1.0;
    return std::exp(0.5 * x) * std::exp(std::abs(x));
  }, 1.0) + oracle::tanh_sinh([](double t) { return std::exp(1.5 * t); }, 2.0);
  CHECK(weighted_mass(w, Measure::exp_abs, -1.0, 2.0) == doctest::Approx(ref).epsilon(1e-12));
  CHECK_THROWS(weighted_mass(SegmentWeight1D::power_law(0.5), Measure::exp_abs, 0.0, 1.0));
}

TEST_CASE("grid prefix sums") {
  GridGeometry g{2, {0.0, 0.0}, 1.0, 8};
  oracle::Gen gen(7);
  GridFunction f(g, gen.field(g.cell_count(), true));
  for (int i = 0; i < 50; ++i) {
    const auto q = gen.cube(g);
    CHECK(f.cube_sum(q) == f.cube_sum_direct(q));
  }
  CHECK(g.locate({0.999, 0.001}) == g.cell_index(7, 0));
  CHECK(g.locate({1.5, 0.5}) == g.cell_count());
  CHECK(g.cell_center(g.cell_index(1, 2))[1] == doctest::Approx(2.5 / 8.0));
}

TEST_CASE("cube family") {
  const CubeFamily F(Cube{1, {0.0, 0.0}, 8.0}, 0, 2, 2);
  // level 0: 1 cube; level 1: side 4 stride 2 -> 3; level 2: side 2 stride 1 -> 7
  CHECK(F.cubes().size() == 11);
  GridGeometry g{1, {0.0, 0.0}, 8.0, 16};
  const auto levels = F.grid_levels(g);
  REQUIRE(levels.size() == 3);
  CHECK(levels[1].len == 8);
  CHECK(levels[1].stride == 4);
  CHECK(levels[1].positions == 3);
  const auto G = F.with_extra({Cube{1, {1.0, 0.0}, 0.5}});
  CHECK(G.grid_extra(g).size() == 1);
  CHECK_THROWS_AS(F.with_extra({Cube{1, {0.1, 0.0}, 0.5}}).grid_extra(g), ConfigurationError);
}

TEST_CASE("sampling and quadrature") {
  GridGeometry g{1, {-1.0, 0.0}, 2.0, 4};
  const auto f = sample_to_grid(SegmentWeight1D::power_law(-0.5), g);
  CHECK(f[1] == doctest::Approx(2.0 * std::sqrt(0.5) / 0.5));
  const auto masses = cell_masses(SegmentWeight1D::power_law(-0.5), g);
  CHECK(masses[2] == doctest::Approx(2.0 * std::sqrt(0.5)));

  CHECK(gauss_integrate([](double x) { return x * x * x * x; }, 0.0, 1.0) == doctest::Approx(0.2).epsilon(1e-15));
  CHECK(graded_integrate([](double x) { return 1.0 / std::sqrt(x); }, 0.0, 1.0) == doctest::Approx(2.0).epsilon(1e-10));
  const double bp[] = {0.5};
  CHECK(graded_integrate([](double x) { return 1.0 / std::sqrt(std::abs(x - 0.5)); }, 0.0, 1.0, bp) ==
        doctest::Approx(4.0 * std::sqrt(0.5)).epsilon(1e-7));

  GridGeometry g2{2, {0.0, 0.0}, 1.0, 4};
  const auto h = sample_to_grid([](double x, double y) { return x * y; }, g2);
  CHECK(h[g2.cell_index(3, 3)] == doctest::Approx(0.875 * 0.875));
}
