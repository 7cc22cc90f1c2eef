#include <cmath>

#include "doctest.h"
#include "weightlab/errors.hpp"
#include "weightlab/funcspace.hpp"
#include "weightlab/suites.hpp"
#include "weightlab/weightclass.hpp"

using namespace weightlab;

namespace {

Cube interval(double a, double b) { return Cube{1, {a, 0.0}, b - a}; }

}  // namespace

TEST_CASE("A_p products of power weights") {
  const auto w = SegmentWeight1D::power_law(0.5);
  CHECK(ap_product(w, interval(0, 1), 2.0) == doctest::Approx(4.0 / 3.0).epsilon(1e-14));
  CHECK(ap_product(w, interval(0, 1), 3.0) == doctest::Approx(32.0 / 27.0).epsilon(1e-14));
  // scale invariance of homogeneous weights
  CHECK(ap_product(w, interval(0, 8), 2.0) == doctest::Approx(4.0 / 3.0).epsilon(1e-14));
  CHECK(std::isinf(ap_product(SegmentWeight1D::power_law(1.5), interval(-1, 1), 2.0)));
  CHECK_THROWS_AS(class_product(SegmentWeight1D::power_law(1.5), ClassSpec::Ap(2.0), interval(-1, 1)),
                  NonIntegrableError);
}

TEST_CASE("matrix-twisted products on the spike example") {
  const auto w = spike_weight(9);
  const auto A = SquareMatrix::scalar(2.0);
  // frozen from tanh-sinh integration of w(2x) and w^{-1} on T_1, T_2
  CHECK(aap_product(w, A, interval(4.0, 4.25), 2.0) == doctest::Approx(4.1225107893823818).epsilon(1e-12));
  CHECK(aap_product(w, A, interval(16.0, 16.25), 2.0) == doctest::Approx(8.0621782353244722).epsilon(1e-12));
  CHECK(compose_matrix(w, A).mass(4.0, 4.25) == doctest::Approx(std::sqrt(0.5)).epsilon(1e-14));
}

TEST_CASE("non-doubling measure products") {
  const auto w = exp_weight(2.0);
  // frozen from tanh-sinh integration against e^{|x|} dx
  CHECK(aap_product(w, SquareMatrix::scalar(0.5), interval(0, 1), 2.0, Measure::exp_abs) ==
        doctest::Approx(0.7861581672025727).epsilon(1e-12));
  CHECK(ap_product(w, interval(0, 25), 2.0, Measure::exp_abs) == doctest::Approx(12.500000000347196).epsilon(1e-10));
  CHECK(j_h(2.0, 1.0) == doctest::Approx(0.7861581672025727).epsilon(1e-13));
}

TEST_CASE("bump, fractional and reverse Hölder products") {
  const auto one = SegmentWeight1D::constant(1.0, -10.0, 10.0);
  const auto A = SquareMatrix::scalar(-0.5);
  CHECK(frac_product(one, A, interval(0, 1), 2.0, 4.0) == doctest::Approx(1.0));
  CHECK(bump_product(one, A, interval(0, 1), 2.0, YoungFn::bump(2.0, 0.5)) == doctest::Approx(1.0));
  CHECK(rh_product(one, interval(-1, 1), 2.0) == doctest::Approx(1.0));
  const auto w = SegmentWeight1D::power_law(0.5);
  CHECK(rh_product(w, interval(0, 1), 2.0) == doctest::Approx(std::sqrt(0.5) * 1.5).epsilon(1e-14));
  // with q = p the fractional product is the p-th root of the A_p product
  CHECK(frac_product(w, A, interval(0.25, 1), 2.0, 2.0) ==
        doctest::Approx(std::sqrt(aap_product(w, A, interval(0.25, 1), 2.0))).epsilon(1e-13));
}

TEST_CASE("class specs") {
  CHECK(ClassSpec::fractional_q(2.0, 0.25) == doctest::Approx(4.0));
  CHECK(parse_class("frac_bump") == ClassSpec::Kind::frac_bump);
  CHECK(to_string(ClassSpec::Kind::ap_mu) == "ap_mu");
  CHECK_THROWS(parse_class("bogus"));
  CHECK_THROWS(ClassSpec::Ap(1.0).validate());
  CHECK_THROWS(ClassSpec::Frac(2.0, 1.5, SquareMatrix::identity(1)).validate());
}

TEST_CASE("constants over a family") {
  const auto w = SegmentWeight1D::power_law(0.5);
  const CubeFamily F(interval(-1, 1), 0, 4, 2);
  const auto r = constant(w, ClassSpec::Ap(2.0), F, true);
  CHECK(r.trace.size() == F.cubes().size());
  CHECK(r.value == doctest::Approx(4.0 / 3.0).epsilon(1e-13));
  CHECK_FALSE(r.witness.has_value());

  const auto bad = constant(SegmentWeight1D::power_law(1.5), ClassSpec::Ap(2.0), F);
  CHECK(std::isinf(bad.value));
  REQUIRE(bad.witness.has_value());
  CHECK(bad.witness->cube.contains({0.0, 0.0}));

  const auto one = SegmentWeight1D::constant(3.0, -2.0, 2.0);
  auto spec = ClassSpec::AA1(SquareMatrix::scalar(-1.0));
  spec.grid_n = 256;
  CHECK(constant(one, spec, F).value == doctest::Approx(1.0));
  CHECK(constant(one, ClassSpec::RH(3.0), F).value == doctest::Approx(1.0));
}

TEST_CASE("finite order reduction") {
  const CubeFamily F(interval(-4, 4), 0, 5, 2);
  const auto even = finite_order_reduction(SegmentWeight1D::power_law(0.5), SquareMatrix::scalar(-1.0), 2.0, F, 512);
  REQUIRE(even.applicable);
  CHECK(even.order == 2);
  CHECK(even.aap == doctest::Approx(even.ap).epsilon(1e-13));
  CHECK(even.ratio_bound == doctest::Approx(1.0));
  CHECK(even.contract_holds);
  const auto no = finite_order_reduction(SegmentWeight1D::power_law(0.5), SquareMatrix::scalar(2.0), 2.0, F);
  CHECK_FALSE(no.applicable);
}

TEST_CASE("subset lemma and reverse Hölder inclusion") {
  const auto w = SegmentWeight1D::power_law(0.5);
  const CubeFamily F(interval(-2, 2), 0, 4, 2);
  const std::vector<std::pair<Cube, Cube>> pairs{{interval(0, 0.5), interval(0, 1)},
                                                 {interval(-1, -0.75), interval(-1, 1)},
                                                 {interval(0.5, 0.625), interval(0.5, 1)}};
  const auto s = subset_lemma_check(w, SquareMatrix::scalar(-0.5), 2.0, pairs, F);
  CHECK(s.pairs == 3);
  CHECK(s.max_defect <= 1e-12);

  const auto rh = rh_inclusion_check(w, SquareMatrix::scalar(2.0), 2.0, 0.25, F);
  REQUIRE(rh.applicable);
  CHECK(rh.s == doctest::Approx(1.0 / 0.75));
  CHECK(rh.holds);
  CHECK(rh.cubes == F.cubes().size());
  CHECK_FALSE(rh_inclusion_check(exp_weight(2.0), SquareMatrix::scalar(2.0), 2.0, 0.25, F, Measure::exp_abs).applicable);

  const auto probe = rh_probe(w, SquareMatrix::scalar(2.0), 2.0, {1.5, 2.0}, F);
  CHECK(probe.rh.size() == 2);
  CHECK(probe.rh[0].second >= 1.0);
  CHECK(probe.dual_rh[1].second >= 1.0);
}
