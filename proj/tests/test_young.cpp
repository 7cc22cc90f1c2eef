#include <cmath>

#include "doctest.h"
#include "oracles.hpp"
#include "weightlab/young.hpp"

using namespace weightlab;

TEST_CASE("built-in Young functions") {
  CHECK(YoungFn::power(3.0)(2.0) == 8.0);
  CHECK(YoungFn::exp_minus_one()(0.0) == 0.0);
  CHECK(YoungFn::power_log(1.0, 1.0)(1.0) == doctest::Approx(std::log(M_E + 1.0)));
  CHECK(std::isinf(YoungFn::sup_indicator()(1.5)));
  CHECK(YoungFn::sup_indicator()(1.0) == 0.0);
  const auto b = YoungFn::bump(2.0, 0.5);
  REQUIRE(b.power_law().has_value());
  CHECK(b.power_law()->exponent == doctest::Approx(2.0 / 1.5));
  CHECK_THROWS(YoungFn::power(1.0));
  CHECK_THROWS(YoungFn::bump(2.0, 1.5));
}

TEST_CASE("Legendre transforms against a dense grid") {
  // frozen from the dense-grid oracle: sup_t (2t - t^{4/3}) = 27/16
  CHECK(legendre_transform(YoungFn::bump(2.0, 0.5), 2.0) == doctest::Approx(1.6875).epsilon(1e-12));
  CHECK(legendre_transform(YoungFn::exp_minus_one(), 3.0) ==
        doctest::Approx(3.0 * std::log(3.0) - 2.0).epsilon(1e-10));
  for (double s : {0.5, 1.0, 2.5}) {
    const auto phi = YoungFn::power_log(2.0, 1.0);
    const double ref = oracle::dense_legendre([&](double t) { return phi(t); }, s, 10.0);
    CHECK(legendre_transform(phi, s) == doctest::Approx(ref).epsilon(1e-6));
  }
}

TEST_CASE("complementary functions") {
  const auto c = complementary(YoungFn::power(3.0));
  for (double s : {0.1, 1.0, 4.0}) CHECK(c(s) == doctest::Approx(legendre_transform(YoungFn::power(3.0), s)));
  CHECK(complementary(YoungFn::identity()).kind() == YoungFn::Kind::sup_indicator);
  CHECK(complementary(YoungFn::sup_indicator()).kind() == YoungFn::Kind::identity);
  const auto le = complementary(YoungFn::exp_minus_one());
  CHECK(le.kind() == YoungFn::Kind::legendre);
  CHECK(le(3.0) == doctest::Approx(3.0 * std::log(3.0) - 2.0).epsilon(1e-9));
  CHECK(complementary(le).kind() == YoungFn::Kind::exp_minus_one);
}

TEST_CASE("B_p membership") {
  CHECK(bp_integral(YoungFn::power(2.0), 3.0, INFINITY).membership == BpMembership::member);
  CHECK(bp_integral(YoungFn::power(3.0), 3.0, INFINITY).membership == BpMembership::nonmember);
  CHECK(bp_integral(YoungFn::exp_minus_one(), 2.0, INFINITY).membership == BpMembership::nonmember);
  // ∫_1^∞ t^2 t^{-4} dt = 1
  const auto r = bp_integral(YoungFn::power(2.0), 3.0, 50.0);
  CHECK(r.total == doctest::Approx(1.0).epsilon(1e-8));
  // complement of the bump t^{p/(p+eps-1)} grows like t^{p/(1-eps)}
  const auto bar = complementary(YoungFn::bump(2.0, 0.5));
  CHECK(bp_integral(bar, 2.0, INFINITY).membership == BpMembership::nonmember);
}

TEST_CASE("Luxemburg norms") {
  const std::vector<double> v{1.0, 2.0, 3.0, 4.0};
  CHECK(luxemburg_norm(v, YoungFn::identity()) == 2.5);
  CHECK(luxemburg_norm(v, YoungFn::power(2.0)) == doctest::Approx(std::sqrt(7.5)).epsilon(1e-15));
  CHECK(luxemburg_norm(v, YoungFn::sup_indicator()) == 4.0);
  // frozen from bisection on the modular
  CHECK(luxemburg_norm(v, YoungFn::exp_minus_one()) == doctest::Approx(3.8393709202062611).epsilon(1e-12));
  CHECK(luxemburg_modular(v, YoungFn::exp_minus_one(), luxemburg_norm(v, YoungFn::exp_minus_one())) ==
        doctest::Approx(1.0).epsilon(1e-12));
  for (const auto& phi : {YoungFn::identity(), YoungFn::power(1.5), YoungFn::scaled_power(0.5, 3.0)}) {
    CHECK(luxemburg_norm_bisect(v, phi) == doctest::Approx(luxemburg_norm(v, phi)).epsilon(1e-12));
  }
  CHECK(luxemburg_norm(std::vector<double>{0.0, 0.0}, YoungFn::exp_minus_one()) == 0.0);
}

TEST_CASE("analytic Luxemburg norms and Hölder defect") {
  const auto w = SegmentWeight1D::power_law(-0.5);
  // ||x^{-1/2}||_{L^{3/2}} average on [0,1]: (∫ x^{-3/4})^{2/3} = 4^{2/3}
  CHECK(luxemburg_norm(w, 0.0, 1.0, YoungFn::power(1.5)) == doctest::Approx(std::pow(4.0, 2.0 / 3.0)));
  const auto g = SegmentWeight1D::power_law(0.25);
  CHECK(holder_defect(SegmentWeight1D::power_law(-0.25), g, 0.0, 1.0, YoungFn::power(2.0)) >= 0.0);
  CHECK_THROWS(holder_defect(w, g, 0.0, 1.0, YoungFn::power(2.0)));
  CHECK(holder_defect(std::vector<double>{1, 2}, std::vector<double>{3, 1}, YoungFn::exp_minus_one()) >= 0.0);
}
