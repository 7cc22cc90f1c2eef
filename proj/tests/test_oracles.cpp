#include "doctest.h"
#include "oracles.hpp"

TEST_CASE("tanh-sinh resolves endpoint singularities") {
  CHECK(oracle::tanh_sinh([](double t) { return 1.0 / std::sqrt(t); }, 1.0) == doctest::Approx(2.0).epsilon(1e-13));
  CHECK(oracle::tanh_sinh([](double t) { return std::pow(t, -0.9); }, 1.0) == doctest::Approx(10.0).epsilon(1e-9));
  CHECK(oracle::tanh_sinh([](double t) { return std::sin(t); }, M_PI) == doctest::Approx(2.0).epsilon(1e-14));
}

TEST_CASE("brute-force maximal on a tiny grid") {
  weightlab::GridGeometry g{1, {0.0, 0.0}, 4.0, 4};
  weightlab::GridFunction f(g, {0.0, 4.0, 0.0, 0.0});
  auto m = oracle::brute_maximal(f, {{{0, 0}, 2}, {{2, 0}, 2}, {{0, 0}, 4}});
  CHECK(m == std::vector<double>{2.0, 4.0, 1.0, 1.0});
}

TEST_CASE("enumerative selection picks maximal cubes") {
  weightlab::GridGeometry g{1, {0.0, 0.0}, 8.0, 8};
  weightlab::GridFunction f(g, {8, 0, 0, 0, 0, 0, 1, 1});
  auto sel = oracle::cz_select(f, 1.5);
  REQUIRE(sel.size() == 1);
  CHECK(sel[0] == weightlab::IndexCube{{0, 0}, 4});
  CHECK(oracle::cz_select(f, 0.5).size() == 1);  // root average 1.25 > 0.5
}

TEST_CASE("dense Legendre transform") {
  CHECK(oracle::dense_legendre([](double t) { return t * t / 2.0; }, 3.0) == doctest::Approx(4.5).epsilon(1e-9));
}
