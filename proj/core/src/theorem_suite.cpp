#include <bit>
#include <chrono>
#include <cmath>
#include <random>
#include <sstream>

#include "weightlab/czlab.hpp"
#include "weightlab/funcspace.hpp"
#include "weightlab/maximal.hpp"
#include "weightlab/suites.hpp"
#include "weightlab/summation.hpp"
#include "weightlab/weightclass.hpp"

namespace weightlab {

namespace {

using Clock = std::chrono::steady_clock;

struct Piece {
  double lo, hi, height;
};

// Exact cell averages of a step function.
GridFunction step_function(const GridGeometry& g, const std::vector<Piece>& pieces) {
  std::vector<double> v(g.n, 0.0);
  const double h = g.cell_width();
  for (std::size_t i = 0; i < g.n; ++i) {
    const double x0 = g.lo[0] + i * h, x1 = x0 + h;
    for (const auto& pc : pieces) {
      const double o = std::min(x1, pc.hi) - std::max(x0, pc.lo);
      if (o > 0.0) v[i] += pc.height * o / h;
    }
  }
  return GridFunction(g, std::move(v));
}

struct CorpusWeight {
  std::string name;
  SegmentWeight1D w;
};

std::vector<CorpusWeight> in_class_weights() {
  return {{"one", SegmentWeight1D::constant(1.0, -1.0, 1.0, Tail::extend)},
          {"abs^0.5", SegmentWeight1D::power_law(0.5)},
          {"abs^-0.25", SegmentWeight1D::power_law(-0.25)}};
}

Check make(std::string name, std::string description, double value, std::string relation, bool passed, Basis basis,
           std::vector<std::pair<std::string, double>> inputs = {}) {
  return Check{std::move(name), std::move(description), value, std::move(relation), passed, basis, std::move(inputs)};
}

Cube interval(double lo, double hi) { return Cube{1, {lo, 0.0}, hi - lo}; }

// Sharp constant of the uncentered maximal operator on L^p(R): root of (p-1)x^p - p x^{p-1} - 1.
double uncentered_constant(double p) {
  auto f = [p](double x) { return (p - 1.0) * std::pow(x, p) - p * std::pow(x, p - 1.0) - 1.0; };
  double lo = 1.0, hi = 2.0;
  while (f(hi) < 0.0) hi *= 2.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (f(mid) < 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

struct ChainSweep {
  double min_slack = INFINITY;
  double max_beta = 0.0;
  int runs = 0;
  int failures = 0;
  int min_levels = 1 << 30;
  std::string worst;
};

ChainSweep chain_sweep(const GridFunction& f, const std::vector<double>& ps, double alpha) {
  ChainSweep s;
  for (const auto& cw : in_class_weights()) {
    for (double lam : {0.5, -0.5, 2.0, -2.0}) {
      for (double p : ps) {
        ChainConfig cfg;
        cfg.f = f;
        cfg.w = cw.w;
        cfg.A = SquareMatrix::scalar(lam);
        cfg.p = p;
        cfg.alpha = alpha;
        cfg.phi = YoungFn::bump(p, 0.5);
        cfg.a = 8.0;
        const ChainReport r = theorem_chain_check(cfg);
        ++s.runs;
        if (!r.applicable || !r.holds || r.levels < 2) ++s.failures;
        s.min_levels = std::min(s.min_levels, r.levels);
        s.max_beta = std::max(s.max_beta, r.beta);
        if (r.min_slack < s.min_slack || !r.applicable) {
          s.min_slack = r.applicable ? r.min_slack : -INFINITY;
          std::ostringstream os;
          os << cw.name << " lambda=" << lam << " p=" << p;
          s.worst = os.str();
        }
      }
    }
  }
  return s;
}

double norm_ratio(const GridFunction& f, const SegmentWeight1D& w, const SquareMatrix& A, double p,
                  const CubeFamily& F) {
  const auto& g = f.geometry();
  const GridFunction mf = hl_maximal(f, F);
  const GridGeometry tg = image_geometry(g, A);
  const GridFunction ma = matrix_compose(mf, A, tg);
  const auto u = cell_masses(w, tg);
  const auto v = cell_masses(w, g);
  CompensatedSum lhs, rhs;
  for (std::size_t i = 0; i < tg.n; ++i) lhs += std::pow(ma[i], p) * u[i];
  for (std::size_t i = 0; i < g.n; ++i) rhs += std::pow(f[i], p) * v[i];
  return std::pow(lhs.value() / rhs.value(), 1.0 / p);
}

}  // namespace

SuiteResult suite_theorems(const TheoremConfig& cfg) {
  const auto t0 = Clock::now();
  SuiteResult r;
  r.id = "theorems";
  const GridGeometry g{1, {-1.0, 0.0}, 2.0, cfg.n1d};
  const GridFunction f = step_function(g, {{0.1, 0.35, 1.0}, {0.5, 0.52, 40.0}, {-0.7, -0.65, 8.0}, {0.3, 0.3005, 1500.0}});
  const double n_in = static_cast<double>(cfg.n1d);

  // Good-lambda chain, alpha = 0.
  const ChainSweep chain = chain_sweep(f, {1.5, 2.0}, 0.0);
  r.checks.push_back(make("chain_slack", "min slack over every step of the chain, weights {1, |x|^{1/2}, |x|^{-1/4}} x "
                                         "lambda {±1/2, ±2} x p {3/2, 2}",
                          chain.min_slack, ">= -1e-6 with cover, E-disjointness and >= 2 levels", chain.failures == 0,
                          Basis::derived, {{"runs", chain.runs}, {"cells", n_in}, {"min_levels", chain.min_levels}}));
  r.checks.push_back(make("chain_beta", "max |Q|/|E| over the chain decompositions (a = 8)", chain.max_beta, "<= 4/3",
                          chain.max_beta <= 4.0 / 3.0 + 1e-12, Basis::derived));

  // Fractional chain, p = 2, alpha = 1/4, q = 4.
  const ChainSweep frac = chain_sweep(f, {2.0}, 0.25);
  r.checks.push_back(make("fractional_chain_slack", "min slack of the fractional chain, (p, q) = (2, 4), alpha = 1/4",
                          frac.min_slack, ">= -1e-6 with cover, E-disjointness and >= 2 levels", frac.failures == 0,
                          Basis::derived, {{"runs", frac.runs}, {"alpha", 0.25}, {"min_levels", frac.min_levels}}));

  const CubeFamily F(g.bounding_cube(), 0, 14, 4);
  const GridFunction m_hl = hl_maximal(f, F);
  const GridFunction m_fr = fractional_maximal(f, 0.0, F);
  std::size_t differ = 0;
  for (std::size_t i = 0; i < g.n; ++i) differ += m_hl[i] != m_fr[i];
  r.checks.push_back(make("alpha_zero_reduction", "cells where the alpha = 0 fractional maximal function differs from "
                                                  "the Hardy-Littlewood path",
                          static_cast<double>(differ), "== 0 (bitwise)", differ == 0, Basis::trivial));

  {
    const SegmentWeight1D W = SegmentWeight1D::power_law(0.5);
    const CubeFamily fam(interval(-4.0, 4.0), 0, 6, 2);
    double worst = 0.0;
    for (double lam : {2.0, -0.5}) {
      for (const auto& Q : fam.cubes()) {
        const double a = frac_product(W, SquareMatrix::scalar(lam), Q, 2.0, 2.0);
        const double b = std::pow(aap_product(W, SquareMatrix::scalar(lam), Q, 2.0), 0.5);
        worst = std::max(worst, std::abs(a - b) / b);
      }
    }
    r.checks.push_back(make("fractional_bridge", "per-cube |frac(W, p, p) - aap(W, p)^{1/p}| / aap^{1/p}, W = |x|^{1/2}",
                            worst, "<= 1e-9", worst <= 1e-9, Basis::derived));
  }

  // Reverse Hölder inclusion.
  {
    const CubeFamily fam(interval(-4.0, 4.0), 0, 6, 2);
    const auto rh = rh_inclusion_check(SegmentWeight1D::power_law(0.5), SquareMatrix::scalar(2.0), 2.0, 0.25, fam);
    r.checks.push_back(make("rh_inclusion", "min per-cube slack of [w]_{A_{A,p-eps}} <= [w^{1-p'}]_{RH(s)}^{p-1} "
                                            "[w]_{A_{A,p}}, w = |x|^{1/2}, A = 2, p = 2, eps = 1/4",
                            rh.min_slack, ">= -1e-9 on >= 200 cubes", rh.applicable && rh.holds && rh.cubes >= 200,
                            Basis::derived, {{"cubes", static_cast<double>(rh.cubes)}, {"s", rh.s}}));
    const auto na = rh_inclusion_check(exp_weight(2.0), SquareMatrix::scalar(0.5), 2.0, 0.25, fam, Measure::exp_abs);
    r.checks.push_back(make("rh_measure_not_applicable", "reverse Hölder check under the exp(|x|) measure is reported as "
                                                         "not applicable",
                            na.applicable ? 0.0 : 1.0, "== 1", !na.applicable, Basis::trivial));
  }

  // Finite order.
  {
    const CubeFamily fam(interval(-4.0, 4.0), 0, 6, 2);
    bool ok = true;
    double ratio = 0.0;
    for (double delta : {-0.5, 0.5}) {
      const auto fo = finite_order_reduction(SegmentWeight1D::power_law(delta), SquareMatrix::scalar(-1.0), 2.0, fam);
      ok = ok && fo.applicable && fo.contract_holds && std::isfinite(fo.aap) && std::isfinite(fo.ap);
      ratio = std::max(ratio, std::abs(fo.ratio_bound - 1.0));
    }
    r.checks.push_back(make("finite_order_power", "A = -1, w = |x|^delta, delta in {-1/2, 1/2}: all constants finite; "
                                                  "|ratio bound - 1|",
                            ratio, "<= 1e-12", ok && ratio <= 1e-12, Basis::trivial));

    const SegmentWeight1D w43 = integer_spike_weight(12);
    std::vector<Cube> js;
    std::vector<double> logk, logp;
    for (int k = 1; k <= 8; ++k) {
      js.push_back(interval(-k - 0.25, -k));
      logk.push_back(std::log(k));
      logp.push_back(std::log(aap_product(w43, SquareMatrix::scalar(-1.0), js.back(), 2.0)));
    }
    const CubeFamily fam43 = CubeFamily(interval(-10.24, 10.24), 0, 6, 2).with_extra(js);
    const auto fo = finite_order_reduction(w43, SquareMatrix::scalar(-1.0), 2.0, fam43);
    const double slope = least_squares_slope(logk, logp);
    r.checks.push_back(make("finite_order_separation", "integer spike weight, A = -1: slope of log A_{A,2} products on "
                                                       "J_k against log k while [w]_{A_2} stays below 100",
                            slope, "in [0.35, 0.65] and A_2 bounded",
                            std::abs(slope - 0.5) <= 0.15 && fo.applicable && fo.ap < 100.0, Basis::reference,
                            {{"ap", fo.ap}, {"aap", fo.aap}}));
    const auto na = finite_order_reduction(w43, SquareMatrix::scalar(2.0), 2.0, fam43);
    r.checks.push_back(make("finite_order_not_applicable", "A = 2 has no finite order", na.applicable ? 0.0 : 1.0,
                            "== 1", !na.applicable, Basis::trivial));
  }

  // Norm-ratio probe over random step functions.
  {
    const GridGeometry pg{1, {-1.0, 0.0}, 2.0, std::min<std::size_t>(cfg.n1d, 4096)};
    const CubeFamily pf(pg.bounding_cube(), 0, std::countr_zero(pg.n), 4);
    std::mt19937_64 rng(20240611);
    std::uniform_real_distribution<double> pos(-0.95, 0.95), height(0.1, 5.0);
    std::uniform_int_distribution<int> pieces(1, 5);
    double unweighted = 0.0, weighted = 0.0;
    const double cp = uncentered_constant(2.0);
    for (int t = 0; t < cfg.probe_functions; ++t) {
      std::vector<Piece> pc;
      const int np = pieces(rng);
      for (int i = 0; i < np; ++i) {
        double a = pos(rng), b = pos(rng);
        if (a > b) std::swap(a, b);
        pc.push_back({a, std::max(b, a + 0.01), height(rng)});
      }
      const GridFunction ft = step_function(pg, pc);
      for (double lam : {2.0, -0.5}) {
        const SquareMatrix A = SquareMatrix::scalar(lam);
        const double bound = std::pow(std::abs(lam), 0.5) * cp;
        unweighted = std::max(unweighted,
                              norm_ratio(ft, SegmentWeight1D::constant(1.0, -1.0, 1.0, Tail::extend), A, 2.0, pf) / bound);
        weighted = std::max(weighted, norm_ratio(ft, SegmentWeight1D::power_law(0.5), A, 2.0, pf));
      }
    }
    r.checks.push_back(make("norm_ratio_unweighted", "max over test functions of ||M_{A^{-1}} f||_2 / ||f||_2 divided by "
                                                     "|lambda|^{1/2} (1 + sqrt 2), w = 1",
                            unweighted, "<= 1", unweighted <= 1.0, Basis::derived,
                            {{"functions", cfg.probe_functions}}));
    r.checks.push_back(make("norm_ratio_weighted", "max over test functions of ||M_{A^{-1}} f||_{L^2(w)} / "
                                                   "||f||_{L^2(w)}, w = |x|^{1/2}, lambda in {2, -1/2}",
                            weighted, "< 10 (empirical)", weighted < 10.0, Basis::derived,
                            {{"functions", cfg.probe_functions}}));
  }

  // Weak-type probe along f_k = w^{-1} chi_{T_k}.
  {
    const SegmentWeight1D w = spike_weight(9);
    std::vector<double> ks, logs;
    for (int k = 1; k <= 6; ++k) {
      const double lo = std::ldexp(1.0, 2 * k), hi = lo + 0.25;
      const double sigma = power_mass(w, -1.0, Measure::lebesgue, lo, hi);
      const double level = sigma / (hi - lo);
      ks.push_back(k);
      logs.push_back(std::log2(level * level * w.mass(2.0 * lo, 2.0 * hi) / sigma));
    }
    const double slope = least_squares_slope(ks, logs);
    r.checks.push_back(make("weak_type_growth", "slope of log2 lambda^2 w({M_{A^{-1}} f_k > lambda}) / ||f_k||^2 against "
                                                "k, spike weight, A = 2 (empirical lower bound of the weak-type norm)",
                            slope, "in [0.9, 1.1]", std::abs(slope - 1.0) <= 0.1, Basis::derived));
  }

  // Two-dimensional level sets.
  {
    const std::size_t n = cfg.n2d;
    const GridGeometry g2{2, {-1.0, -1.0}, 2.0, n};
    const GridFunction f2 = sample_to_grid(
        [](double x, double y) {
          const double r2 = (x - 0.2) * (x - 0.2) + (y + 0.1) * (y + 0.1);
          const double s2 = (x + 0.5) * (x + 0.5) + (y - 0.4) * (y - 0.4);
          return (r2 < 0.09 ? 1.0 : 0.0) + 3.0 * std::exp(-s2 / 0.01);
        },
        g2);
    const CubeFamily F2(g2.bounding_cube(), 0, std::countr_zero(n), 2);
    const double a = 16.0;
    const CZDecomposition dec = cz_decompose(f2, a);
    const SandwichReport sw = verify_sandwich(f2, dec);
    r.checks.push_back(make("cz_sandwich_2d", "stopping cubes violating a^k/16 < avg <= a^k/4 or maximality",
                            static_cast<double>(sw.violations + (sw.maximal ? 0 : 1)), "== 0",
                            sw.violations == 0 && sw.maximal && sw.cubes > 0, Basis::reference,
                            {{"cubes", static_cast<double>(sw.cubes)}, {"n", static_cast<double>(n)}}));
    const auto ex = ekj_expansion_check(dec);
    r.checks.push_back(make("ekj_2d", "max |Q|/|E| of the 2D decomposition (a = 16), with E-disjointness", ex.beta,
                            "finite and disjoint", std::isfinite(ex.beta) && ex.disjoint, Basis::reference));

    const std::pair<int, int> kr{dec.levels.front().k, dec.levels.back().k};
    std::size_t bad = 0;
    double exact_defect = 0.0, loose_defect = 0.0;
    for (const auto& [A, compatible] : {std::pair{SquareMatrix::of(0.0, -1.0, 1.0, 0.0), true},
                                       std::pair{SquareMatrix::diag(2.0, 2.0), true},
                                       std::pair{SquareMatrix::diag(2.0, 0.5), false}}) {
      const LevelSetReport ls = level_sets(f2, A, a, kr, F2);
      for (const auto& e : ls.entries) {
        if (!e.nested || !e.d_union || !e.triple_cover) ++bad;
        if (compatible) {
          if (!e.set_identity) ++bad;
          exact_defect = std::max(exact_defect, e.measure_defect);
        } else {
          loose_defect = std::max(loose_defect, e.measure_defect / (4.0 * n));
        }
      }
    }
    r.checks.push_back(make("level_sets_2d", "level-set entries failing nestedness, D_k = union of stopping cubes, "
                                             "triple cover, or A(Omega_k) identity on grid-compatible A",
                            static_cast<double>(bad), "== 0", bad == 0, Basis::reference,
                            {{"n", static_cast<double>(n)}, {"k_min", kr.first}, {"k_max", kr.second}}));
    r.checks.push_back(make("level_set_measure", "|Omega^A_k| - |det A||Omega_k| in cells: exact for grid-compatible A, "
                                                 "within one boundary layer (4n cells) otherwise",
                            std::max(exact_defect, loose_defect), "exact part == 0, layer part <= 1",
                            exact_defect == 0.0 && loose_defect <= 1.0, Basis::reference));
  }

  r.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
  return r;
}

}  // namespace weightlab
