#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>

#include "weightlab/czlab.hpp"
#include "weightlab/errors.hpp"
#include "weightlab/funcspace.hpp"
#include "weightlab/maximal.hpp"
#include "weightlab/summation.hpp"
#include "weightlab/weightclass.hpp"

namespace weightlab {

namespace {

// Cube gauges of one grid function, through prefix sums when phi is a power.
class CubeGauge {
 public:
  CubeGauge(const GridFunction& f, const YoungFn& phi) : f_(f), phi_(phi), power_(phi.power_law()) {
    if (power_) {
      const double r = power_->exponent;
      powered_ = f.map([r](double v) { return std::pow(v, r); });
    }
  }

  double operator()(const IndexCube& q) const {
    if (power_) return std::pow(power_->coef * powered_.cube_average(q), 1.0 / power_->exponent);
    return luxemburg_norm(f_, q, phi_);
  }

 private:
  const GridFunction& f_;
  const YoungFn& phi_;
  std::optional<YoungFn::PowerLaw> power_;
  GridFunction powered_;
};

ChainStep step(std::string name, double lhs, double rhs) {
  ChainStep s{std::move(name), lhs, rhs, 0.0};
  if (rhs == lhs) {
    s.slack = 0.0;
  } else if (std::isinf(rhs) && rhs > 0.0) {
    s.slack = 1.0;
  } else {
    s.slack = (rhs - lhs) / std::abs(rhs);
  }
  return s;
}

}  // namespace

ChainReport theorem_chain_check(const ChainConfig& cfg) {
  const GridFunction& f = cfg.f;
  const GridGeometry& g = f.geometry();
  if (g.dim != 1) throw ConfigurationError("the chain check runs on 1D grids");
  if (!std::has_single_bit(g.n)) throw ConfigurationError("the chain check needs a power-of-two resolution");
  if (!(cfg.p > 1.0)) throw ConfigurationError("the chain check needs p > 1");
  if (!(cfg.a > 2.0)) throw ConfigurationError("level parameter must satisfy a > 2");
  if (cfg.A.dim() != 1) throw ConfigurationError("the chain check needs a 1x1 matrix");

  ChainReport r;
  const double p = cfg.p;
  const double alpha = cfg.alpha;
  const double q = alpha == 0.0 ? p : ClassSpec::fractional_q(p, alpha);
  r.q = q;
  const double a = cfg.a;
  const double det = std::abs(cfg.A.det());
  const double h = g.cell_width();
  const CubeFamily F(g.bounding_cube(), 0, std::countr_zero(g.n), cfg.family_shifts);

  const GridFunction v = sample_to_grid(cfg.w, g);
  CompensatedSum fn;
  for (std::size_t i = 0; i < g.n; ++i) fn += std::pow(f[i], p) * v[i] * h;
  const double fnorm_p = fn.value();
  r.f_norm = std::pow(fnorm_p, 1.0 / p);
  if (!(fnorm_p > 0.0)) {
    r.reason = "f vanishes in L^p(w)";
    return r;
  }

  const GridFunction mf = fractional_maximal(f, alpha, F);
  const GridGeometry tg = image_geometry(g, cfg.A);
  const GridFunction ma = matrix_compose(mf, cfg.A, tg);
  const std::vector<double> u = cell_masses(cfg.w, tg);

  const double root = fractional_average(f, IndexCube{{0, 0}, g.n}, alpha);
  int k_lo = static_cast<int>(std::ceil(std::log(4.0 * root) / std::log(a)));
  while (std::pow(a, k_lo - 1) / 4.0 >= root) --k_lo;
  while (std::pow(a, k_lo) / 4.0 < root) ++k_lo;
  const double top = mf.max_value();
  int k_hi = static_cast<int>(std::ceil(std::log(top) / std::log(a))) - 1;
  while (std::pow(a, k_hi + 1) < top) ++k_hi;
  while (k_hi >= k_lo && !(top > std::pow(a, k_hi))) --k_hi;
  r.k_lo = k_lo;
  r.k_hi = k_hi;
  r.levels = std::max(0, k_hi - k_lo + 1);

  CompensatedSum l0, rem;
  for (std::size_t x = 0; x < tg.n; ++x) {
    const double term = std::pow(ma[x], q) * u[x];
    l0 += term;
    if (!(ma[x] > std::pow(a, k_lo))) rem += term;
  }
  r.L0 = l0.value();
  r.remainder = rem.value();

  CZDecomposition dec;
  dec.geometry = g;
  dec.a = a;
  dec.alpha = alpha;
  if (k_hi >= k_lo) dec = cz_decompose(f, a, std::make_pair(k_lo, k_hi), alpha);

  const ExpansionReport ex = ekj_expansion_check(dec);
  r.beta = ex.beta;
  r.disjoint = ex.disjoint;

  // Triples, cover check and the enlarged family.
  std::vector<Cube> triples;
  r.cover = true;
  for (const auto& lv : dec.levels) {
    std::vector<std::uint8_t> covered(g.n, 0);
    for (const auto& sc : lv.cubes) {
      const IndexCube t = triple_clipped(g, sc.cube);
      for (std::size_t i = 0; i < t.len; ++i) covered[t.start[0] + i] = 1;
      triples.push_back(to_cube(g, t));
    }
    const double ak = std::pow(a, lv.k);
    for (std::size_t i = 0; i < g.n; ++i) {
      if (mf[i] > ak && !covered[i]) r.cover = false;
    }
  }
  const CubeFamily Fx = F.with_extra(triples);

  const YoungFn phibar = complementary(cfg.phi);
  const ConstantReport wc = constant(cfg.w, ClassSpec::FracBump(p, q, cfg.A, cfg.phi), Fx);
  r.bump_constant = wc.value;
  if (!std::isfinite(wc.value)) {
    r.reason = "bump constant is infinite on the family";
    return r;
  }

  std::vector<double> gv(g.n), vinv(g.n);
  for (std::size_t i = 0; i < g.n; ++i) {
    gv[i] = f[i] * std::pow(v[i], 1.0 / p);
    vinv[i] = v[i] > 0.0 ? std::pow(v[i], -1.0 / p) : std::numeric_limits<double>::infinity();
  }
  const GridFunction gg(g, gv);
  const GridFunction vi(g, vinv);
  const GridFunction mphi = orlicz_maximal(gg, phibar, 0.0, Fx);
  CompensatedSum im;
  for (std::size_t i = 0; i < g.n; ++i) im += std::pow(mphi[i], p) * h;
  const double int_m = im.value();
  r.c_bp = int_m / fnorm_p;

  const CubeGauge G(gg, phibar);
  const CubeGauge H(vi, cfg.phi);
  const double lambda = cfg.A.as_scalar();
  CompensatedSum s1, s2, s3, s4, s5, s6, s_qg, s_eg, s_em;
  for (int k = k_lo; k <= k_hi; ++k) {
    const double ak = std::pow(a, k);
    CompensatedSum wk;
    for (std::size_t x = 0; x < tg.n; ++x) {
      if (ma[x] > ak) wk += u[x];
    }
    s1 += std::pow(a, q * (k + 1)) * wk.value();
  }
  for (std::size_t l = 0; l < dec.levels.size(); ++l) {
    const auto& lv = dec.levels[l];
    const double akq = std::pow(a, q * (lv.k + 1));
    for (std::size_t j = 0; j < lv.cubes.size(); ++j) {
      const auto& sc = lv.cubes[j];
      const IndexCube t = triple_clipped(g, sc.cube);
      const Cube tc = to_cube(g, t);
      const double e0 = lambda * tc.corner[0];
      const double e1 = lambda * (tc.corner[0] + tc.side);
      const double m = cfg.w.mass(std::min(e0, e1), std::max(e0, e1));
      const double qv = static_cast<double>(sc.cube.len) * h;
      const double tv = tc.side;
      const double gq = G(t);
      const double hq = H(t);
      s2 += akq * m;
      s3 += std::pow(sc.average, q) * m;
      s4 += std::pow(std::pow(qv, alpha - 1.0) * tv * gq * hq, q) * m;
      s5 += std::pow(qv, q * (alpha - 1.0)) * std::pow(tv, q + 1.0) * std::pow(gq, q);
      s6 += std::pow(qv * std::pow(gq, p), q / p);
      s_qg += qv * std::pow(gq, p);
      const auto ec = e_cells(dec, l, j);
      s_eg += static_cast<double>(ec.size()) * h * std::pow(gq, p);
      for (std::size_t c : ec) s_em += std::pow(mphi[c], p) * h;
    }
  }

  const double wq = std::pow(wc.value, q);
  const double k3 = std::pow(a, q) * std::pow(4.0, q);
  const double k4 = k3 * std::pow(2.0, q);
  const double k5 = k4 * det * wq;
  const double k6 = k5 * std::pow(3.0, q + 1.0);
  const double e = q / p;
  const double beta = r.beta;
  const double bound = k6 * std::pow(beta * r.c_bp * fnorm_p, e);
  r.chain_constant = std::pow(k6 / wq * std::pow(beta * r.c_bp, e), 1.0 / q);
  r.ratio = std::pow(r.L0, 1.0 / q) / r.f_norm;

  r.steps.push_back(step("level slicing", r.L0 - r.remainder, s1.value()));
  r.steps.push_back(step("triple cover", s1.value(), s2.value()));
  r.steps.push_back(step("sandwich", s2.value(), k3 * s3.value()));
  r.steps.push_back(step("generalized Hölder", k3 * s3.value(), k4 * s4.value()));
  r.steps.push_back(step("bump constant", k4 * s4.value(), k5 * s5.value()));
  r.steps.push_back(step("triple size", k5 * s5.value(), k6 * s6.value()));
  r.steps.push_back(step("power mean", k6 * s6.value(), k6 * std::pow(s_qg.value(), e)));
  r.steps.push_back(step("expansion", k6 * std::pow(s_qg.value(), e), k6 * std::pow(beta * s_eg.value(), e)));
  r.steps.push_back(step("maximal on E", k6 * std::pow(beta * s_eg.value(), e), k6 * std::pow(beta * s_em.value(), e)));
  r.steps.push_back(step("disjoint E", k6 * std::pow(beta * s_em.value(), e), k6 * std::pow(beta * int_m, e)));
  r.steps.push_back(step("final bound", r.L0, r.remainder + bound));

  r.min_slack = std::numeric_limits<double>::infinity();
  for (const auto& s : r.steps) r.min_slack = std::min(r.min_slack, s.slack);
  r.applicable = true;
  r.holds = r.cover && r.disjoint && r.min_slack >= -1e-6;
  return r;
}

}  // namespace weightlab
