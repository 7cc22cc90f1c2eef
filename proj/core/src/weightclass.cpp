#include "weightlab/weightclass.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "weightlab/errors.hpp"
#include "weightlab/maximal.hpp"
#include "weightlab/parallel.hpp"

namespace weightlab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr std::size_t kNoSegment = std::numeric_limits<std::size_t>::max();

void check_interval(const Cube& Q) {
  if (Q.dim != 1) throw ConfigurationError("analytic weight classes are one-dimensional");
  if (!(Q.side > 0.0) || !std::isfinite(Q.corner[0]) || !std::isfinite(Q.side)) {
    throw std::invalid_argument("cube must have positive finite side");
  }
}

double average(const SegmentWeight1D& w, double r, Measure mu, const Cube& Q) {
  const double a = Q.corner[0];
  const double b = a + Q.side;
  return power_mass(w, r, mu, a, b) / measure_mass(mu, a, b);
}

template <class F>
double or_infinity(F&& f) {
  try {
    return f();
  } catch (const NonIntegrableError&) {
    return kInf;
  }
}

}  // namespace

SegmentWeight1D restricted_power(const SegmentWeight1D& w, double r, double a, double b) {
  std::vector<Segment> parts;
  double covered = 0.0;
  const auto segs = w.segments();
  for (std::size_t i = 0; i < segs.size(); ++i) {
    const double lo = std::max(a, segs[i].lo());
    const double hi = std::min(b, segs[i].hi());
    if (!(lo < hi)) continue;
    try {
      parts.push_back(r == 1.0 ? segs[i].with_bounds(lo, hi) : segs[i].with_bounds(lo, hi).raised(r));
    } catch (const NonIntegrableError&) {
      std::ostringstream os;
      os << "power " << r << " of segment " << i << " is not integrable on [" << a << ", " << b << "]";
      throw NonIntegrableError(os.str(), i);
    }
    covered += hi - lo;
  }
  if (r < 0.0 && covered < (b - a) * (1.0 - 1e-12)) {
    throw NonIntegrableError("weight vanishes on part of the cube", kNoSegment);
  }
  if (parts.empty()) throw NonIntegrableError("weight vanishes on the cube", kNoSegment);
  return SegmentWeight1D(std::move(parts), Tail::zero);
}

double power_mass(const SegmentWeight1D& w, double r, Measure mu, double a, double b) {
  if (!(a < b)) throw std::invalid_argument("power_mass needs a < b");
  SegmentWeight1D part;
  try {
    part = restricted_power(w, r, a, b);
  } catch (const NonIntegrableError& e) {
    if (r >= 0.0 && e.segment() == kNoSegment) return 0.0;
    throw;
  }
  return weighted_mass(part, mu, a, b);
}

double ap_product(const SegmentWeight1D& w, const Cube& Q, double p, Measure mu) {
  return aap_product(w, SquareMatrix::identity(1), Q, p, mu);
}

double aap_product(const SegmentWeight1D& w, const SquareMatrix& A, const Cube& Q, double p, Measure mu) {
  ClassSpec spec = ClassSpec::AAp(p, A);
  spec.measure = mu;
  return or_infinity([&] { return class_product(w, spec, Q); });
}

double bump_product(const SegmentWeight1D& w, const SquareMatrix& A, const Cube& Q, double p,
                    const YoungFn& phi) {
  return or_infinity([&] { return class_product(w, ClassSpec::Bump(p, A, phi), Q); });
}

double frac_product(const SegmentWeight1D& w, const SquareMatrix& A, const Cube& Q, double p, double q) {
  return or_infinity([&] { return class_product(w, ClassSpec::Frac(p, q, A), Q); });
}

double frac_bump_product(const SegmentWeight1D& w, const SquareMatrix& A, const Cube& Q, double p,
                         double q, const YoungFn& phi) {
  return or_infinity([&] { return class_product(w, ClassSpec::FracBump(p, q, A, phi), Q); });
}

double rh_product(const SegmentWeight1D& w, const Cube& Q, double s) {
  return or_infinity([&] { return class_product(w, ClassSpec::RH(s), Q); });
}

ClassSpec ClassSpec::Ap(double p) {
  ClassSpec c;
  c.kind = Kind::ap;
  c.p = p;
  return c;
}

ClassSpec ClassSpec::AAp(double p, const SquareMatrix& A) {
  ClassSpec c;
  c.kind = Kind::aap;
  c.p = p;
  c.A = A;
  return c;
}

ClassSpec ClassSpec::AA1(const SquareMatrix& A) {
  ClassSpec c;
  c.kind = Kind::aa1;
  c.p = 1.0;
  c.A = A;
  return c;
}

ClassSpec ClassSpec::Bump(double p, const SquareMatrix& A, const YoungFn& phi) {
  ClassSpec c;
  c.kind = Kind::bump;
  c.p = p;
  c.A = A;
  c.phi = phi;
  return c;
}

ClassSpec ClassSpec::Frac(double p, double q, const SquareMatrix& A) {
  ClassSpec c;
  c.kind = Kind::frac;
  c.p = p;
  c.q = q;
  c.A = A;
  return c;
}

ClassSpec ClassSpec::FracBump(double p, double q, const SquareMatrix& A, const YoungFn& phi) {
  ClassSpec c = Frac(p, q, A);
  c.kind = Kind::frac_bump;
  c.phi = phi;
  return c;
}

ClassSpec ClassSpec::RH(double s) {
  ClassSpec c;
  c.kind = Kind::rh;
  c.s = s;
  return c;
}

ClassSpec ClassSpec::ApMu(double p, Measure mu) {
  ClassSpec c = Ap(p);
  c.kind = Kind::ap_mu;
  c.measure = mu;
  return c;
}

double ClassSpec::fractional_q(double p, double alpha, int n) {
  const double inv = 1.0 / p - alpha / n;
  if (!(inv > 0.0)) throw ConfigurationError("fractional order too large: 1/p - alpha/n must be positive");
  return 1.0 / inv;
}

void ClassSpec::validate() const {
  if (kind == Kind::rh) {
    if (!(s > 1.0)) throw ConfigurationError("reverse Hölder exponent must satisfy s > 1");
    return;
  }
  if (kind != Kind::aa1 && !(p > 1.0)) throw ConfigurationError("class exponent must satisfy p > 1");
  if ((kind == Kind::frac || kind == Kind::frac_bump) && !(q >= p)) {
    throw ConfigurationError("fractional classes need q >= p");
  }
  if ((kind == Kind::bump || kind == Kind::frac_bump) && !phi) {
    throw ConfigurationError("bump classes need a Young function");
  }
  if (A.dim() != 1) throw ConfigurationError("analytic weight classes are one-dimensional");
  if (A.det() == 0.0) throw ConfigurationError("matrix must be invertible");
  if (measure != Measure::lebesgue && kind != Kind::ap_mu && kind != Kind::aap) {
    throw ConfigurationError("only Ap and AAp support a non-Lebesgue measure");
  }
  if (grid_n < 2) throw ConfigurationError("aa1 grid needs at least two cells");
}

std::string to_string(ClassSpec::Kind k) {
  switch (k) {
    case ClassSpec::Kind::ap: return "ap";
    case ClassSpec::Kind::aap: return "aap";
    case ClassSpec::Kind::aa1: return "aa1";
    case ClassSpec::Kind::bump: return "bump";
    case ClassSpec::Kind::frac: return "frac";
    case ClassSpec::Kind::frac_bump: return "frac_bump";
    case ClassSpec::Kind::rh: return "rh";
    case ClassSpec::Kind::ap_mu: return "ap_mu";
  }
  return "?";
}

ClassSpec::Kind parse_class(const std::string& name) {
  for (auto k : {ClassSpec::Kind::ap, ClassSpec::Kind::aap, ClassSpec::Kind::aa1, ClassSpec::Kind::bump,
                 ClassSpec::Kind::frac, ClassSpec::Kind::frac_bump, ClassSpec::Kind::rh,
                 ClassSpec::Kind::ap_mu}) {
    if (to_string(k) == name) return k;
  }
  throw std::invalid_argument("unknown weight class '" + name + "'");
}

std::string ClassSpec::describe() const {
  std::ostringstream os;
  os << to_string(kind) << "(";
  switch (kind) {
    case Kind::rh: os << "s=" << s; break;
    case Kind::aa1: os << "A=" << A.describe(); break;
    case Kind::ap: os << "p=" << p; break;
    case Kind::ap_mu: os << "p=" << p << ", mu=" << to_string(measure); break;
    case Kind::aap:
      os << "p=" << p << ", A=" << A.describe();
      if (measure != Measure::lebesgue) os << ", mu=" << to_string(measure);
      break;
    case Kind::bump: os << "p=" << p << ", A=" << A.describe() << ", phi=" << phi->describe(); break;
    case Kind::frac: os << "p=" << p << ", q=" << q << ", A=" << A.describe(); break;
    case Kind::frac_bump:
      os << "p=" << p << ", q=" << q << ", A=" << A.describe() << ", phi=" << phi->describe();
      break;
  }
  os << ")";
  return os.str();
}

double class_product(const SegmentWeight1D& w, const ClassSpec& spec, const Cube& Q) {
  check_interval(Q);
  const double a = Q.corner[0];
  const double b = a + Q.side;
  const double p = spec.p;
  switch (spec.kind) {
    case ClassSpec::Kind::ap:
    case ClassSpec::Kind::ap_mu:
    case ClassSpec::Kind::aap: {
      const SegmentWeight1D wa =
          spec.kind == ClassSpec::Kind::aap ? compose_matrix(w, spec.A) : w;
      const double lhs = average(wa, 1.0, spec.measure, Q);
      const double dual = average(w, -1.0 / (p - 1.0), spec.measure, Q);
      return lhs * std::pow(dual, p - 1.0);
    }
    case ClassSpec::Kind::bump: {
      const double lhs = std::pow(average(compose_matrix(w, spec.A), 1.0, Measure::lebesgue, Q), 1.0 / p);
      return lhs * luxemburg_norm(restricted_power(w, -1.0 / p, a, b), a, b, *spec.phi);
    }
    case ClassSpec::Kind::frac: {
      const double pp = p / (p - 1.0);
      const double lhs = std::pow(average(compose_matrix(w, spec.A), 1.0, Measure::lebesgue, Q), 1.0 / spec.q);
      return lhs * std::pow(average(w, -pp / p, Measure::lebesgue, Q), 1.0 / pp);
    }
    case ClassSpec::Kind::frac_bump: {
      const double lhs = std::pow(average(compose_matrix(w, spec.A), 1.0, Measure::lebesgue, Q), 1.0 / spec.q);
      return lhs * luxemburg_norm(restricted_power(w, -1.0 / p, a, b), a, b, *spec.phi);
    }
    case ClassSpec::Kind::rh: {
      const double avg = average(w, 1.0, Measure::lebesgue, Q);
      if (avg == 0.0) return 1.0;
      return std::pow(average(w, spec.s, Measure::lebesgue, Q), 1.0 / spec.s) / avg;
    }
    case ClassSpec::Kind::aa1:
      throw ConfigurationError("aa1 is a cell-wise quantity; use constant()");
  }
  return 0.0;
}

namespace {

ConstantReport reduce(std::vector<Cube> cubes, std::vector<double> values,
                      std::vector<std::optional<Witness>> witnesses, std::string family, bool keep_trace) {
  ConstantReport r;
  r.family = std::move(family);
  bool have = false;
  for (std::size_t i = 0; i < cubes.size(); ++i) {
    const double v = values[i];
    if (!have || v > r.value || (v == r.value && corner_less(cubes[i], r.argmax))) {
      r.value = v;
      r.argmax = cubes[i];
      r.witness = witnesses[i];
      have = true;
    }
  }
  if (keep_trace) {
    r.trace.reserve(cubes.size());
    for (std::size_t i = 0; i < cubes.size(); ++i) r.trace.push_back({cubes[i], values[i]});
  }
  return r;
}

ConstantReport aa1_constant(const SegmentWeight1D& w, const ClassSpec& spec, const CubeFamily& F,
                            bool keep_trace) {
  const Cube& box = F.box();
  const GridGeometry g{1, box.corner, box.side, spec.grid_n};
  const GridFunction wa = sample_to_grid(compose_matrix(w, spec.A), g);
  const GridFunction wg = sample_to_grid(w, g);
  const GridFunction m = hl_maximal(wa, F);
  std::vector<Cube> cells(g.cell_count());
  std::vector<double> values(g.cell_count());
  std::vector<std::optional<Witness>> wit(g.cell_count());
  for (std::size_t i = 0; i < cells.size(); ++i) {
    cells[i] = to_cube(g, IndexCube{{i, 0}, 1});
    if (wg[i] > 0.0) {
      values[i] = m[i] / wg[i];
    } else {
      values[i] = m[i] > 0.0 ? kInf : 0.0;
      if (m[i] > 0.0) wit[i] = Witness{cells[i], kNoSegment, "weight vanishes on the cell"};
    }
  }
  return reduce(std::move(cells), std::move(values), std::move(wit), F.describe(), keep_trace);
}

}  // namespace

ConstantReport constant(const SegmentWeight1D& w, const ClassSpec& spec, const CubeFamily& F,
                        bool keep_trace) {
  spec.validate();
  if (F.box().dim != 1) throw ConfigurationError("analytic weight classes are one-dimensional");
  if (spec.kind == ClassSpec::Kind::aa1) return aa1_constant(w, spec, F, keep_trace);

  std::vector<Cube> cubes = F.cubes();
  std::vector<double> values(cubes.size());
  std::vector<std::optional<Witness>> wit(cubes.size());
  parallel_for(cubes.size(), [&](std::size_t b, std::size_t e) {
    for (std::size_t i = b; i < e; ++i) {
      try {
        values[i] = class_product(w, spec, cubes[i]);
      } catch (const NonIntegrableError& err) {
        values[i] = kInf;
        wit[i] = Witness{cubes[i], err.segment(), err.what()};
      }
    }
  });
  return reduce(std::move(cubes), std::move(values), std::move(wit), F.describe(), keep_trace);
}

FiniteOrderReport finite_order_reduction(const SegmentWeight1D& w, const SquareMatrix& A, double p,
                                         const CubeFamily& F, std::size_t grid_n) {
  FiniteOrderReport r;
  const auto k = A.order();
  if (!k) {
    r.reason = "no k <= 64 with A^k = I";
    return r;
  }
  r.applicable = true;
  r.order = *k;
  r.aap = constant(w, ClassSpec::AAp(p, A), F).value;
  r.ap = constant(w, ClassSpec::Ap(p), F).value;

  const Cube& box = F.box();
  const GridGeometry g{1, box.corner, box.side, grid_n};
  double ratio = 0.0;
  for (std::size_t i = 0; i < g.cell_count(); ++i) {
    const Point c = g.cell_center(i);
    const double wx = w.density(c[0]);
    const double wax = w.density(A.apply(c)[0]);
    if (wx > 0.0) {
      ratio = std::max(ratio, wax / wx);
    } else if (wax > 0.0) {
      ratio = kInf;
    }
  }
  r.ratio_bound = ratio;
  r.contract_holds = !std::isfinite(r.aap) || (std::isfinite(r.ap) && std::isfinite(r.ratio_bound));
  return r;
}

SubsetReport subset_lemma_check(const SegmentWeight1D& w, const SquareMatrix& A, double p,
                                const std::vector<std::pair<Cube, Cube>>& pairs, const CubeFamily& F) {
  std::vector<Cube> qs;
  qs.reserve(pairs.size());
  for (const auto& [S, Q] : pairs) {
    check_interval(S);
    check_interval(Q);
    if (S.corner[0] < Q.corner[0] || S.corner[0] + S.side > Q.corner[0] + Q.side) {
      throw std::invalid_argument("subset check needs S inside Q");
    }
    qs.push_back(Q);
  }
  SubsetReport r;
  r.pairs = pairs.size();
  r.constant = constant(w, ClassSpec::AAp(p, A), F.with_extra(qs)).value;
  r.max_defect = -kInf;
  const SegmentWeight1D wa = compose_matrix(w, A);
  for (const auto& [S, Q] : pairs) {
    const double ws = w.mass(S.corner[0], S.corner[0] + S.side);
    const double waq = wa.mass(Q.corner[0], Q.corner[0] + Q.side);
    const double d = S.side / Q.side - std::pow(r.constant * ws / waq, 1.0 / p);
    r.max_defect = std::max(r.max_defect, d);
  }
  return r;
}

RhInclusionReport rh_inclusion_check(const SegmentWeight1D& w, const SquareMatrix& A, double p,
                                     double eps, const CubeFamily& F, Measure mu) {
  if (!(eps > 0.0 && eps < 1.0)) throw ConfigurationError("rh inclusion needs 0 < eps < 1");
  if (!(p > 1.0 + eps)) throw ConfigurationError("rh inclusion needs p > 1 + eps");
  RhInclusionReport r;
  r.s = (p - 1.0) / (p - eps - 1.0);
  if (mu != Measure::lebesgue) {
    r.reason = "reverse Hölder classes are evaluated for Lebesgue measure only";
    return r;
  }
  r.applicable = true;
  const SegmentWeight1D wa = compose_matrix(w, A);
  const std::vector<Cube> cubes = F.cubes();
  r.cubes = cubes.size();
  r.min_slack = kInf;
  for (const auto& Q : cubes) {
    const double lhs = or_infinity([&] { return class_product(w, ClassSpec::AAp(p - eps, A), Q); });
    const double aap = or_infinity([&] { return class_product(w, ClassSpec::AAp(p, A), Q); });
    const double rh = or_infinity([&] {
      const double v = average(w, -1.0 / (p - 1.0), Measure::lebesgue, Q);
      const double vs = average(w, -r.s / (p - 1.0), Measure::lebesgue, Q);
      return std::pow(vs, 1.0 / r.s) / v;
    });
    r.aap_lower = std::max(r.aap_lower, lhs);
    r.aap_p = std::max(r.aap_p, aap);
    r.rh = std::max(r.rh, rh);
    const double rhs = std::pow(rh, p - 1.0) * aap;
    double slack;
    if (std::isinf(rhs)) {
      slack = 1.0;
    } else if (std::isinf(lhs)) {
      slack = -kInf;
    } else {
      slack = (rhs - lhs) / rhs;
    }
    r.min_slack = std::min(r.min_slack, slack);
  }
  r.holds = r.min_slack >= -1e-9;
  return r;
}

RhProbe rh_probe(const SegmentWeight1D& w, const SquareMatrix& A, double p,
                 const std::vector<double>& s_values, const CubeFamily& F) {
  RhProbe r;
  r.aap = constant(w, ClassSpec::AAp(p, A), F).value;
  SegmentWeight1D dual;
  std::optional<SegmentWeight1D> maybe_dual;
  try {
    maybe_dual = w.raised(-1.0 / (p - 1.0));
  } catch (const NonIntegrableError&) {
  }
  for (double s : s_values) {
    r.rh.emplace_back(s, constant(w, ClassSpec::RH(s), F).value);
    r.dual_rh.emplace_back(s, maybe_dual ? constant(*maybe_dual, ClassSpec::RH(s), F).value : kInf);
  }
  return r;
}

}  // namespace weightlab
