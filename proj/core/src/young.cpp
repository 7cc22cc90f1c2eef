#include "weightlab/young.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "weightlab/quadrature.hpp"
#include "weightlab/summation.hpp"

namespace weightlab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double require_positive_finite(double v, const char* what) {
  if (!(v > 0.0) || !std::isfinite(v)) throw std::invalid_argument(what);
  return v;
}

// Gauge by bisection on lambda for a modular that decreases in lambda.
template <class Modular>
double solve_gauge(Modular modular, double guess) {
  if (!(guess > 0.0) || !std::isfinite(guess)) guess = 1.0;
  double lo, hi;
  if (modular(guess) > 1.0) {
    lo = guess;
    hi = 2.0 * guess;
    while (modular(hi) > 1.0) {
      lo = hi;
      hi *= 2.0;
      if (!std::isfinite(hi)) return kInf;
    }
  } else {
    hi = guess;
    lo = 0.5 * guess;
    while (modular(lo) <= 1.0) {
      hi = lo;
      lo *= 0.5;
      if (lo < 1e-300) return hi;
    }
  }
  for (int it = 0; it < 200 && hi / lo - 1.0 > 1e-14; ++it) {
    const double mid = std::sqrt(lo * hi);
    if (modular(mid) > 1.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return hi;
}

double analytic_sup(const SegmentWeight1D& f, double a, double b) {
  double m = 0.0;
  for (const auto& s : f.segments()) {
    const double lo = std::max(a, s.lo());
    const double hi = std::min(b, s.hi());
    if (!(lo < hi)) continue;
    m = std::max({m, s.density(lo), s.density(hi)});
    if (const auto* p = std::get_if<PowerForm>(&s.form())) {
      if (p->center >= lo && p->center <= hi) m = std::max(m, s.density(p->center));
    }
  }
  return m;
}

}  // namespace

YoungFn YoungFn::identity() { return YoungFn(Kind::identity, 1.0, 0.0); }

YoungFn YoungFn::power(double r) {
  if (!(r > 1.0) || !std::isfinite(r)) throw std::invalid_argument("power Young function needs r > 1");
  return YoungFn(Kind::power, r, 0.0);
}

YoungFn YoungFn::power_log(double r, double beta) {
  if (!(r >= 1.0) || !std::isfinite(r)) throw std::invalid_argument("power_log needs r >= 1");
  require_positive_finite(beta, "power_log needs beta > 0");
  return YoungFn(Kind::power_log, r, beta);
}

YoungFn YoungFn::exp_minus_one() { return YoungFn(Kind::exp_minus_one, 0.0, 0.0); }

YoungFn YoungFn::bump(double p, double eps) {
  if (!(p > 1.0) || !std::isfinite(p)) throw std::invalid_argument("bump needs p > 1");
  if (!(eps > 0.0 && eps < 1.0)) throw std::invalid_argument("bump needs 0 < eps < 1");
  return YoungFn(Kind::bump, p, eps);
}

YoungFn YoungFn::scaled_power(double coef, double r) {
  require_positive_finite(coef, "scaled_power needs a positive coefficient");
  if (!(r >= 1.0) || !std::isfinite(r)) throw std::invalid_argument("scaled_power needs r >= 1");
  return YoungFn(Kind::scaled_power, coef, r);
}

YoungFn YoungFn::sup_indicator() { return YoungFn(Kind::sup_indicator, 0.0, 0.0); }

YoungFn YoungFn::legendre(const YoungFn& base) {
  return YoungFn(Kind::legendre, 0.0, 0.0, std::make_shared<const YoungFn>(base));
}

double YoungFn::operator()(double t) const {
  if (t <= 0.0) return 0.0;
  switch (kind_) {
    case Kind::identity:
      return t;
    case Kind::power:
      return std::pow(t, a_);
    case Kind::power_log:
      return std::pow(t, a_) * std::pow(std::log(std::numbers::e + t), b_);
    case Kind::exp_minus_one:
      return std::expm1(t);
    case Kind::bump:
      return std::pow(t, a_ / (a_ + b_ - 1.0));
    case Kind::scaled_power:
      return a_ * std::pow(t, b_);
    case Kind::sup_indicator:
      return t <= 1.0 ? 0.0 : kInf;
    case Kind::legendre:
      return legendre_transform(*base_, t);
  }
  return kInf;
}

std::optional<YoungFn::PowerLaw> YoungFn::power_law() const {
  switch (kind_) {
    case Kind::identity:
      return PowerLaw{1.0, 1.0};
    case Kind::power:
      return PowerLaw{1.0, a_};
    case Kind::bump:
      return PowerLaw{1.0, a_ / (a_ + b_ - 1.0)};
    case Kind::scaled_power:
      return PowerLaw{a_, b_};
    default:
      return std::nullopt;
  }
}

std::string YoungFn::describe() const {
  std::ostringstream os;
  os.precision(10);
  switch (kind_) {
    case Kind::identity: os << "t"; break;
    case Kind::power: os << "t^" << a_; break;
    case Kind::power_log: os << "t^" << a_ << " log(e+t)^" << b_; break;
    case Kind::exp_minus_one: os << "exp(t)-1"; break;
    case Kind::bump: os << "t^(" << a_ << "/(" << a_ << "+" << b_ << "-1))"; break;
    case Kind::scaled_power: os << a_ << " t^" << b_; break;
    case Kind::sup_indicator: os << "sup-indicator"; break;
    case Kind::legendre: os << "legendre(" << base_->describe() << ")"; break;
  }
  return os.str();
}

double legendre_transform(const YoungFn& phi, double s) {
  if (!(s > 0.0)) return 0.0;
  if (std::isinf(s)) return kInf;
  // t -> s t - phi(t) is concave; grow the bracket until the secant slope of
  // phi exceeds s, which places the maximizer below the bracket end.
  double hi = 1.0;
  while (phi(2.0 * hi) - phi(hi) < s * hi) {
    hi *= 2.0;
    if (hi > 1e300) return kInf;
  }
  hi *= 2.0;
  double lo = 0.0;
  auto g = [&](double t) { return s * t - phi(t); };
  for (int it = 0; it < 300 && hi - lo > 1e-15 * std::max(1.0, hi); ++it) {
    const double m1 = lo + (hi - lo) / 3.0;
    const double m2 = hi - (hi - lo) / 3.0;
    if (g(m1) < g(m2)) {
      lo = m1;
    } else {
      hi = m2;
    }
  }
  return std::max(0.0, g(0.5 * (lo + hi)));
}

YoungFn complementary(const YoungFn& phi) {
  using Kind = YoungFn::Kind;
  if (phi.kind() == Kind::identity) return YoungFn::sup_indicator();
  if (phi.kind() == Kind::sup_indicator) return YoungFn::identity();
  // Young functions are convex and lower semicontinuous, so the biconjugate is the base.
  if (phi.kind() == Kind::legendre) return *phi.base();
  if (auto pl = phi.power_law(); pl && pl->exponent > 1.0) {
    // sup_t (s t - k t^r) = (1 - 1/r) (k r)^{-1/(r-1)} s^{r/(r-1)}
    const double r = pl->exponent;
    const double k = pl->coef;
    const double coef = (1.0 - 1.0 / r) * std::pow(k * r, -1.0 / (r - 1.0));
    return YoungFn::scaled_power(coef, r / (r - 1.0));
  }
  return YoungFn::legendre(phi);
}

std::string to_string(BpMembership m) {
  switch (m) {
    case BpMembership::member: return "member";
    case BpMembership::nonmember: return "nonmember";
    case BpMembership::undetermined: return "undetermined";
  }
  return "undetermined";
}

BpReport bp_integral(const YoungFn& phi, double p, double T) {
  if (!(p > 1.0)) throw std::invalid_argument("B_p test needs p > 1");
  if (!(T >= 1.0)) throw std::domain_error("B_p integral needs T >= 1");
  using Kind = YoungFn::Kind;
  BpReport rep;
  const double upper = std::isinf(T) ? std::ldexp(1.0, 40) : T;
  auto integrand = [&](double t) { return phi(t) * std::pow(t, -p - 1.0); };
  CompensatedSum sum;
  for (double a = 1.0; a < upper; a *= 2.0) {
    sum += gauss_integrate(integrand, a, std::min(2.0 * a, upper), 16);
  }
  rep.integral = sum.value();

  if (auto pl = phi.power_law()) {
    const double rho = pl->exponent;
    if (rho < p) {
      rep.membership = BpMembership::member;
      rep.tail = pl->coef * std::pow(upper, rho - p) / (p - rho);
    } else {
      rep.membership = BpMembership::nonmember;
      rep.tail = kInf;
    }
  } else if (phi.kind() == Kind::power_log) {
    rep.membership = phi.param_a() < p ? BpMembership::member : BpMembership::nonmember;
    rep.tail = rep.membership == BpMembership::member ? std::numeric_limits<double>::quiet_NaN() : kInf;
  } else if (phi.kind() == Kind::exp_minus_one || phi.kind() == Kind::sup_indicator) {
    rep.membership = BpMembership::nonmember;
    rep.tail = kInf;
  } else {
    rep.membership = BpMembership::undetermined;
    rep.tail = std::numeric_limits<double>::quiet_NaN();
  }
  if (!std::isinf(T) && rep.membership != BpMembership::nonmember) {
    rep.total = std::isnan(rep.tail) ? rep.integral : rep.integral + rep.tail;
  } else {
    rep.total = rep.integral + rep.tail;
  }
  return rep;
}

double luxemburg_modular(std::span<const double> cells, const YoungFn& phi, double lambda) {
  if (cells.empty()) return 0.0;
  CompensatedSum s;
  for (double v : cells) s += phi(v / lambda);
  return s.value() / static_cast<double>(cells.size());
}

double luxemburg_norm_bisect(std::span<const double> cells, const YoungFn& phi) {
  if (cells.empty()) return 0.0;
  double avg = 0.0, mx = 0.0;
  for (double v : cells) {
    if (v < 0.0) throw std::domain_error("Luxemburg norm of a negative function");
    avg += v;
    mx = std::max(mx, v);
  }
  if (mx == 0.0) return 0.0;
  avg /= static_cast<double>(cells.size());
  return solve_gauge([&](double l) { return luxemburg_modular(cells, phi, l); }, avg);
}

double luxemburg_norm(std::span<const double> cells, const YoungFn& phi) {
  if (cells.empty()) return 0.0;
  if (phi.kind() == YoungFn::Kind::sup_indicator) {
    return *std::max_element(cells.begin(), cells.end());
  }
  if (auto pl = phi.power_law()) {
    CompensatedSum s;
    for (double v : cells) {
      if (v < 0.0) throw std::domain_error("Luxemburg norm of a negative function");
      s += std::pow(v, pl->exponent);
    }
    const double avg = s.value() / static_cast<double>(cells.size());
    return std::pow(pl->coef * avg, 1.0 / pl->exponent);
  }
  return luxemburg_norm_bisect(cells, phi);
}

double luxemburg_norm(const GridFunction& f, const IndexCube& q, const YoungFn& phi) {
  const auto vals = f.cube_values(q);
  return luxemburg_norm(vals, phi);
}

double luxemburg_norm(const SegmentWeight1D& f, double a, double b, const YoungFn& phi) {
  if (!(a < b)) throw std::invalid_argument("Luxemburg norm needs a < b");
  const double len = b - a;
  if (phi.kind() == YoungFn::Kind::sup_indicator) return analytic_sup(f, a, b);
  if (auto pl = phi.power_law()) {
    const double avg = f.raised(pl->exponent).mass(a, b) / len;
    return std::pow(pl->coef * avg, 1.0 / pl->exponent);
  }
  const double avg = f.mass(a, b) / len;
  if (avg == 0.0) return 0.0;
  const auto bps = f.breakpoints(a, b);
  auto modular = [&](double lambda) {
    return graded_integrate([&](double x) { return phi(f.density(x) / lambda); }, a, b, bps) / len;
  };
  return solve_gauge(modular, avg);
}

double holder_defect(std::span<const double> f, std::span<const double> g, const YoungFn& phi) {
  if (f.size() != g.size()) throw std::invalid_argument("holder_defect needs equal sizes");
  if (f.empty()) return 0.0;
  CompensatedSum s;
  for (std::size_t i = 0; i < f.size(); ++i) s += f[i] * g[i];
  const double avg = s.value() / static_cast<double>(f.size());
  const double nf = luxemburg_norm(f, phi);
  if (nf == 0.0) return -avg;
  return 2.0 * nf * luxemburg_norm(g, complementary(phi)) - avg;
}

double holder_defect(const SegmentWeight1D& f, const SegmentWeight1D& g, double a, double b,
                     const YoungFn& phi) {
  auto bps = f.breakpoints(a, b);
  const auto more = g.breakpoints(a, b);
  bps.insert(bps.end(), more.begin(), more.end());
  std::sort(bps.begin(), bps.end());
  const double avg =
      graded_integrate([&](double x) { return f.density(x) * g.density(x); }, a, b, bps) / (b - a);
  const double nf = luxemburg_norm(f, a, b, phi);
  if (nf == 0.0) return -avg;
  return 2.0 * nf * luxemburg_norm(g, a, b, complementary(phi)) - avg;
}

}  // namespace weightlab
