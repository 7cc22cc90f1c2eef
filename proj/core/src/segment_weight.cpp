#include "weightlab/segment_weight.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "weightlab/errors.hpp"
#include "weightlab/summation.hpp"

namespace weightlab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// c/(g+1) * (hi^{g+1} - lo^{g+1}) for 0 <= lo <= hi, written to avoid
// cancellation when hi and lo are close and far from zero.
double power_span(double c, double g, double lo, double hi) {
  if (hi <= lo) return 0.0;
  const double e = g + 1.0;
  if (lo == 0.0) return c * std::pow(hi, e) / e;
  const double rel = std::log1p((hi - lo) / lo);
  if (e == 0.0) return c * rel;
  return c * std::pow(lo, e) * std::expm1(e * rel) / e;
}

double power_mass(const PowerForm& f, double a, double b) {
  const double ua = a - f.center;
  const double ub = b - f.center;
  if (ua >= 0.0) return power_span(f.c, f.gamma, ua, ub);
  if (ub <= 0.0) return power_span(f.c, f.gamma, -ub, -ua);
  return power_span(f.c, f.gamma, 0.0, -ua) + power_span(f.c, f.gamma, 0.0, ub);
}

double exp_mass(const ExpForm& f, double a, double b) {
  if (f.rate == 0.0) return f.c * (b - a);
  return f.c * std::exp(f.rate * a) * std::expm1(f.rate * (b - a)) / f.rate;
}

}  // namespace

Segment::Segment(double lo, double hi, SegmentForm form) : lo_(lo), hi_(hi), form_(form) {
  if (!(lo < hi)) throw std::invalid_argument("segment requires lo < hi");
  std::visit(
      [&](const auto& f) {
        if (!(f.c > 0.0) || !std::isfinite(f.c)) {
          throw std::invalid_argument("segment coefficient must be positive and finite");
        }
      },
      form_);
  if (const auto* p = std::get_if<PowerForm>(&form_)) {
    if (!std::isfinite(p->gamma) || !std::isfinite(p->center)) {
      throw std::invalid_argument("power segment parameters must be finite");
    }
    if (p->center >= lo && p->center <= hi && !(p->gamma > -1.0)) {
      throw NonIntegrableError("power exponent <= -1 at a singularity inside the segment", 0);
    }
  } else {
    if (!std::isfinite(std::get<ExpForm>(form_).rate)) {
      throw std::invalid_argument("exponential rate must be finite");
    }
  }
}

Segment Segment::power(double lo, double hi, double c, double center, double gamma) {
  return Segment(lo, hi, PowerForm{c, center, gamma});
}

Segment Segment::exponential(double lo, double hi, double c, double rate) {
  return Segment(lo, hi, ExpForm{c, rate});
}

double Segment::density(double x) const {
  if (const auto* p = std::get_if<PowerForm>(&form_)) {
    const double u = std::abs(x - p->center);
    if (u == 0.0) return p->gamma < 0.0 ? kInf : (p->gamma == 0.0 ? p->c : 0.0);
    return p->c * std::pow(u, p->gamma);
  }
  const auto& e = std::get<ExpForm>(form_);
  return e.c * std::exp(e.rate * x);
}

double Segment::mass(double a, double b) const {
  if (a > b || a < lo_ || b > hi_) {
    throw std::domain_error("mass interval outside segment");
  }
  if (a == b) return 0.0;
  if (const auto* p = std::get_if<PowerForm>(&form_)) return power_mass(*p, a, b);
  return exp_mass(std::get<ExpForm>(form_), a, b);
}

bool Segment::singular() const {
  const auto* p = std::get_if<PowerForm>(&form_);
  return p && p->gamma < 0.0 && p->center >= lo_ && p->center <= hi_;
}

Segment Segment::raised(double q) const {
  if (const auto* p = std::get_if<PowerForm>(&form_)) {
    return Segment(lo_, hi_, PowerForm{std::pow(p->c, q), p->center, p->gamma * q});
  }
  const auto& e = std::get<ExpForm>(form_);
  return Segment(lo_, hi_, ExpForm{std::pow(e.c, q), e.rate * q});
}

Segment Segment::composed(double lambda) const {
  if (lambda == 0.0 || !std::isfinite(lambda)) {
    throw std::invalid_argument("singular matrix in composition");
  }
  double lo = lo_ / lambda;
  double hi = hi_ / lambda;
  if (lambda < 0.0) std::swap(lo, hi);
  if (const auto* p = std::get_if<PowerForm>(&form_)) {
    return Segment(lo, hi,
                   PowerForm{p->c * std::pow(std::abs(lambda), p->gamma), p->center / lambda,
                             p->gamma});
  }
  const auto& e = std::get<ExpForm>(form_);
  return Segment(lo, hi, ExpForm{e.c, e.rate * lambda});
}

Segment Segment::with_bounds(double lo, double hi) const { return Segment(lo, hi, form_); }

SegmentWeight1D::SegmentWeight1D(std::vector<Segment> segments, Tail tail)
    : segments_(std::move(segments)), tail_(tail) {
  if (segments_.empty()) throw std::invalid_argument("weight needs at least one segment");
  for (std::size_t i = 1; i < segments_.size(); ++i) {
    if (segments_[i - 1].hi() > segments_[i].lo()) {
      throw std::invalid_argument("weight segments must be sorted and non-overlapping");
    }
  }
  if (tail_ == Tail::extend) {
    try {
      segments_.front() = segments_.front().with_bounds(-kInf, segments_.front().hi());
      segments_.back() = segments_.back().with_bounds(segments_.back().lo(), kInf);
    } catch (const NonIntegrableError&) {
      throw NonIntegrableError("extended tail reaches a non-integrable singularity", 0);
    }
  }
}

SegmentWeight1D SegmentWeight1D::constant(double c, double lo, double hi, Tail tail) {
  return SegmentWeight1D({Segment::exponential(lo, hi, c, 0.0)}, tail);
}

SegmentWeight1D SegmentWeight1D::power_law(double gamma, double center, double c) {
  return SegmentWeight1D({Segment::power(-kInf, kInf, c, center, gamma)}, Tail::extend);
}

double SegmentWeight1D::density(double x) const {
  for (const auto& s : segments_) {
    if (x >= s.lo() && x < s.hi()) return s.density(x);
  }
  if (!segments_.empty() && x == segments_.back().hi()) return segments_.back().density(x);
  return 0.0;
}

double SegmentWeight1D::mass(double a, double b) const {
  if (a > b) throw std::invalid_argument("mass requires a <= b");
  CompensatedSum sum;
  for (const auto& s : segments_) {
    const double lo = std::max(a, s.lo());
    const double hi = std::min(b, s.hi());
    if (lo < hi) sum += s.mass(lo, hi);
  }
  return sum.value();
}

SegmentWeight1D SegmentWeight1D::raised(double q) const {
  std::vector<Segment> out;
  out.reserve(segments_.size());
  for (std::size_t i = 0; i < segments_.size(); ++i) {
    try {
      out.push_back(segments_[i].raised(q));
    } catch (const NonIntegrableError&) {
      std::ostringstream os;
      os << "power " << q << " of segment " << i << " is not integrable at its singularity";
      throw NonIntegrableError(os.str(), i);
    }
  }
  return SegmentWeight1D(std::move(out), tail_);
}

SegmentWeight1D SegmentWeight1D::composed(double lambda) const {
  std::vector<Segment> out;
  out.reserve(segments_.size());
  for (const auto& s : segments_) out.push_back(s.composed(lambda));
  if (lambda < 0.0) std::reverse(out.begin(), out.end());
  return SegmentWeight1D(std::move(out), tail_);
}

SegmentWeight1D SegmentWeight1D::times_exp_abs() const {
  std::vector<Segment> out;
  for (const auto& s : segments_) {
    const auto* e = std::get_if<ExpForm>(&s.form());
    if (!e) throw std::domain_error("exp(|x|) measure supports exponential segments only");
    if (s.lo() < 0.0 && s.hi() > 0.0) {
      out.push_back(Segment::exponential(s.lo(), 0.0, e->c, e->rate - 1.0));
      out.push_back(Segment::exponential(0.0, s.hi(), e->c, e->rate + 1.0));
    } else if (s.hi() <= 0.0) {
      out.push_back(Segment::exponential(s.lo(), s.hi(), e->c, e->rate - 1.0));
    } else {
      out.push_back(Segment::exponential(s.lo(), s.hi(), e->c, e->rate + 1.0));
    }
  }
  return SegmentWeight1D(std::move(out), tail_);
}

std::vector<double> SegmentWeight1D::breakpoints(double a, double b) const {
  std::vector<double> pts;
  for (const auto& s : segments_) {
    if (s.lo() > a && s.lo() < b) pts.push_back(s.lo());
    if (s.hi() > a && s.hi() < b) pts.push_back(s.hi());
    if (const auto* p = std::get_if<PowerForm>(&s.form())) {
      if (p->center > a && p->center < b && p->center >= s.lo() && p->center <= s.hi()) {
        pts.push_back(p->center);
      }
    }
  }
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  return pts;
}

std::string SegmentWeight1D::describe() const {
  std::ostringstream os;
  os.precision(10);
  for (std::size_t i = 0; i < segments_.size(); ++i) {
    const auto& s = segments_[i];
    if (i) os << " | ";
    os << '[' << s.lo() << ',' << s.hi() << "] ";
    if (const auto* p = std::get_if<PowerForm>(&s.form())) {
      os << p->c << "*|x-" << p->center << "|^" << p->gamma;
    } else {
      const auto& e = std::get<ExpForm>(s.form());
      os << e.c << "*exp(" << e.rate << "x)";
    }
  }
  return os.str();
}

double segment_mass(const Segment& seg, double a, double b) { return seg.mass(a, b); }

double weight_mass(const SegmentWeight1D& w, double a, double b) { return w.mass(a, b); }

}  // namespace weightlab
