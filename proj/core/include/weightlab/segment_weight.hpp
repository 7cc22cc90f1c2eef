#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace weightlab {

/// Density c * |x - center|^gamma.
struct PowerForm {
  double c = 1.0;
  double center = 0.0;
  double gamma = 0.0;
};

/// Density c * exp(rate * x).
struct ExpForm {
  double c = 1.0;
  double rate = 0.0;
};

using SegmentForm = std::variant<PowerForm, ExpForm>;

/// A closed-form density on [lo, hi] with an exact antiderivative.
///
/// Bounds may be infinite (used for extended tails), but masses are only ever
/// requested over bounded intervals. A power form whose center lies in
/// [lo, hi] must have gamma > -1 so that every bounded mass is finite.
class Segment {
 public:
  Segment(double lo, double hi, SegmentForm form);

  static Segment power(double lo, double hi, double c, double center, double gamma);
  static Segment exponential(double lo, double hi, double c, double rate);

  double lo() const { return lo_; }
  double hi() const { return hi_; }
  const SegmentForm& form() const { return form_; }

  bool is_power() const { return std::holds_alternative<PowerForm>(form_); }

  double density(double x) const;

  /// Exact mass over [a, b] ⊆ [lo, hi]; std::domain_error otherwise.
  double mass(double a, double b) const;

  /// True when a power singularity (gamma < 0) sits in [lo, hi].
  bool singular() const;

  /// Pointwise power: the density raised to q.
  Segment raised(double q) const;

  /// The density x -> d(lambda * x) on the preimage interval.
  Segment composed(double lambda) const;

  Segment with_bounds(double lo, double hi) const;

 private:
  double lo_;
  double hi_;
  SegmentForm form_;
};

enum class Tail { zero, extend };

/// Piecewise closed-form weight on the real line.
///
/// Segments are sorted and interior-disjoint. With Tail::extend the first
/// and last segments continue to -inf and +inf; with Tail::zero the weight
/// vanishes outside the declared segments.
class SegmentWeight1D {
 public:
  SegmentWeight1D() = default;
  explicit SegmentWeight1D(std::vector<Segment> segments, Tail tail = Tail::zero);

  static SegmentWeight1D constant(double c, double lo, double hi, Tail tail = Tail::zero);
  /// |x - center|^gamma on the whole line.
  static SegmentWeight1D power_law(double gamma, double center = 0.0, double c = 1.0);

  std::span<const Segment> segments() const { return segments_; }
  Tail tail() const { return tail_; }

  double density(double x) const;

  /// Exact mass of [a, b]; summation over segments runs left to right.
  double mass(double a, double b) const;

  /// w^q; throws NonIntegrableError naming the first segment whose power
  /// singularity would become non-integrable.
  SegmentWeight1D raised(double q) const;

  /// x -> w(lambda * x).
  SegmentWeight1D composed(double lambda) const;

  /// The density w(x) * e^{|x|}; only exponential segments are supported.
  SegmentWeight1D times_exp_abs() const;

  /// Sorted list of interior breakpoints and singular centers in (a, b).
  std::vector<double> breakpoints(double a, double b) const;

  std::string describe() const;

 private:
  std::vector<Segment> segments_;
  Tail tail_ = Tail::zero;
};

double segment_mass(const Segment& seg, double a, double b);
double weight_mass(const SegmentWeight1D& w, double a, double b);

}  // namespace weightlab
