#pragma once

#include <memory>
#include <optional>
#include <span>
#include <string>

#include "weightlab/grid.hpp"
#include "weightlab/segment_weight.hpp"

namespace weightlab {

/// A Young function: continuous, convex, nondecreasing, phi(0) = 0.
///
/// Built-in kinds:
///   identity          t
///   power(r)          t^r, r > 1
///   power_log(r, b)   t^r log(e + t)^b, r >= 1, b > 0
///   exp_minus_one     e^t - 1
///   bump(p, eps)      t^{p/(p+eps-1)}, p > 1, 0 < eps < 1
///   scaled_power(k,r) k t^r (closed-form complement of a power)
///   sup_indicator     0 on [0,1], +inf beyond (complement of identity; its
///                     gauge is the essential supremum)
///   legendre(phi)     numeric Legendre transform of another Young function
class YoungFn {
 public:
  enum class Kind { identity, power, power_log, exp_minus_one, bump, scaled_power, sup_indicator, legendre };

  struct PowerLaw {
    double coef;
    double exponent;
  };

  static YoungFn identity();
  static YoungFn power(double r);
  static YoungFn power_log(double r, double beta);
  static YoungFn exp_minus_one();
  static YoungFn bump(double p, double eps);
  static YoungFn scaled_power(double coef, double r);
  static YoungFn sup_indicator();
  static YoungFn legendre(const YoungFn& base);

  Kind kind() const { return kind_; }
  double operator()(double t) const;

  /// phi(t) = coef * t^exponent, when phi is of that form.
  std::optional<PowerLaw> power_law() const;

  /// Parameters as constructed (r / beta, p / eps, coef / r).
  double param_a() const { return a_; }
  double param_b() const { return b_; }
  const YoungFn* base() const { return base_.get(); }

  std::string describe() const;

 private:
  YoungFn(Kind kind, double a, double b, std::shared_ptr<const YoungFn> base = nullptr)
      : kind_(kind), a_(a), b_(b), base_(std::move(base)) {}

  Kind kind_;
  double a_;
  double b_;
  std::shared_ptr<const YoungFn> base_;
};

/// sup_{t >= 0} (s t - phi(t)) by ternary search on a geometrically grown bracket.
double legendre_transform(const YoungFn& phi, double s);

/// Complementary Young function: closed form for identity, power-type and
/// sup_indicator, the numeric Legendre transform otherwise.
YoungFn complementary(const YoungFn& phi);

enum class BpMembership { member, nonmember, undetermined };
std::string to_string(BpMembership m);

struct BpReport {
  double integral = 0.0;  ///< numeric ∫_1^T phi(t) t^{-p-1} dt
  double tail = 0.0;      ///< closed-form ∫_T^∞ for power-type phi; +inf if divergent; NaN if unknown
  double total = 0.0;
  BpMembership membership = BpMembership::undetermined;
};

/// B_p diagnostic: numeric integral up to T (T may be +inf) plus the
/// symbolic classification for built-in kinds.
BpReport bp_integral(const YoungFn& phi, double p, double T);

/// Average of phi(f/lambda) over equally weighted cells.
double luxemburg_modular(std::span<const double> cells, const YoungFn& phi, double lambda);

/// Luxemburg average norm over equally weighted cells; closed form for
/// power-type kinds and the essential sup for sup_indicator.
double luxemburg_norm(std::span<const double> cells, const YoungFn& phi);
/// Same gauge, always by bisection on lambda (relative tolerance 1e-14).
double luxemburg_norm_bisect(std::span<const double> cells, const YoungFn& phi);
double luxemburg_norm(const GridFunction& f, const IndexCube& q, const YoungFn& phi);
/// Gauge of an analytic nonnegative function on [a, b]; power-type kinds use
/// exact segment masses, other kinds graded Gauss quadrature.
double luxemburg_norm(const SegmentWeight1D& f, double a, double b, const YoungFn& phi);

/// 2 ||f||_{phi} ||g||_{phi-bar} - avg(f g); nonnegative by Young's inequality.
double holder_defect(std::span<const double> f, std::span<const double> g, const YoungFn& phi);
double holder_defect(const SegmentWeight1D& f, const SegmentWeight1D& g, double a, double b,
                     const YoungFn& phi);

}  // namespace weightlab
