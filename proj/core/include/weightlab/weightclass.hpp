#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "weightlab/funcspace.hpp"
#include "weightlab/grid.hpp"
#include "weightlab/matrix.hpp"
#include "weightlab/segment_weight.hpp"
#include "weightlab/young.hpp"

namespace weightlab {

/// Mass of w^r on [a, b] under mu. Throws NonIntegrableError when a power
/// singularity inside [a, b] makes w^r non-integrable, or when r < 0 and w
/// vanishes on part of [a, b] (segment index npos in that case).
double power_mass(const SegmentWeight1D& w, double r, Measure mu, double a, double b);

/// The segments of w^r restricted to [a, b].
SegmentWeight1D restricted_power(const SegmentWeight1D& w, double r, double a, double b);

// Per-cube products on a 1D interval Q. Non-integrable dual weights give +inf.
double ap_product(const SegmentWeight1D& w, const Cube& Q, double p, Measure mu = Measure::lebesgue);
double aap_product(const SegmentWeight1D& w, const SquareMatrix& A, const Cube& Q, double p,
                   Measure mu = Measure::lebesgue);
/// ||w_A^{1/p}||_{p,Q} ||w^{-1/p}||_{phi,Q}
double bump_product(const SegmentWeight1D& w, const SquareMatrix& A, const Cube& Q, double p,
                    const YoungFn& phi);
/// ||w_A^{1/q}||_{q,Q} ||w^{-1/p}||_{p',Q}
double frac_product(const SegmentWeight1D& w, const SquareMatrix& A, const Cube& Q, double p, double q);
/// ||w_A^{1/q}||_{q,Q} ||w^{-1/p}||_{phi,Q}
double frac_bump_product(const SegmentWeight1D& w, const SquareMatrix& A, const Cube& Q, double p,
                         double q, const YoungFn& phi);
/// (avg_Q w^s)^{1/s} / avg_Q w
double rh_product(const SegmentWeight1D& w, const Cube& Q, double s);

struct ClassSpec {
  enum class Kind { ap, aap, aa1, bump, frac, frac_bump, rh, ap_mu };

  Kind kind = Kind::ap;
  double p = 2.0;
  double q = 2.0;
  double s = 2.0;
  SquareMatrix A = SquareMatrix::identity(1);
  std::optional<YoungFn> phi;
  Measure measure = Measure::lebesgue;
  std::size_t grid_n = 4096;  ///< resolution of the cell grid used by aa1

  static ClassSpec Ap(double p);
  static ClassSpec AAp(double p, const SquareMatrix& A);
  static ClassSpec AA1(const SquareMatrix& A);
  static ClassSpec Bump(double p, const SquareMatrix& A, const YoungFn& phi);
  static ClassSpec Frac(double p, double q, const SquareMatrix& A);
  static ClassSpec FracBump(double p, double q, const SquareMatrix& A, const YoungFn& phi);
  static ClassSpec RH(double s);
  static ClassSpec ApMu(double p, Measure mu);

  /// q from 1/q = 1/p - alpha/n.
  static double fractional_q(double p, double alpha, int n = 1);

  void validate() const;
  std::string describe() const;
};

std::string to_string(ClassSpec::Kind k);
ClassSpec::Kind parse_class(const std::string& name);

struct CubeProduct {
  Cube cube;
  double value;
};

struct Witness {
  Cube cube;
  std::size_t segment;
  std::string reason;
};

struct ConstantReport {
  double value = 0.0;  ///< max of the evaluated products (a lower bound of the sup)
  Cube argmax;
  std::vector<CubeProduct> trace;
  std::string family;
  std::optional<Witness> witness;
};

/// Per-cube product for a class spec; throws NonIntegrableError instead of
/// returning +inf so callers can report the witness.
double class_product(const SegmentWeight1D& w, const ClassSpec& spec, const Cube& Q);

/// Max of the per-cube quantity over the family (ties: smallest corner).
ConstantReport constant(const SegmentWeight1D& w, const ClassSpec& spec, const CubeFamily& F,
                        bool keep_trace = false);

struct FiniteOrderReport {
  bool applicable = false;
  std::string reason;
  int order = 0;
  double aap = 0.0;
  double ap = 0.0;
  double ratio_bound = 0.0;  ///< max over cell centers of w(Ax)/w(x)
  bool contract_holds = false;
};

/// For A with A^k = I: [w]_{A_{A,p}}, [w]_{A_p} and the pointwise ratio on F.
FiniteOrderReport finite_order_reduction(const SegmentWeight1D& w, const SquareMatrix& A, double p,
                                         const CubeFamily& F, std::size_t grid_n = 4096);

struct SubsetReport {
  double constant = 0.0;
  double max_defect = 0.0;
  std::size_t pairs = 0;
};

/// max over pairs of |S|/|Q| - [w]^{1/p} (w(S)/w_A(Q))^{1/p}; the constant is
/// taken over F together with every Q of the pairs.
SubsetReport subset_lemma_check(const SegmentWeight1D& w, const SquareMatrix& A, double p,
                                const std::vector<std::pair<Cube, Cube>>& pairs, const CubeFamily& F);

struct RhInclusionReport {
  bool applicable = false;
  std::string reason;
  double s = 0.0;
  double rh = 0.0;        ///< [w^{1-p'}]_{RH(s)}
  double aap_p = 0.0;     ///< [w]_{A_{A,p}}
  double aap_lower = 0.0; ///< [w]_{A_{A,p-eps}}
  double min_slack = 0.0; ///< min over cubes of (rhs - lhs) / rhs
  std::size_t cubes = 0;
  bool holds = false;
};

/// Per-cube check of [w]_{A_{A,p-eps}} <= [w^{1-p'}]_{RH(s)}^{p-1} [w]_{A_{A,p}}
/// with s = (p-1)/(p-eps-1). Lebesgue measure only.
RhInclusionReport rh_inclusion_check(const SegmentWeight1D& w, const SquareMatrix& A, double p,
                                     double eps, const CubeFamily& F,
                                     Measure mu = Measure::lebesgue);

struct RhProbe {
  double aap = 0.0;
  std::vector<std::pair<double, double>> rh;  ///< (s, [w]_{RH(s)})
  std::vector<std::pair<double, double>> dual_rh;  ///< (s, [w^{1-p'}]_{RH(s)})
};

/// Reverse Hölder constants of w and of its dual weight for several s.
RhProbe rh_probe(const SegmentWeight1D& w, const SquareMatrix& A, double p,
                 const std::vector<double>& s_values, const CubeFamily& F);

}  // namespace weightlab
