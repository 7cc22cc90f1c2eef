#pragma once

#include <array>
#include <optional>
#include <string>

namespace weightlab {

using Point = std::array<double, 2>;

/// Invertible real matrix of dimension 1 or 2, stored row-major.
///
/// The inverse and determinant are computed once at construction; a singular
/// or ill-formed matrix is rejected with std::invalid_argument.
class SquareMatrix {
 public:
  SquareMatrix(int dim, std::array<double, 4> entries);

  static SquareMatrix scalar(double lambda);
  static SquareMatrix identity(int dim);
  static SquareMatrix diag(double a, double b);
  static SquareMatrix of(double a00, double a01, double a10, double a11);

  int dim() const { return dim_; }
  double operator()(int row, int col) const { return entries_[row * dim_ + col]; }
  const std::array<double, 4>& entries() const { return entries_; }
  double det() const { return det_; }
  SquareMatrix inverse() const { return SquareMatrix(dim_, inverse_entries_); }

  /// Scalar value of a 1x1 matrix; throws std::logic_error otherwise.
  double as_scalar() const;

  Point apply(const Point& x) const;
  SquareMatrix operator*(const SquareMatrix& rhs) const;
  SquareMatrix power(int k) const;

  /// Max-norm distance to another matrix of the same dimension.
  double distance(const SquareMatrix& rhs) const;

  /// Smallest k in [1, max_order] with max|A^k - I| <= 1e-10, if any.
  std::optional<int> order(int max_order = 64) const;

  std::string describe() const;

 private:
  int dim_;
  std::array<double, 4> entries_{};
  double det_;
  std::array<double, 4> inverse_entries_{};
};

}  // namespace weightlab
