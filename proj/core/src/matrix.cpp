#include "weightlab/matrix.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace weightlab {

namespace {

double determinant(int dim, const std::array<double, 4>& e) {
  return dim == 1 ? e[0] : e[0] * e[3] - e[1] * e[2];
}

}  // namespace

SquareMatrix::SquareMatrix(int dim, std::array<double, 4> entries)
    : dim_(dim), entries_(entries), det_(0.0) {
  if (dim != 1 && dim != 2) {
    throw std::invalid_argument("matrix dimension must be 1 or 2");
  }
  if (dim == 1) entries_[1] = entries_[2] = entries_[3] = 0.0;
  for (int i = 0; i < dim * dim; ++i) {
    if (!std::isfinite(entries_[i])) throw std::invalid_argument("matrix entries must be finite");
  }
  det_ = determinant(dim_, entries_);
  if (det_ == 0.0 || !std::isfinite(1.0 / det_)) {
    throw std::invalid_argument("singular matrix");
  }
  if (dim_ == 1) {
    inverse_entries_ = {1.0 / entries_[0], 0.0, 0.0, 0.0};
  } else {
    inverse_entries_ = {entries_[3] / det_, -entries_[1] / det_, -entries_[2] / det_,
                        entries_[0] / det_};
  }
}

SquareMatrix SquareMatrix::scalar(double lambda) { return SquareMatrix(1, {lambda, 0, 0, 0}); }

SquareMatrix SquareMatrix::identity(int dim) {
  return dim == 1 ? scalar(1.0) : SquareMatrix(2, {1, 0, 0, 1});
}

SquareMatrix SquareMatrix::diag(double a, double b) { return SquareMatrix(2, {a, 0, 0, b}); }

SquareMatrix SquareMatrix::of(double a00, double a01, double a10, double a11) {
  return SquareMatrix(2, {a00, a01, a10, a11});
}

double SquareMatrix::as_scalar() const {
  if (dim_ != 1) throw std::logic_error("matrix is not 1x1");
  return entries_[0];
}

Point SquareMatrix::apply(const Point& x) const {
  if (dim_ == 1) return {entries_[0] * x[0], 0.0};
  return {entries_[0] * x[0] + entries_[1] * x[1], entries_[2] * x[0] + entries_[3] * x[1]};
}

SquareMatrix SquareMatrix::operator*(const SquareMatrix& rhs) const {
  if (rhs.dim_ != dim_) throw std::invalid_argument("matrix dimension mismatch");
  if (dim_ == 1) return scalar(entries_[0] * rhs.entries_[0]);
  const auto& a = entries_;
  const auto& b = rhs.entries_;
  return SquareMatrix(2, {a[0] * b[0] + a[1] * b[2], a[0] * b[1] + a[1] * b[3],
                          a[2] * b[0] + a[3] * b[2], a[2] * b[1] + a[3] * b[3]});
}

SquareMatrix SquareMatrix::power(int k) const {
  if (k < 0) throw std::invalid_argument("negative matrix power");
  SquareMatrix result = identity(dim_);
  for (int i = 0; i < k; ++i) result = result * *this;
  return result;
}

double SquareMatrix::distance(const SquareMatrix& rhs) const {
  if (rhs.dim_ != dim_) throw std::invalid_argument("matrix dimension mismatch");
  double d = 0.0;
  for (int i = 0; i < dim_ * dim_; ++i) d = std::max(d, std::abs(entries_[i] - rhs.entries_[i]));
  return d;
}

std::optional<int> SquareMatrix::order(int max_order) const {
  const SquareMatrix id = identity(dim_);
  SquareMatrix acc = *this;
  for (int k = 1; k <= max_order; ++k) {
    if (acc.distance(id) <= 1e-10) return k;
    // Powers of a matrix with |det| != 1 or growing entries never return to I.
    if (acc.distance(id) > 1e6) return std::nullopt;
    acc = acc * *this;
  }
  return std::nullopt;
}

std::string SquareMatrix::describe() const {
  std::ostringstream os;
  os.precision(17);
  os << '[';
  for (int i = 0; i < dim_ * dim_; ++i) {
    if (i) os << (i % dim_ == 0 ? "; " : ", ");
    os << entries_[i];
  }
  os << ']';
  return os.str();
}

}  // namespace weightlab
