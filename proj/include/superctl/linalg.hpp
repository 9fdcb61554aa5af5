#pragma once

#include <optional>
#include <type_traits>
#include <vector>

#include <Eigen/Dense>

#include "superctl/errors.hpp"

namespace superctl {

template <typename Scalar>
using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using Vec = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

/// Exact zero test (Eigen's isZero is fuzzy for floating point).
template <typename Derived>
bool exactly_zero(const Eigen::MatrixBase<Derived>& m) {
  using Scalar = typename Derived::Scalar;
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (m(i, j) != Scalar(0)) return false;
    }
  }
  return true;
}

/// Reduced row-echelon basis of a row space.
///
/// Rows are ordered by pivot column, each pivot is 1 and is the only nonzero
/// entry in its column. The pivot rule is "first nonzero column", so the form
/// is unique for a given row space and independent of insertion order.
template <typename Scalar>
class RowEchelon {
 public:
  explicit RowEchelon(Eigen::Index cols = 0) : rows_(0, cols) {}

  Eigen::Index cols() const { return rows_.cols(); }
  Eigen::Index rank() const { return rows_.rows(); }
  const Mat<Scalar>& rows() const { return rows_; }
  const std::vector<Eigen::Index>& pivots() const { return pivots_; }

  /// v minus its projection along the pivots; zero iff v is in the row space.
  Vec<Scalar> residual(Vec<Scalar> v) const {
    check_width(v);
    for (Eigen::Index r = 0; r < rank(); ++r) {
      const Scalar c = v(pivots_[r]);
      if (c != Scalar(0)) v -= c * rows_.row(r).transpose();
    }
    return v;
  }

  bool contains(const Vec<Scalar>& v) const { return exactly_zero(residual(v)); }

  /// Coefficients of v in terms of rows(), or nullopt if v is outside the span.
  std::optional<Vec<Scalar>> coordinates(const Vec<Scalar>& v) const {
    check_width(v);
    Vec<Scalar> coeffs(rank());
    for (Eigen::Index r = 0; r < rank(); ++r) coeffs(r) = v(pivots_[r]);
    if (!exactly_zero(residual(v))) return std::nullopt;
    return coeffs;
  }

  /// Adds v to the span; returns true if the rank grew.
  bool insert(const Vec<Scalar>& v) {
    Vec<Scalar> w = residual(v);
    Eigen::Index pivot = 0;
    while (pivot < w.size() && w(pivot) == Scalar(0)) ++pivot;
    if (pivot == w.size()) return false;
    w /= Scalar(w(pivot));
    for (Eigen::Index r = 0; r < rank(); ++r) {
      const Scalar c = rows_(r, pivot);
      if (c != Scalar(0)) rows_.row(r) -= c * w.transpose();
    }
    Eigen::Index pos = 0;
    while (pos < rank() && pivots_[pos] < pivot) ++pos;
    Mat<Scalar> grown(rank() + 1, cols());
    grown.topRows(pos) = rows_.topRows(pos);
    grown.row(pos) = w.transpose();
    grown.bottomRows(rank() - pos) = rows_.bottomRows(rank() - pos);
    rows_ = std::move(grown);
    pivots_.insert(pivots_.begin() + pos, pivot);
    return true;
  }

  friend bool operator==(const RowEchelon& a, const RowEchelon& b) {
    return a.rows_.rows() == b.rows_.rows() && a.rows_.cols() == b.rows_.cols() && a.rows_ == b.rows_;
  }

 private:
  void check_width(const Vec<Scalar>& v) const {
    if (v.size() != cols()) throw ShapeError("vector length does not match row width");
  }

  Mat<Scalar> rows_;
  std::vector<Eigen::Index> pivots_;
};

/// Row-reduces the rows of m.
template <typename Scalar>
RowEchelon<Scalar> rref(const Mat<Scalar>& m) {
  RowEchelon<Scalar> e(m.cols());
  for (Eigen::Index r = 0; r < m.rows(); ++r) e.insert(m.row(r).transpose());
  return e;
}

template <typename Scalar>
Eigen::Index exact_rank(const Mat<Scalar>& m) {
  return rref(m).rank();
}

/// Determinant. Exact scalars use elimination with the first nonzero pivot;
/// floating point defers to Eigen's partial-pivot LU.
template <typename Scalar>
Scalar determinant(Mat<Scalar> a) {
  if (a.rows() != a.cols()) throw ShapeError("determinant of a non-square matrix");
  if constexpr (std::is_floating_point_v<Scalar>) {
    return a.rows() == 0 ? Scalar(1) : a.partialPivLu().determinant();
  } else {
    const Eigen::Index n = a.rows();
    Scalar det(1);
    for (Eigen::Index c = 0; c < n; ++c) {
      Eigen::Index p = c;
      while (p < n && a(p, c) == Scalar(0)) ++p;
      if (p == n) return Scalar(0);
      if (p != c) {
        a.row(p).swap(a.row(c));
        det = -det;
      }
      det *= a(c, c);
      for (Eigen::Index r = c + 1; r < n; ++r) {
        if (a(r, c) == Scalar(0)) continue;
        const Scalar f = a(r, c) / a(c, c);
        a.row(r) -= f * a.row(c);
      }
    }
    return det;
  }
}

/// Inverse of a square matrix; throws NumericError when singular.
template <typename Scalar>
Mat<Scalar> inverse(const Mat<Scalar>& a) {
  if (a.rows() != a.cols()) throw ShapeError("inverse of a non-square matrix");
  const Eigen::Index n = a.rows();
  if constexpr (std::is_floating_point_v<Scalar>) {
    Eigen::FullPivLU<Mat<Scalar>> lu(a);
    if (!lu.isInvertible()) throw NumericError("singular matrix");
    return lu.inverse();
  } else {
    Mat<Scalar> aug(n, 2 * n);
    aug.leftCols(n) = a;
    aug.rightCols(n) = Mat<Scalar>::Identity(n, n);
    for (Eigen::Index c = 0; c < n; ++c) {
      Eigen::Index p = c;
      while (p < n && aug(p, c) == Scalar(0)) ++p;
      if (p == n) throw NumericError("singular matrix");
      if (p != c) aug.row(p).swap(aug.row(c));
      aug.row(c) /= Scalar(aug(c, c));
      for (Eigen::Index r = 0; r < n; ++r) {
        if (r == c || aug(r, c) == Scalar(0)) continue;
        const Scalar f = aug(r, c);
        aug.row(r) -= f * aug.row(c);
      }
    }
    return aug.rightCols(n);
  }
}

}  // namespace superctl
