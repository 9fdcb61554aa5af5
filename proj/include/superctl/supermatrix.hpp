#pragma once

#include <cmath>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "superctl/errors.hpp"
#include "superctl/grassmann.hpp"
#include "superctl/linalg.hpp"
#include "superctl/parity.hpp"

namespace superctl {

/// Block parity of position (i, j) in an (m|n) matrix: diagonal blocks are
/// even, off-diagonal blocks odd.
inline Parity position_parity(int m, Eigen::Index i, Eigen::Index j) {
  return ((i < m) == (j < m)) ? Parity::Even : Parity::Odd;
}

/// Grade read off the nonzero pattern of a scalar-valued (m|n) matrix.
template <typename Scalar>
GradeKind support_grade(int m, const Mat<Scalar>& a) {
  bool diag = false, off = false;
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      if (a(i, j) == Scalar(0)) continue;
      (position_parity(m, i, j) == Parity::Even ? diag : off) = true;
    }
  }
  if (diag && off) return GradeKind::Mixed;
  return off ? GradeKind::Odd : GradeKind::Even;
}

inline GradeKind to_grade(Parity p) { return p == Parity::Even ? GradeKind::Even : GradeKind::Odd; }

inline Parity require_homogeneous(GradeKind g, const char* what) {
  if (g == GradeKind::Mixed) throw ParityError(std::string(what) + " is not homogeneous");
  return g == GradeKind::Odd ? Parity::Odd : Parity::Even;
}

/// Scalar-valued (m|n) supermatrix with a declared parity.
///
/// In analysis mode the parity is positional: it decides the sign in the
/// superbracket and is not re-derived from the entries.
template <typename Scalar>
class SuperMatrix {
 public:
  SuperMatrix(int m, int n, Mat<Scalar> entries, GradeKind parity)
      : m_(m), n_(n), entries_(std::move(entries)), parity_(parity) {
    if (m < 0 || n < 0 || m + n == 0) throw ShapeError("supermatrix needs m, n >= 0, not both 0");
    if (entries_.rows() != m + n || entries_.cols() != m + n) {
      throw ShapeError("entries must be (m+n)x(m+n)");
    }
  }

  SuperMatrix(int m, int n, Mat<Scalar> entries, Parity parity)
      : SuperMatrix(m, n, std::move(entries), to_grade(parity)) {}

  /// Parity inferred from the block support; throws on mixed support.
  static SuperMatrix homogeneous(int m, int n, Mat<Scalar> entries) {
    const GradeKind g = support_grade(m, entries);
    require_homogeneous(g, "matrix");
    return SuperMatrix(m, n, std::move(entries), g);
  }

  static SuperMatrix zero(int m, int n, Parity p = Parity::Even) {
    return SuperMatrix(m, n, Mat<Scalar>::Zero(m + n, m + n), p);
  }
  static SuperMatrix identity(int m, int n) {
    return SuperMatrix(m, n, Mat<Scalar>::Identity(m + n, m + n), Parity::Even);
  }
  /// Matrix unit e_{ij} (0-based), parity by position.
  static SuperMatrix unit(int m, int n, int i, int j) {
    Mat<Scalar> e = Mat<Scalar>::Zero(m + n, m + n);
    e(i, j) = Scalar(1);
    return SuperMatrix(m, n, std::move(e), position_parity(m, i, j));
  }

  int m() const { return m_; }
  int n() const { return n_; }
  int size() const { return m_ + n_; }
  const Mat<Scalar>& entries() const { return entries_; }
  const Scalar& operator()(Eigen::Index i, Eigen::Index j) const { return entries_(i, j); }
  GradeKind parity() const { return parity_; }
  bool same_shape(const SuperMatrix& o) const { return m_ == o.m_ && n_ == o.n_; }

  auto block_a() const { return entries_.topLeftCorner(m_, m_); }
  auto block_b() const { return entries_.topRightCorner(m_, n_); }
  auto block_c() const { return entries_.bottomLeftCorner(n_, m_); }
  auto block_d() const { return entries_.bottomRightCorner(n_, n_); }

  template <typename Other>
  SuperMatrix<Other> cast() const {
    Mat<Other> e(size(), size());
    for (Eigen::Index i = 0; i < e.rows(); ++i) {
      for (Eigen::Index j = 0; j < e.cols(); ++j) {
        if constexpr (std::is_floating_point_v<Other> && !std::is_floating_point_v<Scalar>) {
          e(i, j) = entries_(i, j).template convert_to<Other>();
        } else {
          e(i, j) = static_cast<Other>(entries_(i, j));
        }
      }
    }
    return SuperMatrix<Other>(m_, n_, std::move(e), parity_);
  }

  friend SuperMatrix operator+(const SuperMatrix& a, const SuperMatrix& b) {
    a.require_shape(b);
    return SuperMatrix(a.m_, a.n_, a.entries_ + b.entries_, combine(a.parity_, b.parity_));
  }
  friend SuperMatrix operator-(const SuperMatrix& a, const SuperMatrix& b) {
    a.require_shape(b);
    return SuperMatrix(a.m_, a.n_, a.entries_ - b.entries_, combine(a.parity_, b.parity_));
  }
  friend SuperMatrix operator*(const SuperMatrix& a, const SuperMatrix& b) {
    a.require_shape(b);
    GradeKind p = GradeKind::Mixed;
    if (a.parity_ != GradeKind::Mixed && b.parity_ != GradeKind::Mixed) {
      p = to_grade(require_homogeneous(a.parity_, "") + require_homogeneous(b.parity_, ""));
    }
    return SuperMatrix(a.m_, a.n_, a.entries_ * b.entries_, p);
  }
  friend SuperMatrix operator*(const Scalar& s, const SuperMatrix& a) {
    return SuperMatrix(a.m_, a.n_, s * a.entries_, a.parity_);
  }
  friend bool operator==(const SuperMatrix& a, const SuperMatrix& b) {
    return a.same_shape(b) && a.parity_ == b.parity_ && a.entries_ == b.entries_;
  }

  void require_shape(const SuperMatrix& o) const {
    if (!same_shape(o)) {
      throw ShapeError("supermatrix shapes differ: (" + std::to_string(m_) + "|" + std::to_string(n_) +
                       ") vs (" + std::to_string(o.m_) + "|" + std::to_string(o.n_) + ")");
    }
  }

 private:
  static GradeKind combine(GradeKind a, GradeKind b) { return a == b ? a : GradeKind::Mixed; }

  int m_;
  int n_;
  Mat<Scalar> entries_;
  GradeKind parity_;
};

/// AB - (-1)^{|A||B|} BA.
template <typename Scalar>
SuperMatrix<Scalar> super_bracket(const SuperMatrix<Scalar>& a, const SuperMatrix<Scalar>& b) {
  a.require_shape(b);
  const Parity pa = require_homogeneous(a.parity(), "left bracket argument");
  const Parity pb = require_homogeneous(b.parity(), "right bracket argument");
  Mat<Scalar> e = a.entries() * b.entries();
  if (koszul_sign(pa, pb) > 0) {
    e -= b.entries() * a.entries();
  } else {
    e += b.entries() * a.entries();
  }
  return SuperMatrix<Scalar>(a.m(), a.n(), std::move(e), pa + pb);
}

template <typename Scalar>
Scalar supertrace(const SuperMatrix<Scalar>& a) {
  Scalar s(0);
  for (int i = 0; i < a.m(); ++i) s += a(i, i);
  for (int i = a.m(); i < a.size(); ++i) s -= a(i, i);
  return s;
}

/// det(A - B D^{-1} C) / det(D). Requires D invertible.
template <typename Scalar>
Scalar berezinian(const SuperMatrix<Scalar>& x) {
  const Mat<Scalar> d = x.block_d();
  const Scalar det_d = determinant<Scalar>(d);
  if (det_d == Scalar(0)) throw BerezinianUndefinedError("odd-odd block is singular");
  if (x.m() == 0) return Scalar(1) / det_d;
  const Mat<Scalar> schur = x.block_a() - x.block_b() * inverse<Scalar>(d) * x.block_c();
  return determinant<Scalar>(schur) / det_d;
}

namespace detail {

/// Grassmann-valued rectangular matrix stored as one real matrix per monomial.
template <typename Scalar>
using Parts = std::vector<Mat<Scalar>>;

template <typename Scalar>
Parts<Scalar> parts_product(const Parts<Scalar>& a, const Parts<Scalar>& b, Eigen::Index rows,
                            Eigen::Index cols) {
  Parts<Scalar> out(a.size(), Mat<Scalar>::Zero(rows, cols));
  std::vector<Monomial> nz_b;
  for (Monomial j = 0; j < b.size(); ++j) {
    if (!exactly_zero(b[j])) nz_b.push_back(j);
  }
  for (Monomial i = 0; i < a.size(); ++i) {
    if (exactly_zero(a[i])) continue;
    for (Monomial j : nz_b) {
      const int s = merge_sign(i, j);
      if (s == 0) continue;
      if (s > 0) {
        out[i | j].noalias() += a[i] * b[j];
      } else {
        out[i | j].noalias() -= a[i] * b[j];
      }
    }
  }
  return out;
}

template <typename Scalar>
GrassmannNumber<Scalar> laplace_det(const std::vector<std::vector<GrassmannNumber<Scalar>>>& a,
                                    int L) {
  const std::size_t n = a.size();
  if (n == 0) return GrassmannNumber<Scalar>::constant(L, Scalar(1));
  if (n == 1) return a[0][0];
  GrassmannNumber<Scalar> det(L);
  for (std::size_t col = 0; col < n; ++col) {
    if (a[0][col].is_zero()) continue;
    std::vector<std::vector<GrassmannNumber<Scalar>>> minor;
    minor.reserve(n - 1);
    for (std::size_t r = 1; r < n; ++r) {
      std::vector<GrassmannNumber<Scalar>> row;
      row.reserve(n - 1);
      for (std::size_t c = 0; c < n; ++c) {
        if (c != col) row.push_back(a[r][c]);
      }
      minor.push_back(std::move(row));
    }
    const auto term = a[0][col] * laplace_det(minor, L);
    if (col % 2 == 0) {
      det += term;
    } else {
      det -= term;
    }
  }
  return det;
}

}  // namespace detail

/// (m|n) supermatrix with Grassmann-valued entries (simulation mode).
///
/// Stored as sum_I M_I xi_I with real matrices M_I, one per monomial I, so the
/// body is M_0 and products expand monomial by monomial.
template <typename Scalar>
class GrassmannMatrix {
 public:
  GrassmannMatrix(int m, int n, int num_generators)
      : m_(m), n_(n), num_generators_(num_generators) {
    detail::check_generator_count(num_generators);
    if (m < 0 || n < 0 || m + n == 0) throw ShapeError("supermatrix needs m, n >= 0, not both 0");
    parts_.assign(std::size_t{1} << num_generators, Mat<Scalar>::Zero(m + n, m + n));
  }

  static GrassmannMatrix identity(int m, int n, int num_generators) {
    GrassmannMatrix g(m, n, num_generators);
    g.parts_[0].setIdentity();
    return g;
  }

  static GrassmannMatrix from_body(int m, int n, int num_generators, const Mat<Scalar>& body) {
    GrassmannMatrix g(m, n, num_generators);
    if (body.rows() != m + n || body.cols() != m + n) throw ShapeError("body must be (m+n)x(m+n)");
    g.parts_[0] = body;
    return g;
  }

  template <typename Source>
  static GrassmannMatrix from(const SuperMatrix<Source>& s, int num_generators) {
    return from_body(s.m(), s.n(), num_generators, s.template cast<Scalar>().entries());
  }

  int m() const { return m_; }
  int n() const { return n_; }
  int size() const { return m_ + n_; }
  int num_generators() const { return num_generators_; }

  const Mat<Scalar>& part(Monomial mono) const { return parts_.at(mono); }
  Mat<Scalar>& part(Monomial mono) { return parts_.at(mono); }
  const Mat<Scalar>& body() const { return parts_[0]; }
  const detail::Parts<Scalar>& parts() const { return parts_; }

  GrassmannNumber<Scalar> entry(Eigen::Index i, Eigen::Index j) const {
    GrassmannNumber<Scalar> g(num_generators_);
    for (Monomial k = 0; k < parts_.size(); ++k) g[k] = parts_[k](i, j);
    return g;
  }

  void set_entry(Eigen::Index i, Eigen::Index j, const GrassmannNumber<Scalar>& value) {
    if (value.num_generators() != num_generators_) throw GeneratorCountError("entry has wrong L");
    for (Monomial k = 0; k < parts_.size(); ++k) parts_[k](i, j) = value[k];
  }

  /// Parity read off entries: an even supermatrix has even entries in the
  /// diagonal blocks and odd entries off the diagonal.
  GradeKind grade() const {
    bool even = false, odd = false;
    for (Monomial k = 0; k < parts_.size(); ++k) {
      const Mat<Scalar>& p = parts_[k];
      for (Eigen::Index i = 0; i < p.rows(); ++i) {
        for (Eigen::Index j = 0; j < p.cols(); ++j) {
          if (p(i, j) == Scalar(0)) continue;
          const int total = (degree(k) + bit(position_parity(m_, i, j))) & 1;
          (total ? odd : even) = true;
        }
      }
    }
    if (even && odd) return GradeKind::Mixed;
    return odd ? GradeKind::Odd : GradeKind::Even;
  }

  /// Sum over monomials of the max-row-sum norm of each part.
  Scalar norm() const {
    Scalar s(0);
    for (const auto& p : parts_) s += p.cwiseAbs().rowwise().sum().maxCoeff();
    return s;
  }

  bool all_finite() const {
    for (const auto& p : parts_) {
      if (!p.allFinite()) return false;
    }
    return true;
  }

  /// Largest coefficient difference over all monomials.
  Scalar distance(const GrassmannMatrix& o) const {
    require_shape(o);
    Scalar d(0);
    for (std::size_t k = 0; k < parts_.size(); ++k) {
      d = std::max<Scalar>(d, (parts_[k] - o.parts_[k]).cwiseAbs().maxCoeff());
    }
    return d;
  }

  GrassmannMatrix& operator+=(const GrassmannMatrix& o) {
    require_shape(o);
    for (std::size_t k = 0; k < parts_.size(); ++k) parts_[k] += o.parts_[k];
    return *this;
  }
  GrassmannMatrix& operator-=(const GrassmannMatrix& o) {
    require_shape(o);
    for (std::size_t k = 0; k < parts_.size(); ++k) parts_[k] -= o.parts_[k];
    return *this;
  }
  GrassmannMatrix& operator*=(const Scalar& s) {
    for (auto& p : parts_) p *= s;
    return *this;
  }

  friend GrassmannMatrix operator+(GrassmannMatrix a, const GrassmannMatrix& b) { return a += b; }
  friend GrassmannMatrix operator-(GrassmannMatrix a, const GrassmannMatrix& b) { return a -= b; }
  friend GrassmannMatrix operator*(GrassmannMatrix a, const Scalar& s) { return a *= s; }
  friend GrassmannMatrix operator*(const Scalar& s, GrassmannMatrix a) { return a *= s; }

  friend GrassmannMatrix operator*(const GrassmannMatrix& a, const GrassmannMatrix& b) {
    a.require_shape(b);
    GrassmannMatrix out(a.m_, a.n_, a.num_generators_);
    out.parts_ = detail::parts_product(a.parts_, b.parts_, a.size(), a.size());
    return out;
  }

  /// Entrywise g * M_ij (g on the left).
  friend GrassmannMatrix operator*(const GrassmannNumber<Scalar>& g, const GrassmannMatrix& a) {
    if (g.num_generators() != a.num_generators_) throw GeneratorCountError("scalar has wrong L");
    GrassmannMatrix out(a.m_, a.n_, a.num_generators_);
    for (Monomial i = 0; i < a.parts_.size(); ++i) {
      if (g[i] == Scalar(0)) continue;
      for (Monomial j = 0; j < a.parts_.size(); ++j) {
        const int s = merge_sign(i, j);
        if (s != 0) out.parts_[i | j] += (Scalar(s) * g[i]) * a.parts_[j];
      }
    }
    return out;
  }

  void require_shape(const GrassmannMatrix& o) const {
    if (m_ != o.m_ || n_ != o.n_) throw ShapeError("supermatrix shapes differ");
    if (num_generators_ != o.num_generators_) throw GeneratorCountError("generator count mismatch");
  }

 private:
  int m_;
  int n_;
  int num_generators_;
  detail::Parts<Scalar> parts_;
};

template <typename Scalar>
GrassmannMatrix<Scalar> super_bracket(const GrassmannMatrix<Scalar>& a,
                                      const GrassmannMatrix<Scalar>& b) {
  const Parity pa = require_homogeneous(a.grade(), "left bracket argument");
  const Parity pb = require_homogeneous(b.grade(), "right bracket argument");
  GrassmannMatrix<Scalar> out = a * b;
  if (koszul_sign(pa, pb) > 0) {
    out -= b * a;
  } else {
    out += b * a;
  }
  return out;
}

/// tr(A) - (-1)^{|X|} tr(D).
template <typename Scalar>
GrassmannNumber<Scalar> supertrace(const GrassmannMatrix<Scalar>& x) {
  const Parity p = require_homogeneous(x.grade(), "supertrace argument");
  GrassmannNumber<Scalar> s(x.num_generators());
  for (int i = 0; i < x.size(); ++i) {
    if (i < x.m() || p == Parity::Odd) {
      s += x.entry(i, i);
    } else {
      s -= x.entry(i, i);
    }
  }
  return s;
}

/// Berezinian of an even Grassmann supermatrix with body-invertible D block.
template <typename Scalar>
GrassmannNumber<Scalar> berezinian(const GrassmannMatrix<Scalar>& x) {
  if (x.grade() != GradeKind::Even) throw ParityError("Berezinian needs an even supermatrix");
  const int m = x.m(), n = x.n(), L = x.num_generators();
  const std::size_t slots = x.parts().size();
  auto block = [&](int r0, int c0, int rows, int cols) {
    detail::Parts<Scalar> out(slots);
    for (std::size_t k = 0; k < slots; ++k) out[k] = x.parts()[k].block(r0, c0, rows, cols);
    return out;
  };
  auto to_grid = [&](const detail::Parts<Scalar>& p, int dim) {
    std::vector<std::vector<GrassmannNumber<Scalar>>> g(dim, std::vector<GrassmannNumber<Scalar>>(
                                                                 dim, GrassmannNumber<Scalar>(L)));
    for (int i = 0; i < dim; ++i) {
      for (int j = 0; j < dim; ++j) {
        for (std::size_t k = 0; k < slots; ++k) g[i][j][static_cast<Monomial>(k)] = p[k](i, j);
      }
    }
    return g;
  };

  const detail::Parts<Scalar> d = block(m, m, n, n);
  Eigen::FullPivLU<Mat<Scalar>> lu(d[0]);
  if (n > 0 && !lu.isInvertible()) throw BerezinianUndefinedError("body of the odd-odd block is singular");
  const GrassmannNumber<Scalar> det_d = detail::laplace_det(to_grid(d, n), L);
  if (m == 0) return inverse(det_d);

  // D^{-1} = sum_k (-D0^{-1} N)^k D0^{-1} with N = D - D0 nilpotent.
  detail::Parts<Scalar> d0_inv(slots, Mat<Scalar>::Zero(n, n));
  d0_inv[0] = n > 0 ? Mat<Scalar>(lu.inverse()) : Mat<Scalar>(0, 0);
  detail::Parts<Scalar> step = d;
  step[0].setZero();
  step = detail::parts_product(d0_inv, step, n, n);
  for (auto& p : step) p = -p;
  detail::Parts<Scalar> d_inv = d0_inv;
  detail::Parts<Scalar> power = d0_inv;
  for (int k = 0; k <= L; ++k) {
    power = detail::parts_product(step, power, n, n);
    bool zero = true;
    for (std::size_t s = 0; s < slots; ++s) {
      d_inv[s] += power[s];
      zero = zero && exactly_zero(power[s]);
    }
    if (zero) break;
  }

  detail::Parts<Scalar> schur = block(0, 0, m, m);
  const auto correction = detail::parts_product(
      detail::parts_product(block(0, m, m, n), d_inv, m, n), block(m, 0, n, m), m, m);
  for (std::size_t s = 0; s < slots; ++s) schur[s] -= correction[s];
  return detail::laplace_det(to_grid(schur, m), L) * inverse(det_d);
}

/// exp(tA): scale until the norm is at most 0.5, Taylor series to order 12,
/// then square back up.
template <typename Scalar>
GrassmannMatrix<Scalar> sm_exp(const GrassmannMatrix<Scalar>& a, Scalar t) {
  static_assert(std::is_floating_point_v<Scalar>, "sm_exp is a simulation-mode operation");
  if (!a.all_finite() || !std::isfinite(t)) throw NumericError("non-finite input to sm_exp");
  GrassmannMatrix<Scalar> x = a * t;
  const Scalar nrm = x.norm();
  int squarings = 0;
  if (nrm > Scalar(0.5)) squarings = static_cast<int>(std::ceil(std::log2(nrm / Scalar(0.5))));
  x *= std::ldexp(Scalar(1), -squarings);

  constexpr int kOrder = 12;
  const auto id = GrassmannMatrix<Scalar>::identity(a.m(), a.n(), a.num_generators());
  GrassmannMatrix<Scalar> result = id;
  for (int k = kOrder; k >= 1; --k) {
    result = id + (x * result) * (Scalar(1) / Scalar(k));
  }
  for (int i = 0; i < squarings; ++i) result = result * result;
  if (!result.all_finite()) throw NumericError("sm_exp overflowed");
  return result;
}

/// e^{tA} P e^{-tA}.
template <typename Scalar>
GrassmannMatrix<Scalar> conjugate(const GrassmannMatrix<Scalar>& a, Scalar t,
                                  const GrassmannMatrix<Scalar>& p) {
  return sm_exp(a, t) * p * sm_exp(a, -t);
}

}  // namespace superctl
