#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "superctl/errors.hpp"
#include "superctl/parity.hpp"

namespace superctl {

/// Largest generator count accepted; coefficients are stored densely (2^L slots).
inline constexpr int kMaxGenerators = 20;

/// A generator monomial xi_{i1} ... xi_{ik} with i1 < ... < ik, encoded as a bit
/// set: bit (i - 1) is set iff xi_i occurs.
using Monomial = std::uint32_t;

inline int degree(Monomial m) { return std::popcount(m); }

/// Sign of xi_I * xi_J after sorting into increasing order; 0 if I and J overlap.
inline int merge_sign(Monomial lhs, Monomial rhs) {
  if (lhs & rhs) return 0;
  int inversions = 0;
  for (Monomial r = rhs; r != 0; r &= r - 1) {
    const int j = std::countr_zero(r);
    const Monomial above = j >= 31 ? 0u : ~((Monomial{2} << j) - 1);
    inversions += std::popcount(lhs & above);
  }
  return (inversions & 1) ? -1 : 1;
}

/// Generator indices (1-based) of a monomial, increasing.
inline std::vector<int> indices_of(Monomial m) {
  std::vector<int> out;
  for (; m != 0; m &= m - 1) out.push_back(std::countr_zero(m) + 1);
  return out;
}

/// Builds a monomial from 1-based indices; they must be strictly increasing.
inline Monomial monomial_of(const std::vector<int>& indices, int num_generators) {
  Monomial m = 0;
  int last = 0;
  for (int i : indices) {
    if (i <= last || i > num_generators) {
      throw GeneratorCountError("monomial indices must be strictly increasing within 1.." +
                                std::to_string(num_generators));
    }
    m |= Monomial{1} << (i - 1);
    last = i;
  }
  return m;
}

namespace detail {
inline void check_generator_count(int num_generators) {
  if (num_generators < 0 || num_generators > kMaxGenerators) {
    throw GeneratorCountError("generator count " + std::to_string(num_generators) +
                              " outside 0.." + std::to_string(kMaxGenerators));
  }
}

template <typename Scalar>
std::string scalar_string(const Scalar& s) {
  std::ostringstream os;
  os << s;
  return os.str();
}
}  // namespace detail

/// Element of the real Grassmann algebra on L anticommuting generators.
///
/// Coefficients live in a dense array indexed by Monomial, so the
/// representation is canonical: two numbers are equal iff their arrays are.
template <typename Scalar>
class GrassmannNumber {
 public:
  explicit GrassmannNumber(int num_generators = 0)
      : num_generators_(num_generators), coeffs_(slots(num_generators), Scalar(0)) {}

  static GrassmannNumber constant(int num_generators, const Scalar& value) {
    GrassmannNumber g(num_generators);
    g.coeffs_[0] = value;
    return g;
  }

  /// value * xi_index (1-based).
  static GrassmannNumber generator(int num_generators, int index, const Scalar& value = Scalar(1)) {
    return monomial(num_generators, {index}, value);
  }

  static GrassmannNumber monomial(int num_generators, const std::vector<int>& indices,
                                  const Scalar& value = Scalar(1)) {
    GrassmannNumber g(num_generators);
    g.coeffs_[monomial_of(indices, num_generators)] = value;
    return g;
  }

  int num_generators() const { return num_generators_; }
  std::size_t size() const { return coeffs_.size(); }

  const Scalar& operator[](Monomial m) const { return coeffs_[m]; }
  Scalar& operator[](Monomial m) { return coeffs_[m]; }

  Scalar coefficient(const std::vector<int>& indices) const {
    return coeffs_[monomial_of(indices, num_generators_)];
  }

  /// Nonzero terms in (degree, index) order.
  std::vector<std::pair<Monomial, Scalar>> terms() const {
    std::vector<std::pair<Monomial, Scalar>> out;
    for (Monomial m = 0; m < coeffs_.size(); ++m) {
      if (coeffs_[m] != Scalar(0)) out.emplace_back(m, coeffs_[m]);
    }
    std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
      if (degree(a.first) != degree(b.first)) return degree(a.first) < degree(b.first);
      return indices_of(a.first) < indices_of(b.first);
    });
    return out;
  }

  const Scalar& body() const { return coeffs_[0]; }

  GrassmannNumber soul() const {
    GrassmannNumber s = *this;
    s.coeffs_[0] = Scalar(0);
    return s;
  }

  bool is_zero() const {
    return std::all_of(coeffs_.begin(), coeffs_.end(), [](const Scalar& c) { return c == Scalar(0); });
  }

  GradeKind grade() const {
    bool has_even = false, has_odd = false;
    for (Monomial m = 0; m < coeffs_.size(); ++m) {
      if (coeffs_[m] == Scalar(0)) continue;
      (degree(m) & 1 ? has_odd : has_even) = true;
    }
    if (has_even && has_odd) return GradeKind::Mixed;
    return has_odd ? GradeKind::Odd : GradeKind::Even;
  }

  GrassmannNumber& operator+=(const GrassmannNumber& rhs) {
    require_same(rhs);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += rhs.coeffs_[i];
    return *this;
  }
  GrassmannNumber& operator-=(const GrassmannNumber& rhs) {
    require_same(rhs);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= rhs.coeffs_[i];
    return *this;
  }
  GrassmannNumber& operator*=(const Scalar& s) {
    for (auto& c : coeffs_) c *= s;
    return *this;
  }

  friend GrassmannNumber operator+(GrassmannNumber a, const GrassmannNumber& b) { return a += b; }
  friend GrassmannNumber operator-(GrassmannNumber a, const GrassmannNumber& b) { return a -= b; }
  friend GrassmannNumber operator-(GrassmannNumber a) {
    for (auto& c : a.coeffs_) c = -c;
    return a;
  }
  friend GrassmannNumber operator*(GrassmannNumber a, const Scalar& s) { return a *= s; }
  friend GrassmannNumber operator*(const Scalar& s, GrassmannNumber a) { return a *= s; }

  friend GrassmannNumber operator*(const GrassmannNumber& a, const GrassmannNumber& b) {
    a.require_same(b);
    GrassmannNumber out(a.num_generators_);
    const auto n = static_cast<Monomial>(a.coeffs_.size());
    for (Monomial i = 0; i < n; ++i) {
      if (a.coeffs_[i] == Scalar(0)) continue;
      for (Monomial j = 0; j < n; ++j) {
        if ((i & j) || b.coeffs_[j] == Scalar(0)) continue;
        const Scalar term = a.coeffs_[i] * b.coeffs_[j];
        if (merge_sign(i, j) > 0) {
          out.coeffs_[i | j] += term;
        } else {
          out.coeffs_[i | j] -= term;
        }
      }
    }
    return out;
  }

  friend bool operator==(const GrassmannNumber& a, const GrassmannNumber& b) {
    return a.num_generators_ == b.num_generators_ && a.coeffs_ == b.coeffs_;
  }

 private:
  static std::size_t slots(int num_generators) {
    detail::check_generator_count(num_generators);
    return std::size_t{1} << num_generators;
  }

  void require_same(const GrassmannNumber& other) const {
    if (other.num_generators_ != num_generators_) {
      throw GeneratorCountError("generator count mismatch: " + std::to_string(num_generators_) +
                                " vs " + std::to_string(other.num_generators_));
    }
  }

  int num_generators_;
  std::vector<Scalar> coeffs_;
};

template <typename Scalar>
GrassmannNumber<Scalar> g_mul(const GrassmannNumber<Scalar>& a, const GrassmannNumber<Scalar>& b) {
  return a * b;
}

template <typename Scalar>
GrassmannNumber<Scalar> g_add(const GrassmannNumber<Scalar>& a, const GrassmannNumber<Scalar>& b) {
  return a + b;
}

template <typename Scalar>
Scalar body(const GrassmannNumber<Scalar>& a) {
  return a.body();
}

/// Even, Odd, or Mixed. Zero counts as Even.
template <typename Scalar>
GradeKind parity_of(const GrassmannNumber<Scalar>& a) {
  return a.grade();
}

/// Inverse of a body-invertible element: b^{-1} sum_k (-s/b)^k, which terminates
/// because the soul s is nilpotent.
template <typename Scalar>
GrassmannNumber<Scalar> inverse(const GrassmannNumber<Scalar>& a) {
  if (a.body() == Scalar(0)) throw NumericError("Grassmann number with zero body is not invertible");
  const int L = a.num_generators();
  const Scalar inv_body = Scalar(1) / a.body();
  const GrassmannNumber<Scalar> x = -(a.soul() * inv_body);
  GrassmannNumber<Scalar> sum = GrassmannNumber<Scalar>::constant(L, Scalar(1));
  GrassmannNumber<Scalar> power = sum;
  for (int k = 1; k <= L; ++k) {
    power = power * x;
    if (power.is_zero()) break;
    sum += power;
  }
  return sum * inv_body;
}

/// `3 + 2*x1^x2` style text.
template <typename Scalar>
std::string to_string(const GrassmannNumber<Scalar>& a) {
  const auto terms = a.terms();
  if (terms.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [m, c] : terms) {
    std::string coeff = detail::scalar_string(c);
    const bool negative = !coeff.empty() && coeff.front() == '-';
    if (negative) coeff.erase(0, 1);
    if (first) {
      out += negative ? "-" : "";
    } else {
      out += negative ? " - " : " + ";
    }
    first = false;
    std::string mono;
    for (int i : indices_of(m)) {
      if (!mono.empty()) mono += '^';
      mono += "x" + std::to_string(i);
    }
    if (mono.empty()) {
      out += coeff;
    } else if (coeff == "1") {
      out += mono;
    } else {
      out += coeff + "*" + mono;
    }
  }
  return out;
}

/// Point of R_S^{m|n}: m even coordinates followed by n odd coordinates.
template <typename Scalar>
class SuperPoint {
 public:
  SuperPoint(std::vector<GrassmannNumber<Scalar>> even_coords,
             std::vector<GrassmannNumber<Scalar>> odd_coords)
      : even_(std::move(even_coords)), odd_(std::move(odd_coords)) {
    for (std::size_t i = 0; i < even_.size(); ++i) {
      if (even_[i].grade() != GradeKind::Even) {
        throw ParityError("even coordinate " + std::to_string(i) + " is not even");
      }
    }
    for (std::size_t i = 0; i < odd_.size(); ++i) {
      if (odd_[i].grade() != GradeKind::Odd && !odd_[i].is_zero()) {
        throw ParityError("odd coordinate " + std::to_string(i) + " is not odd");
      }
    }
    const int L = num_generators();
    for (const auto* coords : {&even_, &odd_}) {
      for (const auto& c : *coords) {
        if (c.num_generators() != L) throw GeneratorCountError("SuperPoint coordinates disagree on L");
      }
    }
  }

  int m() const { return static_cast<int>(even_.size()); }
  int n() const { return static_cast<int>(odd_.size()); }
  int num_generators() const {
    if (!even_.empty()) return even_.front().num_generators();
    if (!odd_.empty()) return odd_.front().num_generators();
    return 0;
  }
  const std::vector<GrassmannNumber<Scalar>>& even_coords() const { return even_; }
  const std::vector<GrassmannNumber<Scalar>>& odd_coords() const { return odd_; }

  /// Coordinate i of the concatenation (even..., odd...).
  const GrassmannNumber<Scalar>& coord(int i) const { return i < m() ? even_[i] : odd_[i - m()]; }

 private:
  std::vector<GrassmannNumber<Scalar>> even_;
  std::vector<GrassmannNumber<Scalar>> odd_;
};

/// Body of every even coordinate; odd coordinates have no body and are dropped.
template <typename Scalar>
std::vector<Scalar> body_point(const SuperPoint<Scalar>& p) {
  std::vector<Scalar> out;
  out.reserve(p.even_coords().size());
  for (const auto& x : p.even_coords()) out.push_back(x.body());
  return out;
}

}  // namespace superctl
