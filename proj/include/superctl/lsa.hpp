#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "superctl/linalg.hpp"
#include "superctl/parity.hpp"
#include "superctl/rational.hpp"
#include "superctl/supermatrix.hpp"

namespace superctl {

struct BasisElement {
  std::string name;
  Parity parity = Parity::Even;
};

/// Solves v = sum_k x_k b_k exactly for a fixed independent family b_k.
class CoordinateSolver {
 public:
  CoordinateSolver() = default;
  /// Throws RankError naming the first vector dependent on its predecessors.
  explicit CoordinateSolver(const std::vector<RationalVector>& family);

  std::optional<RationalVector> solve(const RationalVector& v) const;
  Eigen::Index size() const { return count_; }

 private:
  Eigen::Index width_ = 0;
  Eigen::Index count_ = 0;
  RowEchelon<Rational> tagged_;
};

/// Finite-dimensional Lie superalgebra over the rationals.
///
/// Defined by a homogeneous basis and structure constants
/// [e_i, e_j] = sum_k c_ij^k e_k, with an optional matrix realization aligned
/// with the basis. Instances are immutable and shared via shared_ptr.
class LieSuperalgebra {
 public:
  /// constants[i * dim + j] holds the coefficient vector of [e_i, e_j].
  static std::shared_ptr<const LieSuperalgebra> create(
      std::string name, std::vector<BasisElement> basis, std::vector<RationalVector> constants,
      std::optional<std::vector<SuperMatrix<Rational>>> realization = std::nullopt);

  const std::string& name() const { return name_; }
  int dim() const { return static_cast<int>(basis_.size()); }
  GradedDim graded_dim() const { return graded_dim_; }
  const std::vector<BasisElement>& basis() const { return basis_; }
  const BasisElement& basis(int i) const { return basis_.at(i); }
  Parity parity(int i) const { return basis_.at(i).parity; }
  /// Index of a basis element by name; throws UnknownNameError.
  int index_of(const std::string& name) const;

  const RationalVector& constant(int i, int j) const { return constants_.at(i * dim() + j); }
  const std::vector<RationalVector>& constants() const { return constants_; }

  bool has_realization() const { return realization_.has_value(); }
  const std::vector<SuperMatrix<Rational>>& realization() const;
  /// sum_k coeffs_k * realization_k.
  SuperMatrix<Rational> realize(const RationalVector& coeffs) const;
  /// Coordinates of a matrix in the realized basis, if it lies in the span.
  std::optional<RationalVector> coordinates_of(const SuperMatrix<Rational>& a) const;

 private:
  LieSuperalgebra() = default;

  std::string name_;
  std::vector<BasisElement> basis_;
  std::vector<RationalVector> constants_;
  std::optional<std::vector<SuperMatrix<Rational>>> realization_;
  CoordinateSolver solver_;
  GradedDim graded_dim_;
};

using AlgebraPtr = std::shared_ptr<const LieSuperalgebra>;

/// Coefficient vector over an algebra's basis.
class AlgebraElement {
 public:
  AlgebraElement(AlgebraPtr algebra, RationalVector coeffs);

  static AlgebraElement zero(const AlgebraPtr& algebra);
  static AlgebraElement basis(const AlgebraPtr& algebra, int index);
  static AlgebraElement basis(const AlgebraPtr& algebra, const std::string& name);

  const AlgebraPtr& algebra() const { return algebra_; }
  const RationalVector& coeffs() const { return coeffs_; }
  const Rational& operator[](int i) const { return coeffs_(i); }

  bool is_zero() const { return exactly_zero(coeffs_); }
  /// Even, Odd, or Mixed from the support; zero is Even.
  GradeKind grade() const;
  AlgebraElement even_part() const;
  AlgebraElement odd_part() const;

  AlgebraElement& operator+=(const AlgebraElement& o);
  AlgebraElement& operator-=(const AlgebraElement& o);
  friend AlgebraElement operator+(AlgebraElement a, const AlgebraElement& b) { return a += b; }
  friend AlgebraElement operator-(AlgebraElement a, const AlgebraElement& b) { return a -= b; }
  friend AlgebraElement operator*(const Rational& s, const AlgebraElement& a) {
    return AlgebraElement(a.algebra_, s * a.coeffs_);
  }
  friend AlgebraElement operator-(const AlgebraElement& a) { return Rational(-1) * a; }
  friend bool operator==(const AlgebraElement& a, const AlgebraElement& b);

 private:
  AlgebraPtr algebra_;
  RationalVector coeffs_;
};

/// "Y2 - Y1", "1/2*Xi1", "0".
std::string to_string(const AlgebraElement& x);

void require_same_algebra(const AlgebraPtr& a, const AlgebraPtr& b);

/// Bilinear extension of the structure constants.
AlgebraElement bracket(const AlgebraElement& u, const AlgebraElement& v);

/// Subspace of an algebra spanned by homogeneous vectors, kept as separate
/// row-reduced even and odd bases.
class GradedSubspace {
 public:
  explicit GradedSubspace(AlgebraPtr ambient);

  const AlgebraPtr& ambient() const { return ambient_; }
  GradedDim dim() const {
    return {static_cast<int>(even_.rank()), static_cast<int>(odd_.rank())};
  }
  bool is_full() const { return dim() == ambient_->graded_dim(); }

  const RowEchelon<Rational>& even_basis() const { return even_; }
  const RowEchelon<Rational>& odd_basis() const { return odd_; }
  /// Even basis elements followed by odd ones.
  std::vector<AlgebraElement> basis() const;

  bool contains(const AlgebraElement& v) const;
  /// Inserts the homogeneous components of v; returns true if the span grew.
  bool insert(const AlgebraElement& v);

  friend bool operator==(const GradedSubspace& a, const GradedSubspace& b) {
    return a.ambient_ == b.ambient_ && a.even_ == b.even_ && a.odd_ == b.odd_;
  }

 private:
  AlgebraPtr ambient_;
  RowEchelon<Rational> even_;
  RowEchelon<Rational> odd_;
};

/// Linear span; mixed inputs are split into homogeneous components.
GradedSubspace subspace_span(const AlgebraPtr& ambient, const std::vector<AlgebraElement>& vectors);
bool subspace_contains(const GradedSubspace& s, const AlgebraElement& v);

/// Ambient basis elements that are not members of s, in basis order.
std::vector<int> missing_basis_elements(const GradedSubspace& s);

struct AxiomViolation {
  enum class Kind { Grading, Antisymmetry, Jacobi };
  Kind kind;
  int i = -1, j = -1, k = -1;
};

std::string to_string(AxiomViolation::Kind kind);

struct AxiomReport {
  bool grading_ok = true;
  bool antisymmetry_ok = true;
  bool jacobi_ok = true;
  std::vector<AxiomViolation> violations;

  bool ok() const { return grading_ok && antisymmetry_ok && jacobi_ok; }
};

/// Exhaustive exact check of grading compatibility, graded antisymmetry and
/// the graded Jacobi identity over all basis pairs/triples.
AxiomReport check_graded_axioms(const LieSuperalgebra& g);

/// Builds structure constants by solving [e_i, e_j] = sum_k c_ij^k e_k in the
/// span of the given matrices. Parities come from each matrix's declared
/// parity. Throws RankError for a dependent family and NotClosedError naming
/// the first pair whose bracket leaves the span.
AlgebraPtr from_matrix_basis(const std::vector<SuperMatrix<Rational>>& mats,
                             std::vector<std::string> names = {}, std::string name = "matrix");

}  // namespace superctl
