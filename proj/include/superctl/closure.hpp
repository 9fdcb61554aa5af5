#pragma once

#include <string>
#include <vector>

#include "superctl/lsa.hpp"

namespace superctl {

/// The action v -> [X, v] of a drift X on an algebra, as a matrix whose column
/// k holds the coordinates of [X, e_k].
///
/// X may be an element of the algebra or a matrix outside it whose bracket
/// preserves the realized span (e.g. diag(2,1) acting on sl(1|1)).
class AdOperator {
 public:
  static AdOperator from_element(const AlgebraElement& x);
  /// Throws NotInvariantError naming the first basis element e_k with
  /// super_bracket(a, e_k) outside the realized span.
  static AdOperator from_matrix(const AlgebraPtr& algebra, const SuperMatrix<Rational>& a);
  static AdOperator zero(const AlgebraPtr& algebra);
  /// A homogeneous derivation given directly by its matrix in basis
  /// coordinates (e.g. a linear drift on an abelian algebra). Throws
  /// ParityError if it is not homogeneous and PreconditionError if it breaks
  /// the graded Leibniz rule.
  static AdOperator from_derivation(const AlgebraPtr& algebra, RationalMatrix matrix,
                                    std::string label = "derivation");

  const AlgebraPtr& algebra() const { return algebra_; }
  const RationalMatrix& matrix() const { return matrix_; }
  Parity parity() const { return parity_; }
  bool is_zero() const { return exactly_zero(matrix_); }
  const std::string& label() const { return label_; }

  AlgebraElement apply(const AlgebraElement& v) const;

 private:
  AdOperator(AlgebraPtr algebra, RationalMatrix matrix, Parity parity, std::string label);

  AlgebraPtr algebra_;
  RationalMatrix matrix_;
  Parity parity_;
  std::string label_;
};

/// ad(X)^times (v); times = 0 returns v.
AlgebraElement ad_apply(const AdOperator& x, const AlgebraElement& v, int times);
AlgebraElement ad_apply(const AlgebraElement& x, const AlgebraElement& v, int times);

/// Smallest bracket-closed subspace containing the generators.
GradedSubspace lsa_span(const AlgebraPtr& ambient, const std::vector<AlgebraElement>& gens);

bool is_bracket_closed(const GradedSubspace& s);
bool is_ad_invariant(const AdOperator& x, const GradedSubspace& s);

/// {ad^i(X)(g) : g in gens, 0 <= i <= max_power}, ordered by power then generator.
std::vector<AlgebraElement> ad_orbit(const AdOperator& x, const std::vector<AlgebraElement>& gens,
                                     int max_power);

struct HullStep {
  enum class Kind { Initial, Ad, Closure };
  Kind kind = Kind::Initial;
  int index = 0;
  /// Elements that enlarged the span at this step.
  std::vector<AlgebraElement> added;
  GradedDim dim;
};

std::string to_string(HullStep::Kind kind);

struct HullTrace {
  std::vector<HullStep> steps;
  /// Index of the last step that enlarged the span (p).
  int terminated_at = 0;
};

struct HullResult {
  GradedSubspace hull;
  HullTrace trace;
};

/// <X|h>: runs h_i = h_{i-1} + ad^i(X)(h) until the dimension stops growing,
/// then closes under the bracket, repeating until both are stable.
/// Throws PreconditionError if h is not bracket-closed.
HullResult ad_hull(const AdOperator& x, const GradedSubspace& h);
HullResult ad_hull(const AlgebraElement& x, const GradedSubspace& h);

/// Checks that brackets of dynamics elements X + sum u_i c_i land in the hull:
/// [c_i, c_j] and [X, c_i] are members for every pair.
bool bracket_containment_check(const AdOperator& x, const std::vector<AlgebraElement>& controls,
                               const GradedSubspace& hull);

}  // namespace superctl
