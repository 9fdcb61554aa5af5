#include "superctl/closure.hpp"

#include <deque>
#include <utility>

#include "superctl/errors.hpp"

namespace superctl {

AdOperator::AdOperator(AlgebraPtr algebra, RationalMatrix matrix, Parity parity, std::string label)
    : algebra_(std::move(algebra)), matrix_(std::move(matrix)), parity_(parity), label_(std::move(label)) {}

AdOperator AdOperator::from_element(const AlgebraElement& x) {
  const AlgebraPtr& g = x.algebra();
  const Parity parity = require_homogeneous(x.grade(), "drift element");
  RationalMatrix m(g->dim(), g->dim());
  for (int k = 0; k < g->dim(); ++k) {
    m.col(k) = bracket(x, AlgebraElement::basis(g, k)).coeffs();
  }
  return AdOperator(g, std::move(m), parity, to_string(x));
}

AdOperator AdOperator::from_matrix(const AlgebraPtr& algebra, const SuperMatrix<Rational>& a) {
  const Parity parity = require_homogeneous(a.parity(), "drift matrix");
  const auto& mats = algebra->realization();
  RationalMatrix m(algebra->dim(), algebra->dim());
  for (int k = 0; k < algebra->dim(); ++k) {
    const auto coords = algebra->coordinates_of(super_bracket(a, mats[k]));
    if (!coords) {
      throw NotInvariantError("[A, " + algebra->basis(k).name + "] leaves " + algebra->name());
    }
    m.col(k) = *coords;
  }
  return AdOperator(algebra, std::move(m), parity, "matrix");
}

AdOperator AdOperator::zero(const AlgebraPtr& algebra) {
  return AdOperator(algebra, RationalMatrix::Zero(algebra->dim(), algebra->dim()), Parity::Even, "0");
}

AdOperator AdOperator::from_derivation(const AlgebraPtr& algebra, RationalMatrix matrix,
                                       std::string label) {
  const int dim = algebra->dim();
  if (matrix.rows() != dim || matrix.cols() != dim) throw ShapeError("derivation must be dim x dim");
  bool keeps = false, swaps = false;
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j < dim; ++j) {
      if (matrix(i, j) == Rational(0)) continue;
      (algebra->parity(i) == algebra->parity(j) ? keeps : swaps) = true;
    }
  }
  if (keeps && swaps) throw ParityError("derivation is not homogeneous");
  AdOperator d(algebra, std::move(matrix), swaps ? Parity::Odd : Parity::Even, std::move(label));
  // D[x, y] = [Dx, y] + (-1)^{|D||x|} [x, Dy] on basis pairs.
  for (int i = 0; i < dim; ++i) {
    const AlgebraElement x = AlgebraElement::basis(algebra, i);
    for (int j = 0; j < dim; ++j) {
      const AlgebraElement y = AlgebraElement::basis(algebra, j);
      AlgebraElement rhs = bracket(d.apply(x), y);
      const AlgebraElement second = bracket(x, d.apply(y));
      rhs = koszul_sign(d.parity(), algebra->parity(i)) > 0 ? rhs + second : rhs - second;
      if (!(d.apply(bracket(x, y)) == rhs)) {
        throw PreconditionError("matrix is not a derivation at (" + algebra->basis(i).name + ", " +
                                algebra->basis(j).name + ")");
      }
    }
  }
  return d;
}

AlgebraElement AdOperator::apply(const AlgebraElement& v) const {
  require_same_algebra(algebra_, v.algebra());
  return AlgebraElement(algebra_, matrix_ * v.coeffs());
}

AlgebraElement ad_apply(const AdOperator& x, const AlgebraElement& v, int times) {
  if (times < 0) throw PreconditionError("ad power must be non-negative");
  AlgebraElement out = v;
  for (int i = 0; i < times; ++i) out = x.apply(out);
  return out;
}

AlgebraElement ad_apply(const AlgebraElement& x, const AlgebraElement& v, int times) {
  return ad_apply(AdOperator::from_element(x), v, times);
}

GradedSubspace lsa_span(const AlgebraPtr& ambient, const std::vector<AlgebraElement>& gens) {
  GradedSubspace span(ambient);
  std::vector<AlgebraElement> accepted;
  std::deque<AlgebraElement> pending;
  for (const auto& g : gens) {
    require_same_algebra(ambient, g.algebra());
    for (const auto& part : {g.even_part(), g.odd_part()}) {
      if (span.insert(part)) pending.push_back(part);
    }
  }
  while (!pending.empty()) {
    AlgebraElement v = std::move(pending.front());
    pending.pop_front();
    accepted.push_back(v);
    for (const auto& w : accepted) {
      AlgebraElement b = bracket(w, v);
      if (span.insert(b)) pending.push_back(std::move(b));
    }
  }
  return span;
}

bool is_bracket_closed(const GradedSubspace& s) {
  const auto basis = s.basis();
  for (std::size_t i = 0; i < basis.size(); ++i) {
    for (std::size_t j = i; j < basis.size(); ++j) {
      if (!s.contains(bracket(basis[i], basis[j]))) return false;
    }
  }
  return true;
}

bool is_ad_invariant(const AdOperator& x, const GradedSubspace& s) {
  for (const auto& v : s.basis()) {
    if (!s.contains(x.apply(v))) return false;
  }
  return true;
}

std::vector<AlgebraElement> ad_orbit(const AdOperator& x, const std::vector<AlgebraElement>& gens,
                                     int max_power) {
  std::vector<AlgebraElement> out = gens;
  std::vector<AlgebraElement> current = gens;
  for (int i = 1; i <= max_power; ++i) {
    for (auto& v : current) v = x.apply(v);
    out.insert(out.end(), current.begin(), current.end());
  }
  return out;
}

std::string to_string(HullStep::Kind kind) {
  switch (kind) {
    case HullStep::Kind::Initial:
      return "initial";
    case HullStep::Kind::Ad:
      return "ad";
    default:
      return "closure";
  }
}

HullResult ad_hull(const AdOperator& x, const GradedSubspace& h) {
  require_same_algebra(x.algebra(), h.ambient());
  if (!is_bracket_closed(h)) throw PreconditionError("ad_hull needs a bracket-closed subspace");

  HullResult result{h, {}};
  GradedSubspace& span = result.hull;
  HullTrace& trace = result.trace;
  trace.steps.push_back({HullStep::Kind::Initial, 0, h.basis(), h.dim()});

  int index = 0;
  std::vector<AlgebraElement> generators = h.basis();
  while (true) {
    // h_i = h_{i-1} + ad^i(X)(h) until a step adds nothing.
    std::vector<AlgebraElement> current = generators;
    while (true) {
      for (auto& v : current) v = x.apply(v);
      HullStep step{HullStep::Kind::Ad, ++index, {}, {}};
      for (const auto& v : current) {
        if (span.insert(v)) step.added.push_back(v);
      }
      step.dim = span.dim();
      const bool grew = !step.added.empty();
      trace.steps.push_back(std::move(step));
      if (!grew) break;
      trace.terminated_at = index;
    }
    trace.steps.pop_back();
    --index;

    const GradedSubspace closed = lsa_span(span.ambient(), span.basis());
    if (closed.dim() == span.dim()) break;
    HullStep step{HullStep::Kind::Closure, ++index, {}, closed.dim()};
    for (const auto& v : closed.basis()) {
      if (span.insert(v)) step.added.push_back(v);
    }
    trace.steps.push_back(std::move(step));
    trace.terminated_at = index;
    generators = span.basis();
  }
  return result;
}

HullResult ad_hull(const AlgebraElement& x, const GradedSubspace& h) {
  return ad_hull(AdOperator::from_element(x), h);
}

bool bracket_containment_check(const AdOperator& x, const std::vector<AlgebraElement>& controls,
                               const GradedSubspace& hull) {
  for (std::size_t i = 0; i < controls.size(); ++i) {
    if (!hull.contains(x.apply(controls[i]))) return false;
    for (std::size_t j = i; j < controls.size(); ++j) {
      if (!hull.contains(bracket(controls[i], controls[j]))) return false;
    }
  }
  return true;
}

}  // namespace superctl
