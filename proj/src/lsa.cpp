#include "superctl/lsa.hpp"

#include <algorithm>
#include <utility>

#include "superctl/errors.hpp"

namespace superctl {

namespace {

RationalVector flatten(const SuperMatrix<Rational>& a) {
  RationalVector v(a.size() * a.size());
  for (int i = 0; i < a.size(); ++i) {
    for (int j = 0; j < a.size(); ++j) v(i * a.size() + j) = a(i, j);
  }
  return v;
}

RationalVector mask_parity(const LieSuperalgebra& g, const RationalVector& v, Parity keep) {
  RationalVector out = v;
  for (int i = 0; i < g.dim(); ++i) {
    if (g.parity(i) != keep) out(i) = 0;
  }
  return out;
}

std::string coefficient_prefix(const Rational& c) {
  if (c == 1) return "";
  return to_string(c) + "*";
}

}  // namespace

CoordinateSolver::CoordinateSolver(const std::vector<RationalVector>& family)
    : width_(family.empty() ? 0 : family.front().size()),
      count_(static_cast<Eigen::Index>(family.size())),
      tagged_(width_ + count_) {
  RowEchelon<Rational> plain(width_);
  for (Eigen::Index k = 0; k < count_; ++k) {
    const RationalVector& v = family[k];
    if (v.size() != width_) throw ShapeError("coordinate family has inconsistent widths");
    if (!plain.insert(v)) {
      throw RankError("basis vector " + std::to_string(k) + " depends on the preceding ones");
    }
    RationalVector row = RationalVector::Zero(width_ + count_);
    row.head(width_) = v;
    row(width_ + k) = 1;
    tagged_.insert(row);
  }
}

std::optional<RationalVector> CoordinateSolver::solve(const RationalVector& v) const {
  if (v.size() != width_) throw ShapeError("vector width does not match coordinate family");
  RationalVector padded = RationalVector::Zero(width_ + count_);
  padded.head(width_) = v;
  const RationalVector r = tagged_.residual(padded);
  if (!exactly_zero(r.head(width_))) return std::nullopt;
  return RationalVector(-r.tail(count_));
}

std::shared_ptr<const LieSuperalgebra> LieSuperalgebra::create(
    std::string name, std::vector<BasisElement> basis, std::vector<RationalVector> constants,
    std::optional<std::vector<SuperMatrix<Rational>>> realization) {
  auto g = std::shared_ptr<LieSuperalgebra>(new LieSuperalgebra());
  const int dim = static_cast<int>(basis.size());
  if (constants.size() != static_cast<std::size_t>(dim) * dim) {
    throw ShapeError("structure constants must have dim^2 entries");
  }
  for (const auto& c : constants) {
    if (c.size() != dim) throw ShapeError("structure constant vector has wrong length");
  }
  for (std::size_t i = 0; i < basis.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      if (basis[i].name == basis[j].name) throw ShapeError("duplicate basis name " + basis[i].name);
    }
  }
  g->name_ = std::move(name);
  g->basis_ = std::move(basis);
  g->constants_ = std::move(constants);
  for (const auto& b : g->basis_) (b.parity == Parity::Even ? g->graded_dim_.even : g->graded_dim_.odd)++;

  if (realization) {
    if (static_cast<int>(realization->size()) != dim) {
      throw ShapeError("realization must have one matrix per basis element");
    }
    std::vector<RationalVector> flat;
    for (int k = 0; k < dim; ++k) {
      const auto& a = (*realization)[k];
      a.require_shape(realization->front());
      if (a.parity() != to_grade(g->basis_[k].parity)) {
        throw ParityError("realization of " + g->basis_[k].name + " has the wrong parity");
      }
      flat.push_back(flatten(a));
    }
    g->solver_ = CoordinateSolver(flat);
    g->realization_ = std::move(realization);
  }
  return g;
}

int LieSuperalgebra::index_of(const std::string& name) const {
  for (int i = 0; i < dim(); ++i) {
    if (basis_[i].name == name) return i;
  }
  throw UnknownNameError("no basis element named '" + name + "' in " + name_);
}

const std::vector<SuperMatrix<Rational>>& LieSuperalgebra::realization() const {
  if (!realization_) throw PreconditionError(name_ + " has no matrix realization");
  return *realization_;
}

SuperMatrix<Rational> LieSuperalgebra::realize(const RationalVector& coeffs) const {
  const auto& mats = realization();
  if (coeffs.size() != dim()) throw ShapeError("coefficient vector has wrong length");
  RationalMatrix sum = RationalMatrix::Zero(mats.front().size(), mats.front().size());
  bool has_even = false, has_odd = false;
  for (int k = 0; k < dim(); ++k) {
    if (coeffs(k) == 0) continue;
    sum += coeffs(k) * mats[k].entries();
    (parity(k) == Parity::Even ? has_even : has_odd) = true;
  }
  GradeKind grade = GradeKind::Even;
  if (has_even && has_odd) {
    grade = GradeKind::Mixed;
  } else if (has_odd) {
    grade = GradeKind::Odd;
  }
  return SuperMatrix<Rational>(mats.front().m(), mats.front().n(), std::move(sum), grade);
}

std::optional<RationalVector> LieSuperalgebra::coordinates_of(const SuperMatrix<Rational>& a) const {
  a.require_shape(realization().front());
  return solver_.solve(flatten(a));
}

AlgebraElement::AlgebraElement(AlgebraPtr algebra, RationalVector coeffs)
    : algebra_(std::move(algebra)), coeffs_(std::move(coeffs)) {
  if (!algebra_) throw PreconditionError("algebra element without an algebra");
  if (coeffs_.size() != algebra_->dim()) throw ShapeError("coefficient vector has wrong length");
}

AlgebraElement AlgebraElement::zero(const AlgebraPtr& algebra) {
  return AlgebraElement(algebra, RationalVector::Zero(algebra->dim()));
}

AlgebraElement AlgebraElement::basis(const AlgebraPtr& algebra, int index) {
  if (index < 0 || index >= algebra->dim()) throw ShapeError("basis index out of range");
  RationalVector v = RationalVector::Zero(algebra->dim());
  v(index) = 1;
  return AlgebraElement(algebra, std::move(v));
}

AlgebraElement AlgebraElement::basis(const AlgebraPtr& algebra, const std::string& name) {
  return basis(algebra, algebra->index_of(name));
}

GradeKind AlgebraElement::grade() const {
  bool has_even = false, has_odd = false;
  for (int i = 0; i < coeffs_.size(); ++i) {
    if (coeffs_(i) == 0) continue;
    (algebra_->parity(i) == Parity::Even ? has_even : has_odd) = true;
  }
  if (has_even && has_odd) return GradeKind::Mixed;
  return has_odd ? GradeKind::Odd : GradeKind::Even;
}

AlgebraElement AlgebraElement::even_part() const {
  return AlgebraElement(algebra_, mask_parity(*algebra_, coeffs_, Parity::Even));
}

AlgebraElement AlgebraElement::odd_part() const {
  return AlgebraElement(algebra_, mask_parity(*algebra_, coeffs_, Parity::Odd));
}

AlgebraElement& AlgebraElement::operator+=(const AlgebraElement& o) {
  require_same_algebra(algebra_, o.algebra_);
  coeffs_ += o.coeffs_;
  return *this;
}

AlgebraElement& AlgebraElement::operator-=(const AlgebraElement& o) {
  require_same_algebra(algebra_, o.algebra_);
  coeffs_ -= o.coeffs_;
  return *this;
}

bool operator==(const AlgebraElement& a, const AlgebraElement& b) {
  return a.algebra_ == b.algebra_ && a.coeffs_ == b.coeffs_;
}

std::string to_string(const AlgebraElement& x) {
  std::string out;
  for (int k = 0; k < x.coeffs().size(); ++k) {
    Rational c = x[k];
    if (c == 0) continue;
    const bool negative = c < 0;
    if (negative) c = -c;
    if (out.empty()) {
      out += negative ? "-" : "";
    } else {
      out += negative ? " - " : " + ";
    }
    out += coefficient_prefix(c) + x.algebra()->basis(k).name;
  }
  return out.empty() ? "0" : out;
}

void require_same_algebra(const AlgebraPtr& a, const AlgebraPtr& b) {
  if (a != b) throw AlgebraMismatchError("elements belong to different algebras");
}

AlgebraElement bracket(const AlgebraElement& u, const AlgebraElement& v) {
  require_same_algebra(u.algebra(), v.algebra());
  const LieSuperalgebra& g = *u.algebra();
  RationalVector out = RationalVector::Zero(g.dim());
  for (int i = 0; i < g.dim(); ++i) {
    if (u[i] == 0) continue;
    for (int j = 0; j < g.dim(); ++j) {
      if (v[j] == 0) continue;
      const RationalVector& c = g.constant(i, j);
      if (exactly_zero(c)) continue;
      out += (u[i] * v[j]) * c;
    }
  }
  return AlgebraElement(u.algebra(), std::move(out));
}

GradedSubspace::GradedSubspace(AlgebraPtr ambient)
    : ambient_(std::move(ambient)), even_(ambient_->dim()), odd_(ambient_->dim()) {}

std::vector<AlgebraElement> GradedSubspace::basis() const {
  std::vector<AlgebraElement> out;
  for (const auto* e : {&even_, &odd_}) {
    for (Eigen::Index r = 0; r < e->rank(); ++r) {
      out.emplace_back(ambient_, RationalVector(e->rows().row(r).transpose()));
    }
  }
  return out;
}

bool GradedSubspace::contains(const AlgebraElement& v) const {
  require_same_algebra(ambient_, v.algebra());
  return even_.contains(v.even_part().coeffs()) && odd_.contains(v.odd_part().coeffs());
}

bool GradedSubspace::insert(const AlgebraElement& v) {
  require_same_algebra(ambient_, v.algebra());
  const bool grew_even = even_.insert(v.even_part().coeffs());
  const bool grew_odd = odd_.insert(v.odd_part().coeffs());
  return grew_even || grew_odd;
}

GradedSubspace subspace_span(const AlgebraPtr& ambient, const std::vector<AlgebraElement>& vectors) {
  GradedSubspace s(ambient);
  for (const auto& v : vectors) s.insert(v);
  return s;
}

bool subspace_contains(const GradedSubspace& s, const AlgebraElement& v) { return s.contains(v); }

std::vector<int> missing_basis_elements(const GradedSubspace& s) {
  std::vector<int> out;
  for (int k = 0; k < s.ambient()->dim(); ++k) {
    if (!s.contains(AlgebraElement::basis(s.ambient(), k))) out.push_back(k);
  }
  return out;
}

std::string to_string(AxiomViolation::Kind kind) {
  switch (kind) {
    case AxiomViolation::Kind::Grading:
      return "grading";
    case AxiomViolation::Kind::Antisymmetry:
      return "antisymmetry";
    default:
      return "jacobi";
  }
}

AxiomReport check_graded_axioms(const LieSuperalgebra& g) {
  AxiomReport report;
  const int dim = g.dim();

  // Sparse copy of the constants: nonzero (k, c) per pair.
  std::vector<std::vector<std::pair<int, Rational>>> sparse(static_cast<std::size_t>(dim) * dim);
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j < dim; ++j) {
      const RationalVector& c = g.constant(i, j);
      for (int k = 0; k < dim; ++k) {
        if (c(k) != 0) sparse[i * dim + j].emplace_back(k, c(k));
      }
    }
  }

  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j < dim; ++j) {
      const int sign = koszul_sign(g.parity(i), g.parity(j));
      for (int k = 0; k < dim; ++k) {
        const Rational& c = g.constant(i, j)(k);
        if (c != 0 && g.parity(k) != g.parity(i) + g.parity(j)) {
          report.grading_ok = false;
          report.violations.push_back({AxiomViolation::Kind::Grading, i, j, k});
        }
      }
      if (j >= i && g.constant(i, j) != -Rational(sign) * g.constant(j, i)) {
        report.antisymmetry_ok = false;
        report.violations.push_back({AxiomViolation::Kind::Antisymmetry, i, j, -1});
      }
    }
  }

  // [a,[b,c]] with a a basis index and the inner bracket given sparsely.
  auto nested = [&](int a, int b, int c, RationalVector& acc, const Rational& sign) {
    for (const auto& [k, c1] : sparse[b * dim + c]) {
      for (const auto& [l, c2] : sparse[a * dim + k]) acc(l) += sign * c1 * c2;
    }
  };
  RationalVector acc(dim);
  for (int a = 0; a < dim; ++a) {
    for (int b = 0; b < dim; ++b) {
      for (int c = 0; c < dim; ++c) {
        acc.setZero();
        nested(a, b, c, acc, Rational(koszul_sign(g.parity(a), g.parity(c))));
        nested(b, c, a, acc, Rational(koszul_sign(g.parity(b), g.parity(a))));
        nested(c, a, b, acc, Rational(koszul_sign(g.parity(c), g.parity(b))));
        if (!exactly_zero(acc)) {
          report.jacobi_ok = false;
          report.violations.push_back({AxiomViolation::Kind::Jacobi, a, b, c});
        }
      }
    }
  }
  return report;
}

AlgebraPtr from_matrix_basis(const std::vector<SuperMatrix<Rational>>& mats,
                             std::vector<std::string> names, std::string name) {
  const int dim = static_cast<int>(mats.size());
  if (dim == 0) throw ShapeError("from_matrix_basis needs at least one matrix");
  if (names.empty()) {
    for (int k = 0; k < dim; ++k) names.push_back("e" + std::to_string(k + 1));
  }
  if (static_cast<int>(names.size()) != dim) throw ShapeError("one name per matrix required");
  std::vector<BasisElement> basis;
  std::vector<RationalVector> flat;
  for (int k = 0; k < dim; ++k) {
    basis.push_back({names[k], require_homogeneous(mats[k].parity(), names[k].c_str())});
    if (k > 0) mats[k].require_shape(mats.front());
    flat.push_back(flatten(mats[k]));
  }
  const CoordinateSolver solver(flat);

  std::vector<RationalVector> constants(static_cast<std::size_t>(dim) * dim);
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j < dim; ++j) {
      auto coords = solver.solve(flatten(super_bracket(mats[i], mats[j])));
      if (!coords) {
        throw NotClosedError("[" + names[i] + ", " + names[j] + "] is outside the span");
      }
      constants[i * dim + j] = std::move(*coords);
    }
  }
  return LieSuperalgebra::create(std::move(name), std::move(basis), std::move(constants), mats);
}

}  // namespace superctl
