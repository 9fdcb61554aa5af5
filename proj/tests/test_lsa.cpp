#include <doctest.h>

#include <random>

#include "helpers.hpp"

using namespace superctl;
using namespace testing_support;
using SM = SuperMatrix<Rational>;

namespace {

AlgebraElement el(const AlgebraPtr& g, const std::string& name) { return AlgebraElement::basis(g, name); }

}  // namespace

TEST_CASE("bracket examples") {
  const AlgebraPtr sl11 = load("sl(1|1)").algebra;
  CHECK(bracket(el(sl11, "Xi1"), el(sl11, "Xi2")) == el(sl11, "Y1"));
  CHECK(bracket(el(sl11, "Xi2"), el(sl11, "Xi1")) == el(sl11, "Y1"));
  const AlgebraPtr osp = load("osp(2|1)").algebra;
  CHECK(bracket(el(osp, "Xi1"), el(osp, "Xi1")) == make_rational(1, 2) * el(osp, "Y2"));
  CHECK(bracket(el(osp, "Y2"), AlgebraElement::zero(osp)).is_zero());
  CHECK_THROWS_AS(bracket(el(osp, "Y1"), el(sl11, "Y1")), AlgebraMismatchError);
}

TEST_CASE("element arithmetic and text") {
  const AlgebraPtr g = load("sl(2|1)").algebra;
  CHECK(to_string(el(g, "Y2") - el(g, "Y1")) == "-Y1 + Y2");
  CHECK(to_string(make_rational(1, 2) * el(g, "Xi1")) == "1/2*Xi1");
  CHECK(to_string(AlgebraElement::zero(g)) == "0");
  CHECK((el(g, "Y1") + el(g, "Xi1")).grade() == GradeKind::Mixed);
  CHECK((el(g, "Y1") + el(g, "Xi1")).even_part() == el(g, "Y1"));
  CHECK((el(g, "Y1") + el(g, "Xi1")).odd_part() == el(g, "Xi1"));
  CHECK_THROWS_AS(el(g, "Z9"), UnknownNameError);
}

TEST_CASE("axiom checks") {
  CHECK(check_graded_axioms(*load("sl(2|1)").algebra).ok());
  CHECK(check_graded_axioms(*load("abelian(3|2)").algebra).ok());

  // [Xi2, Xi1] = -Y1 breaks the odd-odd symmetry.
  const AlgebraPtr sl11 = load("sl(1|1)").algebra;
  std::vector<RationalVector> c = sl11->constants();
  c[2 * 3 + 1] = -c[2 * 3 + 1];
  const AlgebraPtr broken = LieSuperalgebra::create("broken", sl11->basis(), c);
  const AxiomReport r = check_graded_axioms(*broken);
  CHECK_FALSE(r.antisymmetry_ok);
  CHECK(r.grading_ok);

  // [Y1, Xi1] = Y1 violates grading.
  std::vector<RationalVector> g = sl11->constants();
  g[0 * 3 + 1] = RationalVector::Unit(3, 0);
  CHECK_FALSE(check_graded_axioms(*LieSuperalgebra::create("graded", sl11->basis(), g)).grading_ok);
}

TEST_CASE("printed osp(2|1) table fails Jacobi, the corrected one passes") {
  const CatalogEntry e = load("osp(2|1)");
  const auto printed = expand_table(e.algebra->basis(), e.paper_table);
  const AlgebraPtr as_printed = LieSuperalgebra::create("printed", e.algebra->basis(), printed);
  const AxiomReport r = check_graded_axioms(*as_printed);
  CHECK_FALSE(r.jacobi_ok);
  CHECK(check_graded_axioms(*e.algebra).ok());
}

TEST_CASE("from_matrix_basis examples") {
  const AlgebraPtr sl11 = load("sl(1|1)").algebra;
  const AlgebraPtr o = from_matrix_basis(sl11->realization(), {"Y1", "Xi1", "Xi2"});
  int nonzero = 0;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) nonzero += exactly_zero(o->constant(i, j)) ? 0 : 1;
  }
  CHECK(nonzero == 2);
  CHECK(o->constant(1, 2) == RationalVector::Unit(3, 0));

  const AlgebraPtr osp = load("osp(2|1)").algebra;
  const AlgebraPtr oo = from_matrix_basis(osp->realization(), {"Y1", "Y2", "Y3", "Xi1", "Xi2"});
  CHECK(oo->constant(1, 2) == Rational(2) * RationalVector::Unit(5, 0));

  const AlgebraPtr one = from_matrix_basis({SM::identity(1, 1)});
  CHECK(one->dim() == 1);
  CHECK(exactly_zero(one->constant(0, 0)));
  CHECK(one->basis(0).name == "e1");
}

TEST_CASE("from_matrix_basis errors") {
  CHECK_THROWS_AS(from_matrix_basis({SM::identity(1, 1), Rational(2) * SM::identity(1, 1)}), RankError);
  try {
    from_matrix_basis({SM::unit(1, 1, 0, 1), SM::unit(1, 1, 1, 0)}, {"a", "b"});
    FAIL("expected NotClosedError");
  } catch (const NotClosedError& e) {
    CHECK(std::string(e.what()).find("[a, b]") != std::string::npos);
  }
  CHECK_THROWS_AS(from_matrix_basis({}), ShapeError);
}

TEST_CASE("create validates its inputs") {
  const std::vector<BasisElement> basis{{"a", Parity::Even}, {"a", Parity::Odd}};
  CHECK_THROWS_AS(LieSuperalgebra::create("dup", basis, std::vector<RationalVector>(4, RationalVector::Zero(2))),
                  ShapeError);
  CHECK_THROWS_AS(LieSuperalgebra::create("short", {{"a", Parity::Even}}, {}), ShapeError);
  CHECK_THROWS_AS(LieSuperalgebra::create("par", {{"a", Parity::Odd}}, {RationalVector::Zero(1)},
                                          std::vector<SM>{SM::identity(1, 1)}),
                  ParityError);
  CHECK_THROWS_AS(load("abelian(1|0)").algebra->realization(), PreconditionError);
}

TEST_CASE("subspace span and membership") {
  const AlgebraPtr sl11 = load("sl(1|1)").algebra;
  const auto x1 = el(sl11, "Xi1"), x2 = el(sl11, "Xi2");
  CHECK(subspace_span(sl11, {x1, x2, x1 + x2}).dim() == GradedDim{0, 2});
  CHECK(subspace_span(sl11, {}).dim() == GradedDim{0, 0});
  const AlgebraPtr osp = load("osp(2|1)").algebra;
  CHECK(subspace_span(osp, {el(osp, "Y2"), el(osp, "Xi1")}).dim() == GradedDim{1, 1});

  CHECK(subspace_contains(lsa_span(sl11, {x1, x2}), el(sl11, "Y1")));
  CHECK_FALSE(subspace_contains(subspace_span(sl11, {x1, x2}), el(sl11, "Y1")));
  CHECK(subspace_contains(subspace_span(sl11, {}), AlgebraElement::zero(sl11)));
  CHECK_THROWS_AS(subspace_contains(subspace_span(sl11, {}), AlgebraElement::zero(osp)), AlgebraMismatchError);

  // Mixed inputs split into homogeneous parts.
  const GradedSubspace mixed = subspace_span(sl11, {el(sl11, "Y1") + x1});
  CHECK(mixed.dim() == GradedDim{1, 1});
  CHECK(missing_basis_elements(mixed) == std::vector<int>{2});
}

TEST_CASE("span laws on random vectors") {
  std::mt19937_64 rng(23);
  const AlgebraPtr g = load("sl(2|1)").algebra;
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<AlgebraElement> vs;
    const int count = 1 + trial % 6;
    for (int i = 0; i < count; ++i) {
      RationalVector c = RationalVector::Zero(g->dim());
      const bool odd = (i + trial) % 2;
      for (int k = 0; k < g->dim(); ++k) {
        if ((g->parity(k) == Parity::Odd) == odd && rng() % 2) c(k) = random_rational(rng);
      }
      vs.emplace_back(g, c);
    }
    const GradedSubspace s = subspace_span(g, vs);
    CHECK(subspace_span(g, s.basis()) == s);
    std::vector<AlgebraElement> more = vs;
    more.push_back(AlgebraElement::basis(g, trial % g->dim()));
    const GradedSubspace t = subspace_span(g, more);
    CHECK(t.dim().even >= s.dim().even);
    CHECK(t.dim().odd >= s.dim().odd);
    for (const auto& v : vs) CHECK(t.contains(v));
    // Order of insertion does not change the canonical form.
    std::reverse(vs.begin(), vs.end());
    CHECK(subspace_span(g, vs) == s);
  }
}

TEST_CASE("catalog constants match the matrix oracle") {
  for (const auto& name : catalog_names()) {
    const AlgebraPtr g = load(name).algebra;
    if (!g->has_realization()) continue;
    std::vector<std::string> names;
    for (const auto& b : g->basis()) names.push_back(b.name);
    const AlgebraPtr o = from_matrix_basis(g->realization(), names);
    CHECK(o->constants() == g->constants());
    CHECK(check_graded_axioms(*o).ok());
  }
}

TEST_CASE("coordinates of realized matrices") {
  const AlgebraPtr g = load("osp(2|1)").algebra;
  const SM drift = SM::unit(2, 1, 0, 1) + SM::unit(2, 1, 1, 0);
  const auto c = g->coordinates_of(drift);
  REQUIRE(c.has_value());
  CHECK(AlgebraElement(g, *c) == el(g, "Y2") + el(g, "Y3"));
  CHECK_FALSE(g->coordinates_of(SM::unit(2, 1, 2, 2)).has_value());
}
