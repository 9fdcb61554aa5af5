#include <doctest.h>

#include <algorithm>

#include "helpers.hpp"

using namespace superctl;
using SM = SuperMatrix<Rational>;

namespace {

AlgebraElement el(const AlgebraPtr& g, const std::string& name) { return AlgebraElement::basis(g, name); }

bool has_item(const CatalogReport& r, const std::string& entry, const std::string& check, CheckStatus s) {
  return std::any_of(r.items.begin(), r.items.end(), [&](const CheckItem& it) {
    return it.entry == entry && it.check.rfind(check, 0) == 0 && it.status == s;
  });
}

}  // namespace

TEST_CASE("load sl(1|1)") {
  const CatalogEntry e = load("sl(1|1)");
  CHECK(e.algebra->graded_dim() == GradedDim{1, 2});
  REQUIRE(e.systems.size() == 1);
  const SystemSpec& s = e.systems[0].spec;
  CHECK(s.even_controls.empty());
  REQUIRE(s.odd_controls.size() == 2);
  CHECK(s.odd_controls[0] == el(e.algebra, "Xi1"));
  CHECK(s.odd_controls[1] == el(e.algebra, "Xi2"));
  Mat<Rational> d = Mat<Rational>::Zero(2, 2);
  d(0, 0) = 2;
  d(1, 1) = 1;
  REQUIRE(s.drift_matrix);
  CHECK(s.drift_matrix->entries() == d);
}

TEST_CASE("load osp(2|1)") {
  const CatalogEntry e = load("osp(2|1)");
  CHECK(e.algebra->graded_dim() == GradedDim{3, 2});
  const SystemSpec& s = e.system("example3").spec;
  REQUIRE(s.even_controls.size() == 1);
  CHECK(s.even_controls[0] == el(e.algebra, "Y2"));
  REQUIRE(s.odd_controls.size() == 1);
  CHECK(s.odd_controls[0] == el(e.algebra, "Xi1"));
  REQUIRE(s.drift_matrix);
  CHECK(*s.drift_matrix == SM::unit(2, 1, 0, 1) + SM::unit(2, 1, 1, 0));
}

TEST_CASE("load parametric entries") {
  const CatalogEntry ab = load("abelian(2|1)");
  CHECK(ab.algebra->graded_dim() == GradedDim{2, 1});
  for (const auto& c : ab.algebra->constants()) CHECK(exactly_zero(c));
  CHECK_FALSE(ab.algebra->has_realization());

  const CatalogEntry gl = load("gl(2|1)");
  CHECK(gl.algebra->graded_dim() == GradedDim{5, 4});
  const AlgebraPtr o = from_matrix_basis(gl.algebra->realization());
  for (int i = 0; i < gl.algebra->dim(); ++i) {
    for (int j = 0; j < gl.algebra->dim(); ++j) CHECK(o->constant(i, j) == gl.algebra->constant(i, j));
  }
  CHECK(load("gl(0|2)").algebra->graded_dim() == GradedDim{4, 0});
  CHECK_THROWS(load("abelian(0|0)"));
}

TEST_CASE("unknown names") {
  CHECK_THROWS_AS(load("sl(3|1)"), UnknownNameError);
  CHECK_THROWS_AS(load("gl(2|x)"), UnknownNameError);
  CHECK_THROWS_AS(load(""), UnknownNameError);
  CHECK_THROWS_AS(load("sl(2|1)").system("nope"), UnknownNameError);
}

TEST_CASE("sl(2|1) table spot checks") {
  const AlgebraPtr g = load("sl(2|1)").algebra;
  CHECK(bracket(el(g, "Y3"), el(g, "Y4")) == Rational(2) * el(g, "Y1"));
  CHECK(bracket(el(g, "Xi1"), el(g, "Xi2")) == el(g, "Y3"));
  CHECK(bracket(el(g, "Xi1"), el(g, "Xi4")) == el(g, "Y2") - el(g, "Y1"));
}

TEST_CASE("osp(2|1) table spot checks") {
  const AlgebraPtr g = load("osp(2|1)").algebra;
  CHECK(bracket(el(g, "Y2"), el(g, "Y3")) == Rational(2) * el(g, "Y1"));
  CHECK(bracket(el(g, "Xi2"), el(g, "Xi2")) == make_rational(-1, 2) * el(g, "Y3"));
  CHECK(bracket(el(g, "Xi1"), el(g, "Xi2")) == make_rational(1, 2) * el(g, "Y1"));
}

TEST_CASE("sl basis matrices are supertraceless") {
  for (const auto& name : {"sl(1|1)", "sl(2|1)"}) {
    const AlgebraPtr g = load(name).algebra;
    for (const auto& m : g->realization()) CHECK(supertrace(m) == Rational(0));
  }
}

TEST_CASE("every stored drift normalizes its algebra") {
  for (const auto& name : {"sl(1|1)", "sl(2|1)", "osp(2|1)"}) {
    const CatalogEntry e = load(name);
    for (const auto& s : e.systems) {
      REQUIRE(s.spec.drift_matrix);
      CHECK(AdOperator::from_matrix(e.algebra, *s.spec.drift_matrix).matrix() == s.spec.drift.matrix());
    }
  }
}

TEST_CASE("expand_table") {
  const std::vector<BasisElement> basis{{"Y", Parity::Even}, {"Xi", Parity::Odd}};
  RationalVector xi(2), y(2);
  xi << 0, 1;
  y << 1, 0;
  const auto full = expand_table(basis, {{0, 1, xi}, {1, 1, y}});
  CHECK(full[0 * 2 + 1] == xi);
  CHECK(full[1 * 2 + 0] == RationalVector(-xi));
  CHECK(full[1 * 2 + 1] == y);
  CHECK(exactly_zero(full[0]));
  CHECK_THROWS_AS(expand_table(basis, {{0, 1, xi}, {1, 0, xi}}), ShapeError);
}

TEST_CASE("verify_catalog on the pristine catalog") {
  const CatalogReport r = verify_catalog();
  CHECK(r.ok());
  CHECK(r.count(CheckStatus::Fail) == 0);
  int records = 0;
  for (const auto& name : catalog_names()) records += static_cast<int>(load(name).discrepancies.size());
  CHECK(r.count(CheckStatus::Documented) == records);
  CHECK(has_item(r, "osp(2|1)", "[Y1,Y2]", CheckStatus::Documented));
  CHECK(has_item(r, "osp(2|1)", "matrix oracle", CheckStatus::Pass));
  CHECK(has_item(r, "sl(1|1)", "ad(X)(Xi1)", CheckStatus::Documented));
  CHECK(has_item(r, "sl(2|1)", "ad(X)(Xi1)", CheckStatus::Documented));
  CHECK(to_string(r).find("0 failed") != std::string::npos);
}

TEST_CASE("verify_catalog subsets") {
  CHECK(verify_catalog(std::string("nothing")).items.empty());
  CHECK(verify_catalog(std::string("nothing")).ok());
  const CatalogReport one = verify_catalog(std::string("sl(1|1)"));
  CHECK_FALSE(one.items.empty());
  for (const auto& it : one.items) CHECK(it.entry == "sl(1|1)");
}

TEST_CASE("fault injection: perturbed printed constant") {
  CatalogEntry e = load("sl(2|1)");
  REQUIRE_FALSE(e.paper_table.empty());
  e.paper_table.front().value(0) += 1;
  const CatalogReport r = verify_entry(e);
  CHECK_FALSE(r.ok());
  CHECK(r.count(CheckStatus::Fail) >= 1);
}

TEST_CASE("fault injection: perturbed stored constant") {
  CatalogEntry e = load("osp(2|1)");
  std::vector<RationalVector> constants = e.algebra->constants();
  const int dim = e.algebra->dim();
  const int y2 = e.algebra->index_of("Y2"), y3 = e.algebra->index_of("Y3");
  constants[y2 * dim + y3](0) += 1;
  constants[y3 * dim + y2](0) -= 1;
  e.algebra = LieSuperalgebra::create(e.name, e.algebra->basis(), constants, e.algebra->realization());
  e.systems.clear();
  const CatalogReport r = verify_entry(e);
  CHECK_FALSE(r.ok());
  CHECK(has_item(r, "osp(2|1)", "matrix oracle", CheckStatus::Fail));
}

TEST_CASE("fault injection: changed expected verdict") {
  CatalogEntry e = load("osp(2|1)");
  e.systems[0].expected->classification = Classification::NotTransitive;
  const CatalogReport r = verify_entry(e);
  CHECK_FALSE(r.ok());
  CHECK(has_item(r, "osp(2|1)", "classification", CheckStatus::Fail));
}

TEST_CASE("expected verdicts") {
  const auto v = load("osp(2|1)").paper_verdicts();
  REQUIRE(v.size() == 1);
  CHECK(v[0].classification == Classification::LocallyControllable);
  CHECK(v[0].lsarc_dim == GradedDim{3, 2});
  const auto ex1 = load("sl(1|1)").paper_verdicts();
  REQUIRE(ex1.size() == 1);
  CHECK(ex1[0].annotation.find("transitive by LSARC") != std::string::npos);
}
