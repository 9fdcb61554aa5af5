#include <doctest.h>

#include <algorithm>
#include <random>

#include "helpers.hpp"

using namespace superctl;
using namespace testing_support;
using SM = SuperMatrix<Rational>;

namespace {

AlgebraElement el(const AlgebraPtr& g, const std::string& name) { return AlgebraElement::basis(g, name); }

bool has(const std::vector<std::string>& v, const std::string& s) {
  return std::find(v.begin(), v.end(), s) != v.end();
}

RationalVector unit_vec(int size, int i) { return RationalVector::Unit(size, i); }

}  // namespace

TEST_CASE("lsarc examples") {
  const RankResult ex1 = lsarc(load("sl(1|1)").system("example1").spec);
  CHECK(ex1.holds);
  CHECK(ex1.dim == GradedDim{1, 2});
  const RankResult rot = lsarc(load("sl(2|1)").system("example2-rotation").spec);
  CHECK(rot.holds);
  CHECK(rot.dim == GradedDim{4, 4});

  const AlgebraPtr g = load("sl(1|1)").algebra;
  const SystemSpec full = make_system("full", AdOperator::zero(g), {el(g, "Y1")}, {el(g, "Xi1"), el(g, "Xi2")});
  CHECK(lsarc(full).holds);
}

TEST_CASE("ad_rank examples") {
  const RankResult ex3 = ad_rank(load("osp(2|1)").system("example3").spec);
  CHECK(ex3.holds);
  CHECK(ex3.dim == GradedDim{3, 2});

  const RankResult ex1 = ad_rank(load("sl(1|1)").system("example1").spec);
  CHECK_FALSE(ex1.holds);
  CHECK(ex1.witnesses == std::vector<std::string>{"Y1"});

  // Y3 is missing too, not only Y1 and Y4.
  const RankResult rot = ad_rank(load("sl(2|1)").system("example2-rotation").spec);
  CHECK_FALSE(rot.holds);
  CHECK(has(rot.witnesses, "Y1"));
  CHECK(has(rot.witnesses, "Y4"));
  CHECK(has(rot.witnesses, "Y3"));
}

TEST_CASE("Example 2 with drift e21 under the stated definitions") {
  const SystemSpec sys = load("sl(2|1)").system("example2").spec;
  const RankResult l = lsarc(sys);
  CHECK(l.holds);
  CHECK(l.dim == GradedDim{4, 4});
  const RankResult a = ad_rank(sys);
  CHECK(a.dim == GradedDim{1, 4});
  CHECK(a.witnesses == std::vector<std::string>{"Y1", "Y3", "Y4"});
}

TEST_CASE("total-dimension reading is reported alongside the graded one") {
  const RankResult r = ad_rank(load("sl(1|1)").system("example1").spec);
  CHECK_FALSE(r.total_holds);
}

TEST_CASE("p_cap limits the ad powers") {
  const SystemSpec sys = load("osp(2|1)").system("example3").spec;
  CHECK(ad_rank(sys, RankOptions{0}).dim == GradedDim{1, 1});
  CHECK(ad_rank(sys, RankOptions{1}).dim == GradedDim{2, 2});
  CHECK(ad_rank(sys, RankOptions{2}).holds);
  CHECK_THROWS_AS(ad_rank(sys, RankOptions{-1}), PreconditionError);
}

TEST_CASE("kalman examples") {
  const KalmanResult nil = kalman_rank(SM::unit(2, 0, 0, 1), {unit_vec(2, 1)}, {});
  CHECK(nil.controllable);
  CHECK(nil.rank == GradedDim{2, 0});

  const KalmanResult id = kalman_rank(SM::identity(1, 1), {unit_vec(2, 0)}, {unit_vec(2, 1)});
  CHECK(id.controllable);

  const KalmanResult none = kalman_rank(SM::identity(1, 1), {RationalVector::Zero(2)}, {RationalVector::Zero(2)});
  CHECK_FALSE(none.controllable);
  CHECK(none.rank == GradedDim{0, 0});
}

TEST_CASE("kalman errors") {
  CHECK_THROWS_AS(kalman_rank(SM::identity(1, 1), {unit_vec(3, 0)}, {}), ShapeError);
  CHECK_THROWS_AS(kalman_rank(SM::identity(1, 1), {unit_vec(2, 1)}, {}), ParityError);
  Mat<Rational> mixed = Mat<Rational>::Identity(2, 2);
  mixed(0, 1) = 1;
  CHECK_THROWS_AS(kalman_rank(SM(1, 1, mixed, Parity::Even), {unit_vec(2, 0)}, {}), ParityError);
}

TEST_CASE("decide examples") {
  const Verdict ex1 = decide(load("sl(1|1)").system("example1").spec);
  CHECK(ex1.lsarc.holds);
  CHECK_FALSE(ex1.ad_rank.holds);
  CHECK(ex1.classification == Classification::TransitiveNotDecided);
  CHECK(ex1.annotation.find("transitive by LSARC but not locally controllable") != std::string::npos);

  const Verdict ex3 = decide(load("osp(2|1)").system("example3").spec);
  CHECK(ex3.classification == Classification::LocallyControllable);

  const AlgebraPtr ab = load("abelian(2|0)").algebra;
  const Verdict flat = decide(make_system("flat", AdOperator::zero(ab), {el(ab, "Y1")}, {}));
  CHECK(flat.classification == Classification::NotTransitive);
  CHECK(flat.lsarc.dim == GradedDim{1, 0});
  CHECK(flat.lsarc.witnesses == std::vector<std::string>{"Y2"});
}

TEST_CASE("system validation") {
  const AlgebraPtr g = load("sl(2|1)").algebra;
  CHECK_THROWS_AS(make_system("bad", AdOperator::zero(g), {el(g, "Xi1")}, {}), ParityError);
  CHECK_THROWS_AS(make_system("bad", AdOperator::zero(g), {}, {el(g, "Y1")}), ParityError);
  CHECK_THROWS_AS(make_system("bad", AdOperator::zero(g), {}, {}), PreconditionError);
  CHECK_THROWS_AS(make_system("bad", el(g, "Xi1"), {el(g, "Y1")}, {}), ParityError);
  const AlgebraPtr diag = from_matrix_basis({SM::unit(2, 0, 0, 0), SM::unit(2, 0, 1, 1)});
  CHECK_THROWS_AS(make_system("bad", diag, SM::unit(2, 0, 0, 1), {AlgebraElement::basis(diag, 0)}, {}),
                  NotInvariantError);
}

TEST_CASE("ad_rank span lies inside the lsarc span") {
  for (const auto& name : {"sl(1|1)", "sl(2|1)", "osp(2|1)"}) {
    const CatalogEntry entry = load(name);
    for (const auto& s : entry.systems) {
      const RankResult l = lsarc(s.spec), a = ad_rank(s.spec);
      for (const auto& v : a.span.basis()) CHECK(l.span.contains(v));
      if (a.holds) CHECK(l.holds);
    }
  }
}

TEST_CASE("decide is deterministic") {
  const SystemSpec sys = load("sl(2|1)").system("example2").spec;
  const Verdict a = decide(sys), b = decide(sys);
  CHECK(a.lsarc.span == b.lsarc.span);
  CHECK(a.ad_rank.span == b.ad_rank.span);
  CHECK(a.classification == b.classification);
  REQUIRE(a.hull_trace.steps.size() == b.hull_trace.steps.size());
  for (std::size_t i = 0; i < a.hull_trace.steps.size(); ++i) {
    CHECK(a.hull_trace.steps[i].dim == b.hull_trace.steps[i].dim);
    CHECK(a.hull_trace.steps[i].added == b.hull_trace.steps[i].added);
  }
}

TEST_CASE("abelian systems agree with the Kalman reduction") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 10; ++trial) {
    const int m = 1 + trial % 3, n = trial % 3;
    const AlgebraPtr ab = load("abelian(" + std::to_string(m) + "|" + std::to_string(n) + ")").algebra;
    const SM a = random_homogeneous(rng, m, n, Parity::Even, 0.5);
    std::vector<RationalVector> ev, od;
    std::vector<AlgebraElement> evc, odc;
    ev.push_back(RationalVector::Zero(m + n));
    for (int i = 0; i < m; ++i) ev.back()(i) = random_rational(rng);
    if (exactly_zero(ev.back())) ev.back()(0) = 1;
    evc.emplace_back(ab, ev.back());
    if (n > 0) {
      od.push_back(RationalVector::Zero(m + n));
      od.back()(m) = 1;
      odc.emplace_back(ab, od.back());
    }
    const SystemSpec sys = make_system("lin", AdOperator::from_derivation(ab, a.entries()), evc, odc);
    const KalmanResult k = kalman_rank(a, ev, od);
    const RankResult l = lsarc(sys), r = ad_rank(sys);
    CHECK(l.span.even_basis() == k.even_span);
    CHECK(l.span.odd_basis() == k.odd_span);
    CHECK(r.span == l.span);
    CHECK(r.holds == k.controllable);
  }
}
