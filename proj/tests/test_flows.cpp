#include <doctest.h>

#include <random>
#include <sstream>

#include "helpers.hpp"
#include "superctl/flows.hpp"

using namespace superctl;
using namespace testing_support;
using SM = SuperMatrix<Rational>;
using GM = GrassmannMatrix<double>;
using GN = GrassmannNumber<double>;

namespace {

AlgebraElement el(const AlgebraPtr& g, const std::string& name) { return AlgebraElement::basis(g, name); }

SM diag21() {
  Mat<Rational> d = Mat<Rational>::Zero(2, 2);
  d(0, 0) = 2;
  d(1, 1) = 1;
  return SM(1, 1, d, Parity::Even);
}

ControlSchedule one_segment(double duration, std::vector<double> u, std::vector<GN> nu) {
  return ControlSchedule{{ControlSegment{duration, std::move(u), std::move(nu)}}};
}

/// Affine rank of a point cloud (rows = points).
Eigen::Index affine_rank(const std::vector<Eigen::VectorXd>& pts) {
  if (pts.empty()) return -1;
  Mat<double> diffs(static_cast<Eigen::Index>(pts.size()) - 1, pts.front().size());
  for (std::size_t i = 1; i < pts.size(); ++i) diffs.row(static_cast<Eigen::Index>(i) - 1) = (pts[i] - pts[0]).transpose();
  Eigen::FullPivLU<Mat<double>> lu(diffs);
  lu.setThreshold(1e-8);
  return lu.rank();
}

}  // namespace

TEST_CASE("check_ad_invariance examples") {
  CHECK(check_ad_invariance(SM::unit(2, 1, 1, 0), *load("sl(2|1)").algebra).ok);
  CHECK(check_ad_invariance(diag21(), *load("sl(1|1)").algebra).ok);
  const AlgebraPtr diag = from_matrix_basis({SM::unit(2, 0, 0, 0), SM::unit(2, 0, 1, 1)}, {"d1", "d2"});
  const InvarianceReport r = check_ad_invariance(SM::unit(2, 0, 0, 1), *diag);
  CHECK_FALSE(r.ok);
  CHECK(r.witnesses == std::vector<std::string>{"d1", "d2"});
}

TEST_CASE("check_hull_flow_invariance examples") {
  const CatalogEntry osp = load("osp(2|1)");
  const SystemSpec& ex3 = osp.system("example3").spec;
  const GradedSubspace h3 = lsa_span(osp.algebra, ex3.controls());
  const HullFlowReport full = check_hull_flow_invariance(*ex3.drift_matrix, ad_hull(ex3.drift, h3).hull);
  CHECK(full.ok());

  const CatalogEntry sl21 = load("sl(2|1)");
  const SystemSpec& ex2 = sl21.system("example2").spec;
  const GradedSubspace hull2 = ad_hull(ex2.drift, lsa_span(sl21.algebra, ex2.controls())).hull;
  CHECK(check_hull_flow_invariance(*ex2.drift_matrix, hull2).ok());

  const HullFlowReport raw = check_hull_flow_invariance(*ex3.drift_matrix, h3);
  CHECK_FALSE(raw.exact_ok);
  CHECK_FALSE(raw.sampled_ok);
  CHECK_FALSE(raw.ok());
}

TEST_CASE("linear fields normalize constant fields") {
  const SuperPoint<double> q0({GN::constant(2, 0.0)}, {});
  CHECK(check_linear_field_normalizer(SM::identity(1, 0), q0));

  const SuperPoint<double> q2({GN(2), GN(2)}, {});
  CHECK(check_linear_field_normalizer(SM::unit(2, 0, 0, 1), q2));
  const VectorField f = linear_field(SM::unit(2, 0, 0, 1), q2);
  const Coordinates p{GN::constant(2, 0.3) + GN::monomial(2, {1, 2}, 0.2), GN::constant(2, -1.1)};
  const Coordinates br = bracket_with_constant(f, p, {0.0, 1.0});
  CHECK(br[0][0] == doctest::Approx(1.0));
  CHECK(br[1][0] == doctest::Approx(0.0).epsilon(1e-12));

  const VectorField quadratic = [](const Coordinates& x) {
    return Coordinates{x[0] * x[0], GN(x[0].num_generators())};
  };
  CHECK_FALSE(check_linear_field_normalizer(quadratic, 2, 0, 2));
}

TEST_CASE("linear fields on superspace with odd directions") {
  Mat<Rational> a = Mat<Rational>::Zero(3, 3);
  a(0, 1) = 2;
  a(2, 2) = -1;
  const SuperPoint<double> q({GN::constant(2, 1.0), GN(2)}, {GN::generator(2, 1, 0.5)});
  CHECK(check_linear_field_normalizer(SM(2, 1, a, Parity::Even), q));
  Mat<Rational> odd = Mat<Rational>::Zero(3, 3);
  odd(0, 2) = 1;
  CHECK_THROWS_AS(linear_field(SM(2, 1, odd, Parity::Odd), q), ParityError);
  const VectorField mixes = [](const Coordinates& x) { return Coordinates{x[0], x[1], x[2] * x[0]}; };
  CHECK_FALSE(check_linear_field_normalizer(mixes, 2, 1, 2));
}

TEST_CASE("drift-only simulation matches conjugation") {
  const CatalogEntry e = load("sl(1|1)");
  const SystemSpec& sys = e.system("example1").spec;
  const int L = 2;
  const GM start = group_element(*e.algebra, {0.3}, L);
  const Trajectory traj = simulate(sys, start, one_segment(1.0, {}, {GN(L), GN(L)}));
  const GM oracle = conjugate(GM::from(*sys.drift_matrix, L), 1.0, start);
  CHECK(traj.final_state().distance(oracle) <= 1e-6);
  CHECK(traj.samples.front().time == 0.0);
  CHECK(traj.samples.front().state.distance(start) == 0.0);
}

TEST_CASE("zero drift with one even control follows the left-invariant flow") {
  const AlgebraPtr g = load("sl(2|1)").algebra;
  const SystemSpec sys = make_system("y1", g, SM::zero(2, 1), {el(g, "Y3")}, {});
  const int L = 1;
  const GM start = group_element(*g, {0.2, -0.1, 0.4}, L);
  const double t = 1.3;
  const Trajectory traj = simulate(sys, start, one_segment(t, {1.0}, {}));
  const GM oracle = start * sm_exp(GM::from(g->realization()[2], L), t);
  CHECK(traj.final_state().distance(oracle) <= 1e-6);
}

TEST_CASE("odd inputs follow the closed form with zero drift") {
  const AlgebraPtr g = load("sl(1|1)").algebra;
  const SystemSpec sys = make_system("odd", g, SM::zero(1, 1), {}, {el(g, "Xi1"), el(g, "Xi2")});
  const int L = 2;
  const GN nu1 = GN::generator(L, 1, 0.7), nu2 = GN::generator(L, 2, -0.4);
  const GM u = nu1 * GM::from(g->realization()[1], L) + nu2 * GM::from(g->realization()[2], L);
  CHECK(u.grade() == GradeKind::Even);
  const GM start = GM::identity(1, 1, L);
  const Trajectory traj = simulate(sys, start, one_segment(0.9, {}, {nu1, nu2}));
  CHECK(traj.final_state().distance(sm_exp(u, 0.9)) <= 1e-6);
  CHECK(traj.final_state().grade() == GradeKind::Even);
}

TEST_CASE("tiny durations return the start") {
  const CatalogEntry e = load("osp(2|1)");
  const SystemSpec& sys = e.system("example3").spec;
  const GM start = group_element(*e.algebra, {0.1, 0.2, 0.3}, 2);
  const Trajectory traj = simulate(sys, start, one_segment(1e-8, {1.0}, {GN::generator(2, 1)}));
  CHECK(traj.final_state().distance(start) <= 1e-6);
}

TEST_CASE("segment composition") {
  const CatalogEntry e = load("sl(2|1)");
  const SystemSpec& sys = e.system("example2").spec;
  const int L = 2;
  const GM start = group_element(*e.algebra, {0.1, -0.2, 0.3, 0.05}, L);
  const ControlSegment s1{0.7, {0.5}, {GN::generator(L, 1, 0.3), GN::generator(L, 2, -0.2)}};
  const ControlSegment s2{0.4, {-1.0}, {GN::generator(L, 2, 0.6), GN(L)}};
  const Trajectory both = simulate(sys, start, ControlSchedule{{s1, s2}});
  const Trajectory first = simulate(sys, start, ControlSchedule{{s1}});
  const Trajectory second = simulate(sys, first.final_state(), ControlSchedule{{s2}});
  CHECK(both.final_state().distance(second.final_state()) <= 1e-8);
  REQUIRE(both.samples.size() == 3);
  CHECK(both.samples[1].time == doctest::Approx(0.7));
  CHECK(both.samples[2].time == doctest::Approx(1.1));
}

TEST_CASE("simulate input errors") {
  const CatalogEntry e = load("sl(2|1)");
  const SystemSpec& sys = e.system("example2").spec;
  const GM start = GM::identity(2, 1, 2);
  CHECK_THROWS_AS(simulate(sys, start, one_segment(1.0, {}, {GN(2), GN(2)})), ShapeError);
  CHECK_THROWS_AS(simulate(sys, start, one_segment(1.0, {std::nan("")}, {GN(2), GN(2)})), NumericError);
  CHECK_THROWS_AS(simulate(sys, start, one_segment(-1.0, {0.0}, {GN(2), GN(2)})), PreconditionError);
  CHECK_THROWS_AS(simulate(sys, start, one_segment(1.0, {0.0}, {GN::constant(2, 1.0), GN(2)})), ParityError);
  CHECK_THROWS_AS(simulate(sys, start, one_segment(1.0, {0.0}, {GN(3), GN(2)})), GeneratorCountError);
  CHECK_THROWS_AS(simulate(sys, GM::identity(1, 1, 2), one_segment(1.0, {0.0}, {GN(2), GN(2)})), ShapeError);

  const AlgebraPtr ab = load("abelian(1|0)").algebra;
  const SystemSpec no_matrix = make_system("ab", AdOperator::zero(ab), {el(ab, "Y1")}, {});
  CHECK_THROWS_AS(simulate(no_matrix, GM::identity(1, 0, 0), one_segment(1.0, {1.0}, {})), PreconditionError);
}

TEST_CASE("reachable_sample") {
  const CatalogEntry e = load("sl(2|1)");
  const SystemSpec& sys = e.system("example2").spec;
  const GM start = group_element(*e.algebra, {0.4, 0.1, 0.3, -0.2}, 2);
  CHECK(reachable_sample(sys, start, 0, 2.0).empty());

  const SystemSpec idle = make_system("idle", e.algebra, SM::zero(2, 1), {AlgebraElement::zero(e.algebra)}, {});
  for (const auto& p : reachable_sample(idle, start, 5, 2.0, 3)) CHECK(p.distance(start) == 0.0);

  const auto a = reachable_sample(sys, start, 3, 1.0, 42);
  const auto b = reachable_sample(sys, start, 3, 1.0, 42);
  REQUIRE(a.size() == 3);
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i].distance(b[i]) == 0.0);
}

TEST_CASE("reachable endpoints spread over the body group") {
  const CatalogEntry e = load("sl(2|1)");
  const SystemSpec& sys = e.system("example2").spec;
  const GM start = group_element(*e.algebra, {0.4, 0.1, 0.3, -0.2}, 2);
  std::vector<Eigen::VectorXd> bodies;
  for (const auto& p : reachable_sample(sys, start, 200, 2.0, 7)) {
    bodies.emplace_back(Eigen::Map<const Eigen::VectorXd>(p.body().data(), p.body().size()));
  }
  CHECK(affine_rank(bodies) >= 3);
}

TEST_CASE("trajectory csv") {
  const CatalogEntry e = load("sl(1|1)");
  const SystemSpec& sys = e.system("example1").spec;
  const Trajectory traj = simulate(sys, GM::identity(1, 1, 2), one_segment(0.5, {}, {GN(2), GN(2)}));
  std::ostringstream os;
  write_trajectory_csv(traj, os);
  std::istringstream in(os.str());
  std::string line;
  std::getline(in, line);
  CHECK(line == "# superctl trajectory m=1 n=1 L=2");
  std::getline(in, line);
  CHECK(line == "time,P[0][0],P[0][1],P[1][0],P[1][1]");
  std::getline(in, line);
  CHECK(line == "0,1,0,0,1");
  int rows = 0;
  while (std::getline(in, line)) ++rows;
  CHECK(rows == 1);
}
