#include "superctl/flows.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <random>

#include "superctl/errors.hpp"

namespace superctl {

namespace {

using GM = GrassmannMatrix<double>;
using GN = GrassmannNumber<double>;

Eigen::VectorXd flatten(const Mat<double>& m) {
  return Eigen::Map<const Eigen::VectorXd>(m.data(), m.size());
}

/// Two fixed, distinct Grassmann-valued points of R^{m|n}.
Coordinates sample_point(int m, int n, int L, int which) {
  Coordinates p;
  p.reserve(m + n);
  const double shift = which == 0 ? 0.0 : 1.375;
  for (int i = 0; i < m; ++i) {
    GN x = GN::constant(L, 0.5 + 0.25 * i + shift);
    if (L >= 2) x += GN::monomial(L, {1, 2}, 0.3 - 0.1 * i + shift);
    p.push_back(std::move(x));
  }
  for (int i = 0; i < n; ++i) {
    GN x(L);
    if (L >= 1) x += GN::generator(L, 1, 0.7 + 0.2 * i - shift);
    if (L >= 2) x += GN::generator(L, 2, -0.4 + 0.15 * i + shift);
    p.push_back(std::move(x));
  }
  return p;
}

GM realize_double(const LieSuperalgebra& g, const AlgebraElement& v, int L) {
  return GM::from(g.realize(v.coeffs()), L);
}

}  // namespace

InvarianceReport check_ad_invariance(const SuperMatrix<Rational>& a, const LieSuperalgebra& g) {
  InvarianceReport report;
  const auto& mats = g.realization();
  for (int k = 0; k < g.dim(); ++k) {
    if (!g.coordinates_of(super_bracket(a, mats[k]))) {
      report.ok = false;
      report.witnesses.push_back(g.basis(k).name);
    }
  }
  return report;
}

HullFlowReport check_hull_flow_invariance(const SuperMatrix<Rational>& a, const GradedSubspace& hull) {
  HullFlowReport report;
  const LieSuperalgebra& g = *hull.ambient();
  const auto basis = hull.basis();

  report.exact_ok = true;
  for (const auto& v : basis) {
    const auto coords = g.coordinates_of(super_bracket(a, g.realize(v.coeffs())));
    if (!coords || !hull.contains(AlgebraElement(hull.ambient(), *coords))) {
      report.exact_ok = false;
      break;
    }
  }

  const int size = a.size();
  Mat<double> columns(size * size, static_cast<Eigen::Index>(basis.size()));
  for (std::size_t c = 0; c < basis.size(); ++c) {
    columns.col(static_cast<Eigen::Index>(c)) = flatten(g.realize(basis[c].coeffs()).cast<double>().entries());
  }
  const Eigen::ColPivHouseholderQR<Mat<double>> qr(columns);
  const GM drift = GM::from(a, 0);

  double worst = 0.0;
  for (double t : {1.0, -1.0, 0.5, -0.5}) {
    for (const auto& v : basis) {
      const GM moved = conjugate(drift, t, realize_double(g, v, 0));
      const Eigen::VectorXd target = flatten(moved.body());
      Eigen::VectorXd residual = target;
      if (columns.cols() > 0) residual -= columns * qr.solve(target);
      worst = std::max(worst, residual.norm() / std::max(1.0, target.norm()));
    }
  }
  report.max_residual = worst;
  report.sampled_ok = std::isfinite(worst) && worst <= 1e-8;
  return report;
}

VectorField linear_field(const SuperMatrix<Rational>& a, const SuperPoint<double>& q) {
  if (a.m() != q.m() || a.n() != q.n()) throw ShapeError("offset point does not match the linear map");
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    for (Eigen::Index j = 0; j < a.size(); ++j) {
      if (position_parity(a.m(), i, j) == Parity::Odd && a(i, j) != Rational(0)) {
        throw ParityError("linear map on superspace must be even");
      }
    }
  }
  const Mat<double> entries = a.cast<double>().entries();
  Coordinates offset;
  for (int i = 0; i < a.size(); ++i) offset.push_back(q.coord(i));
  return [entries, offset](const Coordinates& p) {
    Coordinates out = offset;
    for (Eigen::Index i = 0; i < entries.rows(); ++i) {
      for (Eigen::Index j = 0; j < entries.cols(); ++j) {
        if (entries(i, j) != 0.0) out[i] += entries(i, j) * p.at(j);
      }
    }
    return out;
  };
}

Coordinates bracket_with_constant(const VectorField& field, const Coordinates& p,
                                  const std::vector<double>& b) {
  if (b.size() != p.size()) throw ShapeError("direction does not match the point");
  constexpr double h = 1e-3;
  Coordinates plus = p, minus = p;
  for (std::size_t k = 0; k < p.size(); ++k) {
    plus[k][0] += h * b[k];
    minus[k][0] -= h * b[k];
  }
  const Coordinates fp = field(plus);
  const Coordinates fm = field(minus);
  if (fp.size() != p.size() || fm.size() != p.size()) throw ShapeError("field changed the dimension");
  Coordinates out;
  out.reserve(p.size());
  for (std::size_t k = 0; k < p.size(); ++k) out.push_back((fp[k] - fm[k]) * (0.5 / h));
  return out;
}

bool check_linear_field_normalizer(const VectorField& field, int m, int n, int num_generators) {
  const Coordinates p0 = sample_point(m, n, num_generators, 0);
  const Coordinates p1 = sample_point(m, n, num_generators, 1);
  constexpr double tol = 1e-7;
  for (int k = 0; k < m + n; ++k) {
    std::vector<double> b(m + n, 0.0);
    b[k] = 1.0;
    const Coordinates x0 = bracket_with_constant(field, p0, b);
    const Coordinates x1 = bracket_with_constant(field, p1, b);
    for (int i = 0; i < m + n; ++i) {
      for (Monomial s = 0; s < x0[i].size(); ++s) {
        const double d0 = x0[i][s], d1 = x1[i][s];
        if (!std::isfinite(d0) || !std::isfinite(d1)) return false;
        // A constant field has no soul.
        if (s != 0 && (std::abs(d0) > tol || std::abs(d1) > tol)) return false;
        if (std::abs(d0 - d1) > tol * std::max(1.0, std::abs(d0))) return false;
      }
    }
  }
  return true;
}

bool check_linear_field_normalizer(const SuperMatrix<Rational>& a, const SuperPoint<double>& q) {
  return check_linear_field_normalizer(linear_field(a, q), a.m(), a.n(), q.num_generators());
}

Trajectory simulate(const SystemSpec& sys, const GrassmannMatrix<double>& start,
                    const ControlSchedule& schedule, const SimulationOptions& opts) {
  if (!sys.drift_matrix) throw PreconditionError("simulation needs a realized drift matrix");
  const LieSuperalgebra& g = *sys.algebra;
  const auto& realization = g.realization();
  const int L = start.num_generators();
  const SuperMatrix<Rational>& shape = realization.front();
  if (start.m() != shape.m() || start.n() != shape.n()) throw ShapeError("start state has the wrong shape");
  if (!start.all_finite()) throw NumericError("start state is not finite");

  const GM drift = GM::from(*sys.drift_matrix, L);
  std::vector<GM> even_fields, odd_fields;
  for (const auto& y : sys.even_controls) even_fields.push_back(realize_double(g, y, L));
  for (const auto& y : sys.odd_controls) odd_fields.push_back(realize_double(g, y, L));

  Trajectory traj{start.m(), start.n(), L, {}};
  traj.samples.push_back({0.0, start});
  GM p = start;
  double time = 0.0;

  for (std::size_t s = 0; s < schedule.segments.size(); ++s) {
    const ControlSegment& seg = schedule.segments[s];
    const std::string where = "segment " + std::to_string(s);
    if (!std::isfinite(seg.duration) || seg.duration < 0.0) {
      throw PreconditionError(where + ": duration must be finite and non-negative");
    }
    if (seg.even_inputs.size() != even_fields.size() || seg.odd_inputs.size() != odd_fields.size()) {
      throw ShapeError(where + ": expected " + std::to_string(even_fields.size()) + " even and " +
                       std::to_string(odd_fields.size()) + " odd inputs");
    }
    GM u(start.m(), start.n(), L);
    for (std::size_t i = 0; i < even_fields.size(); ++i) {
      if (!std::isfinite(seg.even_inputs[i])) throw NumericError(where + ": non-finite even input");
      u += seg.even_inputs[i] * even_fields[i];
    }
    for (std::size_t j = 0; j < odd_fields.size(); ++j) {
      const GN& nu = seg.odd_inputs[j];
      if (nu.num_generators() != L) throw GeneratorCountError(where + ": odd input has the wrong L");
      if (!nu.is_zero() && nu.grade() != GradeKind::Odd) throw ParityError(where + ": odd input is not odd");
      for (Monomial k = 0; k < nu.size(); ++k) {
        if (!std::isfinite(nu[k])) throw NumericError(where + ": non-finite odd input");
      }
      u += nu * odd_fields[j];
    }
    if (seg.duration == 0.0) continue;

    auto rhs = [&](const GM& x) { return drift * x - x * drift + x * u; };
    const int steps = std::max(opts.min_steps_per_segment,
                               static_cast<int>(std::ceil(seg.duration / opts.max_step)));
    const double h = seg.duration / steps;
    for (int k = 0; k < steps; ++k) {
      const GM k1 = rhs(p);
      const GM k2 = rhs(p + (0.5 * h) * k1);
      const GM k3 = rhs(p + (0.5 * h) * k2);
      const GM k4 = rhs(p + h * k3);
      p += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
    if (!p.all_finite()) throw NumericError(where + ": state became non-finite");
    time += seg.duration;
    traj.samples.push_back({time, p});
  }
  return traj;
}

std::vector<GrassmannMatrix<double>> reachable_sample(const SystemSpec& sys,
                                                      const GrassmannMatrix<double>& start,
                                                      int n_schedules, double horizon,
                                                      std::uint64_t seed) {
  if (n_schedules < 0) throw PreconditionError("n_schedules must be non-negative");
  if (!std::isfinite(horizon) || horizon < 0.0) throw PreconditionError("horizon must be non-negative");
  const int L = start.num_generators();
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> segment_count(1, 3);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_real_distribution<double> input(-1.0, 1.0);

  std::vector<GrassmannMatrix<double>> out;
  out.reserve(n_schedules);
  for (int s = 0; s < n_schedules; ++s) {
    ControlSchedule sched;
    const int count = segment_count(rng);
    std::vector<double> weights(count);
    for (double& w : weights) w = unit(rng) + 1e-3;
    double total = 0.0;
    for (double w : weights) total += w;
    const double length = horizon * unit(rng);
    for (int c = 0; c < count; ++c) {
      ControlSegment seg;
      seg.duration = length * weights[c] / total;
      for (std::size_t i = 0; i < sys.even_controls.size(); ++i) seg.even_inputs.push_back(input(rng));
      for (std::size_t j = 0; j < sys.odd_controls.size(); ++j) {
        GN nu(L);
        if (L > 0) {
          const int gen = std::uniform_int_distribution<int>(1, L)(rng);
          nu = GN::generator(L, gen, input(rng));
        }
        seg.odd_inputs.push_back(std::move(nu));
      }
      sched.segments.push_back(std::move(seg));
    }
    out.push_back(simulate(sys, start, sched).final_state());
  }
  return out;
}

void write_trajectory_csv(const Trajectory& traj, std::ostream& os) {
  const int size = traj.m + traj.n;
  os << "# superctl trajectory m=" << traj.m << " n=" << traj.n << " L=" << traj.num_generators << "\n";
  os << "time";
  for (int i = 0; i < size; ++i) {
    for (int j = 0; j < size; ++j) os << ",P[" << i << "][" << j << "]";
  }
  os << "\n" << std::setprecision(17);
  for (const auto& sample : traj.samples) {
    os << sample.time;
    const Mat<double>& body = sample.state.body();
    for (int i = 0; i < size; ++i) {
      for (int j = 0; j < size; ++j) os << "," << body(i, j);
    }
    os << "\n";
  }
}

}  // namespace superctl
