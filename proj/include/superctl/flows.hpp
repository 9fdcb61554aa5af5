#pragma once

#include <cstdint>
#include <functional>
#include <ostream>
#include <string>
#include <vector>

#include "superctl/rank.hpp"

namespace superctl {

struct InvarianceReport {
  bool ok = true;
  /// Basis elements whose bracket with the drift leaves the span.
  std::vector<std::string> witnesses;
};

/// For every realized basis matrix Y: super_bracket(A, Y) lies in the realized span.
InvarianceReport check_ad_invariance(const SuperMatrix<Rational>& a, const LieSuperalgebra& g);

struct HullFlowReport {
  bool exact_ok = false;
  bool sampled_ok = false;
  /// Largest relative least-squares residual over the sampled conjugations.
  double max_residual = 0.0;

  bool ok() const { return exact_ok && sampled_ok; }
};

/// ad(A)(hull) within hull exactly, and e^{tA} Y e^{-tA} in the realized hull
/// span (relative residual <= 1e-8) for t in {+-1, +-0.5}.
HullFlowReport check_hull_flow_invariance(const SuperMatrix<Rational>& a, const GradedSubspace& hull);

using Coordinates = std::vector<GrassmannNumber<double>>;
/// A vector field on R_S^{m|n}, evaluated coordinatewise.
using VectorField = std::function<Coordinates(const Coordinates&)>;

/// p -> A(p) + q with A an even (block-diagonal) real map.
VectorField linear_field(const SuperMatrix<Rational>& a, const SuperPoint<double>& q);

/// [X, b](p) = DX(p)[b] for a constant field b, by central differences.
Coordinates bracket_with_constant(const VectorField& field, const Coordinates& p,
                                  const std::vector<double>& b);

/// True iff the field brackets every constant basis field into a constant
/// field, compared at two distinct Grassmann-valued sample points.
bool check_linear_field_normalizer(const VectorField& field, int m, int n, int num_generators);
bool check_linear_field_normalizer(const SuperMatrix<Rational>& a, const SuperPoint<double>& q);

struct ControlSegment {
  double duration = 0.0;
  std::vector<double> even_inputs;
  /// Odd Grassmann inputs nu_j.
  std::vector<GrassmannNumber<double>> odd_inputs;
};

struct ControlSchedule {
  std::vector<ControlSegment> segments;
};

struct TrajectorySample {
  double time = 0.0;
  GrassmannMatrix<double> state;
};

struct Trajectory {
  int m = 0, n = 0, num_generators = 0;
  std::vector<TrajectorySample> samples;

  const GrassmannMatrix<double>& final_state() const { return samples.back().state; }
};

struct SimulationOptions {
  int min_steps_per_segment = 64;
  double max_step = 0.01;
};

/// Integrates dP/dt = AP - PA + P (sum u_i Y^i + sum nu_j Xi^j) segment by
/// segment with classical RK4. The drift acts by conjugation; controls are
/// left-invariant fields.
Trajectory simulate(const SystemSpec& sys, const GrassmannMatrix<double>& start,
                    const ControlSchedule& schedule, const SimulationOptions& opts = {});

/// Endpoints of randomized schedules of total duration at most `horizon`. Diagnostic only.
std::vector<GrassmannMatrix<double>> reachable_sample(const SystemSpec& sys,
                                                      const GrassmannMatrix<double>& start,
                                                      int n_schedules, double horizon,
                                                      std::uint64_t seed = 0);

/// `# superctl trajectory m=.. n=.. L=..` header, then time plus row-major body entries.
void write_trajectory_csv(const Trajectory& traj, std::ostream& os);

}  // namespace superctl
