#pragma once

#include <optional>
#include <string>
#include <vector>

#include "superctl/closure.hpp"

namespace superctl {

/// A linear control system on a matrix Lie supergroup:
/// dynamics X + sum_i u_i Y^i + sum_j nu_j Xi^j.
struct SystemSpec {
  std::string name;
  AlgebraPtr algebra;
  AdOperator drift;
  /// Realized drift, present whenever the drift came from (or can be turned
  /// into) a matrix. Needed for simulation.
  std::optional<SuperMatrix<Rational>> drift_matrix;
  std::vector<AlgebraElement> even_controls;
  std::vector<AlgebraElement> odd_controls;

  /// C(Sigma): even controls followed by odd controls.
  std::vector<AlgebraElement> controls() const;
  /// Throws ParityError / PreconditionError when the invariants fail.
  void validate() const;
};

SystemSpec make_system(std::string name, const AlgebraElement& drift,
                       std::vector<AlgebraElement> even_controls,
                       std::vector<AlgebraElement> odd_controls);
SystemSpec make_system(std::string name, const AlgebraPtr& algebra,
                       const SuperMatrix<Rational>& drift, std::vector<AlgebraElement> even_controls,
                       std::vector<AlgebraElement> odd_controls);

/// Drift given directly as a derivation; no realized matrix is recorded.
SystemSpec make_system(std::string name, const AdOperator& drift,
                       std::vector<AlgebraElement> even_controls,
                       std::vector<AlgebraElement> odd_controls);

struct RankOptions {
  /// Highest ad power used; defaults to total dimension - 1.
  std::optional<int> p_cap;
};

struct RankResult {
  bool holds = false;
  /// Scalar reading: total dimensions agree (reported, not used for decisions).
  bool total_holds = false;
  GradedDim dim;
  GradedSubspace span;
  /// Ambient basis elements outside the span.
  std::vector<std::string> witnesses;
};

/// LSARC: bracket-closed span of C(Sigma) and its ad(X)-orbit has full graded dimension.
RankResult lsarc(const SystemSpec& sys, const RankOptions& opts = {});
/// Super ad-rank: linear span of the same family has full graded dimension.
RankResult ad_rank(const SystemSpec& sys, const RankOptions& opts = {});

struct KalmanResult {
  bool controllable = false;
  GradedDim rank;
  RowEchelon<Rational> even_span;
  RowEchelon<Rational> odd_span;
};

/// Graded rank of [B, AB, ..., A^{m+n-1}B] on R^{m|n}. A must be even with
/// zero off-diagonal blocks; even columns live on the first m coordinates and
/// odd columns on the last n.
KalmanResult kalman_rank(const SuperMatrix<Rational>& a, const std::vector<RationalVector>& even_cols,
                         const std::vector<RationalVector>& odd_cols);

enum class Classification { NotTransitive, TransitiveNotDecided, LocallyControllable };

std::string to_string(Classification c);

struct Verdict {
  RankResult lsarc;
  RankResult ad_rank;
  GradedDim ambient;
  Classification classification = Classification::NotTransitive;
  /// Reading in the style of the worked examples, e.g. "transitive by LSARC".
  std::string annotation;
  HullTrace hull_trace;
};

Verdict decide(const SystemSpec& sys, const RankOptions& opts = {});

}  // namespace superctl
