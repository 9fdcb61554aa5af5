#include "superctl/rank.hpp"

#include <algorithm>
#include <utility>

#include "superctl/errors.hpp"

namespace superctl {

namespace {

int power_bound(const SystemSpec& sys, const RankOptions& opts) {
  const int bound = std::max(0, sys.algebra->dim() - 1);
  if (!opts.p_cap) return bound;
  if (*opts.p_cap < 0) throw PreconditionError("p_cap must be non-negative");
  return *opts.p_cap;
}

RankResult finish(const SystemSpec& sys, GradedSubspace span) {
  const GradedDim ambient = sys.algebra->graded_dim();
  RankResult r{span.dim() == ambient, span.dim().total() == ambient.total(), span.dim(), span, {}};
  for (int k : missing_basis_elements(span)) r.witnesses.push_back(sys.algebra->basis(k).name);
  return r;
}

}  // namespace

std::vector<AlgebraElement> SystemSpec::controls() const {
  std::vector<AlgebraElement> out = even_controls;
  out.insert(out.end(), odd_controls.begin(), odd_controls.end());
  return out;
}

void SystemSpec::validate() const {
  if (!algebra) throw PreconditionError("system has no algebra");
  require_same_algebra(algebra, drift.algebra());
  if (drift.parity() != Parity::Even) throw ParityError("drift must be even");
  if (even_controls.empty() && odd_controls.empty()) {
    throw PreconditionError("system needs at least one control vector");
  }
  for (std::size_t i = 0; i < even_controls.size(); ++i) {
    require_same_algebra(algebra, even_controls[i].algebra());
    if (even_controls[i].grade() != GradeKind::Even) {
      throw ParityError("even control " + std::to_string(i) + " is not even");
    }
  }
  for (std::size_t j = 0; j < odd_controls.size(); ++j) {
    require_same_algebra(algebra, odd_controls[j].algebra());
    if (odd_controls[j].grade() != GradeKind::Odd || odd_controls[j].is_zero()) {
      throw ParityError("odd control " + std::to_string(j) + " is not odd");
    }
  }
  // The drift must act as an even map: even basis to even span, odd to odd.
  for (int k = 0; k < algebra->dim(); ++k) {
    const AlgebraElement image = drift.apply(AlgebraElement::basis(algebra, k));
    if (!image.is_zero() && image.grade() != to_grade(algebra->parity(k))) {
      throw ParityError("drift does not preserve the parity of " + algebra->basis(k).name);
    }
  }
}

SystemSpec make_system(std::string name, const AlgebraElement& drift,
                       std::vector<AlgebraElement> even_controls,
                       std::vector<AlgebraElement> odd_controls) {
  const AlgebraPtr& g = drift.algebra();
  std::optional<SuperMatrix<Rational>> realized;
  if (g->has_realization()) realized = g->realize(drift.coeffs());
  SystemSpec sys{std::move(name),          g, AdOperator::from_element(drift), std::move(realized),
                 std::move(even_controls), std::move(odd_controls)};
  sys.validate();
  return sys;
}

SystemSpec make_system(std::string name, const AdOperator& drift,
                       std::vector<AlgebraElement> even_controls,
                       std::vector<AlgebraElement> odd_controls) {
  SystemSpec sys{std::move(name),          drift.algebra(),          drift, std::nullopt,
                 std::move(even_controls), std::move(odd_controls)};
  sys.validate();
  return sys;
}

SystemSpec make_system(std::string name, const AlgebraPtr& algebra,
                       const SuperMatrix<Rational>& drift, std::vector<AlgebraElement> even_controls,
                       std::vector<AlgebraElement> odd_controls) {
  SystemSpec sys{std::move(name),          algebra, AdOperator::from_matrix(algebra, drift), drift,
                 std::move(even_controls), std::move(odd_controls)};
  sys.validate();
  return sys;
}

RankResult lsarc(const SystemSpec& sys, const RankOptions& opts) {
  sys.validate();
  return finish(sys, lsa_span(sys.algebra, ad_orbit(sys.drift, sys.controls(), power_bound(sys, opts))));
}

RankResult ad_rank(const SystemSpec& sys, const RankOptions& opts) {
  sys.validate();
  return finish(sys,
                subspace_span(sys.algebra, ad_orbit(sys.drift, sys.controls(), power_bound(sys, opts))));
}

KalmanResult kalman_rank(const SuperMatrix<Rational>& a, const std::vector<RationalVector>& even_cols,
                         const std::vector<RationalVector>& odd_cols) {
  const int m = a.m(), n = a.n(), size = a.size();
  if (!exactly_zero(a.block_b()) || !exactly_zero(a.block_c())) {
    throw ParityError("Kalman drift must not mix even and odd coordinates");
  }
  KalmanResult r{false, {}, RowEchelon<Rational>(size), RowEchelon<Rational>(size)};
  auto run = [&](const std::vector<RationalVector>& cols, int lo, int hi, RowEchelon<Rational>& span,
                 const char* what) {
    for (const auto& b : cols) {
      if (b.size() != size) throw ShapeError(std::string(what) + " column has wrong length");
      for (int i = 0; i < size; ++i) {
        if ((i < lo || i >= hi) && b(i) != 0) {
          throw ParityError(std::string(what) + " column has entries outside its block");
        }
      }
      RationalVector v = b;
      for (int power = 0; power < size; ++power) {
        span.insert(v);
        v = a.entries() * v;
      }
    }
  };
  run(even_cols, 0, m, r.even_span, "even");
  run(odd_cols, m, size, r.odd_span, "odd");
  r.rank = {static_cast<int>(r.even_span.rank()), static_cast<int>(r.odd_span.rank())};
  r.controllable = r.rank == GradedDim{m, n};
  return r;
}

std::string to_string(Classification c) {
  switch (c) {
    case Classification::NotTransitive:
      return "NotTransitive";
    case Classification::TransitiveNotDecided:
      return "TransitiveNotDecided";
    default:
      return "LocallyControllable";
  }
}

Verdict decide(const SystemSpec& sys, const RankOptions& opts) {
  Verdict v{lsarc(sys, opts), ad_rank(sys, opts), sys.algebra->graded_dim(),
            Classification::NotTransitive, {}, {}};
  v.hull_trace = ad_hull(sys.drift, lsa_span(sys.algebra, sys.controls())).trace;
  if (v.ad_rank.holds) {
    v.classification = Classification::LocallyControllable;
    v.annotation = "transitive by LSARC; locally controllable by the super ad-rank condition";
  } else if (v.lsarc.holds) {
    v.classification = Classification::TransitiveNotDecided;
    v.annotation = "transitive by LSARC but not locally controllable";
  } else {
    v.classification = Classification::NotTransitive;
    v.annotation = "not transitive: LSARC fails";
  }
  return v;
}

}  // namespace superctl
