#pragma once

#include <optional>
#include <string>
#include <vector>

#include "superctl/rank.hpp"

namespace superctl {

/// One printed commutation relation [e_i, e_j] = value.
struct PrintedBracket {
  int i = 0, j = 0;
  RationalVector value;
};

/// One printed value ad^power(X)(e_element).
struct PrintedAdValue {
  int power = 1;
  int element = 0;
  RationalVector value;
};

/// Claims a worked example makes about a system.
struct PaperVerdict {
  Classification classification = Classification::NotTransitive;
  bool lsarc = false;
  GradedDim lsarc_dim;
  bool ad_rank = false;
  /// Graded dimension of the linear span, when known.
  std::optional<GradedDim> ad_rank_dim;
  /// Basis elements expected outside the linear span, if listed.
  std::optional<std::vector<std::string>> witnesses;
  std::string annotation;
};

/// Where a printed value disagrees with direct matrix computation.
struct Discrepancy {
  enum class Kind { StructureConstant, AdValue, Verdict };
  Kind kind = Kind::StructureConstant;
  /// Empty for algebra-level records.
  std::string system;
  /// "[Y1,Y2]", "ad^2(X)(Y3)", "classification", ...
  std::string subject;
  std::string printed;
  std::string computed;
};

std::string to_string(Discrepancy::Kind kind);

struct CatalogSystem {
  SystemSpec spec;
  std::optional<PaperVerdict> expected;
  std::vector<PrintedAdValue> printed_ad;
};

struct CatalogEntry {
  std::string name;
  /// Constants are the matrix-oracle values; printed ones live in paper_table.
  AlgebraPtr algebra;
  /// Relations as printed (one orientation per pair); empty when not from a table.
  std::vector<PrintedBracket> paper_table;
  std::vector<CatalogSystem> systems;
  std::vector<Discrepancy> discrepancies;

  const CatalogSystem& system(const std::string& name) const;
  std::vector<PaperVerdict> paper_verdicts() const;
};

/// "sl(1|1)", "sl(2|1)", "osp(2|1)", "gl(m|n)", "abelian(m|n)". Graded axioms
/// are checked before returning. Throws UnknownNameError.
CatalogEntry load(const std::string& name);

/// The entries verify_catalog walks by default.
std::vector<std::string> catalog_names();

/// Full constants table implied by a printed one through graded antisymmetry;
/// throws ShapeError when a pair is printed twice inconsistently.
std::vector<RationalVector> expand_table(const std::vector<BasisElement>& basis,
                                         const std::vector<PrintedBracket>& table);

enum class CheckStatus { Pass, Documented, Fail };

std::string to_string(CheckStatus s);

struct CheckItem {
  std::string entry;
  std::string system;
  std::string check;
  CheckStatus status = CheckStatus::Pass;
  std::string detail;
};

struct CatalogReport {
  std::vector<CheckItem> items;

  bool ok() const;
  int count(CheckStatus s) const;
};

std::string to_string(const CatalogReport& report);

/// Axioms, matrix oracle vs printed table, printed ad values and verdicts.
/// Mismatches covered by a discrepancy record are Documented; others Fail.
CatalogReport verify_entry(const CatalogEntry& entry);

/// Runs verify_entry over catalog_names(), or only the entry named `only`.
CatalogReport verify_catalog(const std::optional<std::string>& only = std::nullopt);

}  // namespace superctl
