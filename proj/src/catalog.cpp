#include "superctl/catalog.hpp"

#include <algorithm>
#include <map>
#include <regex>
#include <sstream>

#include "superctl/errors.hpp"

namespace superctl {

namespace {

using SM = SuperMatrix<Rational>;

struct Term {
  const char* name;
  long num;
  long den = 1;
};

struct Relation {
  const char* lhs;
  const char* rhs;
  std::vector<Term> value;
};

struct AdLine {
  int power;
  const char* element;
  std::vector<Term> value;
};

int index_in(const std::vector<BasisElement>& basis, const std::string& name) {
  for (std::size_t k = 0; k < basis.size(); ++k) {
    if (basis[k].name == name) return static_cast<int>(k);
  }
  throw UnknownNameError("no basis element named '" + name + "'");
}

RationalVector vec(const std::vector<BasisElement>& basis, const std::vector<Term>& terms) {
  RationalVector v = RationalVector::Zero(static_cast<Eigen::Index>(basis.size()));
  for (const auto& t : terms) v(index_in(basis, t.name)) += make_rational(t.num, t.den);
  return v;
}

std::vector<PrintedBracket> table_of(const std::vector<BasisElement>& basis,
                                     const std::vector<Relation>& rel) {
  std::vector<PrintedBracket> out;
  for (const auto& r : rel) {
    out.push_back({index_in(basis, r.lhs), index_in(basis, r.rhs), vec(basis, r.value)});
  }
  return out;
}

std::vector<PrintedAdValue> ad_of(const std::vector<BasisElement>& basis, const std::vector<AdLine>& lines) {
  std::vector<PrintedAdValue> out;
  for (const auto& l : lines) out.push_back({l.power, index_in(basis, l.element), vec(basis, l.value)});
  return out;
}

std::vector<BasisElement> basis_of(int evens, int odds) {
  std::vector<BasisElement> b;
  for (int i = 1; i <= evens; ++i) b.push_back({"Y" + std::to_string(i), Parity::Even});
  for (int i = 1; i <= odds; ++i) b.push_back({"Xi" + std::to_string(i), Parity::Odd});
  return b;
}

SM unit(int m, int n, int i, int j) { return SM::unit(m, n, i - 1, j - 1); }

SM diag(int m, int n, const std::vector<Rational>& d) {
  Mat<Rational> e = Mat<Rational>::Zero(m + n, m + n);
  for (int i = 0; i < m + n; ++i) e(i, i) = d[i];
  return SM(m, n, std::move(e), Parity::Even);
}

Rational q(long num, long den = 1) { return make_rational(num, den); }

std::string ad_subject(int power, const std::string& element) {
  return (power == 1 ? std::string("ad(X)(") : "ad^" + std::to_string(power) + "(X)(") + element + ")";
}

std::string str(const GradedDim& d) {
  std::ostringstream os;
  os << d;
  return os.str();
}

std::string join(const std::vector<std::string>& names) {
  std::string out;
  for (const auto& n : names) out += (out.empty() ? "" : ", ") + n;
  return out;
}

AlgebraPtr build(const std::string& name, const std::vector<BasisElement>& basis,
                 const std::vector<PrintedBracket>& printed, const std::vector<PrintedBracket>& corrections,
                 std::vector<SM> realization) {
  std::vector<PrintedBracket> table = printed;
  for (const auto& c : corrections) {
    auto it = std::find_if(table.begin(), table.end(),
                           [&](const PrintedBracket& p) { return p.i == c.i && p.j == c.j; });
    if (it == table.end()) throw ShapeError("correction for an unprinted relation");
    it->value = c.value;
  }
  return LieSuperalgebra::create(name, basis, expand_table(basis, table), std::move(realization));
}

CatalogEntry sl11() {
  CatalogEntry e;
  e.name = "sl(1|1)";
  const auto basis = basis_of(1, 2);
  e.paper_table = table_of(basis, {{"Xi1", "Xi2", {{"Y1", 1}}}});
  e.algebra = build(e.name, basis, e.paper_table, {},
                    {SM::identity(1, 1), unit(1, 1, 1, 2), unit(1, 1, 2, 1)});

  const AlgebraPtr& g = e.algebra;
  CatalogSystem ex1{make_system("example1", g, diag(1, 1, {q(2), q(1)}), {},
                                {AlgebraElement::basis(g, "Xi1"), AlgebraElement::basis(g, "Xi2")}),
                    PaperVerdict{Classification::TransitiveNotDecided, true, {1, 2}, false, GradedDim{0, 2},
                                 std::vector<std::string>{"Y1"},
                                 "transitive by LSARC but not locally controllable"},
                    ad_of(basis, {{1, "Xi1", {{"Xi2", 1}}}, {1, "Xi2", {{"Xi1", 1}}}})};
  e.systems.push_back(std::move(ex1));
  e.discrepancies = {
      {Discrepancy::Kind::AdValue, "example1", "ad(X)(Xi1)", "Xi2", "Xi1"},
      {Discrepancy::Kind::AdValue, "example1", "ad(X)(Xi2)", "Xi1", "-Xi2"},
  };
  return e;
}

CatalogEntry sl21() {
  CatalogEntry e;
  e.name = "sl(2|1)";
  const auto basis = basis_of(4, 4);
  e.paper_table = table_of(basis, {
                                      {"Y1", "Y3", {{"Y3", 1}}},
                                      {"Y1", "Y4", {{"Y4", -1}}},
                                      {"Y1", "Xi1", {{"Xi1", 1, 2}}},
                                      {"Y1", "Xi3", {{"Xi3", -1, 2}}},
                                      {"Y1", "Xi2", {{"Xi2", 1, 2}}},
                                      {"Y1", "Xi4", {{"Xi4", -1, 2}}},
                                      {"Y2", "Xi1", {{"Xi1", 1, 2}}},
                                      {"Y2", "Xi3", {{"Xi3", 1, 2}}},
                                      {"Y2", "Xi2", {{"Xi2", -1, 2}}},
                                      {"Y2", "Xi4", {{"Xi4", -1, 2}}},
                                      {"Y3", "Xi3", {{"Xi1", -1}}},
                                      {"Y3", "Xi4", {{"Xi2", 1}}},
                                      {"Y4", "Xi1", {{"Xi3", -1}}},
                                      {"Y4", "Xi2", {{"Xi4", 1}}},
                                      {"Y3", "Y4", {{"Y1", 2}}},
                                      {"Xi1", "Xi2", {{"Y3", 1}}},
                                      {"Xi1", "Xi4", {{"Y2", 1}, {"Y1", -1}}},
                                      {"Xi3", "Xi2", {{"Y2", 1}, {"Y1", 1}}},
                                      {"Xi3", "Xi4", {{"Y4", 1}}},
                                  });
  e.algebra = build(e.name, basis, e.paper_table, {},
                    {diag(2, 1, {q(1, 2), q(-1, 2), q(0)}), diag(2, 1, {q(1, 2), q(1, 2), q(1)}),
                     unit(2, 1, 1, 2), unit(2, 1, 2, 1), unit(2, 1, 3, 2), unit(2, 1, 1, 3),
                     unit(2, 1, 3, 1), unit(2, 1, 2, 3)});

  const AlgebraPtr& g = e.algebra;
  auto controls = [&](const char* name) {
    return std::vector<AlgebraElement>{AlgebraElement::basis(g, name)};
  };
  const std::vector<AlgebraElement> odd{AlgebraElement::basis(g, "Xi1"), AlgebraElement::basis(g, "Xi2")};

  CatalogSystem ex2{make_system("example2", g, unit(2, 1, 2, 1), controls("Y2"), odd),
                    PaperVerdict{Classification::LocallyControllable, true, {4, 4}, true, GradedDim{4, 4}, std::nullopt,
                                 "locally controllable by the super ad-rank condition"},
                    ad_of(basis, {{1, "Y3", {{"Y1", 1}}},
                                  {1, "Xi1", {{"Xi3", 1}}},
                                  {1, "Xi2", {{"Xi4", 1}}},
                                  {2, "Y3", {{"Y4", 1}}}})};
  CatalogSystem rot{make_system("example2-rotation", g, unit(2, 1, 1, 2) - unit(2, 1, 2, 1), controls("Y2"), odd),
                    PaperVerdict{Classification::TransitiveNotDecided, true, {4, 4}, false, std::nullopt,
                                 std::vector<std::string>{"Y1", "Y4"},
                                 "transitive by LSARC but not controllable by the super ad-rank condition"},
                    ad_of(basis, {{1, "Xi1", {{"Xi3", 1}}},
                                  {1, "Xi2", {{"Xi4", 1}}},
                                  {2, "Xi1", {{"Xi1", -1}}},
                                  {2, "Xi2", {{"Xi2", 1}}}})};
  e.systems.push_back(std::move(ex2));
  e.systems.push_back(std::move(rot));
  e.discrepancies = {
      {Discrepancy::Kind::AdValue, "example2", "ad(X)(Y3)", "Y1", "-2*Y1"},
      {Discrepancy::Kind::AdValue, "example2", "ad(X)(Xi1)", "Xi3", "-Xi3"},
      {Discrepancy::Kind::AdValue, "example2", "ad^2(X)(Y3)", "Y4", "-2*Y4"},
      // The printed argument applies ad(X) to Y3, which lies in the generated
      // subalgebra but not among the control vectors.
      {Discrepancy::Kind::Verdict, "example2", "classification", "LocallyControllable", "TransitiveNotDecided"},
      {Discrepancy::Kind::Verdict, "example2", "ad_rank", "true", "false"},
      {Discrepancy::Kind::Verdict, "example2", "ad_rank_dim", "(4|4)", "(1|4)"},
      {Discrepancy::Kind::AdValue, "example2-rotation", "ad(X)(Xi2)", "Xi4", "-Xi4"},
      {Discrepancy::Kind::AdValue, "example2-rotation", "ad^2(X)(Xi2)", "Xi2", "-Xi2"},
      {Discrepancy::Kind::Verdict, "example2-rotation", "witnesses", "Y1, Y4", "Y1, Y3, Y4"},
  };
  return e;
}

CatalogEntry osp21() {
  CatalogEntry e;
  e.name = "osp(2|1)";
  const auto basis = basis_of(3, 2);
  e.paper_table = table_of(basis, {
                                      {"Y1", "Y2", {{"Y1", 1}}},
                                      {"Y1", "Y3", {{"Y3", -1}}},
                                      {"Y1", "Xi1", {{"Xi1", 1, 2}}},
                                      {"Y1", "Xi2", {{"Xi2", -1, 2}}},
                                      {"Y2", "Xi2", {{"Xi1", -1}}},
                                      {"Y2", "Y3", {{"Y1", 2}}},
                                      {"Y3", "Xi1", {{"Xi2", -1}}},
                                      {"Xi1", "Xi2", {{"Y1", 1, 2}}},
                                      {"Xi1", "Xi1", {{"Y2", 1, 2}}},
                                      {"Xi2", "Xi2", {{"Y3", -1, 2}}},
                                  });
  const std::vector<PrintedBracket> corrections = table_of(basis, {{"Y1", "Y2", {{"Y2", 1}}}});
  e.algebra = build(e.name, basis, e.paper_table, corrections,
                    {diag(2, 1, {q(1, 2), q(-1, 2), q(0)}), unit(2, 1, 1, 2), unit(2, 1, 2, 1),
                     q(1, 2) * (unit(2, 1, 1, 3) + unit(2, 1, 3, 2)),
                     q(1, 2) * (unit(2, 1, 3, 1) - unit(2, 1, 2, 3))});

  const AlgebraPtr& g = e.algebra;
  CatalogSystem ex3{make_system("example3", g, unit(2, 1, 1, 2) + unit(2, 1, 2, 1),
                                {AlgebraElement::basis(g, "Y2")}, {AlgebraElement::basis(g, "Xi1")}),
                    PaperVerdict{Classification::LocallyControllable, true, {3, 2}, true, GradedDim{3, 2}, std::nullopt,
                                 "locally controllable by super ad-rank condition"},
                    ad_of(basis, {{1, "Y2", {{"Y1", -2}}},
                                  {1, "Xi1", {{"Xi2", -1}}},
                                  {2, "Y2", {{"Y3", 1}, {"Y1", -1}}},
                                  {2, "Xi1", {{"Xi1", 1}}}})};
  e.systems.push_back(std::move(ex3));
  e.discrepancies = {
      {Discrepancy::Kind::StructureConstant, "", "[Y1,Y2]", "Y1", "Y2"},
      {Discrepancy::Kind::AdValue, "example3", "ad^2(X)(Y2)", "-Y1 + Y3", "2*Y2 - 2*Y3"},
  };
  return e;
}

CatalogEntry gl(int m, int n) {
  if (m < 0 || n < 0 || m + n == 0) throw ShapeError("gl(m|n) needs m + n >= 1");
  const int size = m + n;
  const bool wide = size >= 10;
  std::vector<BasisElement> basis;
  std::vector<SM> mats;
  for (int i = 0; i < size; ++i) {
    for (int j = 0; j < size; ++j) {
      basis.push_back({"E" + std::to_string(i + 1) + (wide ? "_" : "") + std::to_string(j + 1),
                       position_parity(m, i, j)});
      mats.push_back(SM::unit(m, n, i, j));
    }
  }
  const int dim = size * size;
  // [E_ij, E_kl] = d_jk E_il - (-1)^{|E_ij||E_kl|} d_li E_kj
  std::vector<RationalVector> constants(static_cast<std::size_t>(dim) * dim, RationalVector::Zero(dim));
  for (int a = 0; a < dim; ++a) {
    const int i = a / size, j = a % size;
    for (int b = 0; b < dim; ++b) {
      const int k = b / size, l = b % size;
      RationalVector& c = constants[static_cast<std::size_t>(a) * dim + b];
      if (j == k) c(i * size + l) += 1;
      if (l == i) c(k * size + j) -= koszul_sign(basis[a].parity, basis[b].parity);
    }
  }
  CatalogEntry e;
  e.name = "gl(" + std::to_string(m) + "|" + std::to_string(n) + ")";
  e.algebra = LieSuperalgebra::create(e.name, std::move(basis), std::move(constants), std::move(mats));
  return e;
}

CatalogEntry abelian(int m, int n) {
  if (m < 0 || n < 0 || m + n == 0) throw ShapeError("abelian(m|n) needs m + n >= 1");
  const int dim = m + n;
  CatalogEntry e;
  e.name = "abelian(" + std::to_string(m) + "|" + std::to_string(n) + ")";
  e.algebra = LieSuperalgebra::create(e.name, basis_of(m, n),
                                      std::vector<RationalVector>(static_cast<std::size_t>(dim) * dim,
                                                                  RationalVector::Zero(dim)));
  return e;
}

/// Index of a matching record, or nothing.
const Discrepancy* find_record(const CatalogEntry& e, Discrepancy::Kind kind, const std::string& system,
                               const std::string& subject) {
  for (const auto& d : e.discrepancies) {
    if (d.kind == kind && d.system == system && d.subject == subject) return &d;
  }
  return nullptr;
}

/// Compares a printed and a computed reading, consulting the records.
CheckItem compare(const CatalogEntry& e, Discrepancy::Kind kind, const std::string& system,
                  const std::string& check, const std::string& printed, const std::string& computed) {
  CheckItem item{e.name, system, check, CheckStatus::Pass, computed};
  const Discrepancy* rec = find_record(e, kind, system, check);
  if (printed == computed) {
    if (rec) {
      item.status = CheckStatus::Fail;
      item.detail = "discrepancy record no longer applies: " + computed;
    }
    return item;
  }
  if (rec && rec->printed == printed && rec->computed == computed) {
    item.status = CheckStatus::Documented;
    item.detail = "printed " + printed + ", computed " + computed;
  } else {
    item.status = CheckStatus::Fail;
    item.detail = "printed " + printed + ", computed " + computed + (rec ? " (record disagrees)" : "");
  }
  return item;
}

std::string bool_str(bool b) { return b ? "true" : "false"; }

}  // namespace

std::string to_string(Discrepancy::Kind kind) {
  switch (kind) {
    case Discrepancy::Kind::StructureConstant:
      return "structure-constant";
    case Discrepancy::Kind::AdValue:
      return "ad-value";
    default:
      return "verdict";
  }
}

const CatalogSystem& CatalogEntry::system(const std::string& system_name) const {
  for (const auto& s : systems) {
    if (s.spec.name == system_name) return s;
  }
  throw UnknownNameError("no system named '" + system_name + "' in " + name);
}

std::vector<PaperVerdict> CatalogEntry::paper_verdicts() const {
  std::vector<PaperVerdict> out;
  for (const auto& s : systems) {
    if (s.expected) out.push_back(*s.expected);
  }
  return out;
}

std::vector<RationalVector> expand_table(const std::vector<BasisElement>& basis,
                                         const std::vector<PrintedBracket>& table) {
  const int dim = static_cast<int>(basis.size());
  std::vector<RationalVector> c(static_cast<std::size_t>(dim) * dim, RationalVector::Zero(dim));
  std::vector<bool> seen(c.size(), false);
  auto put = [&](int i, int j, const RationalVector& v) {
    const std::size_t at = static_cast<std::size_t>(i) * dim + j;
    if (seen[at] && c[at] != v) {
      throw ShapeError("inconsistent entries for [" + basis[i].name + ", " + basis[j].name + "]");
    }
    seen[at] = true;
    c[at] = v;
  };
  for (const auto& p : table) {
    if (p.i < 0 || p.j < 0 || p.i >= dim || p.j >= dim || p.value.size() != dim) {
      throw ShapeError("printed relation out of range");
    }
    put(p.i, p.j, p.value);
    put(p.j, p.i, Rational(-koszul_sign(basis[p.i].parity, basis[p.j].parity)) * p.value);
  }
  return c;
}

std::vector<std::string> catalog_names() {
  return {"sl(1|1)", "sl(2|1)", "osp(2|1)", "gl(1|1)", "gl(2|1)", "abelian(2|1)"};
}

CatalogEntry load(const std::string& name) {
  CatalogEntry e;
  std::smatch match;
  static const std::regex parametric(R"((gl|abelian)\((\d+)\|(\d+)\))");
  if (name == "sl(1|1)") {
    e = sl11();
  } else if (name == "sl(2|1)") {
    e = sl21();
  } else if (name == "osp(2|1)") {
    e = osp21();
  } else if (std::regex_match(name, match, parametric)) {
    const int m = std::stoi(match[2]), n = std::stoi(match[3]);
    if (m > 8 || n > 8) throw ShapeError("parametric catalog entries are limited to m, n <= 8");
    e = match[1] == "gl" ? gl(m, n) : abelian(m, n);
  } else {
    throw UnknownNameError("unknown catalog entry '" + name + "'");
  }
  const AxiomReport axioms = check_graded_axioms(*e.algebra);
  if (!axioms.ok()) throw Error(name + " fails the graded axioms");
  return e;
}

bool CatalogReport::ok() const { return count(CheckStatus::Fail) == 0; }

int CatalogReport::count(CheckStatus s) const {
  return static_cast<int>(std::count_if(items.begin(), items.end(), [s](const CheckItem& i) { return i.status == s; }));
}

std::string to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::Pass:
      return "PASS";
    case CheckStatus::Documented:
      return "DOCUMENTED";
    default:
      return "FAIL";
  }
}

std::string to_string(const CatalogReport& report) {
  std::ostringstream os;
  for (const auto& i : report.items) {
    os << to_string(i.status) << "  " << i.entry;
    if (!i.system.empty()) os << " / " << i.system;
    os << "  " << i.check;
    if (!i.detail.empty()) os << ": " << i.detail;
    os << "\n";
  }
  os << report.count(CheckStatus::Pass) << " passed, " << report.count(CheckStatus::Documented)
     << " documented discrepancies, " << report.count(CheckStatus::Fail) << " failed\n";
  return os.str();
}

CatalogReport verify_entry(const CatalogEntry& e) {
  CatalogReport report;
  const LieSuperalgebra& g = *e.algebra;
  const int dim = g.dim();

  const AxiomReport axioms = check_graded_axioms(g);
  report.items.push_back({e.name, "", "graded axioms", axioms.ok() ? CheckStatus::Pass : CheckStatus::Fail,
                          axioms.ok() ? "" : std::to_string(axioms.violations.size()) + " violations"});

  if (g.has_realization()) {
    std::vector<std::string> names;
    for (const auto& b : g.basis()) names.push_back(b.name);
    CheckItem oracle{e.name, "", "matrix oracle", CheckStatus::Pass, ""};
    try {
      const AlgebraPtr o = from_matrix_basis(g.realization(), names, e.name);
      int differing = 0;
      for (int i = 0; i < dim; ++i) {
        for (int j = 0; j < dim; ++j) {
          if (o->constant(i, j) != g.constant(i, j)) {
            if (differing++ == 0) oracle.detail = "[" + names[i] + "," + names[j] + "] differs";
          }
        }
      }
      if (differing > 0) oracle.status = CheckStatus::Fail;

      if (!e.paper_table.empty()) {
        std::vector<BasisElement> basis = g.basis();
        const auto printed = expand_table(basis, e.paper_table);
        for (int i = 0; i < dim; ++i) {
          for (int j = i; j < dim; ++j) {
            const auto& p = printed[static_cast<std::size_t>(i) * dim + j];
            const std::string subject = "[" + names[i] + "," + names[j] + "]";
            const bool recorded = find_record(e, Discrepancy::Kind::StructureConstant, "", subject);
            if (p == o->constant(i, j) && !recorded) continue;
            report.items.push_back(compare(e, Discrepancy::Kind::StructureConstant, "", subject,
                                           to_string(AlgebraElement(e.algebra, p)),
                                           to_string(AlgebraElement(e.algebra, o->constant(i, j)))));
          }
        }
      }
    } catch (const Error& err) {
      oracle.status = CheckStatus::Fail;
      oracle.detail = err.what();
    }
    report.items.push_back(std::move(oracle));
  }

  if (e.name.rfind("sl(", 0) == 0) {
    bool traceless = true;
    for (const auto& mat : g.realization()) traceless = traceless && supertrace(mat) == 0;
    report.items.push_back({e.name, "", "supertrace", traceless ? CheckStatus::Pass : CheckStatus::Fail,
                            traceless ? "" : "a basis matrix has nonzero supertrace"});
  }

  for (const auto& s : e.systems) {
    const std::string& sys = s.spec.name;
    for (const auto& ad : s.printed_ad) {
      const AlgebraElement computed = ad_apply(s.spec.drift, AlgebraElement::basis(e.algebra, ad.element), ad.power);
      report.items.push_back(compare(e, Discrepancy::Kind::AdValue, sys,
                                     ad_subject(ad.power, g.basis(ad.element).name),
                                     to_string(AlgebraElement(e.algebra, ad.value)), to_string(computed)));
    }
    if (!s.expected) continue;
    const PaperVerdict& pv = *s.expected;
    const Verdict v = decide(s.spec);
    const auto verdict_check = [&](const std::string& what, const std::string& printed,
                                   const std::string& computed) {
      report.items.push_back(compare(e, Discrepancy::Kind::Verdict, sys, what, printed, computed));
    };
    verdict_check("classification", to_string(pv.classification), to_string(v.classification));
    verdict_check("lsarc", bool_str(pv.lsarc), bool_str(v.lsarc.holds));
    verdict_check("lsarc_dim", str(pv.lsarc_dim), str(v.lsarc.dim));
    verdict_check("ad_rank", bool_str(pv.ad_rank), bool_str(v.ad_rank.holds));
    if (pv.ad_rank_dim) verdict_check("ad_rank_dim", str(*pv.ad_rank_dim), str(v.ad_rank.dim));
    if (pv.witnesses) verdict_check("witnesses", join(*pv.witnesses), join(v.ad_rank.witnesses));
  }
  return report;
}

CatalogReport verify_catalog(const std::optional<std::string>& only) {
  CatalogReport report;
  for (const auto& name : catalog_names()) {
    if (only && *only != name) continue;
    CatalogReport part = verify_entry(load(name));
    report.items.insert(report.items.end(), part.items.begin(), part.items.end());
  }
  return report;
}

}  // namespace superctl
