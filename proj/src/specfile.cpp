#include "superctl/specfile.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>
#include <tuple>

#include "superctl/errors.hpp"

namespace superctl {

namespace {

std::string at(const std::string& field, std::size_t i) { return field + "[" + std::to_string(i) + "]"; }

const Json& require(const Json& obj, const char* key, const std::string& field) {
  if (!obj.is_object()) throw ParseError(field, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) throw ParseError(field + "." + key, "missing");
  return *it;
}

const Json& require_array(const Json& v, const std::string& field) {
  if (!v.is_array()) throw ParseError(field, "expected an array");
  return v;
}

long long integer(const Json& v, const std::string& field) {
  if (!v.is_number_integer()) throw ParseError(field, "expected an integer");
  return v.get<long long>();
}

int small_int(const Json& v, const std::string& field, int lo, int hi) {
  const long long x = integer(v, field);
  if (x < lo || x > hi) {
    throw ParseError(field, "must lie in " + std::to_string(lo) + ".." + std::to_string(hi));
  }
  return static_cast<int>(x);
}

double real(const Json& v, const std::string& field) {
  if (!v.is_number()) throw ParseError(field, "expected a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) throw ParseError(field, "must be finite");
  return x;
}

std::string text(const Json& v, const std::string& field) {
  if (!v.is_string()) throw ParseError(field, "expected a string");
  return v.get<std::string>();
}

Rational big(const Json& v, const std::string& field) {
  if (v.is_number_integer()) return Rational(v.get<long long>());
  if (v.is_string()) {
    try {
      return Rational(v.get<std::string>());
    } catch (const std::exception&) {
      throw ParseError(field, "not an integer or fraction");
    }
  }
  throw ParseError(field, "expected an integer");
}

Rational rational(const Json& v, const std::string& field) {
  if (v.is_array()) {
    if (v.size() != 2) throw ParseError(field, "rational must be [num, den]");
    const Rational num = big(v[0], field + "[0]");
    const Rational den = big(v[1], field + "[1]");
    if (den == 0) throw ParseError(field, "zero denominator");
    return num / den;
  }
  return big(v, field);
}

Parity parity(const Json& v, const std::string& field) {
  const std::string s = text(v, field);
  if (s == "even") return Parity::Even;
  if (s == "odd") return Parity::Odd;
  throw ParseError(field, "parity must be \"even\" or \"odd\", got \"" + s + "\"");
}

RationalVector rational_vector(const Json& v, const std::string& field, Eigen::Index size) {
  require_array(v, field);
  if (static_cast<Eigen::Index>(v.size()) != size) {
    throw ParseError(field, "expected " + std::to_string(size) + " entries, got " + std::to_string(v.size()));
  }
  RationalVector out(size);
  for (std::size_t i = 0; i < v.size(); ++i) out(static_cast<Eigen::Index>(i)) = rational(v[i], at(field, i));
  return out;
}

SuperMatrix<Rational> matrix(const Json& v, const std::string& field) {
  const int m = small_int(require(v, "m", field), field + ".m", 0, 64);
  const int n = small_int(require(v, "n", field), field + ".n", 0, 64);
  if (m + n == 0) throw ParseError(field, "m + n must be positive");
  const Parity p = parity(require(v, "parity", field), field + ".parity");
  const int size = m + n;
  const RationalVector flat = rational_vector(require(v, "entries", field), field + ".entries", size * size);
  Mat<Rational> e(size, size);
  for (int i = 0; i < size; ++i) {
    for (int j = 0; j < size; ++j) {
      e(i, j) = flat(i * size + j);
      if (e(i, j) != 0 && position_parity(m, i, j) != p) {
        throw ParseError(field + ".entries", "entry (" + std::to_string(i) + ", " + std::to_string(j) +
                                                 ") does not fit the declared " +
                                                 std::string(to_string(p)) + " parity");
      }
    }
  }
  return SuperMatrix<Rational>(m, n, std::move(e), p);
}

AlgebraPtr parse_algebra(const Json& a) {
  const std::string field = "algebra";
  if (!a.is_object()) throw ParseError(field, "expected an object");
  const std::string name = a.contains("name") ? text(a["name"], "algebra.name") : "algebra";

  std::optional<std::vector<BasisElement>> basis;
  if (a.contains("basis")) {
    const Json& b = require_array(a["basis"], "algebra.basis");
    basis.emplace();
    for (std::size_t k = 0; k < b.size(); ++k) {
      const std::string f = at("algebra.basis", k);
      basis->push_back({text(require(b[k], "name", f), f + ".name"), parity(require(b[k], "parity", f), f + ".parity")});
    }
  }

  std::optional<std::vector<SuperMatrix<Rational>>> realization;
  if (a.contains("realization")) {
    const Json& r = require_array(a["realization"], "algebra.realization");
    realization.emplace();
    for (std::size_t k = 0; k < r.size(); ++k) realization->push_back(matrix(r[k], at("algebra.realization", k)));
    if (realization->empty()) throw ParseError("algebra.realization", "must not be empty");
    for (std::size_t k = 1; k < realization->size(); ++k) {
      if (!(*realization)[k].same_shape(realization->front())) {
        throw ParseError(at("algebra.realization", k), "shape differs from the first matrix");
      }
    }
  }

  if (!a.contains("constants")) {
    if (!realization) throw ParseError("algebra", "needs constants or a realization");
    std::vector<std::string> names;
    if (basis) {
      if (basis->size() != realization->size()) {
        throw ParseError("algebra.basis", "one basis element per realization matrix required");
      }
      for (std::size_t k = 0; k < basis->size(); ++k) {
        if (to_grade((*basis)[k].parity) != (*realization)[k].parity()) {
          throw ParseError(at("algebra.basis", k) + ".parity", "disagrees with the realization matrix");
        }
        names.push_back((*basis)[k].name);
      }
    }
    try {
      return from_matrix_basis(*realization, names, name);
    } catch (const ParseError&) {
      throw;
    } catch (const Error& e) {
      throw ParseError("algebra.realization", e.what());
    }
  }

  if (!basis) throw ParseError("algebra.basis", "required with constants");
  const int dim = static_cast<int>(basis->size());
  if (dim == 0) throw ParseError("algebra.basis", "must not be empty");
  std::vector<RationalVector> constants(static_cast<std::size_t>(dim) * dim, RationalVector::Zero(dim));
  std::set<std::tuple<int, int, int>> seen;
  const Json& c = require_array(a["constants"], "algebra.constants");
  for (std::size_t t = 0; t < c.size(); ++t) {
    const std::string f = at("algebra.constants", t);
    require_array(c[t], f);
    if (c[t].size() != 5 && c[t].size() != 4) throw ParseError(f, "expected [i, j, k, num, den]");
    const int i = small_int(c[t][0], f + "[0]", 0, dim - 1);
    const int j = small_int(c[t][1], f + "[1]", 0, dim - 1);
    const int k = small_int(c[t][2], f + "[2]", 0, dim - 1);
    const Rational value = c[t].size() == 5 ? rational(Json::array({c[t][3], c[t][4]}), f)
                                            : rational(c[t][3], f + "[3]");
    if (!seen.insert({i, j, k}).second) throw ParseError(f, "duplicate triplet");
    constants[static_cast<std::size_t>(i) * dim + j](k) = value;
  }

  AlgebraPtr g;
  try {
    g = LieSuperalgebra::create(name, *basis, constants, realization);
  } catch (const Error& e) {
    throw ParseError(realization ? "algebra.realization" : "algebra", e.what());
  }
  const AxiomReport axioms = check_graded_axioms(*g);
  if (!axioms.ok()) {
    const AxiomViolation& v = axioms.violations.front();
    std::string where = (*basis)[v.i].name + ", " + (*basis)[v.j].name;
    if (v.kind != AxiomViolation::Kind::Antisymmetry && v.k >= 0) where += ", " + (*basis)[v.k].name;
    throw ParseError("algebra.constants", "violates " + to_string(v.kind) + " at (" + where + ")");
  }
  if (realization) {
    std::vector<std::string> names;
    for (const auto& b : *basis) names.push_back(b.name);
    try {
      const AlgebraPtr oracle = from_matrix_basis(*realization, names, name);
      for (int i = 0; i < dim; ++i) {
        for (int j = 0; j < dim; ++j) {
          if (oracle->constant(i, j) != g->constant(i, j)) {
            throw ParseError("algebra.constants",
                             "[" + names[i] + ", " + names[j] + "] disagrees with the realization");
          }
        }
      }
    } catch (const ParseError&) {
      throw;
    } catch (const Error& e) {
      throw ParseError("algebra.realization", e.what());
    }
  }
  return g;
}

AlgebraElement control(const AlgebraPtr& g, const Json& v, const std::string& field) {
  if (v.is_string()) {
    try {
      return AlgebraElement::basis(g, v.get<std::string>());
    } catch (const Error& e) {
      throw ParseError(field, e.what());
    }
  }
  if (v.is_object()) {
    const SuperMatrix<Rational> mat = matrix(require(v, "matrix", field), field + ".matrix");
    if (!g->has_realization()) throw ParseError(field, "matrix controls need a realization");
    std::optional<RationalVector> coords;
    try {
      coords = g->coordinates_of(mat);
    } catch (const Error& e) {
      throw ParseError(field, e.what());
    }
    if (!coords) throw ParseError(field, "matrix is outside the algebra");
    return AlgebraElement(g, *coords);
  }
  return AlgebraElement(g, rational_vector(v, field, g->dim()));
}

SystemSpec parse_system(const AlgebraPtr& g, const Json& s) {
  if (!s.is_object()) throw ParseError("system", "expected an object");
  const std::string name = s.contains("name") ? text(s["name"], "system.name") : "system";
  std::vector<AlgebraElement> evens, odds;
  for (const auto& [key, out, want] : {std::tuple{"even_controls", &evens, GradeKind::Even},
                                       std::tuple{"odd_controls", &odds, GradeKind::Odd}}) {
    const std::string f = std::string("system.") + key;
    if (!s.contains(key)) continue;
    const Json& list = require_array(s[key], f);
    for (std::size_t i = 0; i < list.size(); ++i) {
      AlgebraElement c = control(g, list[i], at(f, i));
      if (c.grade() != want || (want == GradeKind::Odd && c.is_zero())) {
        throw ParseError(at(f, i), "is not " + std::string(want == GradeKind::Even ? "even" : "odd"));
      }
      out->push_back(std::move(c));
    }
  }
  if (evens.empty() && odds.empty()) throw ParseError("system", "needs at least one control");

  const Json& d = require(s, "drift", "system");
  try {
    if (d.contains("matrix")) {
      if (!g->has_realization()) throw ParseError("system.drift.matrix", "needs an algebra realization");
      return make_system(name, g, matrix(d["matrix"], "system.drift.matrix"), evens, odds);
    }
    if (d.contains("coefficients")) {
      return make_system(name, AlgebraElement(g, rational_vector(d["coefficients"], "system.drift.coefficients", g->dim())),
                         evens, odds);
    }
    if (d.contains("derivation")) {
      const Json& rows = require_array(d["derivation"], "system.drift.derivation");
      if (static_cast<int>(rows.size()) != g->dim()) {
        throw ParseError("system.drift.derivation", "expected " + std::to_string(g->dim()) + " rows");
      }
      RationalMatrix m(g->dim(), g->dim());
      for (int i = 0; i < g->dim(); ++i) {
        m.row(i) = rational_vector(rows[i], at("system.drift.derivation", i), g->dim()).transpose();
      }
      return make_system(name, AdOperator::from_derivation(g, std::move(m)), evens, odds);
    }
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    throw ParseError("system.drift", e.what());
  }
  throw ParseError("system.drift", "expected one of matrix, coefficients, derivation");
}

Json vector_json(const RationalVector& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(to_json(v(i)));
  return out;
}

}  // namespace

Json to_json(const Rational& q) {
  auto num = [](const std::string& s) -> Json {
    try {
      std::size_t used = 0;
      const long long v = std::stoll(s, &used);
      if (used == s.size()) return v;
    } catch (const std::exception&) {
    }
    return s;
  };
  return Json::array({num(numerator_string(q)), num(denominator_string(q))});
}

Json to_json(const SuperMatrix<Rational>& a) {
  Json entries = Json::array();
  for (int i = 0; i < a.size(); ++i) {
    for (int j = 0; j < a.size(); ++j) entries.push_back(to_json(a(i, j)));
  }
  const Parity p = require_homogeneous(a.parity(), "exported matrix");
  return Json{{"m", a.m()}, {"n", a.n()}, {"parity", std::string(to_string(p))}, {"entries", entries}};
}

Json algebra_to_json(const LieSuperalgebra& g) {
  Json basis = Json::array();
  for (const auto& b : g.basis()) basis.push_back({{"name", b.name}, {"parity", std::string(to_string(b.parity))}});
  Json constants = Json::array();
  for (int i = 0; i < g.dim(); ++i) {
    for (int j = 0; j < g.dim(); ++j) {
      for (int k = 0; k < g.dim(); ++k) {
        const Rational& c = g.constant(i, j)(k);
        if (c == 0) continue;
        Json q = to_json(c);
        constants.push_back(Json::array({i, j, k, q[0], q[1]}));
      }
    }
  }
  Json out{{"name", g.name()}, {"basis", basis}, {"constants", constants}};
  if (g.has_realization()) {
    Json r = Json::array();
    for (const auto& m : g.realization()) r.push_back(to_json(m));
    out["realization"] = r;
  }
  return out;
}

Json system_to_json(const SystemSpec& sys) {
  Json drift;
  if (sys.drift_matrix) {
    drift["matrix"] = to_json(*sys.drift_matrix);
  } else {
    Json rows = Json::array();
    for (Eigen::Index i = 0; i < sys.drift.matrix().rows(); ++i) {
      rows.push_back(vector_json(sys.drift.matrix().row(i).transpose()));
    }
    drift["derivation"] = rows;
  }
  Json evens = Json::array(), odds = Json::array();
  for (const auto& y : sys.even_controls) evens.push_back(vector_json(y.coeffs()));
  for (const auto& y : sys.odd_controls) odds.push_back(vector_json(y.coeffs()));
  return Json{{"name", sys.name}, {"drift", drift}, {"even_controls", evens}, {"odd_controls", odds}};
}

Json spec_to_json(const SystemSpec& sys, const SpecOptions& opts) {
  Json options{{"mode", opts.mode}};
  if (opts.num_generators) options["L"] = *opts.num_generators;
  if (opts.p_cap) options["p_cap"] = *opts.p_cap;
  return Json{{"algebra", algebra_to_json(*sys.algebra)}, {"system", system_to_json(sys)}, {"options", options}};
}

SpecFile parse_spec(const Json& doc) {
  if (!doc.is_object()) throw ParseError("<root>", "expected an object");
  SpecFile spec;
  spec.algebra = parse_algebra(require(doc, "algebra", "<root>"));
  if (doc.contains("system")) spec.system = parse_system(spec.algebra, doc["system"]);
  if (doc.contains("options")) {
    const Json& o = doc["options"];
    if (!o.is_object()) throw ParseError("options", "expected an object");
    if (o.contains("L") && !o["L"].is_null()) {
      spec.options.num_generators = small_int(o["L"], "options.L", 0, kMaxGenerators);
    }
    if (o.contains("mode")) {
      spec.options.mode = text(o["mode"], "options.mode");
      if (spec.options.mode != "rational" && spec.options.mode != "simulation") {
        throw ParseError("options.mode", "must be \"rational\" or \"simulation\"");
      }
    }
    if (o.contains("p_cap") && !o["p_cap"].is_null()) {
      spec.options.p_cap = small_int(o["p_cap"], "options.p_cap", 0, 1 << 20);
    }
  }
  return spec;
}

Json parse_json_text(const std::string& content, const std::string& source) {
  try {
    return Json::parse(content);
  } catch (const Json::parse_error& e) {
    std::size_t line = 1, column = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < content.size(); ++i) {
      if (content[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    throw ParseError(source + ":" + std::to_string(line) + ":" + std::to_string(column), "invalid JSON");
  }
}

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path, "cannot open file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

SpecFile read_spec_file(const std::string& path) { return parse_spec(parse_json_text(slurp(path), path)); }

ScheduleFile read_schedule_file(const std::string& path) {
  const Json doc = parse_json_text(slurp(path), path);
  if (!doc.is_object()) throw ParseError("schedule", "expected an object");
  ScheduleFile out;
  if (doc.contains("L")) out.num_generators = small_int(doc["L"], "schedule.L", 0, kMaxGenerators);
  if (doc.contains("start")) {
    const Json& rows = require_array(doc["start"], "schedule.start");
    const auto size = static_cast<Eigen::Index>(rows.size());
    Mat<double> body(size, size);
    for (Eigen::Index i = 0; i < size; ++i) {
      const std::string f = at("schedule.start", static_cast<std::size_t>(i));
      const Json& row = require_array(rows[i], f);
      if (static_cast<Eigen::Index>(row.size()) != size) throw ParseError(f, "start must be square");
      for (Eigen::Index j = 0; j < size; ++j) body(i, j) = real(row[j], at(f, static_cast<std::size_t>(j)));
    }
    out.start_body = std::move(body);
  }
  out.segments = require_array(require(doc, "segments", "schedule"), "schedule.segments");
  return out;
}

ControlSchedule build_schedule(const Json& segments, int num_generators) {
  ControlSchedule sched;
  require_array(segments, "schedule.segments");
  for (std::size_t s = 0; s < segments.size(); ++s) {
    const std::string f = at("schedule.segments", s);
    ControlSegment seg;
    seg.duration = real(require(segments[s], "duration", f), f + ".duration");
    if (seg.duration < 0) throw ParseError(f + ".duration", "must be non-negative");
    if (segments[s].contains("even_inputs")) {
      const Json& e = require_array(segments[s]["even_inputs"], f + ".even_inputs");
      for (std::size_t i = 0; i < e.size(); ++i) seg.even_inputs.push_back(real(e[i], at(f + ".even_inputs", i)));
    }
    if (segments[s].contains("odd_inputs")) {
      const Json& o = require_array(segments[s]["odd_inputs"], f + ".odd_inputs");
      for (std::size_t i = 0; i < o.size(); ++i) {
        const std::string fi = at(f + ".odd_inputs", i);
        GrassmannNumber<double> nu(num_generators);
        const Json& terms = require_array(o[i], fi);
        for (std::size_t t = 0; t < terms.size(); ++t) {
          const std::string ft = at(fi, t);
          if (!terms[t].is_array() || terms[t].size() != 2) throw ParseError(ft, "expected [coefficient, [indices]]");
          const double c = real(terms[t][0], ft + "[0]");
          std::vector<int> idx;
          for (const auto& k : require_array(terms[t][1], ft + "[1]")) {
            idx.push_back(small_int(k, ft + "[1]", 1, kMaxGenerators));
          }
          if (idx.size() % 2 == 0) throw ParseError(ft, "odd inputs need odd-degree monomials");
          try {
            nu += GrassmannNumber<double>::monomial(num_generators, idx, c);
          } catch (const Error& e) {
            throw ParseError(ft, e.what());
          }
        }
        seg.odd_inputs.push_back(std::move(nu));
      }
    }
    sched.segments.push_back(std::move(seg));
  }
  return sched;
}

int default_num_generators() {
  const char* env = std::getenv("SUPERCTL_L");
  if (env == nullptr || *env == '\0') return 4;
  char* end = nullptr;
  const long v = std::strtol(env, &end, 10);
  if (*end != '\0' || v < 0 || v > kMaxGenerators) {
    throw ParseError("SUPERCTL_L", "must be an integer in 0.." + std::to_string(kMaxGenerators));
  }
  return static_cast<int>(v);
}

}  // namespace superctl
