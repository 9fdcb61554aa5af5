#pragma once

#include <optional>
#include <string>

#include <json.hpp>

#include "superctl/flows.hpp"

namespace superctl {

using Json = nlohmann::ordered_json;

struct SpecOptions {
  std::optional<int> num_generators;
  /// "rational" or "simulation".
  std::string mode = "rational";
  std::optional<int> p_cap;
};

/// A parsed spec file. The system section is optional so algebra-only files
/// work for bracket tables.
struct SpecFile {
  AlgebraPtr algebra;
  std::optional<SystemSpec> system;
  SpecOptions options;
};

/// Schema (all indices 0-based, rationals as [num, den] or integers):
///
///   { "algebra": { "name", "basis": [{"name", "parity": "even"|"odd"}],
///                  "constants": [[i, j, k, num, den], ...],
///                  "realization": [matrix, ...] },
///     "system":  { "name", "drift": {"matrix": matrix} | {"coefficients": [q...]}
///                                 | {"derivation": [[q...]...]},
///                  "even_controls": [control...], "odd_controls": [control...] },
///     "options": { "L", "mode", "p_cap" } }
///
/// matrix = {"m", "n", "parity", "entries": [q...] row-major}; a control is a
/// coefficient list, a basis name, or {"matrix": matrix}. With both constants
/// and realization, constants are primary and the realization must agree.
/// Throws ParseError naming the offending field.
SpecFile parse_spec(const Json& doc);
/// Reads and parses a file; JSON syntax errors report line and column.
SpecFile read_spec_file(const std::string& path);
Json parse_json_text(const std::string& text, const std::string& source);

Json to_json(const Rational& q);
Json to_json(const SuperMatrix<Rational>& a);
Json algebra_to_json(const LieSuperalgebra& g);
Json system_to_json(const SystemSpec& sys);
Json spec_to_json(const SystemSpec& sys, const SpecOptions& opts = {});

/// {"L": int?, "start": [[real...]...]?, "segments": [{"duration", "even_inputs": [real...],
///  "odd_inputs": [[[coeff, [generator indices]]...]...]}]}. Generators are 1-based.
struct ScheduleFile {
  std::optional<int> num_generators;
  std::optional<Mat<double>> start_body;
  /// Segments with odd inputs left as raw terms until L is known.
  Json segments;
};

ScheduleFile read_schedule_file(const std::string& path);
ControlSchedule build_schedule(const Json& segments, int num_generators);

/// SUPERCTL_L when set (0..20), otherwise 4. Throws ParseError for bad values.
int default_num_generators();

}  // namespace superctl
