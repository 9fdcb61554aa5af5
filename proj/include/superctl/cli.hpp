#pragma once

#include <optional>
#include <ostream>
#include <string>

#include "superctl/catalog.hpp"
#include "superctl/report.hpp"

namespace superctl {

/// 0 = LocallyControllable, 2 = TransitiveNotDecided, 3 = NotTransitive.
int exit_code(Classification c);

/// Nonzero brackets [e_i, e_j] with i <= j, one per line.
std::string bracket_table(const LieSuperalgebra& g);

/// Input errors print to err and return 1.
int cmd_check(const std::string& path, std::ostream& out, std::ostream& err);
int cmd_bracket_table(const std::string& name_or_path, std::ostream& out, std::ostream& err);
int cmd_simulate(const std::string& path, const std::string& schedule_path, const std::string& csv_path,
                 std::ostream& out, std::ostream& err);
int cmd_verify_catalog(const std::optional<std::string>& only, std::ostream& out, std::ostream& err);
/// Writes a catalog system as a spec file (to out when path is empty).
int cmd_export(const std::string& entry, const std::string& system, const std::string& path,
               std::ostream& out, std::ostream& err);

}  // namespace superctl
