#pragma once

#include <string>

#include "superctl/specfile.hpp"

namespace superctl {

/// Stable, key-ordered summary of a verdict.
Json machine_report(const SystemSpec& sys, const Verdict& v);
std::string human_report(const SystemSpec& sys, const Verdict& v);
/// Human text followed by the machine report in a ```json fenced block.
std::string render_report(const SystemSpec& sys, const Verdict& v);

/// The machine block of a rendered report, or an empty string.
std::string extract_machine_block(const std::string& report);

}  // namespace superctl
