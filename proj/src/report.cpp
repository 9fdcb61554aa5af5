#include "superctl/report.hpp"

#include <sstream>

namespace superctl {

namespace {

std::string dim_text(const GradedDim& d) {
  std::ostringstream os;
  os << d;
  return os.str();
}

Json names(const std::vector<std::string>& v) {
  Json out = Json::array();
  for (const auto& s : v) out.push_back(s);
  return out;
}

Json elements(const std::vector<AlgebraElement>& v) {
  Json out = Json::array();
  for (const auto& x : v) out.push_back(to_string(x));
  return out;
}

Json rank_json(const RankResult& r) {
  return Json{{"holds", r.holds},
              {"total_holds", r.total_holds},
              {"dim", dim_text(r.dim)},
              {"span", elements(r.span.basis())},
              {"witnesses", names(r.witnesses)}};
}

std::string list(const std::vector<std::string>& v) {
  std::string out;
  for (const auto& s : v) out += (out.empty() ? "" : ", ") + s;
  return out.empty() ? "none" : out;
}

}  // namespace

Json machine_report(const SystemSpec& sys, const Verdict& v) {
  Json steps = Json::array();
  for (const auto& s : v.hull_trace.steps) {
    steps.push_back(Json{{"kind", to_string(s.kind)},
                         {"index", s.index},
                         {"dim", dim_text(s.dim)},
                         {"added", elements(s.added)}});
  }
  return Json{{"system", sys.name},
              {"algebra", sys.algebra->name()},
              {"ambient", dim_text(v.ambient)},
              {"lsarc", rank_json(v.lsarc)},
              {"ad_rank", rank_json(v.ad_rank)},
              {"classification", to_string(v.classification)},
              {"annotation", v.annotation},
              {"witnesses", names(v.ad_rank.witnesses)},
              {"hull_trace", Json{{"steps", steps}, {"terminated_at", v.hull_trace.terminated_at}}}};
}

std::string human_report(const SystemSpec& sys, const Verdict& v) {
  std::ostringstream os;
  os << "system " << sys.name << " on " << sys.algebra->name() << " " << v.ambient << "\n";
  os << "  drift: " << sys.drift.label() << "\n";
  os << "  controls:";
  for (const auto& c : sys.controls()) os << " " << to_string(c) << ";";
  os << "\n";
  os << "  LSARC:   " << (v.lsarc.holds ? "holds" : "fails") << ", span " << v.lsarc.dim
     << ", missing " << list(v.lsarc.witnesses) << "\n";
  os << "  ad-rank: " << (v.ad_rank.holds ? "holds" : "fails") << ", span " << v.ad_rank.dim
     << ", missing " << list(v.ad_rank.witnesses) << "\n";
  os << "  hull:    " << v.hull_trace.steps.size() << " steps, terminated at step "
     << v.hull_trace.terminated_at << "\n";
  os << "classification: " << to_string(v.classification) << "\n";
  os << "reading: " << v.annotation << "\n";
  return os.str();
}

std::string render_report(const SystemSpec& sys, const Verdict& v) {
  return human_report(sys, v) + "\n```json\n" + machine_report(sys, v).dump(2) + "\n```\n";
}

std::string extract_machine_block(const std::string& report) {
  const std::string open = "```json\n";
  const auto begin = report.find(open);
  if (begin == std::string::npos) return {};
  const auto start = begin + open.size();
  const auto end = report.find("\n```", start);
  if (end == std::string::npos) return {};
  return report.substr(start, end - start);
}

}  // namespace superctl
