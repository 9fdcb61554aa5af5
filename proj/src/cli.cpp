#include "superctl/cli.hpp"

#include <filesystem>
#include <fstream>

#include "superctl/errors.hpp"

namespace superctl {

int exit_code(Classification c) {
  switch (c) {
    case Classification::LocallyControllable:
      return 0;
    case Classification::TransitiveNotDecided:
      return 2;
    default:
      return 3;
  }
}

std::string bracket_table(const LieSuperalgebra& g) {
  std::string out;
  const auto self = std::shared_ptr<const LieSuperalgebra>(std::shared_ptr<const LieSuperalgebra>(), &g);
  for (int i = 0; i < g.dim(); ++i) {
    for (int j = i; j < g.dim(); ++j) {
      const RationalVector& c = g.constant(i, j);
      if (exactly_zero(c)) continue;
      out += "[" + g.basis(i).name + ", " + g.basis(j).name + "] = " + to_string(AlgebraElement(self, c)) + "\n";
    }
  }
  return out;
}

int cmd_check(const std::string& path, std::ostream& out, std::ostream& err) {
  try {
    const SpecFile spec = read_spec_file(path);
    if (!spec.system) throw ParseError("system", "missing");
    const Verdict v = decide(*spec.system, RankOptions{spec.options.p_cap});
    out << render_report(*spec.system, v);
    return exit_code(v.classification);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

int cmd_bracket_table(const std::string& name_or_path, std::ostream& out, std::ostream& err) {
  try {
    AlgebraPtr g;
    if (std::filesystem::is_regular_file(name_or_path)) {
      g = read_spec_file(name_or_path).algebra;
    } else {
      g = load(name_or_path).algebra;
    }
    out << bracket_table(*g);
    return 0;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

int cmd_simulate(const std::string& path, const std::string& schedule_path, const std::string& csv_path,
                 std::ostream& out, std::ostream& err) {
  try {
    const SpecFile spec = read_spec_file(path);
    if (!spec.system) throw ParseError("system", "missing");
    const SystemSpec& sys = *spec.system;
    if (!sys.algebra->has_realization() || !sys.drift_matrix) {
      throw PreconditionError("simulation needs a matrix realization and a drift matrix");
    }
    const ScheduleFile sched = read_schedule_file(schedule_path);
    const int L = sched.num_generators.value_or(spec.options.num_generators.value_or(default_num_generators()));
    const auto& shape = sys.algebra->realization().front();
    GrassmannMatrix<double> start = GrassmannMatrix<double>::identity(shape.m(), shape.n(), L);
    if (sched.start_body) {
      if (sched.start_body->rows() != shape.size()) throw ParseError("schedule.start", "wrong size");
      start.part(0) = *sched.start_body;
    }
    const Trajectory traj = simulate(sys, start, build_schedule(sched.segments, L));
    std::ofstream csv(csv_path);
    if (!csv) throw ParseError(csv_path, "cannot open for writing");
    write_trajectory_csv(traj, csv);
    out << "wrote " << traj.samples.size() << " samples to " << csv_path << "\n";
    return 0;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

int cmd_verify_catalog(const std::optional<std::string>& only, std::ostream& out, std::ostream& err) {
  try {
    const CatalogReport report = verify_catalog(only);
    out << to_string(report);
    return report.ok() ? 0 : 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

int cmd_export(const std::string& entry, const std::string& system, const std::string& path,
               std::ostream& out, std::ostream& err) {
  try {
    const CatalogEntry e = load(entry);
    const std::string text = spec_to_json(e.system(system).spec).dump(2) + "\n";
    if (path.empty()) {
      out << text;
    } else {
      std::ofstream f(path);
      if (!f) throw ParseError(path, "cannot open for writing");
      f << text;
    }
    return 0;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace superctl
