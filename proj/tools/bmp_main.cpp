// bmp: break minimization for single round-robin timetables.
//
//   bmp solve --input tt.csv [--solver exact|brute|heuristic] [--seed N]
//             [--output ha.csv] [--stats report.json] [--verify]
//   bmp gen   --teams 2n [--seed N] [--random] [--output tt.csv]
//   bmp check --timetable tt.csv [--assignment ha.csv] [--claimed N] [--json]
//   bmp graph --input tt.csv [--output aux.dot]
//
// Exit status: 0 success, 1 invalid input or failed verification, 2 usage
// or I/O error.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "bmp/bmp.hpp"
#include "bmp/report_json.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitDomain = 1;
constexpr int kExitUsage = 2;

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "' for reading");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << content)) throw IoError("cannot write '" + path + "'");
}

/// Writes to `path`, or to stdout when empty.
void emit(const std::string& path, const std::string& content) {
  if (path.empty()) {
    std::cout << content;
  } else {
    write_file(path, content);
  }
}

bmp::Timetable load_timetable(const std::string& path) { return bmp::parse_timetable(read_file(path)); }

void print_checks(const bmp::VerificationReport& v) {
  for (const auto& c : v.checks) {
    std::cerr << (c.passed ? "ok   " : "FAIL ") << c.name;
    if (!c.detail.empty()) std::cerr << ": " << c.detail;
    std::cerr << '\n';
  }
}

struct SolveArgs {
  std::string input, output, stats, solver = "exact";
  std::uint64_t seed = 1;
  bool verify = false;
};

int run_solve(const SolveArgs& a) {
  const auto solver = bmp::parse_solver(a.solver);
  if (!solver) {
    std::cerr << "unknown solver '" << a.solver << "'\n";
    return kExitUsage;
  }
  const auto tt = load_timetable(a.input);
  const auto report = bmp::solve_bmp(tt, *solver, {.seed = a.seed});

  std::ostringstream csv;
  bmp::write_assignment(csv, report.assignment);
  emit(a.output, csv.str());
  if (!a.stats.empty()) write_file(a.stats, bmp::to_json(report).dump(2) + "\n");

  std::cerr << "b_min=" << report.b_min << " oct_size=" << report.oct_size << " solver=" << report.stats.solver
            << " optimal=" << (report.optimal ? "true" : "false") << '\n';
  for (const auto& w : report.warnings) std::cerr << "warning: " << w << '\n';

  if (a.verify) {
    const auto check = bmp::verify(tt, report.assignment, report.b_min);
    print_checks(check);
    if (!check.ok()) return kExitDomain;
  }
  return kExitOk;
}

struct GenArgs {
  int teams = 0;
  std::optional<std::uint64_t> seed;
  bool random = false;
  std::string output;
};

int run_gen(const GenArgs& a) {
  if (a.teams < 4 || a.teams % 2 != 0) {
    std::cerr << "--teams must be even and at least 4\n";
    return kExitDomain;
  }
  const auto tt = a.random ? bmp::generate_random(a.teams, a.seed.value_or(1)) : bmp::generate_circle(a.teams, a.seed);
  std::ostringstream csv;
  bmp::write_timetable(csv, tt);
  emit(a.output, csv.str());
  return kExitOk;
}

struct CheckArgs {
  std::string timetable, assignment;
  std::optional<int> claimed;
  bool json = false;
};

int run_check(const CheckArgs& a) {
  const auto tt = load_timetable(a.timetable);
  if (a.assignment.empty()) {
    std::cout << "timetable valid: " << tt.num_teams() << " teams, " << tt.num_slots() << " slots\n";
    return kExitOk;
  }
  const auto z = bmp::parse_assignment(read_file(a.assignment));
  const auto report = bmp::verify(tt, z, a.claimed);
  if (a.json) {
    std::cout << bmp::to_json(report).dump(2) << '\n';
  } else if (report.breaks) {
    std::cout << "breaks = " << report.breaks->total << '\n';
    for (auto [t, s] : report.breaks->positions) std::cout << "  team " << t + 1 << " slot " << s + 1 << '\n';
  }
  print_checks(report);
  return report.ok() ? kExitOk : kExitDomain;
}

struct GraphArgs {
  std::string input, output;
};

int run_graph(const GraphArgs& a) {
  const auto graph = bmp::build_aux_graph(load_timetable(a.input));
  emit(a.output, bmp::emit_dot(graph));
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Break minimization for round-robin timetables via odd cycle transversal"};
  app.require_subcommand(1);

  SolveArgs solve;
  auto* solve_cmd = app.add_subcommand("solve", "Compute a break-minimal home/away assignment");
  solve_cmd->add_option("--input,-i", solve.input, "Timetable CSV")->required();
  solve_cmd->add_option("--solver", solve.solver, "exact | brute | heuristic")->capture_default_str();
  solve_cmd->add_option("--seed", solve.seed, "Heuristic seed")->capture_default_str();
  solve_cmd->add_option("--output,-o", solve.output, "Assignment CSV (stdout if omitted)");
  solve_cmd->add_option("--stats", solve.stats, "JSON report path");
  solve_cmd->add_flag("--verify", solve.verify, "Re-check the emitted assignment");

  GenArgs gen;
  auto* gen_cmd = app.add_subcommand("gen", "Generate a round-robin timetable");
  gen_cmd->add_option("--teams,-n", gen.teams, "Even number of teams (>= 4)")->required();
  gen_cmd->add_option("--seed", gen.seed, "Shuffle seed");
  gen_cmd->add_flag("--random", gen.random, "Random 1-factorization instead of the circle method");
  gen_cmd->add_option("--output,-o", gen.output, "Timetable CSV (stdout if omitted)");

  CheckArgs check;
  auto* check_cmd = app.add_subcommand("check", "Validate a timetable or verify an assignment");
  check_cmd->add_option("--timetable,-t", check.timetable, "Timetable CSV")->required();
  check_cmd->add_option("--assignment,-a", check.assignment, "Home/away CSV");
  check_cmd->add_option("--claimed", check.claimed, "Claimed break count");
  check_cmd->add_flag("--json", check.json, "Print the verification report as JSON");

  GraphArgs graph;
  auto* graph_cmd = app.add_subcommand("graph", "Export the auxiliary graph as DOT");
  graph_cmd->add_option("--input,-i", graph.input, "Timetable CSV")->required();
  graph_cmd->add_option("--output,-o,--dot", graph.output, "DOT path (stdout if omitted)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*solve_cmd) return run_solve(solve);
    if (*gen_cmd) return run_gen(gen);
    if (*check_cmd) return run_check(check);
    if (*graph_cmd) return run_graph(graph);
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const bmp::ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    for (const auto& v : e.violations()) std::cerr << "  " << v << '\n';
    return kExitDomain;
  } catch (const bmp::ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitDomain;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitDomain;
  }
  return kExitUsage;
}
