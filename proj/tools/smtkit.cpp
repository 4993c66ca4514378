#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <string>

#include "smtkit/smtkit.hpp"

namespace {

using namespace smtkit;

struct GlobalOptions {
  std::string solver;
  std::string solver_cmd;
  double timeout_s = 60;
};

SolverConfig solver_config(const GlobalOptions& g) {
  SolverConfig c;
  if (!g.solver_cmd.empty()) {
    c = SolverConfig::from_command_line(g.solver_cmd);
  } else if (g.solver == "z3") {
    c = SolverConfig::z3();
  } else if (g.solver == "cvc5") {
    c = SolverConfig::cvc5();
  } else {
    c = SolverConfig::from_env();
  }
  c.read_timeout = std::chrono::milliseconds(static_cast<long long>(g.timeout_s * 1000));
  return c;
}

int status_exit(CheckStatus s) {
  std::cout << to_string(s) << '\n';
  return s == CheckStatus::Unknown ? 2 : 0;
}

int run_check(const GlobalOptions& g, const std::string& path) {
  return status_exit(check_file(path, solver_config(g)));
}

int run_pigeonhole(const GlobalOptions& g, std::size_t n, const std::string& emit_path) {
  const std::vector<Term> terms = pigeonhole(n);
  if (!emit_path.empty()) {
    std::ofstream out(emit_path, std::ios::binary);
    if (!out) throw Error(Errc::StreamWrite, "cannot open " + emit_path);
    save_script(terms, {}, out);
    return 0;
  }
  const CheckOutcome r = check(terms, solver_config(g));
  if (r.error) throw Error(Errc::SolverError, *r.error);
  return status_exit(r.status);
}

int run_color(const GlobalOptions& g, const std::string& path, std::size_t colors,
              std::size_t max_count) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::FileNotFound, "cannot open " + path);
  const GraphSpec graph = parse_graph(in);
  Session session(solver_config(g));
  const auto found = find_colorings(session, graph, colors, max_count);
  for (const auto& coloring : found) {
    for (std::size_t i = 0; i < coloring.size(); ++i) {
      std::cout << (i ? " " : "") << (i + 1) << '=' << coloring[i];
    }
    std::cout << '\n';
  }
  std::cout << "found " << found.size() << '\n';
  session.close();
  return 0;
}

int run_repl(const GlobalOptions& g) {
  Session session(solver_config(g));
  std::string line;
  while (std::getline(std::cin, line)) {
    if (line == ":q") break;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::string reply;
    try {
      reply = session.raw_send(line);
    } catch (const Error& e) {
      if (session.alive()) {
        std::cerr << e.what() << '\n';
        continue;
      }
      throw;
    }
    if (!reply.empty()) std::cout << reply << '\n';
    std::cout.flush();
  }
  session.close();
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"SMT-LIB frontend: check files, run benchmark encodings, talk to a solver"};
  app.require_subcommand(1);

  GlobalOptions global;
  app.add_option("--solver", global.solver, "Shipped solver configuration")
      ->check(CLI::IsMember({"z3", "cvc5"}));
  app.add_option("--solver-cmd", global.solver_cmd, "Solver command line, overrides --solver");
  app.add_option("--timeout", global.timeout_s, "Per-reply timeout in seconds")
      ->check(CLI::PositiveNumber);

  std::string check_path;
  auto* check_cmd = app.add_subcommand("check", "Run an SMT-LIB file and print its status");
  check_cmd->add_option("file", check_path, "SMT-LIB script")->required();

  std::size_t php_n = 0;
  std::string emit_path;
  auto* php_cmd = app.add_subcommand("pigeonhole", "Check (or write) the pigeonhole problem");
  php_cmd->add_option("n", php_n, "Number of holes")->required()->check(CLI::PositiveNumber);
  php_cmd->add_option("--emit", emit_path, "Write the SMT-LIB script instead of solving");

  std::string graph_path;
  std::size_t colors = 0;
  std::size_t max_count = 5;
  auto* color_cmd = app.add_subcommand("color", "Enumerate graph colorings");
  color_cmd->add_option("graph", graph_path, "Graph file")->required();
  color_cmd->add_option("--colors", colors, "Number of colors")->required()->check(CLI::PositiveNumber);
  color_cmd->add_option("--find", max_count, "Maximum colorings to find")
      ->check(CLI::PositiveNumber);

  auto* repl_cmd = app.add_subcommand("repl", "Forward lines to the solver; :q quits");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  try {
    if (check_cmd->parsed()) return run_check(global, check_path);
    if (php_cmd->parsed()) return run_pigeonhole(global, php_n, emit_path);
    if (color_cmd->parsed()) return run_color(global, graph_path, colors, max_count);
    if (repl_cmd->parsed()) return run_repl(global);
  } catch (const std::exception& e) {
    std::cerr << "smtkit: " << e.what() << '\n';
    return 1;
  }
  return 1;
}
