#include "cli.hpp"

#include "checks.hpp"

#include "spbvp/analysis.hpp"
#include "spbvp/csv.hpp"
#include "spbvp/global.hpp"
#include "spbvp/mesh.hpp"
#include "spbvp/problem.hpp"
#include "spbvp/scheme.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>

namespace spbvp::cli {

namespace {

struct RunConfig {
  std::string problem = "paper-test";
  std::vector<std::string> epsilon;
  std::vector<int> n;
  double q = 0.25;
  double sigma = 2.0;
  std::optional<double> gamma;
  double newton_tol = 1e-12;
  int newton_max_iter = 50;
  double initial_guess = -0.5;
  std::string mode = "plain";
  std::string source = "midpoint";
  int samples_per_interval = 32;
  std::string output;
  std::string format = "pretty";
  int trials = 1000;
  std::uint64_t seed = 20150601;
  std::string sabotage = "none";
};

const std::vector<std::string> kDefaultEpsilons = {"2^-4", "2^-6", "2^-10", "2^-12", "2^-20", "2^-30"};
const std::vector<int> kDefaultNs = {32, 64, 128, 256, 512, 1024, 2048};

std::optional<double> parse_plain(std::string_view s) {
  double v = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
    return std::nullopt;
  }
  return v;
}

std::vector<double> parse_epsilons(const std::vector<std::string>& texts) {
  std::vector<double> out;
  for (const auto& t : texts) {
    const double e = parse_number(t);
    if (!(e > 0.0 && e < 1.0)) {
      throw InvalidArgument("epsilon must lie in (0, 1), got '" + t + "'");
    }
    out.push_back(e);
  }
  if (out.empty()) {
    throw InvalidArgument("epsilon list is empty");
  }
  return out;
}

void check_ns(const std::vector<int>& ns) {
  if (ns.empty()) {
    throw InvalidArgument("N list is empty");
  }
  for (int n : ns) {
    if (n < 4 || n % 4 != 0) {
      throw InvalidArgument("N must be a positive multiple of 4, got " + std::to_string(n));
    }
  }
}

Problem make_problem(const RunConfig& cfg, double epsilon) {
  Problem p = builtin_problem(cfg.problem, epsilon);
  if (!cfg.gamma) {
    return p;
  }
  Problem::Definition def = p.definition();
  def.gamma = *cfg.gamma;
  return Problem(def);
}

NewtonOptions newton_options(const RunConfig& cfg) {
  NewtonOptions opts;
  opts.tol = cfg.newton_tol;
  opts.max_iter = cfg.newton_max_iter;
  opts.initial_guess = cfg.initial_guess;
  opts.validate();
  return opts;
}

SourcePoint parse_source(const std::string& name) {
  if (name == "midpoint") {
    return SourcePoint::midpoint;
  }
  if (name == "left") {
    return SourcePoint::left_point;
  }
  throw InvalidArgument("unknown source point '" + name + "'");
}

std::string sci(double v) {
  std::ostringstream s;
  s << std::scientific << std::setprecision(4) << v;
  return s.str();
}

int cmd_solve(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  if (cfg.epsilon.size() != 1 || cfg.n.size() != 1) {
    throw InvalidArgument("solve takes exactly one --epsilon and one --n");
  }
  const double epsilon = parse_epsilons(cfg.epsilon).front();
  check_ns(cfg.n);
  const Problem p = make_problem(cfg, epsilon);
  const GlobalMode mode = parse_global_mode(cfg.mode);
  const SourcePoint source = parse_source(cfg.source);
  if (cfg.samples_per_interval < 1) {
    throw InvalidArgument("--samples-per-interval must be at least 1");
  }

  MeshParams params;
  params.n = cfg.n.front();
  params.epsilon = epsilon;
  params.m = p.m();
  params.sigma = cfg.sigma;
  params.q = cfg.q;
  const Mesh mesh = generate_mesh(params);
  if (mode == GlobalMode::repaired && mesh.degenerate()) {
    throw InvalidArgument("repaired mode needs a non-degenerate mesh (sigma eps ln N < q)");
  }

  const DiscreteSolution sol = newton_solve(p, mesh, newton_options(cfg));
  out << "problem=" << p.name() << " epsilon=" << epsilon_label(epsilon) << " N=" << mesh.n()
      << " mode=" << to_string(mode) << '\n';
  out << "lambda=" << format_double(mesh.lambda()) << (mesh.degenerate() ? " (uniform mesh)" : "") << '\n';
  out << "newton: " << (sol.converged ? "converged" : "NOT converged") << " after " << sol.iterations
      << " iterations, |F| = " << sci(sol.final_residual) << '\n';
  if (!sol.converged) {
    err << "error: Newton iteration did not converge\n";
    return kNoConvergence;
  }

  const GlobalSolution g = build_global(sol, p, mode, source);
  if (p.has_exact()) {
    const RegionErrors r = region_errors(g, p, cfg.samples_per_interval);
    out << "E_N = " << sci(nodal_error(sol, p)) << '\n';
    out << "layer_left = " << sci(r.layer_left) << ", interior = " << sci(r.interior)
        << ", layer_right = " << sci(r.layer_right) << ", global_max = " << sci(r.global_max) << '\n';
  }

  std::filesystem::path dir = cfg.output;
  if (dir.empty()) {
    const char* env = std::getenv(kOutputDirEnv);
    dir = env != nullptr && *env != '\0' ? env : ".";
  }
  std::filesystem::create_directories(dir);
  const auto write = [&](const char* name, const auto& fn) {
    const auto path = dir / name;
    std::ofstream file(path);
    if (!file) {
      throw std::runtime_error("cannot write " + path.string());
    }
    fn(file);
    out << "wrote " << path.string() << '\n';
  };
  write("nodal.csv", [&](std::ostream& f) { write_nodal_csv(f, sol, p); });
  write("global.csv", [&](std::ostream& f) { write_global_csv(f, g, p, cfg.samples_per_interval); });
  write("mesh.csv", [&](std::ostream& f) { write_mesh_csv(f, mesh); });
  return kOk;
}

int cmd_table(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const auto epsilons = parse_epsilons(cfg.epsilon.empty() ? kDefaultEpsilons : cfg.epsilon);
  const auto ns = cfg.n.empty() ? kDefaultNs : cfg.n;
  check_ns(ns);
  if (cfg.format != "csv" && cfg.format != "pretty") {
    throw InvalidArgument("--format must be csv or pretty");
  }
  make_problem(cfg, epsilons.front());

  StudyOptions opts;
  opts.newton = newton_options(cfg);
  opts.sigma = cfg.sigma;
  opts.q = cfg.q;
  opts.mode = parse_global_mode(cfg.mode);
  opts.source = parse_source(cfg.source);
  opts.samples_per_interval = cfg.samples_per_interval;
  const ConvergenceReport report =
      convergence_study([&](double e) { return make_problem(cfg, e); }, epsilons, ns, opts);

  std::ofstream file;
  if (!cfg.output.empty()) {
    file.open(cfg.output);
    if (!file) {
      throw std::runtime_error("cannot write " + cfg.output);
    }
  }
  std::ostream& dest = cfg.output.empty() ? out : file;
  if (cfg.format == "csv") {
    write_report_csv(dest, report);
  } else {
    write_report_pretty(dest, report);
  }

  const auto failed = std::count_if(report.rows.begin(), report.rows.end(),
                                    [](const ConvergenceRow& r) { return !r.converged; });
  if (failed > 0) {
    err << "error: " << failed << " cell(s) did not converge\n";
    return kNoConvergence;
  }
  return kOk;
}

int cmd_check(const RunConfig& cfg, std::ostream& out) {
  if (cfg.trials < 1) {
    throw InvalidArgument("--trials must be at least 1");
  }
  CheckOptions opts;
  opts.trials = cfg.trials;
  opts.seed = cfg.seed;
  opts.sabotage = parse_sabotage(cfg.sabotage);
  int failures = 0;
  for (const auto& r : run_all_checks(opts)) {
    out << (r.passed ? "PASS " : "FAIL ") << r.name << ": " << r.detail << '\n';
    failures += r.passed ? 0 : 1;
  }
  if (failures > 0) {
    out << failures << " suite(s) failed\n";
    return kPropertyFailure;
  }
  return kOk;
}

}  // namespace

double parse_number(const std::string& text) {
  const auto caret = text.find('^');
  if (caret == std::string::npos) {
    if (auto v = parse_plain(text)) {
      return *v;
    }
    throw InvalidArgument("not a number: '" + text + "'");
  }
  const std::string_view view(text);
  const auto base = parse_plain(view.substr(0, caret));
  const auto exponent = parse_plain(view.substr(caret + 1));
  if (!base || !exponent) {
    throw InvalidArgument("not a number: '" + text + "'");
  }
  if (*base == 2.0 && *exponent == std::trunc(*exponent)) {
    return std::ldexp(1.0, static_cast<int>(*exponent));
  }
  return std::pow(*base, *exponent);
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Fitted scheme solver for eps^2 y'' = f(x, y) on a layer-adapted mesh", "spbvp"};
  app.require_subcommand(1);
  RunConfig cfg;

  const auto add_problem_options = [&cfg](CLI::App* cmd) {
    cmd->add_option("--problem", cfg.problem, "problem id")
        ->check(CLI::IsMember(builtin_problem_ids()))
        ->capture_default_str();
    cmd->add_option("--q", cfg.q, "fraction of intervals in each layer")->capture_default_str();
    cmd->add_option("--sigma", cfg.sigma, "transition point factor")->capture_default_str();
    cmd->add_option("--gamma", cfg.gamma, "override the problem's upper bound on f_y");
    cmd->add_option("--newton-tol", cfg.newton_tol)->capture_default_str();
    cmd->add_option("--newton-max-iter", cfg.newton_max_iter)->capture_default_str();
    cmd->add_option("--initial-guess", cfg.initial_guess, "constant Newton start")->capture_default_str();
    cmd->add_option("--mode", cfg.mode, "global solution")
        ->check(CLI::IsMember({"plain", "repaired"}))
        ->capture_default_str();
    cmd->add_option("--source", cfg.source, "source sampling point on exponential pieces")
        ->check(CLI::IsMember({"midpoint", "left"}))
        ->capture_default_str();
    cmd->add_option("--samples-per-interval", cfg.samples_per_interval)->capture_default_str();
  };

  auto* solve = app.add_subcommand("solve", "solve one (epsilon, N) case and write CSV files");
  add_problem_options(solve);
  solve->add_option("--epsilon", cfg.epsilon, "e.g. 2^-10 or 0.001")->required()->expected(1);
  solve->add_option("--n", cfg.n, "number of mesh intervals")->required()->expected(1);
  solve->add_option("--output", cfg.output, std::string("output directory (default $") + kOutputDirEnv + " or .)");

  auto* table = app.add_subcommand("table", "convergence table over epsilon and N lists");
  add_problem_options(table);
  table->add_option("--epsilon", cfg.epsilon, "comma-separated list")->delimiter(',');
  table->add_option("--n", cfg.n, "comma-separated doubling list")->delimiter(',');
  table->add_option("--format", cfg.format)->check(CLI::IsMember({"csv", "pretty"}))->capture_default_str();
  table->add_option("--output", cfg.output, "output file (default stdout)");

  auto* check = app.add_subcommand("check", "run the property suites");
  check->add_option("--trials", cfg.trials, "random pairs per stability case")->capture_default_str();
  check->add_option("--seed", cfg.seed)->capture_default_str();
  check->add_option("--sabotage", cfg.sabotage, "inject a fault")
      ->check(CLI::IsMember({"none", "delta-d-naive"}))
      ->capture_default_str();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return kOk;
    }
    err << "error: " << e.what() << '\n';
    return kUsage;
  }

  try {
    if (solve->parsed()) {
      return cmd_solve(cfg, out, err);
    }
    if (table->parsed()) {
      return cmd_table(cfg, out, err);
    }
    return cmd_check(cfg, out);
  } catch (const InvalidArgument& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace spbvp::cli
