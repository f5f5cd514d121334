#include "cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <spdlog/spdlog.h>

#include "nlsmooth/analysis.hpp"
#include "nlsmooth/error.hpp"
#include "nlsmooth/fixtures.hpp"
#include "nlsmooth/report.hpp"

namespace nlsmooth::cli {

namespace fs = std::filesystem;

namespace {

// Everything the subcommands read from the command line.
struct RunConfig {
  std::string out_dir;
  std::string config_file;
  bool verbose = false;

  std::string example;
  std::string source_file;
  std::string constraint_file;
  std::string kernel;
  std::optional<double> delta;
  double beta = 0.4;
  std::vector<double> domain;
  std::vector<double> jumps;
  int n = 41;
  std::string level = "none";
  std::string backend = "spectral";
  std::string out;

  std::string levels = "none,0,1,2,3,4";
  std::vector<int> ns;
  int jobs = 0;
  int reference_n = 401;
  std::string prefix;

  std::string suite = "all";
};

struct Problem {
  std::string label;
  KernelSpec spec;
  Interval domain;
  PiecewiseSmoothFunction f = PiecewiseSmoothFunction::zero();
  std::optional<PiecewiseSmoothFunction> b;
  std::optional<PiecewiseSmoothFunction> u_exact;
  std::vector<double> jumps;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  require(in.good(), ErrorKind::InvalidArgument, "cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path output_path(const RunConfig& rc, const std::string& name) {
  fs::path p(name);
  if (p.is_relative() && !rc.out_dir.empty()) p = fs::path(rc.out_dir) / p;
  if (p.has_parent_path()) fs::create_directories(p.parent_path());
  return p;
}

std::ofstream open_output(const fs::path& p) {
  std::ofstream os(p);
  require(os.good(), ErrorKind::InvalidArgument, "cannot write '" + p.string() + "'");
  return os;
}

int parse_level(const std::string& s) {
  if (s == "none" || s == "-1") return kNoSmoothing;
  try {
    std::size_t used = 0;
    const int v = std::stoi(s, &used);
    if (used == s.size() && v >= 0) return v;
  } catch (const std::exception&) {
  }
  fail(ErrorKind::InvalidArgument, "level must be 'none' or a non-negative integer, got '" + s + "'");
}

std::vector<int> parse_levels(const std::string& list) {
  std::vector<int> out;
  std::istringstream is(list);
  std::string item;
  while (std::getline(is, item, ','))
    if (!item.empty()) out.push_back(parse_level(item));
  require(!out.empty(), ErrorKind::InvalidArgument, "no levels given");
  return out;
}

Problem load_problem(const RunConfig& rc) {
  Problem p;
  if (!rc.example.empty()) {
    require(rc.source_file.empty() && rc.constraint_file.empty(), ErrorKind::InvalidArgument,
            "--example cannot be combined with --source/--constraint");
    require(rc.kernel.empty(), ErrorKind::InvalidArgument, "the examples fix their kernel; drop --kernel");
    const Fixture fx = fixture(rc.example, rc.delta);
    p.label = "Example " + fx.id.substr(2);
    p.spec = fx.spec;
    p.domain = fx.domain;
    p.f = fx.f;
    p.b = fx.b;
    p.u_exact = fx.u_exact;
    p.jumps = fx.jumps;
    return p;
  }
  require(!rc.source_file.empty(), ErrorKind::InvalidArgument, "give --example or --source");
  require(rc.domain.size() == 2 && rc.domain[0] < rc.domain[1], ErrorKind::InvalidArgument,
          "--domain a1,a2 is required with --source");
  require(rc.delta.has_value(), ErrorKind::InvalidArgument, "--delta is required with --source");
  p.label = rc.source_file;
  p.spec = make_kernel(parse_family(rc.kernel.empty() ? "quartic" : rc.kernel), *rc.delta, rc.beta);
  p.domain = {rc.domain[0], rc.domain[1]};
  const SymbolTable symbols{{"d", *rc.delta}};
  p.f = deserialize(read_file(rc.source_file), symbols);
  if (!rc.constraint_file.empty()) p.b = deserialize(read_file(rc.constraint_file), symbols);
  if (!rc.jumps.empty()) {
    p.jumps = rc.jumps;
  } else {
    for (double x : p.f.breakpoints())
      if (x > p.domain.lo && x < p.domain.hi) p.jumps.push_back(x);
  }
  return p;
}

PiecewiseSmoothFunction constraint_for(const Problem& p) {
  if (p.b) return *p.b;
  spdlog::info("constructing a compatible constraint");
  return construct_compatible_constraint(p.f, p.spec, std::min(4, smoothing_budget(p.spec)), p.domain, p.jumps).b;
}

SolveConfig solve_config(const RunConfig& rc) {
  SolveConfig cfg;
  cfg.backend = parse_backend(rc.backend);
  cfg.n_interior = rc.n;
  cfg.validate();
  return cfg;
}

int cmd_solve(const RunConfig& rc, std::ostream& out) {
  const Problem p = load_problem(rc);
  const SolveConfig cfg = solve_config(rc);
  const int level = parse_level(rc.level);
  const auto b = constraint_for(p);
  const auto u = resolve(p.f, b, p.spec, p.domain, level, p.jumps, cfg);
  if (rc.out.empty()) {
    write_solution_csv(out, u, p.u_exact);
    return 0;
  }
  const auto path = output_path(rc, rc.out);
  auto os = open_output(path);
  write_solution_csv(os, u, p.u_exact);
  out << fmt::format("{}: N = {}, level {}, backend {}\n", p.label, cfg.n_interior, rc.level, backend_name(cfg.backend));
  out << fmt::format("residual {:.3e} (bound {:.3e})\n", u.residual, u.residual_bound);
  if (p.u_exact) {
    double e = 0.0;
    for (int i = 0; i < u.grid.size(); ++i) e = std::max(e, std::abs(u.values[i] - (*p.u_exact)(u.grid.node(i))));
    out << fmt::format("max error {:.6e}\n", e);
  }
  out << "wrote " << path.string() << '\n';
  return 0;
}

int cmd_smooth(const RunConfig& rc, std::ostream& out) {
  const Problem p = load_problem(rc);
  const int level = parse_level(rc.level);
  require(level >= 0, ErrorKind::InvalidArgument, "smooth needs a level >= 0");
  const auto rec = smooth(p.f, p.spec, level, p.jumps);
  write_coefficient_table(out, rec);
  const std::string text = serialize(rec.source);
  if (rc.out.empty()) {
    out << '\n' << text;
  } else {
    const auto path = output_path(rc, rc.out);
    auto os = open_output(path);
    os << text;
    out << "wrote " << path.string() << '\n';
  }
  return 0;
}

std::vector<int> default_ns(const std::string& id) {
  if (id == "2" || id == "ex2") return {21, 41, 81, 121, 161};
  if (id == "3" || id == "ex3") return {21, 41, 51, 81, 101};
  return {41, 61, 81, 101, 121};
}

int cmd_study(const RunConfig& rc, std::ostream& out) {
  require(!rc.example.empty(), ErrorKind::InvalidArgument, "study needs --example");
  const Fixture fx = fixture(rc.example, rc.delta);
  SolveConfig cfg;
  cfg.backend = parse_backend(rc.backend);
  const auto levels = parse_levels(rc.levels);
  const auto ns = rc.ns.empty() ? default_ns(fx.id) : rc.ns;
  const int jobs = rc.jobs > 0 ? rc.jobs : std::max(1u, std::thread::hardware_concurrency());
  const auto setup = prepare_study(fx, cfg, rc.reference_n);
  std::vector<ConvergenceReport> reports;
  for (int level : levels) reports.push_back(convergence_study(setup, ns, level, cfg, jobs));

  const std::string title = "Errors and observed convergence rates, Example " + fx.id.substr(2);
  const std::string prefix = rc.prefix.empty() ? "study_" + fx.id : rc.prefix;
  const auto csv = output_path(rc, prefix + ".csv");
  const auto md = output_path(rc, prefix + ".md");
  const auto svg = output_path(rc, prefix + ".svg");
  {
    auto os = open_output(csv);
    write_study_csv(os, reports);
  }
  std::ostringstream table;
  write_study_markdown(table, reports, title);
  {
    auto os = open_output(md);
    os << table.str();
  }
  {
    auto os = open_output(svg);
    write_study_svg(os, reports, title);
  }
  out << table.str() << '\n' << "wrote " << csv.string() << ", " << md.string() << ", " << svg.string() << '\n';
  return 0;
}

int cmd_verify(const RunConfig& rc, std::ostream& out) {
  const auto lines = run_suite(rc.suite);
  bool all = true;
  for (const auto& l : lines) {
    out << (l.passed ? "PASS" : "FAIL") << "  [" << l.suite << "] " << l.name << ": " << l.measured << '\n';
    all = all && l.passed;
  }
  out << fmt::format("{} of {} checks passed\n", std::count_if(lines.begin(), lines.end(), [](auto& l) { return l.passed; }),
                     lines.size());
  return all ? 0 : 2;
}

int cmd_fixtures(std::ostream& out) {
  for (const auto& id : fixture_ids()) {
    const Fixture fx = fixture(id);
    out << fx.id << ": " << fx.description << '\n';
    out << fmt::format("  domain ({}, {}), delta {}, kernel {}, alpha {:.10g}\n", fx.domain.lo, fx.domain.hi,
                       fx.spec.delta, family_name(fx.spec.family), alpha(fx.spec));
    std::string jumps;
    for (double j : fx.jumps) jumps += fmt::format("{}{}", jumps.empty() ? "" : ", ", j);
    out << "  jumps at " << jumps << '\n';
    out << "  exact solution: " << (fx.u_exact ? "yes" : "no") << ", constraint: "
        << (fx.b ? "given" : "constructed") << '\n';
  }
  return 0;
}

// key=value lines become flags of the chosen subcommand unless already given.
std::vector<std::string> with_config(const std::vector<std::string>& args, const CLI::App& app) {
  std::string file;
  for (std::size_t i = 0; i + 1 < args.size(); ++i)
    if (args[i] == "--config") file = args[i + 1];
  for (const auto& a : args)
    if (a.rfind("--config=", 0) == 0) file = a.substr(9);
  if (file.empty()) return args;

  const CLI::App* sub = nullptr;
  for (const auto& a : args) {
    for (const auto* s : app.get_subcommands({}))
      if (s->get_name() == a) sub = s;
    if (sub) break;
  }
  std::vector<std::string> extra;
  std::istringstream is(read_file(file));
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (auto h = line.find('#'); h != std::string::npos) line.resize(h);
    const auto eq = line.find('=');
    auto trim = [](std::string s) {
      const auto b = s.find_first_not_of(" \t\r");
      if (b == std::string::npos) return std::string();
      return s.substr(b, s.find_last_not_of(" \t\r") - b + 1);
    };
    if (trim(line).empty()) continue;
    require(eq != std::string::npos, ErrorKind::Parse, fmt::format("{}:{}: expected key=value", file, lineno));
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    const std::string flag = "--" + key;
    const bool given = std::any_of(args.begin(), args.end(),
                                   [&](const std::string& a) { return a == flag || a.rfind(flag + "=", 0) == 0; });
    if (given) continue;
    const bool known = (sub && sub->get_option_no_throw(flag)) || app.get_option_no_throw(flag);
    require(known, ErrorKind::InvalidArgument, fmt::format("{}:{}: unknown key '{}'", file, lineno, key));
    extra.push_back(flag);
    extra.push_back(value);
  }
  std::vector<std::string> out = args;
  out.insert(out.end(), extra.begin(), extra.end());
  return out;
}

void add_problem_options(CLI::App* sub, RunConfig& rc) {
  sub->add_option("--example", rc.example, "Built-in example: 1, 2 or 3");
  sub->add_option("--source", rc.source_file, "Source f in the piecewise text format");
  sub->add_option("--constraint", rc.constraint_file, "Constraint b in the piecewise text format (default: constructed)");
  sub->add_option("--kernel", rc.kernel, "Kernel family: quartic, s, p, g, q");
  sub->add_option("--delta", rc.delta, "Horizon");
  sub->add_option("--beta", rc.beta, "Exponent of the s and p kernels")->capture_default_str();
  sub->add_option("--domain", rc.domain, "a1,a2 (with --source)")->delimiter(',')->expected(2);
  sub->add_option("--jumps", rc.jumps, "Jump locations (default: breakpoints of f inside the domain)")->delimiter(',');
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig rc;
  CLI::App app{"Nonlocal Poisson solver with successive smoothing of source jumps", "nlsmooth"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--out-dir", rc.out_dir, "Directory for relative output paths")->envname(kOutputDirEnv);
  app.add_option("--config", rc.config_file, "key=value file with defaults for the chosen subcommand");
  app.add_flag("-v,--verbose", rc.verbose, "Log progress");

  auto* solve = app.add_subcommand("solve", "Solve one problem and write x,u[,u_exact,error] as CSV");
  add_problem_options(solve, rc);
  solve->add_option("--n", rc.n, "Grid points in the domain, endpoints included")->capture_default_str();
  solve->add_option("--level", rc.level, "Smoothing level or 'none'")->capture_default_str();
  solve->add_option("--backend", rc.backend, "spectral or dense")->capture_default_str();
  solve->add_option("--out", rc.out, "CSV path (default: stdout)");

  auto* sm = app.add_subcommand("smooth", "Print the jump coefficients and write the smoothed source");
  add_problem_options(sm, rc);
  sm->add_option("--level", rc.level, "Smoothing level")->required();
  sm->add_option("--out", rc.out, "Path for the smoothed source (default: stdout)");

  auto* study = app.add_subcommand("study", "Convergence study over grids and smoothing levels");
  study->add_option("--example", rc.example, "Built-in example: 1, 2 or 3")->required();
  study->add_option("--delta", rc.delta, "Horizon");
  study->add_option("--levels", rc.levels, "Comma-separated levels, 'none' for no smoothing")->capture_default_str();
  study->add_option("--ns", rc.ns, "Comma-separated grid sizes")->delimiter(',');
  study->add_option("--backend", rc.backend, "spectral or dense")->capture_default_str();
  study->add_option("--jobs", rc.jobs, "Parallel solves (default: hardware threads)");
  study->add_option("--reference-n", rc.reference_n, "Reference grid when no exact solution exists")->capture_default_str();
  study->add_option("--prefix", rc.prefix, "Base name of the CSV/Markdown/SVG outputs");

  auto* verify = app.add_subcommand("verify", "Run numerical checks of the regularity theory");
  verify->add_option("--suite", rc.suite, "Suite to run")->check(CLI::IsMember(suite_names()))->capture_default_str();

  auto* fixtures = app.add_subcommand("fixtures", "Built-in examples");
  fixtures->require_subcommand(1);
  auto* list = fixtures->add_subcommand("list", "Print the parameters of the built-in examples");

  std::vector<std::string> argv_store{"nlsmooth"};
  try {
    const auto full = with_config(args, app);
    argv_store.insert(argv_store.end(), full.begin(), full.end());
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  std::vector<const char*> argv;
  for (const auto& a : argv_store) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 1;
  }
  spdlog::set_level(rc.verbose ? spdlog::level::info : spdlog::level::warn);

  try {
    if (solve->parsed()) return cmd_solve(rc, out);
    if (sm->parsed()) return cmd_smooth(rc, out);
    if (study->parsed()) return cmd_study(rc, out);
    if (verify->parsed()) return cmd_verify(rc, out);
    if (list->parsed()) return cmd_fixtures(out);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return is_numerical(e.kind()) ? 2 : 1;
  } catch (const fs::filesystem_error& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}

int run(int argc, const char* const* argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run(args, std::cout, std::cerr);
}

}  // namespace nlsmooth::cli
