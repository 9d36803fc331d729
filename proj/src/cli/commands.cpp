#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "cyclecert/cli.hpp"
#include "cyclecert/dsl.hpp"
#include "cyclecert/errors.hpp"
#include "cyclecert/harness.hpp"
#include "cyclecert/render.hpp"

namespace cyclecert::cli {

namespace {

struct UsageError {
  std::string message;
};

ToleranceContext tolerance(const std::optional<double>& flag) {
  double tol = 0.0;
  if (flag) {
    tol = *flag;
  } else if (const char* env = std::getenv(kToleranceEnv); env && *env) {
    char* end = nullptr;
    tol = std::strtod(env, &end);
    if (*end != '\0') throw UsageError{std::string(kToleranceEnv) + " is not a number: '" + env + "'"};
  } else {
    return {};
  }
  if (!(tol > 0.0) || !std::isfinite(tol)) throw UsageError{"tolerance must be a positive number"};
  return ToleranceContext::make(tol, tol, 1.0);
}

std::string scenario_list() {
  std::string out;
  for (const auto& n : scenario_names()) out += "  " + n + "\n";
  return out;
}

void require_scenario(const std::string& name) {
  if (!is_scenario(name)) throw UsageError{"unknown scenario '" + name + "'; available scenarios:\n" + scenario_list()};
}

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f || !(f << text) || !f.flush()) throw UsageError{"cannot write '" + path + "'"};
}

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw UsageError{"cannot read '" + path + "'"};
  std::stringstream ss;
  ss << f.rdbuf();
  if (f.bad()) throw UsageError{"cannot read '" + path + "'"};
  return ss.str();
}

void print_header(std::ostream& out) {
  char buf[160];
  std::snprintf(buf, sizeof buf, "%-22s %8s %11s %8s %10s %13s\n", "scenario", "trials", "applicable", "passed",
                "pass_rate", "max_residual");
  out << buf;
}

void print_row(std::ostream& out, const std::string& name, std::size_t trials, const FuzzResult& r) {
  char buf[160];
  std::snprintf(buf, sizeof buf, "%-22s %8zu %11zu %8zu %9.2f%% %13s\n", name.c_str(), trials, r.applicable,
                r.passed, 100.0 * r.pass_rate(), sci(r.max_residual()).c_str());
  out << buf;
}

// Up to `limit` failing trials with their first failing assertion.
void print_failures(std::ostream& out, const FuzzResult& r, std::size_t limit = 10) {
  std::size_t shown = 0;
  for (std::size_t i = 0; i < r.reports.size() && shown < limit; ++i) {
    const CheckReport& rep = r.reports[i];
    if (!rep.applicable || rep.passed()) continue;
    for (const auto& a : rep.assertions) {
      if (a.pass) continue;
      out << "  FAIL " << rep.scenario << " trial " << i << " seed " << rep.seed << ": " << a.description
          << " residual " << sci(a.residual) << " > " << sci(a.tolerance) << "\n";
      break;
    }
    ++shown;
  }
}

bool all_passed(const FuzzResult& r) { return r.passed == r.applicable; }

struct FuzzOptions {
  std::size_t trials = 100;
  std::uint64_t seed = 42;
  std::optional<double> tol;
  unsigned workers = 0;
  std::string json;
};

void add_fuzz_options(CLI::App* cmd, FuzzOptions& o) {
  cmd->add_option("--trials", o.trials, "number of random trials")->capture_default_str();
  cmd->add_option("--seed", o.seed, "base seed")->capture_default_str();
  cmd->add_option("--tol", o.tol, std::string("relative tolerance (default from ") + kToleranceEnv + " or 1e-9)");
  cmd->add_option("--workers", o.workers, "worker threads, 0 = hardware concurrency")->capture_default_str();
  cmd->add_option("--json", o.json, "write the reports as JSON to this file");
}

int cmd_fuzz(const std::vector<std::string>& names, const FuzzOptions& o, std::ostream& out) {
  for (const auto& n : names) require_scenario(n);
  const ToleranceContext ctx = tolerance(o.tol);
  std::vector<CheckReport> all;
  bool ok = true;
  print_header(out);
  std::vector<FuzzResult> results;
  for (const auto& n : names) {
    results.push_back(fuzz(n, o.trials, o.seed, ctx, o.workers));
    print_row(out, n, o.trials, results.back());
  }
  for (auto& r : results) {
    print_failures(out, r);
    ok = ok && all_passed(r);
    all.insert(all.end(), std::make_move_iterator(r.reports.begin()), std::make_move_iterator(r.reports.end()));
  }
  if (!o.json.empty()) write_file(o.json, reports_to_json(all));
  return ok ? exit_ok : exit_check_failed;
}

struct RunOptions {
  std::string path;
  std::uint64_t seed = 0;
  std::optional<double> tol;
  std::string json;
};

void print_diagnostics(std::ostream& err, const std::string& path, const std::vector<dsl::Diagnostic>& ds) {
  for (const auto& d : ds) err << path << ":" << d.format() << "\n";
}

int cmd_run(const RunOptions& o, std::ostream& out, std::ostream& err) {
  const ToleranceContext ctx = tolerance(o.tol);
  const std::string source = read_file(o.path);
  const dsl::ParseResult parsed = dsl::parse_source(source);
  print_diagnostics(err, o.path, parsed.diagnostics);
  if (!parsed.ok()) return exit_error;
  const dsl::EvalResult result = dsl::evaluate(parsed.program, ctx, o.seed);
  std::size_t passed = 0, total = 0;
  for (const auto& rep : result.reports) {
    for (const auto& a : rep.assertions) {
      ++total;
      if (a.pass) ++passed;
      out << (a.pass ? "PASS " : "FAIL ") << a.description << "  residual " << sci(a.residual) << " (tol "
          << sci(a.tolerance) << ")\n";
    }
  }
  print_diagnostics(err, o.path, result.diagnostics);
  out << passed << "/" << total << " assertions passed\n";
  if (!o.json.empty()) write_file(o.json, reports_to_json(result.reports));
  if (!result.ok()) return exit_error;
  return result.all_passed() ? exit_ok : exit_check_failed;
}

struct RenderOptions {
  std::string path;
  std::string scenario;
  std::uint64_t seed = 42;
  std::string out = "-";
  std::vector<std::string> style;
  bool parabola = false;
};

Scene without_parabolas(const Scene& s) {
  Scene out;
  for (const auto& [name, e] : s.elements())
    if (!std::holds_alternative<Parabola>(e)) out.set(name, e);
  return out;
}

int cmd_render(const RenderOptions& o, std::ostream& out, std::ostream& err) {
  if (o.path.empty() == o.scenario.empty()) throw UsageError{"render needs either a script path or --scenario"};
  RenderStyle style;
  for (const auto& kv : o.style) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) throw UsageError{"--style expects key=value, got '" + kv + "'"};
    style.set(kv.substr(0, eq), kv.substr(eq + 1));
  }
  style.validate();

  Scene scene;
  if (!o.scenario.empty()) {
    require_scenario(o.scenario);
    // The first applicable trial from the seed's trial sequence.
    constexpr std::uint64_t kAttempts = 64;
    bool found = false;
    for (std::uint64_t i = 0; i < kAttempts && !found; ++i) {
      CheckReport rep = run_trial(o.scenario, trial_seed(o.seed, i));
      if (rep.applicable) {
        scene = std::move(rep.scene);
        found = true;
      }
    }
    if (!found) throw UsageError{"no applicable '" + o.scenario + "' configuration for this seed"};
  } else {
    const std::string source = read_file(o.path);
    const dsl::ParseResult parsed = dsl::parse_source(source);
    print_diagnostics(err, o.path, parsed.diagnostics);
    if (!parsed.ok()) return exit_error;
    dsl::EvalResult result = dsl::evaluate(parsed.program, {}, o.seed);
    print_diagnostics(err, o.path, result.diagnostics);
    if (!result.ok()) return exit_error;
    scene = std::move(result.scene);
  }
  if (!o.parabola) scene = without_parabolas(scene);

  const std::string svg = render_svg(scene, style);
  if (o.out == "-") {
    out << svg;
  } else {
    write_file(o.out, svg);
  }
  return exit_ok;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Certify tangent-circle theorems numerically, evaluate scene scripts, render SVG."};
  app.require_subcommand(1);

  FuzzOptions check_opts;
  std::string check_name;
  auto* check = app.add_subcommand("check", "fuzz one scenario and summarise");
  check->add_option("scenario", check_name, "scenario name")->required();
  add_fuzz_options(check, check_opts);

  FuzzOptions fuzz_opts;
  std::vector<std::string> fuzz_names;
  auto* fuzz_cmd = app.add_subcommand("fuzz", "fuzz several scenarios (all by default)");
  fuzz_cmd->add_option("--scenario", fuzz_names, "scenario to include; repeatable");
  add_fuzz_options(fuzz_cmd, fuzz_opts);

  RunOptions run_opts;
  auto* run_cmd = app.add_subcommand("run", "evaluate a scene script");
  run_cmd->add_option("script", run_opts.path, "script path")->required();
  run_cmd->add_option("--seed", run_opts.seed, "seed for rand()")->capture_default_str();
  run_cmd->add_option("--tol", run_opts.tol, "relative tolerance");
  run_cmd->add_option("--json", run_opts.json, "write the reports as JSON to this file");

  RenderOptions render_opts;
  auto* render = app.add_subcommand("render", "draw a script or a scenario as SVG");
  render->add_option("script", render_opts.path, "script path");
  render->add_option("--scenario", render_opts.scenario, "render a random instance of this scenario instead");
  render->add_option("--seed", render_opts.seed, "seed for the scenario or for rand()")->capture_default_str();
  render->add_option("--out", render_opts.out, "output file, - for stdout")->capture_default_str();
  render->add_option("--style", render_opts.style, "style override key=value; repeatable");
  render->add_flag("--parabola", render_opts.parabola, "draw parabolas (generalized_thebault)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? exit_ok : exit_error;
  }

  try {
    if (check->parsed()) return cmd_fuzz({check_name}, check_opts, out);
    if (fuzz_cmd->parsed()) return cmd_fuzz(fuzz_names.empty() ? scenario_names() : fuzz_names, fuzz_opts, out);
    if (run_cmd->parsed()) return cmd_run(run_opts, out, err);
    if (render->parsed()) return cmd_render(render_opts, out, err);
  } catch (const UsageError& e) {
    err << "error: " << e.message << "\n";
  } catch (const GeometryError& e) {
    err << "error: " << e.what() << "\n";
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
  }
  return exit_error;
}

}  // namespace cyclecert::cli
