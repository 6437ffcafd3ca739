#include "domainwall/cli.hpp"

#include <cstdlib>
#include <iostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "domainwall/bvp.hpp"
#include "domainwall/io.hpp"
#include "domainwall/singular_limit.hpp"
#include "domainwall/validation.hpp"

namespace domainwall::cli {

namespace {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::filesystem::path resolve(const std::filesystem::path& path) {
  if (path.empty() || path.is_absolute()) return path;
  if (const char* dir = std::getenv(kOutputDirEnv); dir != nullptr && *dir != '\0') {
    return std::filesystem::path(dir) / path;
  }
  return path;
}

ModelParams params_of(const RunConfig& c) {
  if (c.eps.has_value() == c.coupling.has_value()) {
    throw UsageError("exactly one of --eps and --coupling is required");
  }
  return c.eps ? ModelParams::from_eps(c.lambda, *c.eps)
               : ModelParams::from_coupling(c.lambda, *c.coupling);
}

SolverConfig solver_of(const RunConfig& c) {
  auto solver = SolverConfig::defaults(c.lambda);
  if (c.half_length) solver.half_length = *c.half_length;
  if (c.n) solver.n = *c.n;
  if (c.tol) solver.newton_tol = *c.tol;
  return solver;
}

std::string dump(const nlohmann::json& j) { return j.dump(2) + "\n"; }

int run_solve(const RunConfig& c, std::ostream& err) {
  const auto params = params_of(c);
  const auto profile = solve_heteroclinic(params, solver_of(c));
  const auto report = validate_profile(profile);
  const auto out = resolve(c.out.empty() ? (c.format == Format::Csv ? "profile.csv" : "profile.json")
                                         : c.out);
  if (c.format == Format::Csv) {
    io::write_profile_csv(out, profile);
  } else {
    io::write_text(out, dump(io::profile_to_json(profile)));
  }
  io::write_text(resolve(c.report.empty() ? "report.json" : c.report),
                 dump(io::report_to_json(report, profile)));
  if (!report.structure_ok()) {
    err << "validation failed: structural checks did not all hold\n";
    return kValidationFailure;
  }
  return kSuccess;
}

int run_reduced(const RunConfig& c) {
  const double half_length = c.half_length.value_or(default_reduced_half_length(c.lambda));
  const auto reduced = solve_reduced(c.lambda, half_length, c.n.value_or(kDefaultReducedNodes));
  const auto out = resolve(c.out.empty() ? (c.format == Format::Csv ? "reduced.csv" : "reduced.json")
                                         : c.out);
  if (c.format == Format::Csv) {
    io::write_reduced_csv(out, reduced);
  } else {
    io::write_text(out, dump(io::reduced_to_json(reduced)));
  }
  return kSuccess;
}

int run_validate(const RunConfig& c, std::ostream& out, std::ostream& err) {
  if (c.in.empty()) throw UsageError("validate needs --in <profile.csv>");
  const auto profile = io::read_profile_csv(c.in);
  const auto report = validate_profile(profile);
  const auto text = dump(io::report_to_json(report, profile));
  if (c.report.empty()) {
    out << text;
  } else {
    io::write_text(resolve(c.report), text);
  }
  if (!report.structure_ok()) {
    err << "validation failed: structural checks did not all hold\n";
    return kValidationFailure;
  }
  return kSuccess;
}

int run_sweep(const RunConfig& c, std::ostream& err) {
  const std::size_t jobs = c.jobs ? c.jobs : std::max(1u, std::thread::hardware_concurrency());
  const auto study = rate_study(c.lambda, c.eps_list, solver_of(c), jobs);
  const auto dir = resolve(c.out_dir.empty() ? "." : c.out_dir);
  std::filesystem::create_directories(dir);
  for (std::size_t k = 0; k < study.eps_list.size(); ++k) {
    io::write_profile_csv(dir / ("profile_eps_" + io::format_double(study.eps_list[k]) + ".csv"),
                          study.profiles[k]);
  }
  io::write_text(c.report.empty() ? dir / "sweep.json" : resolve(c.report),
                 dump(io::rate_study_to_json(study)));
  for (const auto& report : study.reports) {
    if (!report.structure_ok()) {
      err << "validation failed for at least one sweep point\n";
      return kValidationFailure;
    }
  }
  return kSuccess;
}

int run_spectrum(const RunConfig& c, std::ostream& out) {
  EquilibriumSide side;
  if (c.side == "left") {
    side = EquilibriumSide::Left;
  } else if (c.side == "right") {
    side = EquilibriumSide::Right;
  } else {
    throw UsageError("--side must be left or right");
  }
  const auto text = dump(io::spectrum_to_json(side, params_of(c)));
  if (c.out.empty()) {
    out << text;
  } else {
    io::write_text(resolve(c.out), text);
  }
  return kSuccess;
}

}  // namespace

RunConfig parse(int argc, const char* const* argv) {
  CLI::App app{"Domain-wall heteroclinics of the two-component condensate system"};
  app.require_subcommand(1);
  RunConfig c;
  std::string format = "csv";

  auto add_params = [&](CLI::App* sub, bool need_eps) {
    sub->add_option("--lambda", c.lambda, "stiffness ratio lambda >= 1")->required();
    if (need_eps) {
      auto* eps = sub->add_option("--eps", c.eps, "eps = sqrt(coupling - 1)");
      auto* coupling = sub->add_option("--coupling", c.coupling, "coupling Lambda > 1");
      eps->excludes(coupling);
      coupling->excludes(eps);
    }
  };
  auto add_solver = [&](CLI::App* sub) {
    sub->add_option("--L", c.half_length, "half-length of the slow-variable domain");
    sub->add_option("--n", c.n, "node count (odd)");
    sub->add_option("--tol", c.tol, "Newton residual sup-norm target");
  };

  auto* solve = app.add_subcommand("solve", "solve the heteroclinic and validate it");
  add_params(solve, true);
  add_solver(solve);
  solve->add_option("--out", c.out, "profile output path");
  solve->add_option("--report", c.report, "validation report path");
  solve->add_option("--format", format)->check(CLI::IsMember({"csv", "json"}));

  auto* reduced = app.add_subcommand("reduced", "solve the eps = 0 reduced problem");
  add_params(reduced, false);
  reduced->add_option("--L", c.half_length, "half-length of the mesh");
  reduced->add_option("--n", c.n, "node count (odd)");
  reduced->add_option("--out", c.out, "output path");
  reduced->add_option("--format", format)->check(CLI::IsMember({"csv", "json"}));

  auto* validate = app.add_subcommand("validate", "validate a stored profile CSV");
  validate->add_option("--in", c.in, "profile CSV")->required();
  validate->add_option("--report", c.report, "report path (stdout if omitted)");

  auto* sweep = app.add_subcommand("sweep", "rate study over a decreasing eps list");
  add_params(sweep, false);
  add_solver(sweep);
  sweep->add_option("--eps-list", c.eps_list, "strictly decreasing eps values")->delimiter(',');
  sweep->add_option("--out-dir", c.out_dir, "directory for per-eps profiles and sweep.json");
  sweep->add_option("--report", c.report, "rate-study JSON path");
  sweep->add_option("--jobs", c.jobs, "worker count (0 = number of processors)");

  auto* spectrum = app.add_subcommand("spectrum", "equilibrium eigenvalues of the slow-fast field");
  add_params(spectrum, true);
  spectrum->add_option("--side", c.side, "left (u,v)=(0,1) or right (u,v)=(1,0)")
      ->check(CLI::IsMember({"left", "right"}));
  spectrum->add_option("--out", c.out, "output path (stdout if omitted)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    std::ostringstream text;
    const int code = app.exit(e, text, text);
    throw ParseStop{code == 0 ? 0 : static_cast<int>(kUsage), text.str()};
  }
  c.command = app.get_subcommands().front()->get_name();
  c.format = format == "json" ? Format::Json : Format::Csv;
  return c;
}

int run(const RunConfig& c, std::ostream& out, std::ostream& err) {
  try {
    if (c.command == "solve") return run_solve(c, err);
    if (c.command == "reduced") return run_reduced(c);
    if (c.command == "validate") return run_validate(c, out, err);
    if (c.command == "sweep") return run_sweep(c, err);
    if (c.command == "spectrum") return run_spectrum(c, out);
    err << "unknown command '" << c.command << "'\n";
    return kUsage;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const InvalidArgument& e) {
    err << "invalid argument: " << e.what() << '\n';
    return kUsage;
  } catch (const NoConvergence& e) {
    err << "solver failure at eps = " << e.eps() << ": " << e.what() << '\n';
    return kSolverFailure;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kSolverFailure;
  }
}

int main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig config;
  try {
    config = parse(argc, argv);
  } catch (const ParseStop& stop) {
    (stop.exit_code == 0 ? out : err) << stop.message;
    return stop.exit_code;
  }
  return run(config, out, err);
}

}  // namespace domainwall::cli
