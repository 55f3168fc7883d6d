#include "schemeforge_cli/cli.hpp"

#include <CLI11.hpp>
#include <cstdlib>
#include <sstream>

#include "schemeforge/classifier.hpp"
#include "schemeforge/csv.hpp"
#include "schemeforge/errors.hpp"
#include "schemeforge/parallel.hpp"
#include "schemeforge/problem_spec.hpp"
#include "schemeforge/problems.hpp"
#include "schemeforge/scheme_selector.hpp"

namespace schemeforge::cli {

namespace {

int exit_code_for(const Error& e) {
  switch (e.code()) {
    case ErrorCode::UnsupportedProblemFamily:
      return kUnsupportedFamily;
    case ErrorCode::NonFiniteState:
    case ErrorCode::NewtonDivergence:
    case ErrorCode::SingularJacobian:
    case ErrorCode::NoCrossing:
    case ErrorCode::MultipleCrossings:
    case ErrorCode::NegativeArea:
      return kSolverFailure;
    default:
      return kInputError;
  }
}

// Runs `body`, mapping library errors to exit codes with a diagnostic.
template <typename Body>
int guarded(std::ostream& err, Body&& body) {
  try {
    return body();
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_code_for(e);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kSolverFailure;
  }
}

// --threads wins over the default of 1; SCHEMEFORGE_THREADS caps either.
void apply_threads(const CliConfig& c) {
  int threads = c.threads.value_or(1);
  if (const char* env = std::getenv("SCHEMEFORGE_THREADS")) {
    const int cap = std::atoi(env);
    if (cap > 0) threads = std::min(threads, cap);
  }
  set_thread_count(threads);
}

ClassifierOptions classifier_options(const CliConfig& c) {
  ClassifierOptions o;
  if (c.worker_threshold) o.worker_threshold = *c.worker_threshold;
  if (c.multiscale_ratio) o.multiscale_ratio = *c.multiscale_ratio;
  return o;
}

SchemeKind chosen_scheme(const CliConfig& c, const ProblemSpec& spec) {
  if (c.scheme) {
    const auto kind = parse_scheme_kind(*c.scheme);
    if (!kind) throw Error(ErrorCode::InvalidArgument, "unknown scheme '" + *c.scheme + "'", "--scheme");
    return *kind;
  }
  const auto assignments = select_schemes(spec, classifier_options(c));
  if (assignments.empty()) throw Error(ErrorCode::ValidationError, "spec has no governed field");
  return assignments.front().scheme;
}

std::string state_csv(const CartesianGrid& grid, const std::vector<double>& u) {
  std::string out = grid.dim == 1 ? "x,value\n" : "x,y,value\n";
  const std::size_t ny = grid.dim == 2 ? grid.n[1] : 1;
  for (std::size_t j = 0; j < ny; ++j) {
    for (std::size_t i = 0; i < grid.n[0]; ++i) {
      out += format_number(grid.coord(0, i)) + ',';
      if (grid.dim == 2) out += format_number(grid.coord(1, j)) + ',';
      out += format_number(u[grid.index(i, j)]) + '\n';
    }
  }
  return out;
}

void print_stats(std::ostream& out, const StepperStats& s) {
  out << "steps " << s.steps << ", rhs evaluations " << s.rhs_evaluations;
  if (s.newton_iterations > 0)
    out << ", newton iterations " << s.newton_iterations << ", krylov iterations "
        << s.krylov_iterations;
  out << ", wall " << format_number(s.wall_seconds) << " s\n";
}

}  // namespace

int cmd_classify(const CliConfig& config, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const auto spec = load_problem_spec(config.spec);
    const auto assignments = select_schemes(spec, classifier_options(config));
    out << render_assignment_table(assignments);
    write_text_file(config.out / "assignments.csv", render_assignment_csv(assignments));
    return int{kSuccess};
  });
}

int cmd_solve(const CliConfig& config, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    apply_threads(config);
    const auto spec = load_problem_spec(config.spec);
    const auto family = family_of(spec);
    const auto scheme = chosen_scheme(config, spec);

    if (family == ProblemFamily::Advection2d) {
      if (scheme != SchemeKind::DGM && scheme != SchemeKind::FVM)
        throw Error(ErrorCode::InvalidArgument,
                    "advection runs support DGM and FVM, not " + std::string(to_string(scheme)),
                    "--scheme");
      auto c = advection_config(spec);
      const int p = scheme == SchemeKind::FVM ? 0 : config.p.value_or(c.order);
      if (config.h) {
        const double len = c.params.extents[0][1] - c.params.extents[0][0];
        const double cells = std::round(len / *config.h);
        if (cells < 1.0 || std::abs(cells * *config.h - len) > 1e-9 * len)
          throw Error(ErrorCode::NonDivisibleExtent, "h does not divide the domain", "--h");
        c.dofs_per_axis = static_cast<std::size_t>(cells) * static_cast<std::size_t>(p + 1);
      }
      if (config.dt) c.dt = *config.dt;
      const auto run = run_advection(c, p);
      out << (p == 0 ? "FVM" : "DGM p=" + std::to_string(p)) << " on " << run.cells << "x"
          << run.cells << " cells, dt " << format_number(run.dt) << '\n';
      print_stats(out, run.stats);
      out << "mass " << format_number(run.initial_mass) << " -> " << format_number(run.final_mass)
          << ", L2 error vs translated initial condition " << format_number(run.l2_error) << '\n';
      write_text_file(config.out / "snapshot.csv", run.snapshot_csv);
      std::ostringstream summary;
      summary << "scheme,p,cells,dt,steps,initial_mass,final_mass,max_step_mass_drift,l2_error\n"
              << (p == 0 ? "FVM" : "DGM") << ',' << p << ',' << run.cells << ','
              << format_number(run.dt) << ',' << run.stats.steps << ','
              << format_number(run.initial_mass) << ',' << format_number(run.final_mass) << ','
              << format_number(run.max_step_mass_drift) << ',' << format_number(run.l2_error) << '\n';
      write_text_file(config.out / "summary.csv", summary.str());
      return int{kSuccess};
    }

    auto c = allen_cahn_config(spec);
    if (config.h) c.params.h = *config.h;
    if (config.dt) c.dt = *config.dt;
    const auto run = run_allen_cahn(c, scheme);
    out << to_string(family) << " with " << to_string(scheme) << " on "
        << run.grid.vertex_count() << " nodes, dt " << format_number(c.dt) << '\n';
    print_stats(out, run.stats);
    if (!run.track.times.empty()) {
      out << (c.dim == 1 ? "interface position" : "grain radius") << " at t="
          << format_number(run.track.times.back()) << ": measured "
          << format_number(run.track.measured.back()) << ", analytic "
          << format_number(run.track.analytic.back()) << '\n';
    }
    write_text_file(config.out / (c.dim == 1 ? "interface_track.csv" : "radius_track.csv"),
                    run.track.csv());
    write_text_file(config.out / "final_state.csv", state_csv(run.grid, run.state));
    return int{kSuccess};
  });
}

int cmd_verify(const CliConfig& config, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    apply_threads(config);
    const auto spec = load_problem_spec(config.spec);
    const auto checks = verify_family(spec);
    bool all = true;
    std::string csv = "check,passed,detail\n";
    for (const auto& c : checks) {
      out << (c.passed ? "PASS " : "FAIL ") << c.name << ": " << c.detail << '\n';
      csv += c.name + ',' + (c.passed ? "true" : "false") + ",\"" + c.detail + "\"\n";
      all = all && c.passed;
    }
    write_text_file(config.out / "verify.csv", csv);
    return all ? int{kSuccess} : int{kVerificationFailed};
  });
}

int cmd_bench(const CliConfig& config, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const int repeats = config.repeats.value_or(100);
    if (repeats < 1) throw Error(ErrorCode::InvalidArgument, "--repeats must be at least 1", "--repeats");
    set_thread_count(1);
    const auto spec = load_problem_spec(config.spec);
    const auto reports = bench_family(spec, static_cast<std::size_t>(repeats));
    out << render_bench_table(reports);
    write_text_file(config.out / "bench.csv", render_bench_csv(reports));
    return int{kSuccess};
  });
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Numerical scheme selection and benchmark problems"};
  // `--h` is the grid spacing, so help is long-form only; subcommands inherit this.
  app.set_help_flag("--help", "Print this help message and exit");
  app.require_subcommand(1);
  CliConfig config;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--spec", config.spec, "Problem spec (JSON)")->required();
    sub->add_option("--out", config.out, "Output directory for CSV files");
    sub->add_option("--threads", config.threads, "Worker threads (capped by SCHEMEFORGE_THREADS)");
  };
  auto* classify = app.add_subcommand("classify", "Assign a scheme to every governed field");
  common(classify);
  classify->add_option("--worker-threshold", config.worker_threshold, "Workers counted as massively parallel");
  classify->add_option("--multiscale-ratio", config.multiscale_ratio, "Length-scale ratio counted as multiscale");

  auto* solve = app.add_subcommand("solve", "Run a benchmark problem to its end time");
  common(solve);
  solve->add_option("--scheme", config.scheme, "FDM, FVM, CGM or DGM (default: selector)");
  solve->add_option("--p", config.p, "DG polynomial order");
  solve->add_option("--h", config.h, "Grid spacing");
  solve->add_option("--dt", config.dt, "Time step");

  auto* verify = app.add_subcommand("verify", "Compare a benchmark problem against analytics");
  common(verify);

  auto* bench = app.add_subcommand("bench", "Time the candidate schemes of a benchmark problem");
  common(bench);
  bench->add_option("--repeats", config.repeats, "Repeats per scheme (default 100)");

  std::vector<std::string> reversed(args.rbegin(), args.rend() - (args.empty() ? 0 : 1));
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kSuccess;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n' << app.help();
    return kInputError;
  }

  for (auto* sub : app.get_subcommands()) config.subcommand = sub->get_name();
  if (config.subcommand == "classify") return cmd_classify(config, out, err);
  if (config.subcommand == "solve") return cmd_solve(config, out, err);
  if (config.subcommand == "verify") return cmd_verify(config, out, err);
  return cmd_bench(config, out, err);
}

}  // namespace schemeforge::cli
