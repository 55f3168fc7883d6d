#include "schemeforge/problems.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <sstream>

#include "schemeforge/csv.hpp"
#include "schemeforge/errors.hpp"
#include "schemeforge/solver_cg.hpp"
#include "schemeforge/solver_fd.hpp"

namespace schemeforge {

std::string_view to_string(ProblemFamily family) noexcept {
  switch (family) {
    case ProblemFamily::AllenCahn1d: return "allen_cahn_1d";
    case ProblemFamily::AllenCahn2d: return "allen_cahn_2d";
    case ProblemFamily::Advection2d: return "advection_2d";
  }
  return "?";
}

std::optional<ProblemFamily> parse_problem_family(std::string_view text) {
  for (auto f : {ProblemFamily::AllenCahn1d, ProblemFamily::AllenCahn2d, ProblemFamily::Advection2d})
    if (text == to_string(f)) return f;
  return std::nullopt;
}

ProblemFamily family_of(const ProblemSpec& spec) {
  if (!spec.family)
    throw Error(ErrorCode::UnsupportedProblemFamily, "spec declares no problem family", "family");
  const auto f = parse_problem_family(*spec.family);
  if (!f)
    throw Error(ErrorCode::UnsupportedProblemFamily,
                "unsupported problem family '" + *spec.family +
                    "' (expected allen_cahn_1d, allen_cahn_2d or advection_2d)",
                "family");
  return *f;
}

AllenCahnConfig allen_cahn_config(const ProblemSpec& spec) {
  const auto family = family_of(spec);
  if (family == ProblemFamily::Advection2d)
    throw Error(ErrorCode::InvalidArgument, "not an Allen-Cahn problem", "family");
  AllenCahnConfig c;
  if (family == ProblemFamily::AllenCahn2d) {
    c.dim = 2;
    c.params = {50.0, 4.0, 1.0, 0.0, 0.0, 1.0};
    c.extents = {{0.0, 64.0}, {0.0, 64.0}};
    c.dt = 0.05;
    c.r0 = 32.0;
  }
  if (spec.domain.dim == c.dim && static_cast<int>(spec.domain.extents.size()) == c.dim)
    c.extents = spec.domain.extents;

  auto& p = c.params;
  p.gamma = spec.parameter("gamma", p.gamma);
  p.xi = spec.parameter("xi", p.xi);
  p.mobility = spec.parameter("mobility", p.mobility);
  p.mu0 = spec.parameter("mu0", p.mu0);
  p.x0 = spec.parameter("x0", p.x0);
  p.h = spec.parameter("h", p.h);
  c.dt = spec.parameter("dt", c.dt);
  c.t_end = spec.parameter("t_end", c.t_end);
  c.sample_interval = spec.parameter("sample_interval", c.sample_interval);
  c.r0 = spec.parameter("r0", c.r0);
  c.newton.tol = spec.parameter("newton_tol", c.newton.tol);
  c.newton.max_iterations = static_cast<int>(spec.parameter("newton_max", c.newton.max_iterations));
  p.validate();
  return c;
}

std::vector<double> allen_cahn_initial_state(const AllenCahnConfig& config,
                                             const CartesianGrid& grid) {
  std::vector<double> u(grid.vertex_count());
  const auto& p = config.params;
  if (grid.dim == 1) {
    for (std::size_t i = 0; i < grid.n[0]; ++i) u[i] = analytic_interface(grid.coord(0, i), 0.0, p);
    return u;
  }
  for (std::size_t j = 0; j < grid.n[1]; ++j) {
    for (std::size_t i = 0; i < grid.n[0]; ++i) {
      const double r = std::hypot(grid.coord(0, i), grid.coord(1, j));
      u[grid.index(i, j)] = 0.5 * (1.0 - std::tanh((r - config.r0) / p.xi));
    }
  }
  return u;
}

namespace {

bool near(double a, double b) { return std::abs(a - b) <= 1e-9 * std::max(1.0, std::abs(b)); }

struct AllenCahnSetup {
  CartesianGrid grid;
  std::optional<FdSystem> fd;
  std::optional<CgSystem> cg;
  RhsFunction rhs;
  std::size_t bytes = 0;
};

// Systems are heap-pinned so the rhs closure can hold a stable pointer.
std::unique_ptr<AllenCahnSetup> make_allen_cahn(const AllenCahnConfig& config, SchemeKind scheme) {
  auto s = std::make_unique<AllenCahnSetup>();
  s->grid = build_cartesian_grid(config.dim, config.extents, config.params.h);
  if (scheme == SchemeKind::FDM) {
    s->fd.emplace(s->grid, config.params);
    const FdSystem* sys = &*s->fd;
    s->rhs = [sys](std::span<const double> u, double t, std::span<double> du) { sys->rhs(u, t, du); };
    s->bytes = sys->owned_bytes();
  } else if (scheme == SchemeKind::CGM) {
    s->cg.emplace(s->grid, config.params);
    const CgSystem* sys = &*s->cg;
    s->rhs = [sys](std::span<const double> u, double t, std::span<double> du) { sys->rhs(u, t, du); };
    s->bytes = sys->owned_bytes();
  } else {
    throw Error(ErrorCode::InvalidArgument,
                "Allen-Cahn runs support FDM and CGM, not " + std::string(to_string(scheme)),
                "scheme");
  }
  return s;
}

double radius_or_zero(std::span<const double> u, const CartesianGrid& grid) {
  try {
    return measure_grain_radius(u, grid);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::NegativeArea) return 0.0;
    throw;
  }
}

}  // namespace

AllenCahnRun run_allen_cahn(const AllenCahnConfig& config, SchemeKind scheme,
                            const std::vector<double>& snapshot_times) {
  auto setup = make_allen_cahn(config, scheme);
  AllenCahnRun run;
  run.scheme = scheme;
  run.grid = setup->grid;
  run.owned_bytes = setup->bytes;
  const auto& grid = setup->grid;
  const auto& p = config.params;

  OdeProblem problem;
  problem.rhs = setup->rhs;
  problem.initial = allen_cahn_initial_state(config, grid);
  problem.t0 = 0.0;
  problem.t_end = config.t_end;
  problem.dt = config.dt;

  auto sampler = sample_every(config.sample_interval, [&](double t, std::span<const double> u) {
    if (grid.dim == 1)
      run.track.add(t, measure_interface_position(u, grid), analytic_interface_position(t, p));
    else
      run.track.add(t, radius_or_zero(u, grid), analytic_grain_radius(t, config.r0, p.mobility));
  });
  problem.observer = [&](std::size_t step, double t, std::span<const double> u) {
    sampler(step, t, u);
    for (double ts : snapshot_times) {
      if (near(t, ts)) {
        run.snapshot_times.push_back(ts);
        run.snapshots.emplace_back(u.begin(), u.end());
      }
    }
  };

  auto result = integrate_dirk2(problem, config.newton);
  run.state = std::move(result.state);
  run.stats = result.stats;
  return run;
}

AdvectionConfig advection_config(const ProblemSpec& spec) {
  if (family_of(spec) != ProblemFamily::Advection2d)
    throw Error(ErrorCode::InvalidArgument, "not an advection problem", "family");
  AdvectionConfig c;
  if (spec.domain.dim == 2 && spec.domain.extents.size() == 2)
    c.params.extents = {spec.domain.extents[0], spec.domain.extents[1]};
  c.params.velocity = {spec.parameter("ux", c.params.velocity[0]),
                       spec.parameter("uy", c.params.velocity[1])};
  c.params.end_time = spec.parameter("t_end", c.params.end_time);
  c.dofs_per_axis = static_cast<std::size_t>(
      spec.parameter("dofs_per_axis", static_cast<double>(c.dofs_per_axis)));
  c.order = static_cast<int>(spec.parameter("order", c.order));
  c.safety = spec.parameter("safety", c.safety);
  c.rectangle = {spec.parameter("rect_x0", c.rectangle[0]), spec.parameter("rect_x1", c.rectangle[1]),
                 spec.parameter("rect_y0", c.rectangle[2]), spec.parameter("rect_y1", c.rectangle[3])};
  c.params.validate();
  return c;
}

std::size_t advection_cells(const AdvectionConfig& config, int order) {
  const auto per_cell = static_cast<std::size_t>(order + 1);
  if (order < 0 || config.dofs_per_axis % per_cell != 0 || config.dofs_per_axis == 0)
    throw Error(ErrorCode::InvalidArgument,
                "dofs_per_axis " + std::to_string(config.dofs_per_axis) +
                    " is not divisible by p + 1 = " + std::to_string(per_cell),
                "dofs_per_axis");
  return config.dofs_per_axis / per_cell;
}

namespace {

std::function<double(double, double)> rectangle_ic(const AdvectionConfig& c) {
  const auto r = c.rectangle;
  return [r](double x, double y) {
    return (x >= r[0] && x <= r[1] && y >= r[2] && y <= r[3]) ? 1.0 : 0.0;
  };
}

// Initial condition shifted back along the velocity, wrapped periodically.
std::function<double(double, double)> translated_ic(const AdvectionConfig& c, double t) {
  const auto ic = rectangle_ic(c);
  const auto ex = c.params.extents;
  const auto u = c.params.velocity;
  return [=](double x, double y) {
    auto wrap = [](double v, std::array<double, 2> e) {
      const double len = e[1] - e[0];
      double w = std::fmod(v - e[0], len);
      if (w < 0.0) w += len;
      return e[0] + w;
    };
    return ic(wrap(x - u[0] * t, ex[0]), wrap(y - u[1] * t, ex[1]));
  };
}

double weighted_norm(const DgSystem& sys, std::span<const double> u) {
  double s = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) s += sys.mass()[i] * u[i] * u[i];
  return std::sqrt(s);
}

double advection_dt(const AdvectionConfig& c, const DgSystem& sys, int order) {
  if (c.dt) return fit_step(0.0, c.params.end_time, *c.dt);
  const double dt =
      c.dt_multiplier * max_stable_dt(order, sys.cell_size(), c.params.velocity, c.safety);
  return fit_step(0.0, c.params.end_time, dt);
}

}  // namespace

AdvectionRun run_advection(const AdvectionConfig& config, int order) {
  AdvectionRun run;
  run.order = order;
  run.cells = advection_cells(config, order);
  DgSystem sys(run.cells, order, config.params);
  run.dt = advection_dt(config, sys, order);

  OdeProblem problem;
  problem.rhs = [&sys](std::span<const double> u, double t, std::span<double> du) { sys.rhs(u, t, du); };
  problem.initial = project_initial_condition(rectangle_ic(config), sys, config.ic_subsamples);
  problem.t_end = config.params.end_time;
  problem.dt = run.dt;

  run.initial_mass = total_mass(sys, problem.initial);
  const double norm0 = weighted_norm(sys, problem.initial);
  double previous = run.initial_mass;
  const double scale = std::max(std::abs(run.initial_mass), 1e-300);
  problem.observer = [&](std::size_t step, double, std::span<const double> u) {
    if (step == 0) return;
    const double m = total_mass(sys, u);
    run.max_step_mass_drift = std::max(run.max_step_mass_drift, std::abs(m - previous) / scale);
    previous = m;
    if (norm0 > 0.0) run.max_norm_ratio = std::max(run.max_norm_ratio, weighted_norm(sys, u) / norm0);
  };

  auto result = integrate_ssprk3(problem);
  run.state = std::move(result.state);
  run.stats = result.stats;
  run.final_mass = total_mass(sys, run.state);
  run.l2_error = dg_l2_error(sys, run.state, translated_ic(config, config.params.end_time),
                             config.error_subsamples);
  run.snapshot_csv = dg_snapshot_csv(sys, run.state);
  return run;
}

namespace {

std::string fmt(double v) { return format_number(v); }

std::vector<CheckResult> verify_allen_cahn_1d(const AllenCahnConfig& c) {
  std::vector<CheckResult> out;
  const std::vector<double> times{25.0, 50.0, 75.0, 100.0};
  std::vector<double> checkpoints;
  for (double t : times)
    if (t <= c.t_end + 1e-9) checkpoints.push_back(t);
  const auto fd = run_allen_cahn(c, SchemeKind::FDM, checkpoints);
  const auto cg = run_allen_cahn(c, SchemeKind::CGM, checkpoints);

  double worst = 0.0;
  for (std::size_t k = 0; k < fd.snapshots.size() && k < cg.snapshots.size(); ++k)
    for (std::size_t i = 0; i < fd.snapshots[k].size(); ++i)
      worst = std::max(worst, std::abs(fd.snapshots[k][i] - cg.snapshots[k][i]));
  const bool complete = fd.snapshots.size() == checkpoints.size() &&
                        cg.snapshots.size() == checkpoints.size();
  out.push_back({"fd_cg_agreement", complete && worst <= 1e-8,
                 "max |FD - CG| = " + fmt(worst) + " (limit 1e-8)"});

  const double measured = measure_interface_position(fd.state, fd.grid);
  const double analytic = analytic_interface_position(c.t_end, c.params);
  const double lo = std::min(c.params.x0, analytic);
  const double hi = std::max(c.params.x0, analytic);
  out.push_back({"interface_position",
                 measured >= lo && measured <= hi && measured <= analytic,
                 "measured " + fmt(measured) + ", analytic " + fmt(analytic) + ", window [" +
                     fmt(lo) + ", " + fmt(hi) + "]"});

  AllenCahnParams aligned = c.params;
  const double shape = l2_error(fd.state, fd.grid, [&](double x, double) {
    return 0.5 * (1.0 - std::tanh((x - measured) / aligned.xi));
  });
  out.push_back({"profile_shape", shape <= 0.05, "L2 vs aligned tanh = " + fmt(shape) + " (limit 0.05)"});
  return out;
}

std::vector<CheckResult> verify_allen_cahn_2d(const AllenCahnConfig& c) {
  std::vector<CheckResult> out;
  const auto run = run_allen_cahn(c, SchemeKind::FDM);
  const auto& tr = run.track;
  bool monotone = true;
  for (std::size_t i = 1; i < tr.measured.size(); ++i)
    if (tr.measured[i] > tr.measured[i - 1]) monotone = false;
  out.push_back({"radius_monotone", monotone,
                 "r(0) = " + fmt(tr.measured.front()) + ", r(T) = " + fmt(tr.measured.back())});

  std::vector<double> t, r2;
  for (std::size_t i = 0; i < tr.times.size(); ++i) {
    if (tr.times[i] > 0.5 * c.t_end + 1e-9) break;
    t.push_back(tr.times[i]);
    r2.push_back(tr.measured[i] * tr.measured[i]);
  }
  const auto fit = fit_line(t, r2);
  const double expected = -2.0 * c.params.mobility;
  out.push_back({"radius_squared_slope",
                 fit.slope < 0.0 && std::abs(fit.slope - expected) <= 0.5 * std::abs(expected),
                 "slope " + fmt(fit.slope) + " vs " + fmt(expected) + " (band 50%)"});
  return out;
}

std::vector<CheckResult> verify_advection(const AdvectionConfig& c) {
  std::vector<CheckResult> out;
  double dg_error = 0.0;
  double fv_error = 0.0;
  for (int p : {0, 1, 3}) {
    const auto run = run_advection(c, p);
    const double total = std::abs(run.final_mass - run.initial_mass) / std::abs(run.initial_mass);
    out.push_back({"conservation_p" + std::to_string(p),
                   run.max_step_mass_drift <= 1e-12 && total <= 1e-10,
                   "per-step " + fmt(run.max_step_mass_drift) + ", total " + fmt(total) + " (" +
                       std::to_string(run.cells) + "^2 cells)"});
    if (p == 0) fv_error = run.l2_error;
    if (p == 3) dg_error = run.l2_error;
  }
  out.push_back({"accuracy_ordering",
                 std::isfinite(fv_error) && dg_error > 0.0 && fv_error >= 2.0 * dg_error,
                 "L2 FV = " + fmt(fv_error) + ", DG p=3 = " + fmt(dg_error) + ", ratio " +
                     fmt(dg_error > 0.0 ? fv_error / dg_error : 0.0) + " (need >= 2)"});

  AdvectionConfig cfl = c;
  cfl.dofs_per_axis = 16 * 4;
  cfl.safety = 1.0;
  cfl.dt_multiplier = 0.9;
  const auto stable = run_advection(cfl, 3);
  out.push_back({"cfl_stable", stable.max_norm_ratio <= 1.0 + 1e-10,
                 "max norm ratio " + fmt(stable.max_norm_ratio)});
  cfl.dt_multiplier = 4.0;
  bool blew_up = false;
  std::string detail;
  try {
    const auto unstable = run_advection(cfl, 3);
    blew_up = unstable.max_norm_ratio > 10.0;
    detail = "max norm ratio " + fmt(unstable.max_norm_ratio);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::NonFiniteState) throw;
    blew_up = true;
    detail = e.what();
  }
  out.push_back({"cfl_unstable", blew_up, detail});
  return out;
}

}  // namespace

std::vector<CheckResult> verify_family(const ProblemSpec& spec) {
  switch (family_of(spec)) {
    case ProblemFamily::AllenCahn1d: return verify_allen_cahn_1d(allen_cahn_config(spec));
    case ProblemFamily::AllenCahn2d: return verify_allen_cahn_2d(allen_cahn_config(spec));
    case ProblemFamily::Advection2d: return verify_advection(advection_config(spec));
  }
  return {};
}

std::vector<BenchReport> bench_family(const ProblemSpec& spec, std::size_t repeats) {
  if (repeats < 1) throw Error(ErrorCode::InvalidArgument, "need at least one repeat", "repeats");
  const auto family = family_of(spec);
  std::vector<BenchReport> reports;

  if (family == ProblemFamily::Advection2d) {
    const auto c = advection_config(spec);
    for (int p : {c.order, 0}) {
      const auto cells = advection_cells(c, p);
      DgSystem sys(cells, p, c.params);
      OdeProblem problem;
      problem.rhs = [&sys](std::span<const double> u, double t, std::span<double> du) { sys.rhs(u, t, du); };
      problem.initial = project_initial_condition(rectangle_ic(c), sys, c.ic_subsamples);
      problem.t_end = c.params.end_time;
      problem.dt = advection_dt(c, sys, p);
      const std::string label = p == 0 ? "FVM" : "DGM p=" + std::to_string(p);
      reports.push_back(run_benchmark({label, [&] { integrate_ssprk3(problem); }, sys.owned_bytes()}, repeats));
    }
    return reports;
  }

  auto c = allen_cahn_config(spec);
  c.t_end = spec.parameter("bench_t_end", c.t_end);
  if (c.dim == 2) {
    const double side = spec.parameter("bench_extent", c.extents[0][1] - c.extents[0][0]);
    c.extents = {{0.0, side}, {0.0, side}};
    c.r0 = spec.parameter("bench_r0", std::min(c.r0, 0.5 * side));
  }
  for (auto scheme : {SchemeKind::FDM, SchemeKind::CGM}) {
    auto setup = make_allen_cahn(c, scheme);
    OdeProblem problem;
    problem.rhs = setup->rhs;
    problem.initial = allen_cahn_initial_state(c, setup->grid);
    problem.t_end = c.t_end;
    problem.dt = c.dt;
    reports.push_back(run_benchmark(
        {std::string(to_string(scheme)), [&] { integrate_dirk2(problem, c.newton); }, setup->bytes},
        repeats));
  }
  return reports;
}

}  // namespace schemeforge
