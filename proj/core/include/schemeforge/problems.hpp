#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "schemeforge/allen_cahn.hpp"
#include "schemeforge/bench.hpp"
#include "schemeforge/mesh.hpp"
#include "schemeforge/metrics.hpp"
#include "schemeforge/problem_spec.hpp"
#include "schemeforge/scheme_selector.hpp"
#include "schemeforge/solver_dg.hpp"
#include "schemeforge/time_integrator.hpp"

namespace schemeforge {

/// Benchmark problems solvable end to end.
enum class ProblemFamily { AllenCahn1d, AllenCahn2d, Advection2d };

std::string_view to_string(ProblemFamily family) noexcept;
std::optional<ProblemFamily> parse_problem_family(std::string_view text);

/// Throws UnsupportedProblemFamily when the spec names no supported family.
ProblemFamily family_of(const ProblemSpec& spec);

struct AllenCahnConfig {
  int dim = 1;
  AllenCahnParams params;
  std::vector<std::array<double, 2>> extents{{0.0, 100.0}};
  double dt = 0.1;
  double t_end = 100.0;
  double sample_interval = 1.0;
  /// Initial grain radius (2D only).
  double r0 = 32.0;
  NewtonOptions newton;
};

/// Defaults per family, overridden by spec parameters (gamma, xi, mobility,
/// mu0, x0, h, dt, t_end, sample_interval, r0, newton_tol, newton_max) and the
/// spec domain.
AllenCahnConfig allen_cahn_config(const ProblemSpec& spec);

/// 1D: tanh front at x0. 2D: quarter grain of radius r0 centred at the origin.
std::vector<double> allen_cahn_initial_state(const AllenCahnConfig& config,
                                             const CartesianGrid& grid);

struct AllenCahnRun {
  SchemeKind scheme = SchemeKind::FDM;
  CartesianGrid grid;
  std::vector<double> state;
  StepperStats stats;
  /// Interface position (1D) or grain radius (2D) against the analytic value.
  Track track;
  std::vector<double> snapshot_times;
  std::vector<std::vector<double>> snapshots;
  std::size_t owned_bytes = 0;
};

/// Integrates with DIRK2 on an FD or CG system. Snapshots are taken at the
/// requested times (which must be step multiples). Throws InvalidArgument for
/// schemes other than FDM and CGM.
AllenCahnRun run_allen_cahn(const AllenCahnConfig& config, SchemeKind scheme,
                            const std::vector<double>& snapshot_times = {});

struct AdvectionConfig {
  AdvectionParams params;
  /// DoFs per axis held fixed across orders: cells = dofs_per_axis / (p + 1).
  std::size_t dofs_per_axis = 192;
  int order = 3;
  double safety = 0.9;
  /// Applied on top of max_stable_dt(safety); stability experiments only.
  double dt_multiplier = 1.0;
  /// Explicit step; replaces the CFL-derived one when set.
  std::optional<double> dt;
  /// Indicator of [x0, x1] x [y0, y1].
  std::array<double, 4> rectangle{2.0, 3.0, 2.0, 3.0};
  int ic_subsamples = 16;
  int error_subsamples = 8;
};

/// Defaults overridden by spec parameters (ux, uy, t_end, dofs_per_axis,
/// order, safety) and the spec domain.
AdvectionConfig advection_config(const ProblemSpec& spec);

/// Cells per axis for `order` at the configured DoF budget. Throws
/// InvalidArgument if (p + 1) does not divide the budget.
std::size_t advection_cells(const AdvectionConfig& config, int order);

struct AdvectionRun {
  int order = 0;
  std::size_t cells = 0;
  double dt = 0.0;
  std::vector<double> state;
  StepperStats stats;
  double initial_mass = 0.0;
  double final_mass = 0.0;
  /// Largest |m_{k+1} - m_k| / |m_0| over all steps.
  double max_step_mass_drift = 0.0;
  /// max_k ||u_k|| / ||u_0|| in the mass-weighted L2 norm.
  double max_norm_ratio = 1.0;
  /// Against the initial condition translated by u T.
  double l2_error = 0.0;
  std::string snapshot_csv;
};

AdvectionRun run_advection(const AdvectionConfig& config, int order);

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

/// Analytic-comparison suite for the spec's family.
std::vector<CheckResult> verify_family(const ProblemSpec& spec);

/// Candidate schemes timed side by side: FDM vs CGM for Allen-Cahn, DG p=order
/// vs FV at equal DoFs for advection. Benchmark sizes come from the
/// bench_* spec parameters when present.
std::vector<BenchReport> bench_family(const ProblemSpec& spec, std::size_t repeats);

}  // namespace schemeforge
