#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

namespace schemeforge {

using RhsFunction = std::function<void(std::span<const double> u, double t, std::span<double> du)>;
/// Called once with the initial state and after every accepted step.
using StepObserver = std::function<void(std::size_t step, double t, std::span<const double> u)>;

struct OdeProblem {
  RhsFunction rhs;
  std::vector<double> initial;
  double t0 = 0.0;
  double t_end = 0.0;
  double dt = 0.0;
  StepObserver observer;
};

struct StepperStats {
  std::size_t steps = 0;
  /// All evaluations, including the Newton-induced ones.
  std::size_t rhs_evaluations = 0;
  /// Residual re-evaluations and Jacobian-vector products inside Newton.
  std::size_t newton_rhs_evaluations = 0;
  std::size_t newton_iterations = 0;
  std::size_t krylov_iterations = 0;
  double wall_seconds = 0.0;
};

struct OdeResult {
  std::vector<double> state;
  StepperStats stats;
};

/// round((t_end - t0) / dt); throws InvalidArgument when dt <= 0 or the span
/// is not a whole number of steps (relative tolerance 1e-9).
std::size_t step_count(double t0, double t_end, double dt);

/// Largest dt' <= dt that divides [t0, t_end] into whole steps.
double fit_step(double t0, double t_end, double dt);

/// Three-stage strong-stability-preserving Runge-Kutta (Shu-Osher form).
/// Throws NonFiniteState naming the step at which NaN/Inf appeared.
OdeResult integrate_ssprk3(const OdeProblem& problem);

struct NewtonOptions {
  double tol = 1e-10;
  int max_iterations = 25;
  /// Relative residual reduction asked of each inner BiCGSTAB solve.
  double krylov_rtol = 1e-6;
  int krylov_max = 100;
};

/// Two-stage, stiffly accurate, L-stable SDIRK with gamma = 1 - 1/sqrt(2).
/// Each stage is solved by Newton with matrix-free finite-difference
/// Jacobian-vector products and unpreconditioned BiCGSTAB. Convergence means
/// max-norm stage residual < tol. Throws NewtonDivergence or NonFiniteState.
OdeResult integrate_dirk2(const OdeProblem& problem, const NewtonOptions& options = {});

/// Rows of (t, observables...) collected at a fixed time stride.
class TimeSeries {
 public:
  explicit TimeSeries(std::vector<std::string> columns) : columns_(std::move(columns)) {}

  void add(double t, std::vector<double> values);
  [[nodiscard]] const std::vector<std::string>& columns() const noexcept { return columns_; }
  [[nodiscard]] const std::vector<double>& times() const noexcept { return times_; }
  [[nodiscard]] const std::vector<std::vector<double>>& rows() const noexcept { return rows_; }
  /// Header `t,<columns>` then one row per sample.
  [[nodiscard]] std::string csv() const;

 private:
  std::vector<std::string> columns_;
  std::vector<double> times_;
  std::vector<std::vector<double>> rows_;
};

/// Observer that invokes `sample` whenever t reaches a multiple of `stride`
/// (within 1e-9 * stride), including t0.
StepObserver sample_every(double stride, std::function<void(double, std::span<const double>)> sample);

}  // namespace schemeforge
