#include "schemeforge/time_integrator.hpp"

#include <chrono>
#include <cmath>
#include <sstream>

#include "schemeforge/errors.hpp"

namespace schemeforge {

namespace {

using Clock = std::chrono::steady_clock;

double max_norm(std::span<const double> v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

bool all_finite(std::span<const double> v) {
  for (double x : v)
    if (!std::isfinite(x)) return false;
  return true;
}

void check_problem(const OdeProblem& p) {
  if (!p.rhs) throw Error(ErrorCode::InvalidArgument, "ODE problem has no right-hand side");
  if (p.initial.empty()) throw Error(ErrorCode::InvalidArgument, "ODE problem has an empty state");
}

[[noreturn]] void non_finite(std::size_t step) {
  throw Error(ErrorCode::NonFiniteState,
              "state became non-finite at step " + std::to_string(step), std::to_string(step));
}

}  // namespace

std::size_t step_count(double t0, double t_end, double dt) {
  if (!(dt > 0.0) || !std::isfinite(dt))
    throw Error(ErrorCode::InvalidArgument, "time step must be positive", "dt");
  const double span = t_end - t0;
  if (span < 0.0) throw Error(ErrorCode::InvalidArgument, "end time precedes start time", "t_end");
  const double steps = span / dt;
  const double rounded = std::round(steps);
  if (std::abs(steps - rounded) > 1e-9 * std::max(1.0, rounded))
    throw Error(ErrorCode::InvalidArgument, "time span is not a whole number of steps", "dt");
  return static_cast<std::size_t>(rounded);
}

double fit_step(double t0, double t_end, double dt) {
  if (!(dt > 0.0)) throw Error(ErrorCode::InvalidArgument, "time step must be positive", "dt");
  const double span = t_end - t0;
  const double n = std::ceil(span / dt - 1e-9);
  return n < 1.0 ? span : span / n;
}

OdeResult integrate_ssprk3(const OdeProblem& problem) {
  check_problem(problem);
  const auto start = Clock::now();
  const std::size_t n_steps = step_count(problem.t0, problem.t_end, problem.dt);
  const double dt = problem.dt;
  const std::size_t n = problem.initial.size();

  OdeResult out{problem.initial, {}};
  auto& u = out.state;
  std::vector<double> k(n), u1(n), u2(n);
  if (problem.observer) problem.observer(0, problem.t0, u);

  for (std::size_t step = 0; step < n_steps; ++step) {
    const double t = problem.t0 + static_cast<double>(step) * dt;
    problem.rhs(u, t, k);
    for (std::size_t i = 0; i < n; ++i) u1[i] = u[i] + dt * k[i];
    problem.rhs(u1, t + dt, k);
    for (std::size_t i = 0; i < n; ++i) u2[i] = 0.75 * u[i] + 0.25 * (u1[i] + dt * k[i]);
    problem.rhs(u2, t + 0.5 * dt, k);
    for (std::size_t i = 0; i < n; ++i)
      u[i] = (1.0 / 3.0) * u[i] + (2.0 / 3.0) * (u2[i] + dt * k[i]);
    out.stats.rhs_evaluations += 3;
    ++out.stats.steps;
    if (!all_finite(u)) non_finite(step + 1);
    if (problem.observer) problem.observer(step + 1, problem.t0 + static_cast<double>(step + 1) * dt, u);
  }
  out.stats.wall_seconds = std::chrono::duration<double>(Clock::now() - start).count();
  return out;
}

namespace {

// Stage solver state for the SDIRK integrator; buffers live across steps.
class StageSolver {
 public:
  StageSolver(const RhsFunction& rhs, std::size_t n, const NewtonOptions& opt, StepperStats& stats)
      : rhs_(rhs), opt_(opt), stats_(stats), f_(n), r_(n), delta_(n), probe_(n), fprobe_(n),
        kr_(n), kr0_(n), kp_(n), kv_(n), ks_(n), kt_(n) {}

  /// Solves y - base - gdt f(t, y) = 0 in place; leaves f(t, y) in f().
  void solve(double t, double gdt, std::span<const double> base, std::span<double> y,
             std::size_t step) {
    for (int it = 0;; ++it) {
      rhs_(y, t, f_);
      ++stats_.rhs_evaluations;
      if (it > 0) ++stats_.newton_rhs_evaluations;
      for (std::size_t i = 0; i < y.size(); ++i) r_[i] = y[i] - base[i] - gdt * f_[i];
      const double rn = max_norm(r_);
      if (!std::isfinite(rn)) non_finite(step);
      if (rn < opt_.tol) return;
      if (it >= opt_.max_iterations)
        throw Error(ErrorCode::NewtonDivergence,
                    "stage residual " + std::to_string(rn) + " above tolerance after " +
                        std::to_string(opt_.max_iterations) + " Newton iterations at step " +
                        std::to_string(step),
                    std::to_string(step));
      for (auto& v : r_) v = -v;
      bicgstab(t, gdt, y);
      for (std::size_t i = 0; i < y.size(); ++i) y[i] += delta_[i];
      ++stats_.newton_iterations;
    }
  }

  [[nodiscard]] std::span<const double> f() const { return f_; }

 private:
  // out = v - gdt * (f(y + eps v) - f(y)) / eps
  void apply(double t, double gdt, std::span<const double> y, std::span<const double> v,
             std::span<double> out) {
    const double vn = max_norm(v);
    if (vn == 0.0) {
      std::fill(out.begin(), out.end(), 0.0);
      return;
    }
    const double eps = 1e-7 * (1.0 + max_norm(y)) / vn;
    for (std::size_t i = 0; i < y.size(); ++i) probe_[i] = y[i] + eps * v[i];
    rhs_(probe_, t, fprobe_);
    ++stats_.rhs_evaluations;
    ++stats_.newton_rhs_evaluations;
    for (std::size_t i = 0; i < y.size(); ++i) out[i] = v[i] - gdt * (fprobe_[i] - f_[i]) / eps;
  }

  // Unpreconditioned BiCGSTAB for J delta = r_, starting from delta = 0.
  void bicgstab(double t, double gdt, std::span<const double> y) {
    const std::size_t n = y.size();
    std::fill(delta_.begin(), delta_.end(), 0.0);
    kr_ = r_;
    kr0_ = r_;
    std::fill(kp_.begin(), kp_.end(), 0.0);
    std::fill(kv_.begin(), kv_.end(), 0.0);
    const double bnorm = std::sqrt(dot(r_, r_));
    if (bnorm == 0.0) return;
    const double target = opt_.krylov_rtol * bnorm;
    double rho = 1.0, alpha = 1.0, omega = 1.0;
    for (int it = 0; it < opt_.krylov_max; ++it) {
      ++stats_.krylov_iterations;
      const double rho_new = dot(kr0_, kr_);
      if (rho_new == 0.0) return;
      const double beta = (rho_new / rho) * (alpha / omega);
      for (std::size_t i = 0; i < n; ++i) kp_[i] = kr_[i] + beta * (kp_[i] - omega * kv_[i]);
      apply(t, gdt, y, kp_, kv_);
      const double denom = dot(kr0_, kv_);
      if (denom == 0.0) return;
      alpha = rho_new / denom;
      for (std::size_t i = 0; i < n; ++i) ks_[i] = kr_[i] - alpha * kv_[i];
      if (std::sqrt(dot(ks_, ks_)) < target) {
        for (std::size_t i = 0; i < n; ++i) delta_[i] += alpha * kp_[i];
        return;
      }
      apply(t, gdt, y, ks_, kt_);
      const double tt = dot(kt_, kt_);
      omega = tt == 0.0 ? 0.0 : dot(kt_, ks_) / tt;
      for (std::size_t i = 0; i < n; ++i) {
        delta_[i] += alpha * kp_[i] + omega * ks_[i];
        kr_[i] = ks_[i] - omega * kt_[i];
      }
      if (std::sqrt(dot(kr_, kr_)) < target || omega == 0.0) return;
      rho = rho_new;
    }
  }

  const RhsFunction& rhs_;
  NewtonOptions opt_;
  StepperStats& stats_;
  std::vector<double> f_, r_, delta_, probe_, fprobe_;
  std::vector<double> kr_, kr0_, kp_, kv_, ks_, kt_;
};

}  // namespace

OdeResult integrate_dirk2(const OdeProblem& problem, const NewtonOptions& options) {
  check_problem(problem);
  if (!(options.tol > 0.0) || options.max_iterations < 1)
    throw Error(ErrorCode::InvalidArgument, "Newton tolerance and iteration cap must be positive");
  const auto start = Clock::now();
  const std::size_t n_steps = step_count(problem.t0, problem.t_end, problem.dt);
  const double dt = problem.dt;
  const double gamma = 1.0 - 1.0 / std::sqrt(2.0);
  const double gdt = gamma * dt;
  const std::size_t n = problem.initial.size();

  OdeResult out{problem.initial, {}};
  auto& u = out.state;
  std::vector<double> base(n), y(n), k1(n), k_prev(n, 0.0);
  StageSolver stage(problem.rhs, n, options, out.stats);
  if (problem.observer) problem.observer(0, problem.t0, u);

  for (std::size_t step = 0; step < n_steps; ++step) {
    const double t = problem.t0 + static_cast<double>(step) * dt;
    // Stage 1: Y1 = u + gdt f(t + gdt, Y1).
    for (std::size_t i = 0; i < n; ++i) y[i] = u[i] + gdt * k_prev[i];
    stage.solve(t + gdt, gdt, u, y, step + 1);
    std::copy(stage.f().begin(), stage.f().end(), k1.begin());
    // Stage 2: Y2 = u + (1 - gamma) dt k1 + gdt f(t + dt, Y2); u_{n+1} = Y2.
    for (std::size_t i = 0; i < n; ++i) base[i] = u[i] + (1.0 - gamma) * dt * k1[i];
    for (std::size_t i = 0; i < n; ++i) y[i] = base[i] + gdt * k1[i];
    stage.solve(t + dt, gdt, base, y, step + 1);
    std::copy(stage.f().begin(), stage.f().end(), k_prev.begin());
    u.swap(y);
    ++out.stats.steps;
    if (!all_finite(u)) non_finite(step + 1);
    if (problem.observer) problem.observer(step + 1, problem.t0 + static_cast<double>(step + 1) * dt, u);
  }
  out.stats.wall_seconds = std::chrono::duration<double>(Clock::now() - start).count();
  return out;
}

void TimeSeries::add(double t, std::vector<double> values) {
  if (values.size() != columns_.size())
    throw Error(ErrorCode::SizeMismatch, "sample width does not match the column count");
  if (!times_.empty() && !(t > times_.back()))
    throw Error(ErrorCode::InvalidArgument, "sample times must increase strictly");
  times_.push_back(t);
  rows_.push_back(std::move(values));
}

std::string TimeSeries::csv() const {
  std::ostringstream os;
  os.precision(17);
  os << 't';
  for (const auto& c : columns_) os << ',' << c;
  os << '\n';
  for (std::size_t r = 0; r < rows_.size(); ++r) {
    os << times_[r];
    for (double v : rows_[r]) os << ',' << v;
    os << '\n';
  }
  return os.str();
}

StepObserver sample_every(double stride,
                          std::function<void(double, std::span<const double>)> sample) {
  if (!(stride > 0.0)) throw Error(ErrorCode::InvalidArgument, "sampling stride must be positive");
  return [stride, sample = std::move(sample)](std::size_t, double t, std::span<const double> u) {
    const double k = std::round(t / stride);
    if (std::abs(t - k * stride) <= 1e-9 * stride) sample(k * stride, u);
  };
}

}  // namespace schemeforge
