#include "schemeforge/classifier.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

#include "schemeforge/errors.hpp"

namespace schemeforge {

std::string_view to_string(PdeType type) noexcept {
  switch (type) {
    case PdeType::Elliptic: return "elliptic";
    case PdeType::Parabolic: return "parabolic";
    case PdeType::HyperbolicFirstOrder: return "hyperbolic_first_order";
    case PdeType::HyperbolicSecondOrder: return "hyperbolic_second_order";
  }
  return "?";
}

std::string_view to_string(Linearity linearity) noexcept {
  switch (linearity) {
    case Linearity::Linear: return "linear";
    case Linearity::Semilinear: return "semilinear";
    case Linearity::Quasilinear: return "quasilinear";
    case Linearity::FullyNonlinear: return "fully_nonlinear";
  }
  return "?";
}

std::string_view to_string(HardwareReason reason) noexcept {
  switch (reason) {
    case HardwareReason::GpuArchitecture: return "gpu_architecture";
    case HardwareReason::WorkerThreshold: return "worker_threshold";
    case HardwareReason::BelowThreshold: return "below_threshold";
  }
  return "?";
}

CoefficientMatrix::CoefficientMatrix(std::vector<Axis> labels, std::vector<double> entries,
                                     double eps_sym)
    : labels_(std::move(labels)), entries_(std::move(entries)) {
  const std::size_t n = labels_.size();
  if (n == 0 || entries_.size() != n * n)
    throw Error(ErrorCode::SizeMismatch, "coefficient matrix needs labels.size()^2 entries");
  double scale = 0.0;
  for (double v : entries_) {
    if (!std::isfinite(v)) throw Error(ErrorCode::InvalidArgument, "non-finite coefficient");
    scale = std::max(scale, std::abs(v));
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      double& a = entries_[i * n + j];
      double& b = entries_[j * n + i];
      if (std::abs(a - b) > eps_sym * scale)
        throw Error(ErrorCode::InvalidArgument, "coefficient matrix is not symmetric");
      const double mean = 0.5 * (a + b);
      a = mean;
      b = mean;
    }
  }
}

CoefficientMatrix build_coefficient_matrix(const FieldEquation& eq, const DomainSpec& domain) {
  // Time joins the axis set only when the equation differentiates along it;
  // a steady equation (Laplace) is classified over space alone.
  auto labels = domain.axes();
  const bool transient = std::any_of(eq.terms.begin(), eq.terms.end(), [](const OperatorTerm& t) {
    return std::find(t.axes.begin(), t.axes.end(), Axis::T) != t.axes.end();
  });
  if (!transient) labels.erase(labels.begin());
  const std::size_t n = labels.size();
  std::vector<double> a(n * n, 0.0);
  auto slot = [&](Axis axis) {
    auto it = std::find(labels.begin(), labels.end(), axis);
    if (it == labels.end())
      throw Error(ErrorCode::ValidationError,
                  "axis '" + std::string(to_string(axis)) + "' not declared by the domain", eq.field);
    return static_cast<std::size_t>(it - labels.begin());
  };

  bool any = false;
  for (const auto& term : eq.terms) {
    if (term.derivative_order != 2) continue;
    if (!term.coefficient.value)
      throw Error(ErrorCode::InvalidArgument,
                  "second-order coefficient needs a representative value for the sign test",
                  eq.field);
    any = true;
    const double v = *term.coefficient.value;
    const auto i = slot(term.axes.at(0));
    const auto j = slot(term.axes.at(1));
    if (i == j) {
      a[i * n + i] += v;
    } else {
      a[i * n + j] += 0.5 * v;
      a[j * n + i] += 0.5 * v;
    }
  }
  if (!any)
    throw Error(ErrorCode::NoSecondOrderTerms,
                "equation has no second-order terms; use the first-order path", eq.field);
  return CoefficientMatrix(labels, std::move(a));
}

PdeClassification classify_second_order(const CoefficientMatrix& m, double eps_zero) {
  const auto n = static_cast<Eigen::Index>(m.size());
  Eigen::MatrixXd a(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      a(i, j) = m(static_cast<std::size_t>(i), static_cast<std::size_t>(j));

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(a, Eigen::EigenvaluesOnly);
  PdeClassification out;
  out.eigenvalues.assign(solver.eigenvalues().begin(), solver.eigenvalues().end());
  std::sort(out.eigenvalues.begin(), out.eigenvalues.end());

  double largest = 0.0;
  for (double l : out.eigenvalues) largest = std::max(largest, std::abs(l));
  if (largest == 0.0)
    throw Error(ErrorCode::DegenerateAllZero, "all eigenvalues of the coefficient matrix vanish");

  int zero = 0, positive = 0, negative = 0;
  for (double& l : out.eigenvalues) {
    if (std::abs(l) <= eps_zero * largest) {
      ++zero;
      l = 0.0;
    } else if (l > 0.0) {
      ++positive;
    } else {
      ++negative;
    }
  }

  if (positive > 0 && negative > 0) out.type = PdeType::HyperbolicSecondOrder;
  else if (zero > 0) out.type = PdeType::Parabolic;
  else out.type = PdeType::Elliptic;
  return out;
}

PdeClassification classify_first_order(const FieldEquation& eq) {
  bool has_first_order = false;
  for (const auto& term : eq.terms) {
    if (term.derivative_order == 2)
      throw Error(ErrorCode::InvalidArgument, "equation has second-order terms", eq.field);
    if (term.derivative_order != 1) continue;
    has_first_order = true;
    if (!term.coefficient.is_constant())
      throw Error(ErrorCode::NonConstantFirstOrderCoefficients,
                  "first-order coefficients are not constant; classification needs expert input",
                  eq.field);
  }
  if (!has_first_order && eq.continuity != ContinuityExpectation::Discontinuous)
    throw Error(ErrorCode::NoDifferentialTerms,
                "equation has no differential terms; declare continuity_expectation to classify it",
                eq.field);

  PdeClassification out;
  out.type = PdeType::HyperbolicFirstOrder;
  return out;
}

Linearity classify_linearity(const FieldEquation& eq) {
  const int top = eq.highest_order();
  auto mentions = [](const DependencySet& deps, Dependency d) { return deps.contains(d); };
  auto state_dependent = [&](const DependencySet& deps) {
    return mentions(deps, Dependency::Solution) || mentions(deps, Dependency::LowerDerivatives);
  };

  if (mentions(eq.rhs_depends_on, Dependency::HighestDerivatives))
    return Linearity::FullyNonlinear;
  for (const auto& term : eq.terms) {
    if (mentions(term.coefficient.depends_on, Dependency::HighestDerivatives))
      return Linearity::FullyNonlinear;
  }
  for (const auto& term : eq.terms) {
    if (term.derivative_order == top && state_dependent(term.coefficient.depends_on))
      return Linearity::Quasilinear;
  }
  if (state_dependent(eq.rhs_depends_on)) return Linearity::Semilinear;
  for (const auto& term : eq.terms) {
    if (term.derivative_order < top && state_dependent(term.coefficient.depends_on))
      return Linearity::Semilinear;
  }
  return Linearity::Linear;
}

HardwareScale classify_hardware(const HardwareConfig& hw, int worker_threshold) {
  if (hw.architecture == Architecture::Gpu) return {true, HardwareReason::GpuArchitecture};
  if (hw.worker_count >= worker_threshold) return {true, HardwareReason::WorkerThreshold};
  return {false, HardwareReason::BelowThreshold};
}

bool evaluate_multiscale(const ScaleDecl& scales, double ratio_threshold) {
  if (scales.multiscale_override) return *scales.multiscale_override;
  if (scales.length_scales.empty()) return false;
  const auto [lo, hi] = std::minmax_element(scales.length_scales.begin(), scales.length_scales.end());
  // Relative slack so that a ratio of exactly 100 (1e-5 / 1e-7) is not lost to rounding.
  return *hi / *lo >= ratio_threshold * (1.0 - 1e-12);
}

PdeClassification classify_equation(const FieldEquation& eq, const DomainSpec& domain,
                                    const ClassifierOptions& options) {
  PdeClassification out = eq.highest_order() == 2
                              ? classify_second_order(build_coefficient_matrix(eq, domain),
                                                      options.eps_zero)
                              : classify_first_order(eq);
  out.linearity = classify_linearity(eq);
  return out;
}

}  // namespace schemeforge
