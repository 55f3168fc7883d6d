#pragma once

#include <string_view>
#include <vector>

#include "schemeforge/problem_spec.hpp"

namespace schemeforge {

enum class PdeType { Elliptic, Parabolic, HyperbolicFirstOrder, HyperbolicSecondOrder };
enum class Linearity { Linear, Semilinear, Quasilinear, FullyNonlinear };
enum class HardwareReason { GpuArchitecture, WorkerThreshold, BelowThreshold };

std::string_view to_string(PdeType type) noexcept;
std::string_view to_string(Linearity linearity) noexcept;
std::string_view to_string(HardwareReason reason) noexcept;

struct ClassifierOptions {
  /// Eigenvalues with |λ| <= eps_zero * max|λ| count as zero.
  double eps_zero = 1e-12;
  /// Relative asymmetry tolerated before a coefficient matrix is rejected.
  double eps_sym = 1e-12;
  int worker_threshold = 50;
  /// max/min length-scale ratio at which a problem counts as multiscale.
  double multiscale_ratio = 100.0;
};

/// Leading (second-derivative) coefficients a_ij over (t, x1..xd). Stored
/// symmetrised as (a + a^T)/2.
class CoefficientMatrix {
 public:
  /// `entries` is row-major, labels.size()^2 long. Throws InvalidArgument when
  /// the input deviates from symmetry by more than eps_sym relative.
  CoefficientMatrix(std::vector<Axis> labels, std::vector<double> entries,
                    double eps_sym = 1e-12);

  [[nodiscard]] std::size_t size() const noexcept { return labels_.size(); }
  [[nodiscard]] double operator()(std::size_t i, std::size_t j) const {
    return entries_[i * labels_.size() + j];
  }
  [[nodiscard]] const std::vector<Axis>& axis_labels() const noexcept { return labels_; }
  [[nodiscard]] const std::vector<double>& entries() const noexcept { return entries_; }

 private:
  std::vector<Axis> labels_;
  std::vector<double> entries_;
};

struct PdeClassification {
  PdeType type = PdeType::Elliptic;
  /// Ascending; empty for first-order equations.
  std::vector<double> eigenvalues;
  Linearity linearity = Linearity::Linear;
};

struct HardwareScale {
  bool massively_parallel = false;
  HardwareReason reason = HardwareReason::BelowThreshold;
};

/// Matrix over (t, x1..xd), or (x1..xd) for equations without a time
/// derivative. Order-2 term on axes (i, j) adds value/2 to a_ij and a_ji (full value when
/// i == j). Coefficients that are not constant contribute their declared
/// representative value. Throws NoSecondOrderTerms when there is nothing to
/// put in the matrix.
CoefficientMatrix build_coefficient_matrix(const FieldEquation& eq, const DomainSpec& domain);

/// Sign test on the eigenvalues of the coefficient matrix. `linearity` of the
/// result is left at its default; see classify_equation.
PdeClassification classify_second_order(const CoefficientMatrix& m, double eps_zero = 1e-12);

/// First-order equations with constant real coefficients are hyperbolic.
/// Equations without differential terms are accepted only when declared
/// discontinuous (pressure-like constraint fields).
PdeClassification classify_first_order(const FieldEquation& eq);

Linearity classify_linearity(const FieldEquation& eq);

HardwareScale classify_hardware(const HardwareConfig& hw, int worker_threshold = 50);

bool evaluate_multiscale(const ScaleDecl& scales, double ratio_threshold = 100.0);

/// Type plus linearity for one field equation: picks the second- or
/// first-order path by the highest derivative order present.
PdeClassification classify_equation(const FieldEquation& eq, const DomainSpec& domain,
                                    const ClassifierOptions& options = {});

}  // namespace schemeforge
