#pragma once

#include <span>
#include <vector>

namespace schemeforge {

struct AllenCahnParams {
  double gamma = 1.0;
  double xi = 1.5;
  double mobility = 1.0;
  double mu0 = 0.1;
  double x0 = 20.0;
  double h = 1.0;

  /// Throws InvalidArgument unless xi, mobility, h, gamma are positive and finite.
  void validate() const;
};

/// Derivative of the double-well g(phi) = phi^2 (1-phi)^2.
constexpr double double_well_derivative(double phi) noexcept {
  return 2.0 * phi * (1.0 - phi) * (1.0 - 2.0 * phi);
}

/// Derivative of the interpolation h(phi) = phi^2 (3 - 2 phi).
constexpr double interpolation_derivative(double phi) noexcept {
  return 6.0 * phi * (1.0 - phi);
}

/// (2 / xi^2) g'(phi).
double double_well_term(double phi, const AllenCahnParams& p) noexcept;

/// mu0 / (3 gamma xi) h'(phi), reported as a magnitude.
double driving_force_term(double phi, const AllenCahnParams& p) noexcept;

/// Reaction f(phi) in d_t phi = M (lap phi - f(phi)).
///
/// f = double_well_term - driving_force_term. The driving force enters with
/// a minus sign so that mu0 > 0 grows the phi = 1 phase and the front travels
/// at +M mu0 / gamma, consistent with the analytic front position.
double ac_reaction(double phi, const AllenCahnParams& p) noexcept;

/// Pointwise ac_reaction over a state vector.
std::vector<double> ac_rhs(std::span<const double> phi, const AllenCahnParams& p);

}  // namespace schemeforge
