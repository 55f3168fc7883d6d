#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "schemeforge/allen_cahn.hpp"
#include "schemeforge/mesh.hpp"

namespace schemeforge {

/// x0 + M mu0 t / gamma.
double analytic_interface_position(double t, const AllenCahnParams& p) noexcept;

/// 1/2 (1 - tanh((x - x_front(t)) / xi)).
double analytic_interface(double x, double t, const AllenCahnParams& p) noexcept;

/// sqrt(R0^2 - 2 M t); NaN once the grain has vanished (t > R0^2 / (2M)).
double analytic_grain_radius(double t, double r0, double mobility) noexcept;

/// Position of the single phi = 0.5 crossing of a 1D state, linearly
/// interpolated between the bracketing nodes. Throws NoCrossing or
/// MultipleCrossings.
double measure_interface_position(std::span<const double> state, const CartesianGrid& grid);

/// Quarter-grain radius sqrt(4A / pi) with A the trapezoid integral of the
/// 2D state. Throws NegativeArea when A <= 0.
double measure_grain_radius(std::span<const double> state, const CartesianGrid& grid);

/// sqrt(sum_i w_i (state_i - ref_i)^2). Throws SizeMismatch.
double l2_error(std::span<const double> state, std::span<const double> reference,
                std::span<const double> weights);

/// Grid overload: trapezoid weights, reference sampled at the vertices.
double l2_error(std::span<const double> state, const CartesianGrid& grid,
                const std::function<double(double, double)>& reference);

/// Measured versus analytic quantity over time; emitted as `t,measured,analytic`.
struct Track {
  std::vector<double> times;
  std::vector<double> measured;
  std::vector<double> analytic;

  /// Throws InvalidArgument unless t exceeds the previous sample time.
  void add(double t, double measured_value, double analytic_value);
  [[nodiscard]] std::string csv() const;
};

using InterfaceTrack = Track;
using RadiusTrack = Track;

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
};

/// Ordinary least squares. Throws InvalidArgument for fewer than two points.
LinearFit fit_line(std::span<const double> x, std::span<const double> y);

}  // namespace schemeforge
