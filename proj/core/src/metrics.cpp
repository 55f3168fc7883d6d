#include "schemeforge/metrics.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "schemeforge/csv.hpp"
#include "schemeforge/errors.hpp"

namespace schemeforge {

double analytic_interface_position(double t, const AllenCahnParams& p) noexcept {
  return p.x0 + p.mobility * p.mu0 * t / p.gamma;
}

double analytic_interface(double x, double t, const AllenCahnParams& p) noexcept {
  return 0.5 * (1.0 - std::tanh((x - analytic_interface_position(t, p)) / p.xi));
}

double analytic_grain_radius(double t, double r0, double mobility) noexcept {
  const double r2 = r0 * r0 - 2.0 * mobility * t;
  return r2 < 0.0 ? std::numeric_limits<double>::quiet_NaN() : std::sqrt(r2);
}

double measure_interface_position(std::span<const double> state, const CartesianGrid& grid) {
  if (grid.dim != 1) throw Error(ErrorCode::InvalidArgument, "interface position needs a 1D grid");
  if (state.size() != grid.vertex_count())
    throw Error(ErrorCode::SizeMismatch, "state size does not match the grid vertex count");

  int crossings = 0;
  double position = 0.0;
  for (std::size_t i = 0; i < state.size(); ++i) {
    const double s = state[i] - 0.5;
    if (s == 0.0) {
      ++crossings;
      position = grid.coord(0, i);
      continue;
    }
    if (i + 1 < state.size()) {
      const double t = state[i + 1] - 0.5;
      if (t != 0.0 && (s < 0.0) != (t < 0.0)) {
        ++crossings;
        const double frac = s / (s - t);
        position = grid.coord(0, i) + frac * grid.h[0];
      }
    }
  }
  if (crossings == 0) throw Error(ErrorCode::NoCrossing, "state never crosses 0.5");
  if (crossings > 1)
    throw Error(ErrorCode::MultipleCrossings,
                "state crosses 0.5 " + std::to_string(crossings) + " times");
  return position;
}

double measure_grain_radius(std::span<const double> state, const CartesianGrid& grid) {
  if (grid.dim != 2) throw Error(ErrorCode::InvalidArgument, "grain radius needs a 2D grid");
  if (state.size() != grid.vertex_count())
    throw Error(ErrorCode::SizeMismatch, "state size does not match the grid vertex count");
  const auto w = grid.trapezoid_weights();
  double area = 0.0;
  for (std::size_t i = 0; i < state.size(); ++i) area += w[i] * state[i];
  if (!(area > 0.0)) throw Error(ErrorCode::NegativeArea, "grain area is not positive");
  return std::sqrt(4.0 * area / std::numbers::pi);
}

double l2_error(std::span<const double> state, std::span<const double> reference,
                std::span<const double> weights) {
  if (state.size() != reference.size() || state.size() != weights.size())
    throw Error(ErrorCode::SizeMismatch, "l2_error operands differ in length");
  double s = 0.0;
  for (std::size_t i = 0; i < state.size(); ++i) {
    const double d = state[i] - reference[i];
    s += weights[i] * d * d;
  }
  return std::sqrt(s);
}

double l2_error(std::span<const double> state, const CartesianGrid& grid,
                const std::function<double(double, double)>& reference) {
  if (state.size() != grid.vertex_count())
    throw Error(ErrorCode::SizeMismatch, "state size does not match the grid vertex count");
  std::vector<double> ref(state.size());
  const std::size_t ny = grid.dim == 2 ? grid.n[1] : 1;
  for (std::size_t j = 0; j < ny; ++j)
    for (std::size_t i = 0; i < grid.n[0]; ++i)
      ref[grid.index(i, j)] = reference(grid.coord(0, i), grid.dim == 2 ? grid.coord(1, j) : 0.0);
  return l2_error(state, ref, grid.trapezoid_weights());
}

void Track::add(double t, double measured_value, double analytic_value) {
  if (!times.empty() && !(t > times.back()))
    throw Error(ErrorCode::InvalidArgument, "track times must increase strictly");
  times.push_back(t);
  measured.push_back(measured_value);
  analytic.push_back(analytic_value);
}

std::string Track::csv() const {
  std::string out = "t,measured,analytic\n";
  for (std::size_t i = 0; i < times.size(); ++i)
    out += format_number(times[i]) + ',' + format_number(measured[i]) + ',' +
           format_number(analytic[i]) + '\n';
  return out;
}

LinearFit fit_line(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2)
    throw Error(ErrorCode::InvalidArgument, "line fit needs at least two paired points");
  const double n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (sxx == 0.0) throw Error(ErrorCode::InvalidArgument, "line fit needs distinct x values");
  const double slope = sxy / sxx;
  return {slope, my - slope * mx};
}

}  // namespace schemeforge
