#include "schemeforge/allen_cahn.hpp"

#include <cmath>

#include "schemeforge/errors.hpp"

namespace schemeforge {

void AllenCahnParams::validate() const {
  auto positive = [](double v) { return std::isfinite(v) && v > 0.0; };
  if (!positive(xi)) throw Error(ErrorCode::InvalidArgument, "xi must be positive", "xi");
  if (!positive(mobility))
    throw Error(ErrorCode::InvalidArgument, "mobility must be positive", "mobility");
  if (!positive(h)) throw Error(ErrorCode::InvalidArgument, "h must be positive", "h");
  if (!positive(gamma)) throw Error(ErrorCode::InvalidArgument, "gamma must be positive", "gamma");
  if (!std::isfinite(mu0)) throw Error(ErrorCode::InvalidArgument, "mu0 must be finite", "mu0");
}

double double_well_term(double phi, const AllenCahnParams& p) noexcept {
  return 2.0 / (p.xi * p.xi) * double_well_derivative(phi);
}

double driving_force_term(double phi, const AllenCahnParams& p) noexcept {
  return p.mu0 / (3.0 * p.gamma * p.xi) * interpolation_derivative(phi);
}

double ac_reaction(double phi, const AllenCahnParams& p) noexcept {
  return double_well_term(phi, p) - driving_force_term(phi, p);
}

std::vector<double> ac_rhs(std::span<const double> phi, const AllenCahnParams& p) {
  std::vector<double> out(phi.size());
  for (std::size_t i = 0; i < phi.size(); ++i) out[i] = ac_reaction(phi[i], p);
  return out;
}

}  // namespace schemeforge
