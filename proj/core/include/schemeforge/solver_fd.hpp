#pragma once

#include <span>
#include <vector>

#include "schemeforge/allen_cahn.hpp"
#include "schemeforge/mesh.hpp"

namespace schemeforge {

/// Second-order central Laplacian with zero-flux mirror ghosts
/// (u[-1] = u[1], u[n] = u[n-2]) on every axis. Throws SizeMismatch.
void fd_laplacian_apply(const CartesianGrid& grid, std::span<const double> u, std::span<double> out);
std::vector<double> fd_laplacian_apply(std::span<const double> u, const CartesianGrid& grid);

/// Matrix-free Allen-Cahn system. Owns the grid description and the state,
/// nothing else.
class FdSystem {
 public:
  FdSystem(CartesianGrid grid, AllenCahnParams params);

  [[nodiscard]] const CartesianGrid& grid() const noexcept { return grid_; }
  [[nodiscard]] const AllenCahnParams& params() const noexcept { return params_; }
  [[nodiscard]] std::vector<double>& state() noexcept { return state_; }
  [[nodiscard]] const std::vector<double>& state() const noexcept { return state_; }

  /// du = M (lap u - f(u)) in a single stencil sweep. No allocation.
  void rhs(std::span<const double> u, double t, std::span<double> du) const;

  [[nodiscard]] std::size_t owned_bytes() const noexcept;

 private:
  CartesianGrid grid_;
  AllenCahnParams params_;
  std::vector<double> state_;
};

/// Right-hand side at the system's current state.
std::vector<double> fd_semidiscrete_rhs(const FdSystem& system, double t);

}  // namespace schemeforge
