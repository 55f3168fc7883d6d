#include "schemeforge/solver_fd.hpp"

#include "schemeforge/errors.hpp"
#include "schemeforge/parallel.hpp"

namespace schemeforge {

namespace {

// Mirror index for zero-flux ghosts.
inline std::size_t lower(std::size_t i) noexcept { return i == 0 ? 1 : i - 1; }
inline std::size_t upper(std::size_t i, std::size_t n) noexcept { return i + 1 == n ? n - 2 : i + 1; }

// out[k] = a * lap(u)[k] + b * react(u[k]); shared by both public entry points.
template <typename React>
void sweep(const CartesianGrid& g, const double* u, double* out, double a, React react) {
  const std::size_t nx = g.n[0];
  const double cx = 1.0 / (g.h[0] * g.h[0]);
  if (g.dim == 1) {
    for (std::size_t i = 0; i < nx; ++i) {
      const double lap = (u[lower(i)] - 2.0 * u[i] + u[upper(i, nx)]) * cx;
      out[i] = a * (lap - react(u[i]));
    }
    return;
  }
  const std::size_t ny = g.n[1];
  const double cy = 1.0 / (g.h[1] * g.h[1]);
  parallel_for(0, ny, [&](std::size_t j) {
    const double* row = u + nx * j;
    const double* below = u + nx * lower(j);
    const double* above = u + nx * upper(j, ny);
    double* o = out + nx * j;
    for (std::size_t i = 0; i < nx; ++i) {
      const double c = row[i];
      const double lap = (row[lower(i)] - 2.0 * c + row[upper(i, nx)]) * cx +
                         (below[i] - 2.0 * c + above[i]) * cy;
      o[i] = a * (lap - react(c));
    }
  });
}

void check(const CartesianGrid& grid, std::size_t u, std::size_t out) {
  if (u != grid.vertex_count() || out != grid.vertex_count())
    throw Error(ErrorCode::SizeMismatch, "state size does not match the grid vertex count");
  for (auto n : grid.n)
    if (n < 2) throw Error(ErrorCode::InvalidArgument, "grid needs at least two vertices per axis");
}

}  // namespace

void fd_laplacian_apply(const CartesianGrid& grid, std::span<const double> u,
                        std::span<double> out) {
  check(grid, u.size(), out.size());
  sweep(grid, u.data(), out.data(), 1.0, [](double) { return 0.0; });
}

std::vector<double> fd_laplacian_apply(std::span<const double> u, const CartesianGrid& grid) {
  std::vector<double> out(u.size());
  fd_laplacian_apply(grid, u, out);
  return out;
}

FdSystem::FdSystem(CartesianGrid grid, AllenCahnParams params)
    : grid_(std::move(grid)), params_(params), state_(grid_.vertex_count(), 0.0) {
  params_.validate();
}

void FdSystem::rhs(std::span<const double> u, double, std::span<double> du) const {
  check(grid_, u.size(), du.size());
  const double a = 2.0 / (params_.xi * params_.xi);
  const double b = params_.mu0 / (3.0 * params_.gamma * params_.xi);
  sweep(grid_, u.data(), du.data(), params_.mobility, [a, b](double phi) {
    return a * double_well_derivative(phi) - b * interpolation_derivative(phi);
  });
}

std::size_t FdSystem::owned_bytes() const noexcept {
  return sizeof(FdSystem) + grid_.owned_bytes() - sizeof(CartesianGrid) +
         state_.capacity() * sizeof(double);
}

std::vector<double> fd_semidiscrete_rhs(const FdSystem& system, double t) {
  std::vector<double> du(system.state().size());
  system.rhs(system.state(), t, du);
  return du;
}

}  // namespace schemeforge
