#pragma once

#include <array>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "schemeforge/mesh.hpp"
#include "schemeforge/reference_element.hpp"

namespace schemeforge {

struct AdvectionParams {
  std::array<double, 2> velocity{1.0, 1.0};
  std::array<std::array<double, 2>, 2> extents{{{0.0, 5.0}, {0.0, 5.0}}};
  double end_time = 5.0;

  /// Throws InvalidArgument for non-finite velocity, empty extents or T <= 0.
  void validate() const;
};

/// f* = {alpha (u.n+)} + C/2 [[alpha]], [[alpha]] = alpha+ - alpha-.
constexpr double lax_friedrichs_flux(double a_plus, double a_minus, std::array<double, 2> u,
                                     std::array<double, 2> n_plus, double c) noexcept {
  const double un = u[0] * n_plus[0] + u[1] * n_plus[1];
  return 0.5 * (a_plus + a_minus) * un + 0.5 * c * (a_plus - a_minus);
}

/// safety * h / ((|ux| + |uy|) (2p + 1)). Throws InvalidArgument unless
/// safety is in (0, 1], p >= 0, h > 0 and the velocity is non-zero.
double max_stable_dt(int p, double h, std::array<double, 2> u, double safety);

/// Values on both sides of one facet, at the facet's nodes.
struct FacetTrace {
  std::size_t facet = 0;
  std::vector<double> owner_values;
  std::vector<double> neighbor_values;
  std::array<double, 2> normal_owner{0.0, 0.0};
  std::array<double, 2> normal_neighbor{0.0, 0.0};
};

/// Nodal (collocated Gauss-Lobatto) DG discretisation of linear advection on
/// a periodic structured quad mesh. Order 0 is the first-order finite volume
/// method: facet values are the cell values and the volume term is skipped.
///
/// Periodic pairing keeps the right and top boundary facets as owners and
/// drops the left and bottom ones, whose cells become the neighbours.
class DgSystem {
 public:
  DgSystem(std::size_t cells_per_axis, int order, AdvectionParams params);

  [[nodiscard]] const QuadMesh& mesh() const noexcept { return mesh_; }
  [[nodiscard]] const ReferenceElement& element() const noexcept { return element_; }
  [[nodiscard]] const DofMap& dofmap() const noexcept { return dofmap_; }
  [[nodiscard]] const AdvectionParams& params() const noexcept { return params_; }
  [[nodiscard]] int order() const noexcept { return element_.order; }
  [[nodiscard]] double cell_size() const noexcept { return h_; }
  /// Global Lax-Friedrichs constant: largest facet normal speed.
  [[nodiscard]] double flux_constant() const noexcept { return c_; }
  [[nodiscard]] std::size_t dof_count() const noexcept { return dofmap_.dof_count; }
  [[nodiscard]] std::vector<double>& state() noexcept { return state_; }
  [[nodiscard]] const std::vector<double>& state() const noexcept { return state_; }

  /// Diagonal mass entry per dof (w_i |det J|).
  [[nodiscard]] const std::vector<double>& mass() const noexcept { return mass_; }
  [[nodiscard]] std::vector<std::array<double, 2>> node_coordinates() const;

  /// Local node indices on local face `face`, ordered along the face.
  [[nodiscard]] const std::vector<std::size_t>& face_nodes(int face) const {
    return face_nodes_.at(static_cast<std::size_t>(face));
  }

  /// Two passes: facet fluxes into a buffer, then a per-cell gather with the
  /// volume term. Reuses internal buffers.
  void rhs(std::span<const double> u, double t, std::span<double> du) const;

  [[nodiscard]] FacetTrace facet_trace(std::span<const double> u, std::size_t facet) const;

  [[nodiscard]] std::size_t owned_bytes() const noexcept;

 private:
  AdvectionParams params_;
  QuadMesh mesh_;
  ReferenceElement element_;
  DofMap dofmap_;
  double h_ = 1.0;
  double c_ = 0.0;
  std::vector<std::vector<std::size_t>> face_nodes_;
  /// (w_along_face * facet measure) / mass of the face node, per face and k.
  std::vector<double> lift_;
  /// Sum-factorisation matrix G[a * n1 + q] = (w_q / w_a) l_a'(x_q).
  std::vector<double> volume_1d_;
  std::vector<double> mass_;
  /// Per cell and local face: +1 if the cell owns the facet, -1 otherwise.
  std::vector<std::array<double, 4>> face_sign_;
  mutable std::vector<double> facet_flux_;
  std::vector<double> state_;
};

/// Nodal interpolation for p >= 1; for p = 0 the cell average by a composite
/// midpoint rule on `subsamples`^2 sub-cells.
std::vector<double> project_initial_condition(const std::function<double(double, double)>& ic,
                                              const DgSystem& system, int subsamples = 16);

/// Sum over dofs of mass * value.
double total_mass(const DgSystem& system, std::span<const double> state);

/// L2 distance to `reference`, integrating the DG polynomial on a composite
/// midpoint rule with `subsamples`^2 points per cell.
double dg_l2_error(const DgSystem& system, std::span<const double> state,
                   const std::function<double(double, double)>& reference, int subsamples = 8);

/// Vertex values by averaging the incident cells' corner values
/// (visualisation only).
std::vector<double> dg_vertex_values(const DgSystem& system, std::span<const double> state);

/// `x,y,value` per dof.
std::string dg_snapshot_csv(const DgSystem& system, std::span<const double> state);

std::vector<double> dg_semidiscrete_rhs(const DgSystem& system, double t);

}  // namespace schemeforge
