#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "schemeforge/reference_element.hpp"

namespace schemeforge {

/// Uniform vertex grid. Vertex (i, j) lives at flat index i + n[0] * j.
struct CartesianGrid {
  int dim = 1;
  std::vector<std::array<double, 2>> extents;
  std::vector<double> h;
  /// Vertex count per axis; n[a] = (hi - lo) / h[a] + 1.
  std::vector<std::size_t> n;

  [[nodiscard]] std::size_t vertex_count() const noexcept;
  [[nodiscard]] std::size_t cell_count(int axis) const { return n.at(axis) - 1; }
  [[nodiscard]] double coord(int axis, std::size_t i) const {
    return extents[axis][0] + static_cast<double>(i) * h[axis];
  }
  [[nodiscard]] std::size_t index(std::size_t i, std::size_t j = 0) const noexcept {
    return i + n[0] * j;
  }
  /// Product of the extent lengths.
  [[nodiscard]] double measure() const noexcept;
  /// Tensor trapezoid weights: h^d scaled by 1/2 per boundary axis.
  [[nodiscard]] std::vector<double> trapezoid_weights() const;
  [[nodiscard]] std::size_t owned_bytes() const noexcept;
};

/// Throws NonDivisibleExtent unless every extent length is an integer
/// multiple of h (relative tolerance 1e-9).
CartesianGrid build_cartesian_grid(int dim, const std::vector<std::array<double, 2>>& extents,
                                   double h);

enum class BoundaryTag { Interior, Left, Right, Bottom, Top };

std::string_view to_string(BoundaryTag tag) noexcept;

/// Oriented facet. `normal` points out of the owner ("+" side). Interior
/// facets list both cells; boundary facets have no neighbor until periodic
/// pairing supplies one.
struct Facet {
  std::size_t owner = 0;
  int owner_face = 0;
  std::optional<std::size_t> neighbor;
  int neighbor_face = -1;
  BoundaryTag tag = BoundaryTag::Interior;
  std::array<double, 2> normal{0.0, 0.0};
  double measure = 1.0;
};

/// Structured quadrilateral (or interval) mesh.
///
/// Cells store vertices counter-clockwise starting at the lower-left corner:
/// (x0,y0), (x1,y0), (x1,y1), (x0,y1). In 1D only the first two are used.
/// Local faces: 2D 0 bottom, 1 right, 2 top, 3 left; 1D 0 left, 1 right.
struct QuadMesh {
  int dim = 2;
  std::vector<std::array<double, 2>> vertices;
  std::vector<std::array<std::size_t, 4>> cells;
  std::vector<Facet> facets;
  /// cell -> facet id per local face.
  std::vector<std::array<std::size_t, 4>> cell_facets;
  /// Cells per axis of the generating grid.
  std::array<std::size_t, 2> shape{0, 1};

  [[nodiscard]] std::size_t vertices_per_cell() const noexcept { return dim == 1 ? 2 : 4; }
  [[nodiscard]] std::size_t faces_per_cell() const noexcept { return dim == 1 ? 2 : 4; }
  [[nodiscard]] std::size_t cell_count() const noexcept { return cells.size(); }
  /// Geometric measure from the vertex coordinates (shoelace formula in 2D).
  [[nodiscard]] double cell_measure(std::size_t c) const;
  [[nodiscard]] std::array<double, 2> cell_center(std::size_t c) const;
  [[nodiscard]] std::size_t owned_bytes() const noexcept;
};

QuadMesh build_quad_mesh_from_grid(const CartesianGrid& grid);

/// Vertex position on the lexicographic reference corner `k`
/// ((0,0), (1,0), (0,1), (1,1)) of cell c.
std::size_t cell_corner_vertex(const QuadMesh& mesh, std::size_t c, std::size_t k);

/// Maps a reference point in [0,1]^d to physical coordinates (bilinear map).
std::array<double, 2> map_to_physical(const QuadMesh& mesh, std::size_t c,
                                      std::array<double, 2> ref);

/// Reference-to-physical Jacobian of the bilinear (or linear, 1D) cell map.
/// `inv_t` is J^{-T}, row-major, so physical gradients are inv_t * ref_grad.
struct CellJacobian {
  std::array<double, 4> j{1.0, 0.0, 0.0, 1.0};
  std::array<double, 4> inv_t{1.0, 0.0, 0.0, 1.0};
  double det = 1.0;

  [[nodiscard]] std::array<double, 2> physical_gradient(std::array<double, 2> g) const noexcept {
    return {inv_t[0] * g[0] + inv_t[1] * g[1], inv_t[2] * g[0] + inv_t[3] * g[1]};
  }
};

/// Evaluated from the cell vertices at `ref`. Throws SingularJacobian when
/// det J <= 0 (inverted or degenerate cell).
CellJacobian cell_jacobian(const QuadMesh& mesh, std::size_t c, std::array<double, 2> ref);

enum class DofMode { Continuous, Discontinuous };

struct DofMap {
  DofMode mode = DofMode::Continuous;
  std::size_t dofs_per_cell = 0;
  std::size_t dof_count = 0;
  /// Flat cell-major table: cell_dofs[c * dofs_per_cell + i].
  std::vector<std::size_t> cell_dofs;

  [[nodiscard]] std::span<const std::size_t> cell(std::size_t c) const {
    return {cell_dofs.data() + c * dofs_per_cell, dofs_per_cell};
  }
  [[nodiscard]] std::size_t owned_bytes() const noexcept {
    return cell_dofs.capacity() * sizeof(std::size_t);
  }
};

/// Continuous maps are only defined for order-1 elements: dofs coincide with
/// mesh vertices. Discontinuous dofs are c * dofs_per_cell + i.
DofMap build_dof_map(const QuadMesh& mesh, const ReferenceElement& element, DofMode mode);

/// `x,y` header plus one row per vertex.
std::string mesh_vertices_csv(const QuadMesh& mesh);
/// `cell,v0,v1,v2,v3` header plus one row per cell.
std::string mesh_cells_csv(const QuadMesh& mesh);

}  // namespace schemeforge
