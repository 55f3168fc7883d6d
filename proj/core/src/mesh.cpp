#include "schemeforge/mesh.hpp"

#include <cmath>
#include <sstream>

#include "schemeforge/errors.hpp"

namespace schemeforge {

std::size_t CartesianGrid::vertex_count() const noexcept {
  std::size_t total = 1;
  for (auto v : n) total *= v;
  return total;
}

double CartesianGrid::measure() const noexcept {
  double m = 1.0;
  for (const auto& e : extents) m *= e[1] - e[0];
  return m;
}

std::vector<double> CartesianGrid::trapezoid_weights() const {
  std::vector<double> w(vertex_count(), 1.0);
  const std::size_t ny = dim == 2 ? n[1] : 1;
  for (std::size_t j = 0; j < ny; ++j) {
    for (std::size_t i = 0; i < n[0]; ++i) {
      double v = h[0] * ((i == 0 || i + 1 == n[0]) ? 0.5 : 1.0);
      if (dim == 2) v *= h[1] * ((j == 0 || j + 1 == ny) ? 0.5 : 1.0);
      w[index(i, j)] = v;
    }
  }
  return w;
}

std::size_t CartesianGrid::owned_bytes() const noexcept {
  return sizeof(CartesianGrid) + extents.capacity() * sizeof(extents[0]) +
         h.capacity() * sizeof(double) + n.capacity() * sizeof(std::size_t);
}

CartesianGrid build_cartesian_grid(int dim, const std::vector<std::array<double, 2>>& extents,
                                   double h) {
  if (dim != 1 && dim != 2)
    throw Error(ErrorCode::InvalidArgument, "grid dimension must be 1 or 2");
  if (extents.size() != static_cast<std::size_t>(dim))
    throw Error(ErrorCode::SizeMismatch, "one extent per axis required");
  if (!(h > 0.0) || !std::isfinite(h))
    throw Error(ErrorCode::InvalidArgument, "grid spacing must be positive");

  CartesianGrid g;
  g.dim = dim;
  g.extents = extents;
  for (int a = 0; a < dim; ++a) {
    const double length = extents[a][1] - extents[a][0];
    if (!(length > 0.0))
      throw Error(ErrorCode::InvalidArgument, "extent must have positive length");
    const double cells = length / h;
    const double rounded = std::round(cells);
    if (rounded < 1.0 || std::abs(cells - rounded) > 1e-9 * std::max(1.0, rounded))
      throw Error(ErrorCode::NonDivisibleExtent,
                  "extent length " + std::to_string(length) + " is not a multiple of h = " +
                      std::to_string(h));
    g.h.push_back(h);
    g.n.push_back(static_cast<std::size_t>(rounded) + 1);
  }
  return g;
}

std::string_view to_string(BoundaryTag tag) noexcept {
  switch (tag) {
    case BoundaryTag::Interior: return "interior";
    case BoundaryTag::Left: return "left";
    case BoundaryTag::Right: return "right";
    case BoundaryTag::Bottom: return "bottom";
    case BoundaryTag::Top: return "top";
  }
  return "?";
}

double QuadMesh::cell_measure(std::size_t c) const {
  const auto& cell = cells[c];
  if (dim == 1) return vertices[cell[1]][0] - vertices[cell[0]][0];
  double twice = 0.0;
  for (std::size_t k = 0; k < 4; ++k) {
    const auto& a = vertices[cell[k]];
    const auto& b = vertices[cell[(k + 1) % 4]];
    twice += a[0] * b[1] - b[0] * a[1];
  }
  return 0.5 * twice;
}

std::array<double, 2> QuadMesh::cell_center(std::size_t c) const {
  std::array<double, 2> s{0.0, 0.0};
  const std::size_t nv = vertices_per_cell();
  for (std::size_t k = 0; k < nv; ++k) {
    s[0] += vertices[cells[c][k]][0];
    s[1] += vertices[cells[c][k]][1];
  }
  return {s[0] / static_cast<double>(nv), s[1] / static_cast<double>(nv)};
}

std::size_t QuadMesh::owned_bytes() const noexcept {
  return sizeof(QuadMesh) + vertices.capacity() * sizeof(vertices[0]) +
         cells.capacity() * sizeof(cells[0]) + facets.capacity() * sizeof(Facet) +
         cell_facets.capacity() * sizeof(cell_facets[0]);
}

QuadMesh build_quad_mesh_from_grid(const CartesianGrid& grid) {
  QuadMesh m;
  m.dim = grid.dim;
  const std::size_t nvx = grid.n[0];
  const std::size_t nvy = grid.dim == 2 ? grid.n[1] : 1;
  const std::size_t ncx = nvx - 1;
  const std::size_t ncy = grid.dim == 2 ? nvy - 1 : 1;
  m.shape = {ncx, ncy};

  m.vertices.reserve(nvx * nvy);
  for (std::size_t j = 0; j < nvy; ++j)
    for (std::size_t i = 0; i < nvx; ++i)
      m.vertices.push_back({grid.coord(0, i), grid.dim == 2 ? grid.coord(1, j) : 0.0});

  const std::size_t none = static_cast<std::size_t>(-1);
  m.cells.reserve(ncx * ncy);
  m.cell_facets.assign(ncx * ncy, {none, none, none, none});

  if (grid.dim == 1) {
    for (std::size_t i = 0; i < ncx; ++i) m.cells.push_back({i, i + 1, none, none});
    for (std::size_t f = 0; f <= ncx; ++f) {
      Facet facet;
      facet.measure = 1.0;
      if (f == 0) {
        facet = {0, 0, std::nullopt, -1, BoundaryTag::Left, {-1.0, 0.0}, 1.0};
      } else if (f == ncx) {
        facet = {ncx - 1, 1, std::nullopt, -1, BoundaryTag::Right, {1.0, 0.0}, 1.0};
      } else {
        facet = {f - 1, 1, f, 0, BoundaryTag::Interior, {1.0, 0.0}, 1.0};
      }
      m.facets.push_back(facet);
      m.cell_facets[facet.owner][facet.owner_face] = f;
      if (facet.neighbor) m.cell_facets[*facet.neighbor][facet.neighbor_face] = f;
    }
    return m;
  }

  for (std::size_t j = 0; j < ncy; ++j) {
    for (std::size_t i = 0; i < ncx; ++i) {
      const std::size_t v0 = i + nvx * j;
      m.cells.push_back({v0, v0 + 1, v0 + 1 + nvx, v0 + nvx});
    }
  }
  auto cell_id = [&](std::size_t i, std::size_t j) { return i + ncx * j; };
  auto add = [&](const Facet& facet) {
    const std::size_t id = m.facets.size();
    m.facets.push_back(facet);
    m.cell_facets[facet.owner][facet.owner_face] = id;
    if (facet.neighbor) m.cell_facets[*facet.neighbor][facet.neighbor_face] = id;
  };

  const double hx = grid.h[0];
  const double hy = grid.h[1];
  // Vertical facets (normal along x), column by column.
  for (std::size_t j = 0; j < ncy; ++j) {
    for (std::size_t i = 0; i <= ncx; ++i) {
      if (i == 0) {
        add({cell_id(0, j), 3, std::nullopt, -1, BoundaryTag::Left, {-1.0, 0.0}, hy});
      } else if (i == ncx) {
        add({cell_id(ncx - 1, j), 1, std::nullopt, -1, BoundaryTag::Right, {1.0, 0.0}, hy});
      } else {
        add({cell_id(i - 1, j), 1, cell_id(i, j), 3, BoundaryTag::Interior, {1.0, 0.0}, hy});
      }
    }
  }
  // Horizontal facets (normal along y).
  for (std::size_t j = 0; j <= ncy; ++j) {
    for (std::size_t i = 0; i < ncx; ++i) {
      if (j == 0) {
        add({cell_id(i, 0), 0, std::nullopt, -1, BoundaryTag::Bottom, {0.0, -1.0}, hx});
      } else if (j == ncy) {
        add({cell_id(i, ncy - 1), 2, std::nullopt, -1, BoundaryTag::Top, {0.0, 1.0}, hx});
      } else {
        add({cell_id(i, j - 1), 2, cell_id(i, j), 0, BoundaryTag::Interior, {0.0, 1.0}, hx});
      }
    }
  }
  return m;
}

std::size_t cell_corner_vertex(const QuadMesh& mesh, std::size_t c, std::size_t k) {
  // Lexicographic corner k -> counter-clockwise slot.
  static constexpr std::array<std::size_t, 4> lex_to_ccw{0, 1, 3, 2};
  return mesh.cells[c][lex_to_ccw[k]];
}

std::array<double, 2> map_to_physical(const QuadMesh& mesh, std::size_t c,
                                      std::array<double, 2> ref) {
  if (mesh.dim == 1) {
    const double a = mesh.vertices[mesh.cells[c][0]][0];
    const double b = mesh.vertices[mesh.cells[c][1]][0];
    return {a + ref[0] * (b - a), 0.0};
  }
  const double w[4] = {(1 - ref[0]) * (1 - ref[1]), ref[0] * (1 - ref[1]),
                       (1 - ref[0]) * ref[1], ref[0] * ref[1]};
  std::array<double, 2> x{0.0, 0.0};
  for (std::size_t k = 0; k < 4; ++k) {
    const auto& v = mesh.vertices[cell_corner_vertex(mesh, c, k)];
    x[0] += w[k] * v[0];
    x[1] += w[k] * v[1];
  }
  return x;
}

CellJacobian cell_jacobian(const QuadMesh& mesh, std::size_t c, std::array<double, 2> ref) {
  CellJacobian out;
  if (mesh.dim == 1) {
    const double len = mesh.vertices[mesh.cells[c][1]][0] - mesh.vertices[mesh.cells[c][0]][0];
    out.j = {len, 0.0, 0.0, 1.0};
    out.det = len;
  } else {
    // d/dxi and d/deta of the bilinear corner weights.
    const double dxi[4] = {-(1 - ref[1]), 1 - ref[1], -ref[1], ref[1]};
    const double deta[4] = {-(1 - ref[0]), -ref[0], 1 - ref[0], ref[0]};
    std::array<double, 4> j{0.0, 0.0, 0.0, 0.0};
    for (std::size_t k = 0; k < 4; ++k) {
      const auto& v = mesh.vertices[cell_corner_vertex(mesh, c, k)];
      j[0] += v[0] * dxi[k];
      j[1] += v[0] * deta[k];
      j[2] += v[1] * dxi[k];
      j[3] += v[1] * deta[k];
    }
    out.j = j;
    out.det = j[0] * j[3] - j[1] * j[2];
  }
  if (!(out.det > 0.0))
    throw Error(ErrorCode::SingularJacobian,
                "cell " + std::to_string(c) + " has a non-positive Jacobian determinant");
  const double inv = 1.0 / out.det;
  // J^{-T} = (1/det) [[j3, -j2], [-j1, j0]]
  out.inv_t = {out.j[3] * inv, -out.j[2] * inv, -out.j[1] * inv, out.j[0] * inv};
  return out;
}

DofMap build_dof_map(const QuadMesh& mesh, const ReferenceElement& element, DofMode mode) {
  if (element.dim() != mesh.dim)
    throw Error(ErrorCode::SizeMismatch, "element and mesh dimensions differ");
  DofMap map;
  map.mode = mode;
  map.dofs_per_cell = element.n_basis();
  map.cell_dofs.resize(mesh.cell_count() * map.dofs_per_cell);

  if (mode == DofMode::Continuous) {
    if (element.order != 1)
      throw Error(ErrorCode::UnsupportedOrder, "continuous dof maps support order 1 only");
    for (std::size_t c = 0; c < mesh.cell_count(); ++c) {
      for (std::size_t k = 0; k < map.dofs_per_cell; ++k) {
        map.cell_dofs[c * map.dofs_per_cell + k] =
            mesh.dim == 1 ? mesh.cells[c][k] : cell_corner_vertex(mesh, c, k);
      }
    }
    map.dof_count = mesh.vertices.size();
  } else {
    for (std::size_t i = 0; i < map.cell_dofs.size(); ++i) map.cell_dofs[i] = i;
    map.dof_count = map.cell_dofs.size();
  }
  return map;
}

std::string mesh_vertices_csv(const QuadMesh& mesh) {
  std::ostringstream os;
  os.precision(17);
  os << "x,y\n";
  for (const auto& v : mesh.vertices) os << v[0] << ',' << v[1] << '\n';
  return os.str();
}

std::string mesh_cells_csv(const QuadMesh& mesh) {
  std::ostringstream os;
  os << (mesh.dim == 1 ? "cell,v0,v1\n" : "cell,v0,v1,v2,v3\n");
  for (std::size_t c = 0; c < mesh.cell_count(); ++c) {
    os << c;
    for (std::size_t k = 0; k < mesh.vertices_per_cell(); ++k) os << ',' << mesh.cells[c][k];
    os << '\n';
  }
  return os.str();
}

}  // namespace schemeforge
