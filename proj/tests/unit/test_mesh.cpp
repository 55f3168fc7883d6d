#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <set>

#include "schemeforge/errors.hpp"
#include "schemeforge/mesh.hpp"
#include "schemeforge/reference_element.hpp"

using namespace schemeforge;

TEST_CASE("cartesian grid vertex counts") {
  const auto g1 = build_cartesian_grid(1, {{0.0, 100.0}}, 1.0);
  CHECK(g1.vertex_count() == 101);
  CHECK(g1.cell_count(0) == 100);
  CHECK(g1.coord(0, 100) == 100.0);

  // 96 x 96 cells of width 5/96.
  const auto g2 = build_cartesian_grid(2, {{0.0, 5.0}, {0.0, 5.0}}, 5.0 / 96.0);
  CHECK(g2.n[0] == 97);
  CHECK(g2.n[1] == 97);
  CHECK(g2.vertex_count() == 97 * 97);
  CHECK(g2.index(3, 2) == 3 + 97 * 2);

  try {
    (void)build_cartesian_grid(1, {{0.0, 10.0}}, 3.0);
    FAIL("expected NonDivisibleExtent");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NonDivisibleExtent);
  }
}

TEST_CASE("trapezoid weights sum to the domain measure") {
  const auto g = build_cartesian_grid(2, {{0.0, 6.0}, {-1.0, 3.0}}, 0.5);
  const auto w = g.trapezoid_weights();
  double s = 0.0;
  for (double v : w) s += v;
  CHECK(s == doctest::Approx(24.0).epsilon(1e-14));
  CHECK(w[0] == doctest::Approx(0.0625));
  CHECK(w[g.index(1, 1)] == doctest::Approx(0.25));
  CHECK(w[g.index(0, 1)] == doctest::Approx(0.125));
}

TEST_CASE("2 x 2 quad mesh counts") {
  const auto m = build_quad_mesh_from_grid(build_cartesian_grid(2, {{0.0, 2.0}, {0.0, 2.0}}, 1.0));
  CHECK(m.cell_count() == 4);
  CHECK(m.vertices.size() == 9);
  CHECK(m.facets.size() == 12);
  int interior = 0;
  std::map<BoundaryTag, int> tags;
  for (const auto& f : m.facets) {
    ++tags[f.tag];
    if (f.tag == BoundaryTag::Interior) {
      ++interior;
      REQUIRE(f.neighbor.has_value());
      CHECK(*f.neighbor != f.owner);
    } else {
      CHECK_FALSE(f.neighbor.has_value());
    }
  }
  CHECK(interior == 4);
  CHECK(tags[BoundaryTag::Left] == 2);
  CHECK(tags[BoundaryTag::Right] == 2);
  CHECK(tags[BoundaryTag::Bottom] == 2);
  CHECK(tags[BoundaryTag::Top] == 2);
}

TEST_CASE("1D mesh with 100 cells") {
  const auto m = build_quad_mesh_from_grid(build_cartesian_grid(1, {{0.0, 100.0}}, 1.0));
  CHECK(m.cell_count() == 100);
  CHECK(m.vertices.size() == 101);
  CHECK(m.facets.size() == 101);
}

TEST_CASE("mesh geometry invariants") {
  for (double h : {1.0, 0.5, 0.25}) {
    const auto g = build_cartesian_grid(2, {{-1.0, 2.0}, {0.0, 4.0}}, h);
    const auto m = build_quad_mesh_from_grid(g);
    double area = 0.0;
    for (std::size_t c = 0; c < m.cell_count(); ++c) {
      area += m.cell_measure(c);
      const auto j = cell_jacobian(m, c, {0.3, 0.7});
      CHECK(j.det > 0.0);
      CHECK(j.det == doctest::Approx(h * h));
      // Counter-clockwise: the lexicographic corners map to the cell bounding box.
      const auto lo = map_to_physical(m, c, {0.0, 0.0});
      const auto hi = map_to_physical(m, c, {1.0, 1.0});
      CHECK(hi[0] - lo[0] == doctest::Approx(h));
      CHECK(hi[1] - lo[1] == doctest::Approx(h));
    }
    CHECK(area == doctest::Approx(g.measure()).epsilon(1e-12));

    for (std::size_t id = 0; id < m.facets.size(); ++id) {
      const auto& f = m.facets[id];
      CHECK(std::hypot(f.normal[0], f.normal[1]) == doctest::Approx(1.0));
      CHECK(m.cell_facets[f.owner][static_cast<std::size_t>(f.owner_face)] == id);
      if (f.neighbor) CHECK(m.cell_facets[*f.neighbor][static_cast<std::size_t>(f.neighbor_face)] == id);
      // Outward from the owner: faces are bottom, right, top, left.
      const std::array<std::array<double, 2>, 4> outward{{{0, -1}, {1, 0}, {0, 1}, {-1, 0}}};
      CHECK(f.normal == outward[static_cast<std::size_t>(f.owner_face)]);
    }
  }
}

TEST_CASE("inverted cell has a singular Jacobian") {
  auto m = build_quad_mesh_from_grid(build_cartesian_grid(2, {{0.0, 1.0}, {0.0, 1.0}}, 1.0));
  std::swap(m.cells[0][1], m.cells[0][3]);
  try {
    (void)cell_jacobian(m, 0, {0.5, 0.5});
    FAIL("expected SingularJacobian");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::SingularJacobian);
  }
}

TEST_CASE("Gauss-Lobatto nodes match closed forms") {
  std::vector<double> x, w;
  gauss_lobatto_01(3, x, w);
  CHECK(x[0] == doctest::Approx(0.0));
  CHECK(x[1] == doctest::Approx(0.5));
  CHECK(x[2] == doctest::Approx(1.0));
  CHECK(w[0] == doctest::Approx(1.0 / 6.0));
  CHECK(w[1] == doctest::Approx(4.0 / 6.0));
  gauss_lobatto_01(4, x, w);
  CHECK(x[1] == doctest::Approx(0.5 - std::sqrt(5.0) / 10.0));
  CHECK(x[2] == doctest::Approx(0.5 + std::sqrt(5.0) / 10.0));
  CHECK(w[0] == doctest::Approx(1.0 / 12.0));
  CHECK(w[1] == doctest::Approx(5.0 / 12.0));
}

TEST_CASE("quadrature rules integrate monomials up to their degree") {
  for (int n = 1; n <= 8; ++n) {
    std::vector<double> x, w;
    gauss_legendre_01(n, x, w);
    for (int k = 0; k <= 2 * n - 1; ++k) {
      double s = 0.0;
      for (int i = 0; i < n; ++i) s += w[i] * std::pow(x[i], k);
      CHECK(s == doctest::Approx(1.0 / (k + 1)).epsilon(1e-13));
    }
    if (n < 2) continue;
    gauss_lobatto_01(n, x, w);
    for (int k = 0; k <= 2 * n - 3; ++k) {
      double s = 0.0;
      for (int i = 0; i < n; ++i) s += w[i] * std::pow(x[i], k);
      CHECK(s == doctest::Approx(1.0 / (k + 1)).epsilon(1e-13));
    }
  }
}

TEST_CASE("Q1 collocation basis is the bilinear hat set") {
  const auto e = build_reference_element(Primitive::Quad, 1);
  REQUIRE(e.n_basis() == 4);
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int k = 0; k < 50; ++k) {
    const double x = u(rng);
    const double y = u(rng);
    CHECK(e.basis(0, {x, y}) == doctest::Approx(x * y - x - y + 1));
    CHECK(e.basis(1, {x, y}) == doctest::Approx(x * (1 - y)));
    CHECK(e.basis(2, {x, y}) == doctest::Approx(y * (1 - x)));
    CHECK(e.basis(3, {x, y}) == doctest::Approx(x * y));
    for (std::size_t i = 0; i < 4; ++i) CHECK(e.basis_from_coeffs(i, {x, y}) == doctest::Approx(e.basis(i, {x, y})));
  }
}

TEST_CASE("Q1 element stiffness: -1 diagonal, 1/2 edge neighbours, 0 across the diagonal") {
  // Closed form of -integral(grad phi_i . grad phi_j) on the unit square, exact
  // integration: diagonal -2/3, edge 1/6, corner 1/3. Under trapezoid collocation the
  // quadrature lumps these to -1, 1/2, 0.
  const auto e = build_reference_element(Primitive::Quad, 1);
  const auto k = e.stiffness_matrix();
  auto edge = [](std::size_t i, std::size_t j) { return (i ^ j) == 1 || (i ^ j) == 2; };
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = 0; j < 4; ++j) {
      const double v = k[i * 4 + j];
      if (i == j) CHECK(v == doctest::Approx(-1.0).epsilon(1e-14));
      else if (edge(i, j)) CHECK(v == doctest::Approx(0.5).epsilon(1e-14));
      else CHECK(std::abs(v) < 1e-14);
    }
  }

  const auto exact = build_reference_element(Primitive::Quad, 1, QuadratureRule::GaussLegendre);
  const auto ke = exact.stiffness_matrix();
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = 0; j < 4; ++j) {
      const double v = ke[i * 4 + j];
      if (i == j) CHECK(v == doctest::Approx(-2.0 / 3.0));
      else if (edge(i, j)) CHECK(v == doctest::Approx(1.0 / 6.0));
      else CHECK(v == doctest::Approx(1.0 / 3.0));
    }
  }
}

TEST_CASE("p = 0 element is the constant function") {
  for (auto rule : {QuadratureRule::GaussLobattoCollocation, QuadratureRule::GaussLegendre}) {
    const auto e = build_reference_element(Primitive::Quad, 0, rule);
    REQUIRE(e.n_basis() == 1);
    for (double x : {0.0, 0.3, 1.0}) {
      CHECK(e.basis(0, {x, 1 - x}) == 1.0);
      CHECK(e.grad_basis(0, {x, 1 - x}) == std::array<double, 2>{0.0, 0.0});
    }
    double w = 0.0;
    for (double q : e.quad_weights) w += q;
    CHECK(w == doctest::Approx(1.0));
  }
}

TEST_CASE("Lagrange properties for every order and primitive") {
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (auto prim : {Primitive::Interval, Primitive::Quad}) {
    for (int p = 1; p <= 8; ++p) {
      CAPTURE(p);
      const auto e = build_reference_element(prim, p);
      const std::size_t nb = e.n_basis();
      CHECK(nb == (prim == Primitive::Quad ? std::size_t(p + 1) * (p + 1) : std::size_t(p + 1)));
      // Kronecker property at the element's own nodes.
      for (std::size_t i = 0; i < nb; ++i)
        for (std::size_t j = 0; j < nb; ++j)
          CHECK(std::abs(e.basis(i, e.nodes[j]) - (i == j ? 1.0 : 0.0)) < 1e-11);
      // Partition of unity and its derivative.
      for (int k = 0; k < 20; ++k) {
        const std::array<double, 2> x{u(rng), prim == Primitive::Quad ? u(rng) : 0.0};
        double s = 0.0;
        std::array<double, 2> g{0.0, 0.0};
        for (std::size_t i = 0; i < nb; ++i) {
          s += e.basis(i, x);
          const auto gi = e.grad_basis(i, x);
          g[0] += gi[0];
          g[1] += gi[1];
        }
        CHECK(std::abs(s - 1.0) < 1e-12);
        CHECK(std::abs(g[0]) < 1e-9);
        CHECK(std::abs(g[1]) < 1e-9);
      }
      for (std::size_t q = 0; q < e.n_quad(); ++q) {
        std::array<double, 2> g{0.0, 0.0};
        for (std::size_t i = 0; i < nb; ++i) {
          g[0] += e.grad_basis_at_quad[q * nb + i][0];
          g[1] += e.grad_basis_at_quad[q * nb + i][1];
        }
        CHECK(std::abs(g[0]) < 1e-9);
        CHECK(std::abs(g[1]) < 1e-9);
      }
      // Collocation: quadrature points are the nodes and the mass matrix is diagonal.
      CHECK(e.quad_points == e.nodes);
      const auto mm = e.mass_matrix();
      for (std::size_t i = 0; i < nb; ++i)
        for (std::size_t j = 0; j < nb; ++j)
          if (i != j) CHECK(std::abs(mm[i * nb + j]) < 1e-14);
    }
  }
}

TEST_CASE("1D derivative matrix differentiates the nodal interpolant of a polynomial exactly") {
  for (int p = 1; p <= 6; ++p) {
    const auto e = build_reference_element(Primitive::Interval, p);
    const std::size_t n1 = static_cast<std::size_t>(p) + 1;
    for (std::size_t a = 0; a < n1; ++a) {
      double d = 0.0;
      for (std::size_t b = 0; b < n1; ++b) d += e.derivative_1d[a * n1 + b] * std::pow(e.nodes_1d[b], p);
      CHECK(d == doctest::Approx(p * std::pow(e.nodes_1d[a], p - 1)).epsilon(1e-10));
    }
  }
}

TEST_CASE("reference element order guards") {
  CHECK_THROWS_AS(build_reference_element(Primitive::Quad, -1), Error);
  try {
    (void)build_reference_element(Primitive::Quad, 9);
    FAIL("expected UnsupportedOrder");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::UnsupportedOrder);
  }
}

TEST_CASE("Q1 mass matrix is diagonal with quarter weights") {
  const auto mm = build_reference_element(Primitive::Quad, 1).mass_matrix();
  for (std::size_t i = 0; i < 4; ++i) {
    CHECK(mm[i * 4 + i] == doctest::Approx(0.25));
    for (std::size_t j = 0; j < 4; ++j)
      if (i != j) CHECK(std::abs(mm[i * 4 + j]) < 1e-14);
  }
}

TEST_CASE("dof counting: (n+1)^2 continuous, 4 n^2 discontinuous") {
  const auto q1 = build_reference_element(Primitive::Quad, 1);
  for (std::size_t n : {1u, 2u, 5u, 12u}) {
    const double h = 1.0 / static_cast<double>(n);
    const auto m = build_quad_mesh_from_grid(build_cartesian_grid(2, {{0.0, 1.0}, {0.0, 1.0}}, h));
    const auto cont = build_dof_map(m, q1, DofMode::Continuous);
    const auto disc = build_dof_map(m, q1, DofMode::Discontinuous);
    CHECK(cont.dof_count == (n + 1) * (n + 1));
    CHECK(disc.dof_count == 4 * n * n);

    // Discontinuous dof sets are disjoint; continuous ones share vertex dofs.
    std::set<std::size_t> seen;
    for (std::size_t c = 0; c < m.cell_count(); ++c)
      for (auto d : disc.cell(c)) CHECK(seen.insert(d).second);
    for (std::size_t c = 0; c < m.cell_count(); ++c)
      for (std::size_t k = 0; k < 4; ++k)
        CHECK(cont.cell(c)[k] == cell_corner_vertex(m, c, k));
  }
  const auto q2 = build_reference_element(Primitive::Quad, 2);
  const auto m = build_quad_mesh_from_grid(build_cartesian_grid(2, {{0.0, 1.0}, {0.0, 1.0}}, 0.5));
  CHECK_THROWS_AS(build_dof_map(m, q2, DofMode::Continuous), Error);
  CHECK(build_dof_map(m, q2, DofMode::Discontinuous).dof_count == 36);
}

TEST_CASE("mesh CSV dumps") {
  const auto m = build_quad_mesh_from_grid(build_cartesian_grid(2, {{0.0, 1.0}, {0.0, 1.0}}, 0.5));
  const auto v = mesh_vertices_csv(m);
  const auto c = mesh_cells_csv(m);
  CHECK(v.rfind("x,y\n", 0) == 0);
  CHECK(c.rfind("cell,v0,v1,v2,v3\n", 0) == 0);
  CHECK(std::count(v.begin(), v.end(), '\n') == 10);
  CHECK(std::count(c.begin(), c.end(), '\n') == 5);
}
