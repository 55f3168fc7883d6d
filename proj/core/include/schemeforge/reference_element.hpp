#pragma once

#include <array>
#include <cstddef>
#include <string_view>
#include <vector>

namespace schemeforge {

enum class Primitive { Interval, Quad };
enum class QuadratureRule { GaussLobattoCollocation, GaussLegendre };

std::string_view to_string(QuadratureRule rule) noexcept;

/// Gauss-Lobatto points and weights on [0,1], n >= 2.
void gauss_lobatto_01(int n, std::vector<double>& points, std::vector<double>& weights);
/// Gauss-Legendre points and weights on [0,1], n >= 1.
void gauss_legendre_01(int n, std::vector<double>& points, std::vector<double>& weights);

/// Tensor-product Lagrange element on the reference cell [0,1]^d.
///
/// Nodes and quadrature points are ordered lexicographically with x fastest.
/// For p >= 1 the nodes are the Gauss-Lobatto points; p = 0 has one node at the
/// cell centre. Under collocation the quadrature points are the nodes.
struct ReferenceElement {
  Primitive primitive = Primitive::Quad;
  int order = 1;
  QuadratureRule rule = QuadratureRule::GaussLobattoCollocation;

  std::vector<double> nodes_1d;
  std::vector<std::array<double, 2>> nodes;
  /// Monomial coefficients per basis function: basis_coeffs[i][a + (p+1) * b]
  /// multiplies x^a y^b (b = 0 on intervals).
  std::vector<std::vector<double>> basis_coeffs;

  std::vector<double> quad_points_1d;
  std::vector<double> quad_weights_1d;
  std::vector<std::array<double, 2>> quad_points;
  std::vector<double> quad_weights;
  /// basis_at_quad[q * n_basis + i] = phi_i(x_q).
  std::vector<double> basis_at_quad;
  /// grad_basis_at_quad[q * n_basis + i] = grad phi_i(x_q) (reference coords).
  std::vector<std::array<double, 2>> grad_basis_at_quad;
  /// 1D nodal derivative matrix: derivative_1d[a * (p+1) + b] = l_b'(nodes_1d[a]).
  std::vector<double> derivative_1d;

  [[nodiscard]] int dim() const noexcept { return primitive == Primitive::Interval ? 1 : 2; }
  [[nodiscard]] std::size_t n_basis() const noexcept { return nodes.size(); }
  [[nodiscard]] std::size_t n_quad() const noexcept { return quad_points.size(); }

  [[nodiscard]] double basis(std::size_t i, std::array<double, 2> x) const;
  [[nodiscard]] std::array<double, 2> grad_basis(std::size_t i, std::array<double, 2> x) const;
  /// Same value as basis() but through the stored monomial coefficients.
  [[nodiscard]] double basis_from_coeffs(std::size_t i, std::array<double, 2> x) const;

  /// Row-major reference mass matrix integral(phi_i phi_j) under this rule.
  [[nodiscard]] std::vector<double> mass_matrix() const;
  /// Row-major reference stiffness -integral(grad phi_i . grad phi_j).
  [[nodiscard]] std::vector<double> stiffness_matrix() const;

  /// 1D Lagrange polynomial b of the node set and its derivative at x.
  [[nodiscard]] double lagrange_1d(std::size_t b, double x) const;
  [[nodiscard]] double lagrange_1d_derivative(std::size_t b, double x) const;
};

/// Throws InvalidArgument for p < 0 and UnsupportedOrder for p > 8.
ReferenceElement build_reference_element(Primitive primitive, int order,
                                         QuadratureRule rule = QuadratureRule::GaussLobattoCollocation);

}  // namespace schemeforge
