#include "schemeforge/reference_element.hpp"

#include <cmath>
#include <numbers>

#include "schemeforge/errors.hpp"

namespace schemeforge {

namespace {

// Legendre P_n and P_{n-1} at x by the three-term recurrence.
std::pair<double, double> legendre_pair(int n, double x) {
  double p_prev = 1.0;
  double p = x;
  if (n == 0) return {1.0, 0.0};
  for (int k = 2; k <= n; ++k) {
    const double next = ((2.0 * k - 1.0) * x * p - (k - 1.0) * p_prev) / k;
    p_prev = p;
    p = next;
  }
  return {p, p_prev};
}

void to_unit_interval(std::vector<double>& points, std::vector<double>& weights) {
  for (auto& x : points) x = 0.5 * (x + 1.0);
  for (auto& w : weights) w *= 0.5;
}

}  // namespace

std::string_view to_string(QuadratureRule rule) noexcept {
  switch (rule) {
    case QuadratureRule::GaussLobattoCollocation: return "gauss_lobatto_collocation";
    case QuadratureRule::GaussLegendre: return "gauss_legendre";
  }
  return "?";
}

void gauss_lobatto_01(int n, std::vector<double>& points, std::vector<double>& weights) {
  if (n < 2) throw Error(ErrorCode::InvalidArgument, "Gauss-Lobatto needs at least two points");
  const int N = n - 1;
  points.assign(static_cast<std::size_t>(n), 0.0);
  weights.assign(static_cast<std::size_t>(n), 0.0);
  for (int k = 0; k < n; ++k) {
    // Chebyshev-Gauss-Lobatto start, Newton on (1 - x^2) P_N'(x).
    double x = -std::cos(std::numbers::pi * k / N);
    if (k > 0 && k < N) {
      for (int it = 0; it < 100; ++it) {
        const auto [p, pm] = legendre_pair(N, x);
        const double dx = (x * p - pm) / (n * p);
        x -= dx;
        if (std::abs(dx) < 1e-16) break;
      }
    }
    const auto [p, pm] = legendre_pair(N, x);
    (void)pm;
    points[static_cast<std::size_t>(k)] = x;
    weights[static_cast<std::size_t>(k)] = 2.0 / (N * n * p * p);
  }
  to_unit_interval(points, weights);
}

void gauss_legendre_01(int n, std::vector<double>& points, std::vector<double>& weights) {
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "Gauss-Legendre needs at least one point");
  points.assign(static_cast<std::size_t>(n), 0.0);
  weights.assign(static_cast<std::size_t>(n), 0.0);
  for (int k = 0; k < n; ++k) {
    double x = -std::cos(std::numbers::pi * (k + 0.75) / (n + 0.5));
    double dp = 1.0;
    for (int it = 0; it < 100; ++it) {
      const auto [p, pm] = legendre_pair(n, x);
      dp = n * (x * p - pm) / (x * x - 1.0);
      const double dx = p / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    const auto [p, pm] = legendre_pair(n, x);
    dp = n * (x * p - pm) / (x * x - 1.0);
    points[static_cast<std::size_t>(k)] = x;
    weights[static_cast<std::size_t>(k)] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
  to_unit_interval(points, weights);
}

double ReferenceElement::lagrange_1d(std::size_t b, double x) const {
  double v = 1.0;
  for (std::size_t k = 0; k < nodes_1d.size(); ++k) {
    if (k != b) v *= (x - nodes_1d[k]) / (nodes_1d[b] - nodes_1d[k]);
  }
  return v;
}

double ReferenceElement::lagrange_1d_derivative(std::size_t b, double x) const {
  double sum = 0.0;
  for (std::size_t m = 0; m < nodes_1d.size(); ++m) {
    if (m == b) continue;
    double term = 1.0 / (nodes_1d[b] - nodes_1d[m]);
    for (std::size_t k = 0; k < nodes_1d.size(); ++k) {
      if (k != b && k != m) term *= (x - nodes_1d[k]) / (nodes_1d[b] - nodes_1d[k]);
    }
    sum += term;
  }
  return sum;
}

double ReferenceElement::basis(std::size_t i, std::array<double, 2> x) const {
  const std::size_t n1 = nodes_1d.size();
  if (dim() == 1) return lagrange_1d(i, x[0]);
  return lagrange_1d(i % n1, x[0]) * lagrange_1d(i / n1, x[1]);
}

std::array<double, 2> ReferenceElement::grad_basis(std::size_t i, std::array<double, 2> x) const {
  const std::size_t n1 = nodes_1d.size();
  if (dim() == 1) return {lagrange_1d_derivative(i, x[0]), 0.0};
  const std::size_t a = i % n1;
  const std::size_t b = i / n1;
  return {lagrange_1d_derivative(a, x[0]) * lagrange_1d(b, x[1]),
          lagrange_1d(a, x[0]) * lagrange_1d_derivative(b, x[1])};
}

double ReferenceElement::basis_from_coeffs(std::size_t i, std::array<double, 2> x) const {
  const std::size_t n1 = nodes_1d.size();
  const auto& c = basis_coeffs.at(i);
  double v = 0.0;
  double yb = 1.0;
  for (std::size_t b = 0; b < (dim() == 1 ? 1 : n1); ++b) {
    double xa = 1.0;
    for (std::size_t a = 0; a < n1; ++a) {
      v += c[a + n1 * b] * xa * yb;
      xa *= x[0];
    }
    yb *= x[1];
  }
  return v;
}

std::vector<double> ReferenceElement::mass_matrix() const {
  const std::size_t nb = n_basis();
  std::vector<double> m(nb * nb, 0.0);
  for (std::size_t q = 0; q < n_quad(); ++q) {
    for (std::size_t i = 0; i < nb; ++i) {
      for (std::size_t j = 0; j < nb; ++j) {
        m[i * nb + j] += quad_weights[q] * basis_at_quad[q * nb + i] * basis_at_quad[q * nb + j];
      }
    }
  }
  return m;
}

std::vector<double> ReferenceElement::stiffness_matrix() const {
  const std::size_t nb = n_basis();
  std::vector<double> k(nb * nb, 0.0);
  for (std::size_t q = 0; q < n_quad(); ++q) {
    for (std::size_t i = 0; i < nb; ++i) {
      const auto& gi = grad_basis_at_quad[q * nb + i];
      for (std::size_t j = 0; j < nb; ++j) {
        const auto& gj = grad_basis_at_quad[q * nb + j];
        k[i * nb + j] -= quad_weights[q] * (gi[0] * gj[0] + gi[1] * gj[1]);
      }
    }
  }
  return k;
}

ReferenceElement build_reference_element(Primitive primitive, int order, QuadratureRule rule) {
  if (order < 0) throw Error(ErrorCode::InvalidArgument, "polynomial order must be >= 0");
  if (order > 8) throw Error(ErrorCode::UnsupportedOrder, "polynomial order above 8 is not supported");

  ReferenceElement e;
  e.primitive = primitive;
  e.order = order;
  e.rule = rule;
  const int d = e.dim();
  const std::size_t n1 = static_cast<std::size_t>(order) + 1;

  std::vector<double> unused;
  if (order == 0) {
    e.nodes_1d = {0.5};
  } else {
    gauss_lobatto_01(order + 1, e.nodes_1d, unused);
  }

  if (rule == QuadratureRule::GaussLobattoCollocation) {
    e.quad_points_1d = e.nodes_1d;
    if (order == 0) {
      e.quad_weights_1d = {1.0};
    } else {
      gauss_lobatto_01(order + 1, unused, e.quad_weights_1d);
    }
  } else {
    gauss_legendre_01(order + 1, e.quad_points_1d, e.quad_weights_1d);
  }

  const std::size_t nq1 = e.quad_points_1d.size();
  for (std::size_t b = 0; b < (d == 1 ? 1 : n1); ++b) {
    for (std::size_t a = 0; a < n1; ++a) {
      e.nodes.push_back({e.nodes_1d[a], d == 1 ? 0.0 : e.nodes_1d[b]});
    }
  }
  for (std::size_t b = 0; b < (d == 1 ? 1 : nq1); ++b) {
    for (std::size_t a = 0; a < nq1; ++a) {
      e.quad_points.push_back({e.quad_points_1d[a], d == 1 ? 0.0 : e.quad_points_1d[b]});
      e.quad_weights.push_back(e.quad_weights_1d[a] * (d == 1 ? 1.0 : e.quad_weights_1d[b]));
    }
  }

  // Monomial expansion of each 1D Lagrange polynomial, then tensor products.
  std::vector<std::vector<double>> coeffs_1d(n1, std::vector<double>(n1, 0.0));
  for (std::size_t b = 0; b < n1; ++b) {
    std::vector<double> poly{1.0};
    for (std::size_t k = 0; k < n1; ++k) {
      if (k == b) continue;
      const double s = 1.0 / (e.nodes_1d[b] - e.nodes_1d[k]);
      std::vector<double> next(poly.size() + 1, 0.0);
      for (std::size_t m = 0; m < poly.size(); ++m) {
        next[m + 1] += poly[m] * s;
        next[m] -= poly[m] * e.nodes_1d[k] * s;
      }
      poly = std::move(next);
    }
    for (std::size_t m = 0; m < poly.size(); ++m) coeffs_1d[b][m] = poly[m];
  }
  for (std::size_t i = 0; i < e.n_basis(); ++i) {
    std::vector<double> c(d == 1 ? n1 : n1 * n1, 0.0);
    if (d == 1) {
      c = coeffs_1d[i];
    } else {
      const auto& cx = coeffs_1d[i % n1];
      const auto& cy = coeffs_1d[i / n1];
      for (std::size_t b = 0; b < n1; ++b)
        for (std::size_t a = 0; a < n1; ++a) c[a + n1 * b] = cx[a] * cy[b];
    }
    e.basis_coeffs.push_back(std::move(c));
  }

  const std::size_t nb = e.n_basis();
  e.basis_at_quad.resize(e.n_quad() * nb);
  e.grad_basis_at_quad.resize(e.n_quad() * nb);
  for (std::size_t q = 0; q < e.n_quad(); ++q) {
    for (std::size_t i = 0; i < nb; ++i) {
      e.basis_at_quad[q * nb + i] = e.basis(i, e.quad_points[q]);
      e.grad_basis_at_quad[q * nb + i] = order == 0 ? std::array<double, 2>{0.0, 0.0}
                                                    : e.grad_basis(i, e.quad_points[q]);
    }
  }

  e.derivative_1d.assign(n1 * n1, 0.0);
  if (order > 0) {
    for (std::size_t a = 0; a < n1; ++a)
      for (std::size_t b = 0; b < n1; ++b)
        e.derivative_1d[a * n1 + b] = e.lagrange_1d_derivative(b, e.nodes_1d[a]);
  }
  return e;
}

}  // namespace schemeforge
