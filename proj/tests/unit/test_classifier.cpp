#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "fixtures.hpp"
#include "schemeforge/classifier.hpp"
#include "schemeforge/errors.hpp"

using namespace schemeforge;
using namespace schemeforge::test;

namespace {

// Cyclic Jacobi rotations; independent of the library's eigen solver.
std::vector<double> jacobi_eigenvalues(std::vector<double> a, std::size_t n) {
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) off += a[p * n + q] * a[p * n + q];
    if (off < 1e-30) break;
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a[p * n + q];
        if (std::abs(apq) < 1e-300) continue;
        const double theta = (a[q * n + q] - a[p * n + p]) / (2.0 * apq);
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = a[k * n + p];
          const double akq = a[k * n + q];
          a[k * n + p] = c * akp - s * akq;
          a[k * n + q] = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = a[p * n + k];
          const double aqk = a[q * n + k];
          a[p * n + k] = c * apk - s * aqk;
          a[q * n + k] = s * apk + c * aqk;
        }
      }
    }
  }
  std::vector<double> ev(n);
  for (std::size_t i = 0; i < n; ++i) ev[i] = a[i * n + i];
  std::sort(ev.begin(), ev.end());
  return ev;
}

CoefficientMatrix diag(std::vector<double> d) {
  const std::size_t n = d.size();
  std::vector<double> e(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) e[i * n + i] = d[i];
  std::vector<Axis> labels{Axis::T, Axis::X, Axis::Y, Axis::Z};
  labels.resize(n);
  return CoefficientMatrix(labels, e);
}

}  // namespace

TEST_CASE("coefficient matrix of the 2D Allen-Cahn operator is diag(0, -1, -1)") {
  const auto m = build_coefficient_matrix(heat_like("phi", 2), domain(2));
  REQUIRE(m.size() == 3);
  CHECK(m.axis_labels() == std::vector<Axis>{Axis::T, Axis::X, Axis::Y});
  const double expected[] = {0, 0, 0, 0, -1, 0, 0, 0, -1};
  for (std::size_t i = 0; i < 9; ++i) CHECK(m.entries()[i] == expected[i]);
}

TEST_CASE("velocity equation rho d_t u - eta lap u with eta = 1 gives diag(0, -1, -1)") {
  const auto eq = equation("u", {term(1, {Axis::T}, 1.0), term(2, {Axis::X, Axis::X}, -1.0),
                                 term(2, {Axis::Y, Axis::Y}, -1.0)});
  const auto m = build_coefficient_matrix(eq, domain(2));
  CHECK(m(0, 0) == 0.0);
  CHECK(m(1, 1) == -1.0);
  CHECK(m(2, 2) == -1.0);
}

TEST_CASE("Laplace equation has no time axis and identity coefficients") {
  const auto eq = equation("u", {term(2, {Axis::X, Axis::X}, 1.0), term(2, {Axis::Y, Axis::Y}, 1.0)});
  const auto m = build_coefficient_matrix(eq, domain(2));
  REQUIRE(m.size() == 2);
  CHECK(m.axis_labels() == std::vector<Axis>{Axis::X, Axis::Y});
  CHECK(m(0, 0) == 1.0);
  CHECK(m(0, 1) == 0.0);
  CHECK(m(1, 1) == 1.0);
  CHECK(classify_second_order(m).type == PdeType::Elliptic);
}

TEST_CASE("mixed term on (i, j) splits its value across a_ij and a_ji") {
  const auto eq = equation("u", {term(2, {Axis::X, Axis::Y}, 3.0), term(2, {Axis::X, Axis::X}, 1.0)});
  const auto m = build_coefficient_matrix(eq, domain(2));
  CHECK(m(0, 1) == 1.5);
  CHECK(m(1, 0) == 1.5);
  CHECK(m(0, 0) == 1.0);
}

TEST_CASE("first-order-only equations have no coefficient matrix") {
  CHECK_THROWS_AS(build_coefficient_matrix(transport("a", 2), domain(2)), Error);
  try {
    (void)build_coefficient_matrix(transport("a", 2), domain(2));
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NoSecondOrderTerms);
  }
}

TEST_CASE("asymmetric input beyond eps_sym is rejected") {
  CHECK_THROWS_AS(CoefficientMatrix({Axis::X, Axis::Y}, {1.0, 0.5, 0.4, 1.0}), Error);
  const CoefficientMatrix ok({Axis::X, Axis::Y}, {1.0, 0.5, 0.5 * (1 + 1e-14), 1.0});
  CHECK(ok(0, 1) == doctest::Approx(0.5));
}

TEST_CASE("sign test examples") {
  const auto parabolic = classify_second_order(diag({0, -1, -1}));
  CHECK(parabolic.type == PdeType::Parabolic);
  REQUIRE(parabolic.eigenvalues.size() == 3);
  CHECK(parabolic.eigenvalues[0] == doctest::Approx(-1.0));
  CHECK(parabolic.eigenvalues[1] == doctest::Approx(-1.0));
  CHECK(parabolic.eigenvalues[2] == doctest::Approx(0.0));

  CHECK(classify_second_order(diag({1, 1})).type == PdeType::Elliptic);
  CHECK(classify_second_order(diag({-2, -3})).type == PdeType::Elliptic);

  // Wave operator d_tt - lap: coefficient -1 on t, +1 on space after moving to the left side.
  // One negative and two positive eigenvalues, hence hyperbolic by hand.
  CHECK(classify_second_order(diag({-1, 1, 1})).type == PdeType::HyperbolicSecondOrder);

  try {
    (void)classify_second_order(diag({0, 0, 0}));
    FAIL("expected DegenerateAllZero");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::DegenerateAllZero);
  }
}

TEST_CASE("eigenvalues agree with an independent Jacobi solver") {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 2 + static_cast<std::size_t>(trial % 3);
    std::vector<double> a(n * n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i; j < n; ++j) a[i * n + j] = a[j * n + i] = u(rng);
    std::vector<Axis> labels{Axis::T, Axis::X, Axis::Y, Axis::Z};
    labels.resize(n);
    const auto got = classify_second_order(CoefficientMatrix(labels, a));
    const auto oracle = jacobi_eigenvalues(a, n);
    REQUIRE(got.eigenvalues.size() == n);
    for (std::size_t i = 0; i < n; ++i) CHECK(got.eigenvalues[i] == doctest::Approx(oracle[i]).epsilon(1e-10));

    const bool pos = oracle.back() > 1e-9;
    const bool neg = oracle.front() < -1e-9;
    if (pos && neg) CHECK(got.type == PdeType::HyperbolicSecondOrder);
    else if (std::abs(oracle.front()) > 1e-9 && std::abs(oracle.back()) > 1e-9) CHECK(got.type == PdeType::Elliptic);
  }
}

TEST_CASE("type is invariant under symmetric permutation and positive scaling") {
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::uniform_real_distribution<double> scale(1e-3, 1e3);
  const std::vector<std::vector<double>> diagonals{
      {0, -1, -1}, {0, 2, 5}, {1, 1, 1}, {-1, 1, 1}, {3, -2, 0}, {-4, -1, -0.5}};
  for (const auto& d : diagonals) {
    const std::size_t n = d.size();
    std::vector<double> a(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) a[i * n + i] = d[i];
    // Fill off-diagonals lightly so permutations move real data.
    const double off = 0.1 * u(rng);
    a[1] = a[n] = off;
    const auto base = classify_second_order(CoefficientMatrix({Axis::T, Axis::X, Axis::Y}, a));

    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    do {
      std::vector<double> b(n * n);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) b[i * n + j] = a[perm[i] * n + perm[j]];
      CHECK(classify_second_order(CoefficientMatrix({Axis::T, Axis::X, Axis::Y}, b)).type == base.type);
    } while (std::next_permutation(perm.begin(), perm.end()));

    for (int k = 0; k < 10; ++k) {
      const double c = scale(rng);
      std::vector<double> b = a;
      for (auto& v : b) v *= c;
      CHECK(classify_second_order(CoefficientMatrix({Axis::T, Axis::X, Axis::Y}, b)).type == base.type);
    }
  }
}

TEST_CASE("diag(0, -c, -c) is parabolic for every c > 0") {
  for (double c : {1e-8, 1e-3, 0.5, 1.0, 7.0, 1e4, 1e9}) {
    CAPTURE(c);
    CHECK(classify_second_order(diag({0, -c, -c})).type == PdeType::Parabolic);
  }
}

TEST_CASE("first-order path") {
  CHECK(classify_first_order(transport("alpha", 2)).type == PdeType::HyperbolicFirstOrder);
  CHECK(classify_first_order(transport("alpha", 2)).eigenvalues.empty());

  // Pressure-like constraint: gradient terms only, declared discontinuous.
  auto p = equation("p", {term(1, {Axis::X}, 1.0), term(1, {Axis::Y}, 1.0)});
  p.continuity = ContinuityExpectation::Discontinuous;
  CHECK(classify_first_order(p).type == PdeType::HyperbolicFirstOrder);

  auto source_only = equation("p", {term(0, {}, 1.0)});
  CHECK_THROWS_AS(classify_first_order(source_only), Error);
  source_only.continuity = ContinuityExpectation::Discontinuous;
  CHECK(classify_first_order(source_only).type == PdeType::HyperbolicFirstOrder);

  auto burgers = equation("u", {term(1, {Axis::T}, 1.0), term(1, {Axis::X}, 1.0, {Dependency::Solution})});
  try {
    (void)classify_first_order(burgers);
    FAIL("expected NonConstantFirstOrderCoefficients");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NonConstantFirstOrderCoefficients);
    CHECK(e.path() == "u");
  }
}

TEST_CASE("linearity examples") {
  CHECK(classify_linearity(transport("alpha", 2)) == Linearity::Linear);
  // Allen-Cahn: constant Laplacian coefficient, order-0 reaction in the solution.
  CHECK(classify_linearity(heat_like("phi", 1)) == Linearity::Semilinear);
  CHECK(classify_linearity(heat_like("T", 2, {Dependency::Position})) == Linearity::Linear);

  auto quasi = heat_like("u", 2, {Dependency::None});
  quasi.terms[1].coefficient.depends_on = {Dependency::Solution};
  CHECK(classify_linearity(quasi) == Linearity::Quasilinear);

  auto fully = heat_like("u", 2, {Dependency::HighestDerivatives});
  CHECK(classify_linearity(fully) == Linearity::FullyNonlinear);

  auto lower = heat_like("u", 1, {Dependency::None});
  lower.terms.push_back(term(1, {Axis::X}, 1.0, {Dependency::Solution}));
  CHECK(classify_linearity(lower) == Linearity::Semilinear);
}

TEST_CASE("adding solution dependence to a highest-order coefficient never moves toward linear") {
  auto rank = [](Linearity l) { return static_cast<int>(l); };
  const DependencySet rhs_options[] = {{Dependency::None}, {Dependency::Position}, {Dependency::Solution},
                                       {Dependency::HighestDerivatives}};
  for (const auto& rhs : rhs_options) {
    for (int dim = 1; dim <= 3; ++dim) {
      auto eq = heat_like("u", dim, rhs);
      for (std::size_t k = 1; k < eq.terms.size(); ++k) {
        const auto before = classify_linearity(eq);
        eq.terms[k].coefficient.depends_on.erase(Dependency::None);
        eq.terms[k].coefficient.depends_on.insert(Dependency::Solution);
        CHECK(rank(classify_linearity(eq)) >= rank(before));
      }
    }
  }
}

TEST_CASE("hardware scale") {
  const auto eight = classify_hardware({8, Architecture::Cpu, {}});
  CHECK_FALSE(eight.massively_parallel);
  CHECK(eight.reason == HardwareReason::BelowThreshold);

  const auto many = classify_hardware({128, Architecture::Cpu, {}});
  CHECK(many.massively_parallel);
  CHECK(many.reason == HardwareReason::WorkerThreshold);

  const auto gpu = classify_hardware({1, Architecture::Gpu, {}});
  CHECK(gpu.massively_parallel);
  CHECK(gpu.reason == HardwareReason::GpuArchitecture);

  CHECK(classify_hardware({49, Architecture::Cpu, {}}).reason == HardwareReason::BelowThreshold);
  CHECK(classify_hardware({50, Architecture::Cpu, {}}).reason == HardwareReason::WorkerThreshold);
  CHECK(classify_hardware({50, Architecture::Cpu, {}}, 64).reason == HardwareReason::BelowThreshold);

  for (int w = 1; w <= 200; ++w) {
    for (auto arch : {Architecture::Cpu, Architecture::Gpu}) {
      const auto h = classify_hardware({w, arch, {}});
      CHECK(h.massively_parallel == (h.reason != HardwareReason::BelowThreshold));
    }
  }
}

TEST_CASE("multiscale evaluation") {
  CHECK(evaluate_multiscale({{1e-5, 1e-7}, {}}));
  CHECK_FALSE(evaluate_multiscale({{1e-6, 1e-6}, {}}));
  CHECK_FALSE(evaluate_multiscale({{1e-5, 1e-9}, false}));
  CHECK(evaluate_multiscale({{1.0}, true}));
  CHECK_FALSE(evaluate_multiscale({{1e-5, 1.01e-7}, {}}));
  CHECK(evaluate_multiscale({{1e-5, 1.01e-7}, {}}, 50.0));
}

TEST_CASE("classify_equation chooses the path by highest order and fills linearity") {
  const auto ac = classify_equation(heat_like("phi", 2), domain(2));
  CHECK(ac.type == PdeType::Parabolic);
  CHECK(ac.linearity == Linearity::Semilinear);
  const auto adv = classify_equation(transport("alpha", 2), domain(2));
  CHECK(adv.type == PdeType::HyperbolicFirstOrder);
  CHECK(adv.linearity == Linearity::Linear);
}
