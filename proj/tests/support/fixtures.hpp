#pragma once

#include <filesystem>
#include <initializer_list>
#include <string>
#include <vector>

#include "schemeforge/problem_spec.hpp"

namespace schemeforge::test {

inline std::filesystem::path data_dir() { return SCHEMEFORGE_TEST_DATA_DIR; }
inline std::filesystem::path spec_path(const std::string& name) {
  return data_dir() / "specs" / (name + ".json");
}

inline OperatorTerm term(int order, std::vector<Axis> axes, double value,
                         DependencySet deps = {Dependency::None}) {
  OperatorTerm t;
  t.derivative_order = order;
  t.axes = std::move(axes);
  t.coefficient.value = value;
  t.coefficient.depends_on = std::move(deps);
  return t;
}

inline FieldEquation equation(std::string field, std::vector<OperatorTerm> terms,
                              DependencySet rhs = {Dependency::None}) {
  FieldEquation e;
  e.field = std::move(field);
  e.terms = std::move(terms);
  e.rhs_depends_on = std::move(rhs);
  return e;
}

inline DomainSpec domain(int dim, Geometry geometry = Geometry::CartesianRegular) {
  DomainSpec d;
  d.dim = dim;
  d.extents.assign(static_cast<std::size_t>(dim), {0.0, 1.0});
  d.geometry = geometry;
  return d;
}

/// Single governed scalar field `u` on a unit box.
inline ProblemSpec single_field_spec(FieldEquation eq, DomainSpec dom, int workers = 8) {
  ProblemSpec s;
  s.name = "synthetic";
  s.fields.push_back({eq.field, TensorRank::Scalar, true, std::nullopt});
  s.equations.push_back(std::move(eq));
  s.domain = std::move(dom);
  s.hardware.worker_count = workers;
  s.scales.multiscale_override = false;
  return s;
}

/// d_t u - lap u with the rhs depending on u.
inline FieldEquation heat_like(const std::string& field, int dim,
                               DependencySet rhs = {Dependency::Solution}) {
  std::vector<OperatorTerm> terms{term(1, {Axis::T}, 1.0)};
  const Axis axes[] = {Axis::X, Axis::Y, Axis::Z};
  for (int a = 0; a < dim; ++a) terms.push_back(term(2, {axes[a], axes[a]}, -1.0));
  return equation(field, std::move(terms), std::move(rhs));
}

/// d_t u + grad u with constant unit coefficients.
inline FieldEquation transport(const std::string& field, int dim,
                               DependencySet rhs = {Dependency::None}) {
  std::vector<OperatorTerm> terms{term(1, {Axis::T}, 1.0)};
  const Axis axes[] = {Axis::X, Axis::Y, Axis::Z};
  for (int a = 0; a < dim; ++a) terms.push_back(term(1, {axes[a]}, 1.0));
  return equation(field, std::move(terms), std::move(rhs));
}

}  // namespace schemeforge::test
