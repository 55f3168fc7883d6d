#pragma once

#include <span>
#include <vector>

#include "schemeforge/allen_cahn.hpp"
#include "schemeforge/mesh.hpp"
#include "schemeforge/reference_element.hpp"
#include "schemeforge/sparse.hpp"

namespace schemeforge {

/// K_ij = -sum_cells integral(grad phi_i . grad phi_j), Jacobian-mapped per
/// quadrature point. Throws SingularJacobian.
CsrMatrix assemble_stiffness(const QuadMesh& mesh, const ReferenceElement& element,
                             const DofMap& dofmap);

/// Collocated (diagonal) mass: sum_cells w_q |det J| at each node. Requires a
/// collocation element; throws InvalidArgument otherwise.
std::vector<double> assemble_mass_diagonal(const QuadMesh& mesh, const ReferenceElement& element,
                                           const DofMap& dofmap);

/// Per-call scratch for cell-wise reaction assembly.
struct AssemblyCache {
  std::vector<double> coeffs;  ///< gathered local state
  std::vector<double> local;   ///< local load vector
};

/// F_i = integral(phi_i f(phi_h)) by the element's quadrature. Evaluates the
/// cell Jacobian on every call. Throws SizeMismatch.
void assemble_reaction(std::span<const double> state, const AllenCahnParams& params,
                       const QuadMesh& mesh, const ReferenceElement& element,
                       const DofMap& dofmap, std::span<double> out, AssemblyCache& cache);
std::vector<double> assemble_reaction(std::span<const double> state, const AllenCahnParams& params,
                                      const QuadMesh& mesh, const ReferenceElement& element,
                                      const DofMap& dofmap);

/// Q1 collocation Allen-Cahn system on a structured quad mesh.
///
/// rhs() reuses internal buffers, so one CgSystem must not be evaluated from
/// two threads at once.
class CgSystem {
 public:
  CgSystem(const CartesianGrid& grid, AllenCahnParams params);

  [[nodiscard]] const QuadMesh& mesh() const noexcept { return mesh_; }
  [[nodiscard]] const ReferenceElement& element() const noexcept { return element_; }
  [[nodiscard]] const DofMap& dofmap() const noexcept { return dofmap_; }
  [[nodiscard]] const CsrMatrix& stiffness() const noexcept { return stiffness_; }
  [[nodiscard]] const std::vector<double>& mass() const noexcept { return mass_; }
  [[nodiscard]] const AllenCahnParams& params() const noexcept { return params_; }
  [[nodiscard]] std::vector<double>& state() noexcept { return state_; }
  [[nodiscard]] const std::vector<double>& state() const noexcept { return state_; }

  /// du = M * mass^{-1} (K u - F(u)); F reassembled on every call.
  void rhs(std::span<const double> u, double t, std::span<double> du) const;

  [[nodiscard]] std::size_t owned_bytes() const noexcept;

 private:
  AllenCahnParams params_;
  QuadMesh mesh_;
  ReferenceElement element_;
  DofMap dofmap_;
  CsrMatrix stiffness_;
  std::vector<double> mass_;
  std::vector<double> mass_inv_;
  mutable std::vector<double> load_;
  mutable AssemblyCache cache_;
  std::vector<double> state_;
};

std::vector<double> cg_semidiscrete_rhs(const CgSystem& system, double t);

}  // namespace schemeforge
