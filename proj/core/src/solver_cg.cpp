#include "schemeforge/solver_cg.hpp"

#include <cmath>

#include "schemeforge/errors.hpp"

namespace schemeforge {

namespace {

std::size_t vector_bytes(const std::vector<double>& v) { return v.capacity() * sizeof(double); }

std::size_t element_bytes(const ReferenceElement& e) {
  std::size_t b = sizeof(ReferenceElement);
  b += vector_bytes(e.nodes_1d) + vector_bytes(e.quad_points_1d) + vector_bytes(e.quad_weights_1d) +
       vector_bytes(e.quad_weights) + vector_bytes(e.basis_at_quad) + vector_bytes(e.derivative_1d);
  b += (e.nodes.capacity() + e.quad_points.capacity() + e.grad_basis_at_quad.capacity()) *
       sizeof(std::array<double, 2>);
  for (const auto& c : e.basis_coeffs) b += vector_bytes(c);
  return b;
}

}  // namespace

CsrMatrix assemble_stiffness(const QuadMesh& mesh, const ReferenceElement& element,
                             const DofMap& dofmap) {
  const std::size_t nb = element.n_basis();
  std::vector<Triplet> triplets;
  triplets.reserve(mesh.cell_count() * nb * nb);
  std::vector<double> local(nb * nb);
  std::vector<std::array<double, 2>> grads(nb);

  for (std::size_t c = 0; c < mesh.cell_count(); ++c) {
    std::fill(local.begin(), local.end(), 0.0);
    for (std::size_t q = 0; q < element.n_quad(); ++q) {
      const auto jac = cell_jacobian(mesh, c, element.quad_points[q]);
      const double w = element.quad_weights[q] * jac.det;
      for (std::size_t i = 0; i < nb; ++i)
        grads[i] = jac.physical_gradient(element.grad_basis_at_quad[q * nb + i]);
      for (std::size_t i = 0; i < nb; ++i)
        for (std::size_t j = 0; j < nb; ++j)
          local[i * nb + j] -= w * (grads[i][0] * grads[j][0] + grads[i][1] * grads[j][1]);
    }
    const auto dofs = dofmap.cell(c);
    for (std::size_t i = 0; i < nb; ++i)
      for (std::size_t j = 0; j < nb; ++j) triplets.push_back({dofs[i], dofs[j], local[i * nb + j]});
  }
  return CsrMatrix::from_triplets(dofmap.dof_count, dofmap.dof_count, std::move(triplets));
}

std::vector<double> assemble_mass_diagonal(const QuadMesh& mesh, const ReferenceElement& element,
                                           const DofMap& dofmap) {
  if (element.rule != QuadratureRule::GaussLobattoCollocation)
    throw Error(ErrorCode::InvalidArgument, "diagonal mass requires collocation quadrature");
  const std::size_t nb = element.n_basis();
  std::vector<double> m(dofmap.dof_count, 0.0);
  for (std::size_t c = 0; c < mesh.cell_count(); ++c) {
    const auto dofs = dofmap.cell(c);
    // Quadrature point q coincides with node q.
    for (std::size_t q = 0; q < nb; ++q) {
      const auto jac = cell_jacobian(mesh, c, element.quad_points[q]);
      m[dofs[q]] += element.quad_weights[q] * std::abs(jac.det);
    }
  }
  return m;
}

void assemble_reaction(std::span<const double> state, const AllenCahnParams& params,
                       const QuadMesh& mesh, const ReferenceElement& element,
                       const DofMap& dofmap, std::span<double> out, AssemblyCache& cache) {
  if (state.size() != dofmap.dof_count || out.size() != dofmap.dof_count)
    throw Error(ErrorCode::SizeMismatch, "state size does not match the dof count");
  const std::size_t nb = element.n_basis();
  cache.coeffs.resize(nb);
  cache.local.resize(nb);
  std::fill(out.begin(), out.end(), 0.0);

  for (std::size_t c = 0; c < mesh.cell_count(); ++c) {
    const auto dofs = dofmap.cell(c);
    for (std::size_t i = 0; i < nb; ++i) {
      cache.coeffs[i] = state[dofs[i]];
      cache.local[i] = 0.0;
    }
    for (std::size_t q = 0; q < element.n_quad(); ++q) {
      const double* phi = element.basis_at_quad.data() + q * nb;
      const auto jac = cell_jacobian(mesh, c, element.quad_points[q]);
      double uq = 0.0;
      for (std::size_t i = 0; i < nb; ++i) uq += phi[i] * cache.coeffs[i];
      const double fw = ac_reaction(uq, params) * element.quad_weights[q] * jac.det;
      for (std::size_t i = 0; i < nb; ++i) cache.local[i] += phi[i] * fw;
    }
    for (std::size_t i = 0; i < nb; ++i) out[dofs[i]] += cache.local[i];
  }
}

std::vector<double> assemble_reaction(std::span<const double> state, const AllenCahnParams& params,
                                      const QuadMesh& mesh, const ReferenceElement& element,
                                      const DofMap& dofmap) {
  std::vector<double> out(dofmap.dof_count);
  AssemblyCache cache;
  assemble_reaction(state, params, mesh, element, dofmap, out, cache);
  return out;
}

CgSystem::CgSystem(const CartesianGrid& grid, AllenCahnParams params)
    : params_(params),
      mesh_(build_quad_mesh_from_grid(grid)),
      element_(build_reference_element(grid.dim == 1 ? Primitive::Interval : Primitive::Quad, 1,
                                       QuadratureRule::GaussLobattoCollocation)),
      dofmap_(build_dof_map(mesh_, element_, DofMode::Continuous)),
      stiffness_(assemble_stiffness(mesh_, element_, dofmap_)),
      mass_(assemble_mass_diagonal(mesh_, element_, dofmap_)),
      mass_inv_(mass_.size()),
      load_(dofmap_.dof_count, 0.0),
      state_(dofmap_.dof_count, 0.0) {
  params_.validate();
  for (std::size_t i = 0; i < mass_.size(); ++i) {
    if (!(mass_[i] > 0.0)) throw Error(ErrorCode::InvalidArgument, "non-positive mass entry");
    mass_inv_[i] = 1.0 / mass_[i];
  }
  cache_.coeffs.resize(element_.n_basis());
  cache_.local.resize(element_.n_basis());
}

void CgSystem::rhs(std::span<const double> u, double, std::span<double> du) const {
  if (du.size() != dofmap_.dof_count)
    throw Error(ErrorCode::SizeMismatch, "output size does not match the dof count");
  stiffness_.multiply(u, du);
  assemble_reaction(u, params_, mesh_, element_, dofmap_, load_, cache_);
  const double mob = params_.mobility;
  for (std::size_t i = 0; i < du.size(); ++i) du[i] = mob * mass_inv_[i] * (du[i] - load_[i]);
}

std::size_t CgSystem::owned_bytes() const noexcept {
  return sizeof(CgSystem) + mesh_.owned_bytes() - sizeof(QuadMesh) + element_bytes(element_) -
         sizeof(ReferenceElement) + dofmap_.owned_bytes() + stiffness_.owned_bytes() +
         vector_bytes(mass_) + vector_bytes(mass_inv_) + vector_bytes(load_) +
         vector_bytes(cache_.coeffs) + vector_bytes(cache_.local) + vector_bytes(state_);
}

std::vector<double> cg_semidiscrete_rhs(const CgSystem& system, double t) {
  std::vector<double> du(system.state().size());
  system.rhs(system.state(), t, du);
  return du;
}

}  // namespace schemeforge
