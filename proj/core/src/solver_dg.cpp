#include "schemeforge/solver_dg.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "schemeforge/errors.hpp"
#include "schemeforge/parallel.hpp"

namespace schemeforge {

void AdvectionParams::validate() const {
  if (!std::isfinite(velocity[0]) || !std::isfinite(velocity[1]))
    throw Error(ErrorCode::InvalidArgument, "velocity must be finite", "velocity");
  for (const auto& e : extents)
    if (!(e[1] > e[0])) throw Error(ErrorCode::InvalidArgument, "empty extent", "extents");
  if (!(end_time > 0.0) || !std::isfinite(end_time))
    throw Error(ErrorCode::InvalidArgument, "end time must be positive", "end_time");
}

double max_stable_dt(int p, double h, std::array<double, 2> u, double safety) {
  if (!(safety > 0.0 && safety <= 1.0))
    throw Error(ErrorCode::InvalidArgument, "safety factor must lie in (0, 1]", "safety");
  if (p < 0) throw Error(ErrorCode::InvalidArgument, "order must be >= 0", "p");
  if (!(h > 0.0)) throw Error(ErrorCode::InvalidArgument, "h must be positive", "h");
  const double speed = std::abs(u[0]) + std::abs(u[1]);
  if (!(speed > 0.0)) throw Error(ErrorCode::InvalidArgument, "velocity must be non-zero", "velocity");
  return safety * h / (speed * (2.0 * p + 1.0));
}

DgSystem::DgSystem(std::size_t cells_per_axis, int order, AdvectionParams params)
    : params_(params) {
  params_.validate();
  if (cells_per_axis == 0) throw Error(ErrorCode::InvalidArgument, "need at least one cell");
  const auto& ex = params_.extents;
  h_ = (ex[0][1] - ex[0][0]) / static_cast<double>(cells_per_axis);
  const auto grid = build_cartesian_grid(2, {ex[0], ex[1]}, h_);
  if (grid.n[0] != grid.n[1])
    throw Error(ErrorCode::NonDivisibleExtent, "DG mesh requires equal cell counts per axis");
  mesh_ = build_quad_mesh_from_grid(grid);
  element_ = build_reference_element(Primitive::Quad, order, QuadratureRule::GaussLobattoCollocation);
  dofmap_ = build_dof_map(mesh_, element_, DofMode::Discontinuous);

  // Periodic pairing: right/top facets own, left/bottom images are dropped.
  const std::size_t ncx = mesh_.shape[0];
  std::vector<Facet> paired;
  paired.reserve(2 * mesh_.cell_count());
  for (auto f : mesh_.facets) {
    if (f.tag == BoundaryTag::Left || f.tag == BoundaryTag::Bottom) continue;
    if (f.tag == BoundaryTag::Right) {
      f.neighbor = f.owner - (ncx - 1);
      f.neighbor_face = 3;
    } else if (f.tag == BoundaryTag::Top) {
      f.neighbor = f.owner % ncx;
      f.neighbor_face = 0;
    }
    paired.push_back(f);
  }
  mesh_.facets = std::move(paired);
  // Largest normal speed over the facets; max(|ux|, |uy|) on an axis-aligned mesh.
  c_ = 0.0;
  for (const auto& f : mesh_.facets)
    c_ = std::max(c_, std::abs(params_.velocity[0] * f.normal[0] + params_.velocity[1] * f.normal[1]));
  face_sign_.assign(mesh_.cell_count(), {0.0, 0.0, 0.0, 0.0});
  for (std::size_t id = 0; id < mesh_.facets.size(); ++id) {
    const auto& f = mesh_.facets[id];
    mesh_.cell_facets[f.owner][static_cast<std::size_t>(f.owner_face)] = id;
    face_sign_[f.owner][static_cast<std::size_t>(f.owner_face)] = 1.0;
    mesh_.cell_facets[*f.neighbor][static_cast<std::size_t>(f.neighbor_face)] = id;
    face_sign_[*f.neighbor][static_cast<std::size_t>(f.neighbor_face)] = -1.0;
  }

  const std::size_t n1 = static_cast<std::size_t>(order) + 1;
  const std::size_t p = n1 - 1;
  face_nodes_.assign(4, {});
  for (std::size_t k = 0; k < n1; ++k) {
    face_nodes_[0].push_back(k);           // bottom: (k, 0)
    face_nodes_[1].push_back(p + n1 * k);  // right:  (p, k)
    face_nodes_[2].push_back(k + n1 * p);  // top:    (k, p)
    face_nodes_[3].push_back(n1 * k);      // left:   (0, k)
  }

  // Uniform mesh: one geometry serves every cell.
  const auto jac = cell_jacobian(mesh_, 0, {0.5, 0.5});
  const std::size_t nb = element_.n_basis();
  mass_.resize(dofmap_.dof_count);
  for (std::size_t c = 0; c < mesh_.cell_count(); ++c)
    for (std::size_t i = 0; i < nb; ++i) mass_[c * nb + i] = element_.quad_weights[i] * jac.det;

  lift_.resize(4 * n1);
  for (std::size_t f = 0; f < 4; ++f)
    for (std::size_t k = 0; k < n1; ++k)
      lift_[f * n1 + k] = element_.quad_weights_1d[k] * h_ /
                          (element_.quad_weights[face_nodes_[f][k]] * jac.det);

  volume_1d_.assign(n1 * n1, 0.0);
  for (std::size_t a = 0; a < n1; ++a)
    for (std::size_t q = 0; q < n1; ++q)
      volume_1d_[a * n1 + q] = element_.quad_weights_1d[q] / element_.quad_weights_1d[a] *
                               element_.derivative_1d[q * n1 + a];

  facet_flux_.assign(mesh_.facets.size() * n1, 0.0);
  state_.assign(dofmap_.dof_count, 0.0);
}

std::vector<std::array<double, 2>> DgSystem::node_coordinates() const {
  std::vector<std::array<double, 2>> xy(dofmap_.dof_count);
  const std::size_t nb = element_.n_basis();
  for (std::size_t c = 0; c < mesh_.cell_count(); ++c)
    for (std::size_t i = 0; i < nb; ++i)
      xy[c * nb + i] = map_to_physical(mesh_, c, element_.nodes[i]);
  return xy;
}

void DgSystem::rhs(std::span<const double> u, double, std::span<double> du) const {
  if (u.size() != dofmap_.dof_count || du.size() != dofmap_.dof_count)
    throw Error(ErrorCode::SizeMismatch, "state size does not match the dof count");
  const std::size_t nb = element_.n_basis();
  const std::size_t n1 = static_cast<std::size_t>(element_.order) + 1;
  const auto vel = params_.velocity;
  const double c = c_;

  // Phase 1: one flux value per facet node.
  parallel_for(0, mesh_.facets.size(), [&](std::size_t id) {
    const auto& f = mesh_.facets[id];
    const double* up = u.data() + f.owner * nb;
    const double* um = u.data() + *f.neighbor * nb;
    const auto& np = face_nodes_[static_cast<std::size_t>(f.owner_face)];
    const auto& nm = face_nodes_[static_cast<std::size_t>(f.neighbor_face)];
    for (std::size_t k = 0; k < n1; ++k)
      facet_flux_[id * n1 + k] = lax_friedrichs_flux(up[np[k]], um[nm[k]], vel, f.normal, c);
  });

  // Phase 2: volume term and facet gather, cell-local writes only.
  const double sx = vel[0] / h_;
  const double sy = vel[1] / h_;
  const double* g = volume_1d_.data();
  parallel_for(0, mesh_.cell_count(), [&](std::size_t cell) {
    const double* a = u.data() + cell * nb;
    double* d = du.data() + cell * nb;
    if (element_.order == 0) {
      d[0] = 0.0;
    } else {
      for (std::size_t j = 0; j < n1; ++j) {
        for (std::size_t i = 0; i < n1; ++i) {
          double ax = 0.0;
          double ay = 0.0;
          for (std::size_t q = 0; q < n1; ++q) {
            ax += g[i * n1 + q] * a[q + n1 * j];
            ay += g[j * n1 + q] * a[i + n1 * q];
          }
          d[i + n1 * j] = sx * ax + sy * ay;
        }
      }
    }
    for (std::size_t lf = 0; lf < 4; ++lf) {
      const double* flux = facet_flux_.data() + mesh_.cell_facets[cell][lf] * n1;
      const double s = face_sign_[cell][lf];
      const auto& nodes = face_nodes_[lf];
      const double* lift = lift_.data() + lf * n1;
      for (std::size_t k = 0; k < n1; ++k) d[nodes[k]] -= s * lift[k] * flux[k];
    }
  });
}

FacetTrace DgSystem::facet_trace(std::span<const double> u, std::size_t facet) const {
  const auto& f = mesh_.facets.at(facet);
  const std::size_t nb = element_.n_basis();
  FacetTrace t;
  t.facet = facet;
  t.normal_owner = f.normal;
  t.normal_neighbor = {-f.normal[0], -f.normal[1]};
  for (auto i : face_nodes_[static_cast<std::size_t>(f.owner_face)])
    t.owner_values.push_back(u[f.owner * nb + i]);
  for (auto i : face_nodes_[static_cast<std::size_t>(f.neighbor_face)])
    t.neighbor_values.push_back(u[*f.neighbor * nb + i]);
  return t;
}

std::size_t DgSystem::owned_bytes() const noexcept {
  auto vb = [](const auto& v) { return v.capacity() * sizeof(v[0]); };
  std::size_t b = sizeof(DgSystem) + mesh_.owned_bytes() - sizeof(QuadMesh) + dofmap_.owned_bytes();
  for (const auto& fn : face_nodes_) b += vb(fn);
  b += vb(lift_) + vb(volume_1d_) + vb(mass_) + vb(face_sign_) + vb(facet_flux_) + vb(state_);
  return b;
}

std::vector<double> project_initial_condition(const std::function<double(double, double)>& ic,
                                              const DgSystem& system, int subsamples) {
  const auto& mesh = system.mesh();
  const auto& e = system.element();
  const std::size_t nb = e.n_basis();
  std::vector<double> out(system.dof_count());
  if (system.order() > 0) {
    const auto xy = system.node_coordinates();
    for (std::size_t i = 0; i < xy.size(); ++i) out[i] = ic(xy[i][0], xy[i][1]);
    return out;
  }
  if (subsamples < 1) throw Error(ErrorCode::InvalidArgument, "subsamples must be >= 1");
  const double m = subsamples;
  for (std::size_t c = 0; c < mesh.cell_count(); ++c) {
    double sum = 0.0;
    for (int sj = 0; sj < subsamples; ++sj) {
      for (int si = 0; si < subsamples; ++si) {
        const auto x = map_to_physical(mesh, c, {(si + 0.5) / m, (sj + 0.5) / m});
        sum += ic(x[0], x[1]);
      }
    }
    out[c * nb] = sum / (m * m);
  }
  return out;
}

double total_mass(const DgSystem& system, std::span<const double> state) {
  if (state.size() != system.dof_count())
    throw Error(ErrorCode::SizeMismatch, "state size does not match the dof count");
  double s = 0.0;
  for (std::size_t i = 0; i < state.size(); ++i) s += system.mass()[i] * state[i];
  return s;
}

double dg_l2_error(const DgSystem& system, std::span<const double> state,
                   const std::function<double(double, double)>& reference, int subsamples) {
  if (state.size() != system.dof_count())
    throw Error(ErrorCode::SizeMismatch, "state size does not match the dof count");
  if (subsamples < 1) throw Error(ErrorCode::InvalidArgument, "subsamples must be >= 1");
  const auto& mesh = system.mesh();
  const auto& e = system.element();
  const std::size_t nb = e.n_basis();
  const double m = subsamples;

  std::vector<std::array<double, 2>> pts;
  for (int sj = 0; sj < subsamples; ++sj)
    for (int si = 0; si < subsamples; ++si) pts.push_back({(si + 0.5) / m, (sj + 0.5) / m});
  std::vector<double> table(pts.size() * nb);
  for (std::size_t s = 0; s < pts.size(); ++s)
    for (std::size_t i = 0; i < nb; ++i) table[s * nb + i] = e.basis(i, pts[s]);

  double sum = 0.0;
  for (std::size_t c = 0; c < mesh.cell_count(); ++c) {
    const double w = mesh.cell_measure(c) / (m * m);
    for (std::size_t s = 0; s < pts.size(); ++s) {
      double v = 0.0;
      for (std::size_t i = 0; i < nb; ++i) v += table[s * nb + i] * state[c * nb + i];
      const auto x = map_to_physical(mesh, c, pts[s]);
      const double diff = v - reference(x[0], x[1]);
      sum += w * diff * diff;
    }
  }
  return std::sqrt(sum);
}

std::vector<double> dg_vertex_values(const DgSystem& system, std::span<const double> state) {
  const auto& mesh = system.mesh();
  const std::size_t nb = system.element().n_basis();
  const std::size_t p = static_cast<std::size_t>(system.order());
  const std::size_t n1 = p + 1;
  const std::array<std::size_t, 4> corner_node{0, p, n1 * p, p + n1 * p};
  std::vector<double> sum(mesh.vertices.size(), 0.0);
  std::vector<int> count(mesh.vertices.size(), 0);
  for (std::size_t c = 0; c < mesh.cell_count(); ++c) {
    for (std::size_t k = 0; k < 4; ++k) {
      const auto v = cell_corner_vertex(mesh, c, k);
      sum[v] += state[c * nb + corner_node[k]];
      ++count[v];
    }
  }
  for (std::size_t v = 0; v < sum.size(); ++v) sum[v] /= std::max(count[v], 1);
  return sum;
}

std::string dg_snapshot_csv(const DgSystem& system, std::span<const double> state) {
  std::ostringstream os;
  os.precision(17);
  os << "x,y,value\n";
  const auto xy = system.node_coordinates();
  for (std::size_t i = 0; i < xy.size(); ++i)
    os << xy[i][0] << ',' << xy[i][1] << ',' << state[i] << '\n';
  return os.str();
}

std::vector<double> dg_semidiscrete_rhs(const DgSystem& system, double t) {
  std::vector<double> du(system.dof_count());
  system.rhs(system.state(), t, du);
  return du;
}

}  // namespace schemeforge
