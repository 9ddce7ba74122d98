#pragma once

#include "vmdg/fields.hpp"
#include "vmdg/mesh.hpp"
#include "vmdg/quadrature.hpp"

#include <span>
#include <vector>

namespace vmdg {

enum class VlasovFlux { upwind, central, downwind };

// Nodal tensor of f at the Gauss points of every (x2, v1, v2) cell.
// Layout: index(ix, lx, j1, m1, j2, m2) with m2 fastest, so the whole
// velocity slab at one x node is contiguous.
struct DistributionField {
  int nx = 0, nv1 = 0, nv2 = 0, np = 0;
  std::vector<double> values;

  int vdim() const { return nv1 * np * nv2 * np; }
  int xdim() const { return nx * np; }
  size_t size() const { return values.size(); }

  int voffset(int j1, int m1, int j2, int m2) const {
    return ((j1 * np + m1) * nv2 + j2) * np + m2;
  }
  int index(int ix, int lx, int j1, int m1, int j2, int m2) const {
    return (ix * np + lx) * vdim() + voffset(j1, m1, j2, m2);
  }
  std::span<double> x_node_slab(int xn) { return {values.data() + size_t(xn) * vdim(), size_t(vdim())}; }
  std::span<const double> x_node_slab(int xn) const {
    return {values.data() + size_t(xn) * vdim(), size_t(vdim())};
  }
};

DistributionField make_distribution(const Mesh1D2V& mesh);

// Velocity-space advection coefficient, affine in (v1, v2). Covers the
// 1D2V force fields: E1 + v2 B3 in the v1 direction and E2 - v1 B3 in v2.
struct LinearVCoeff {
  double c0 = 0.0;
  double c_v1 = 0.0;
  double c_v2 = 0.0;
  double operator()(double v1, double v2) const { return c0 + c_v1 * v1 + c_v2 * v2; }
};

// df/dt from transport in x2 at constant speed, for one slice f(x2) stored as
// nx * (k+1) nodal values. Periodic traces.
void transport_x_rhs(const Mesh1D2V& mesh, const NodalBasis1D& basis,
                     std::span<const double> slice, double speed, VlasovFlux flux,
                     std::span<double> out);

// df/dt from transport in (v1, v2) for one velocity slab (vdim values) with
// coefficient fields a1, a2. Zero exterior state at the velocity-box
// boundary; upwinding evaluates sign(a . n) pointwise at each interface
// quadrature node.
void transport_v_rhs(const Mesh1D2V& mesh, const NodalBasis1D& basis,
                     std::span<const double> slab, const LinearVCoeff& a1,
                     const LinearVCoeff& a2, VlasovFlux flux, std::span<double> out);

struct Moments {
  std::vector<double> rho;
  std::vector<double> j1;
  std::vector<double> j2;
  double rho_ion = 1.0;
};

// Precomputed per-node coordinates and quadrature weights over the mesh.
struct PhaseTables {
  // x nodes: nx * (k+1)
  std::vector<double> x_node;
  std::vector<double> x_weight; // dx/2 * w
  // velocity nodes, indexed by voffset: vdim entries
  std::vector<double> v1_node;
  std::vector<double> v2_node;
  std::vector<double> v_weight; // (dv1/2 w)(dv2/2 w)
};

PhaseTables make_phase_tables(const Mesh1D2V& mesh, const NodalBasis1D& basis);

Moments compute_moments(const Mesh1D2V& mesh, const NodalBasis1D& basis,
                        const PhaseTables& tables, const DistributionField& f);

// Moments of one velocity slab (the per-x-node reduction behind
// compute_moments).
void slab_moments(const PhaseTables& tables, std::span<const double> slab, double& rho,
                  double& j1, double& j2);

// Full phase-space df/dt: x2 streaming plus the (E + v x B) velocity
// transport, with nodal fields E1, E2, B3.
void vlasov_rhs(const Mesh1D2V& mesh, const NodalBasis1D& basis, const PhaseTables& tables,
                const DistributionField& f, std::span<const double> e1,
                std::span<const double> e2, std::span<const double> b3, VlasovFlux flux,
                DistributionField& out);

} // namespace vmdg
