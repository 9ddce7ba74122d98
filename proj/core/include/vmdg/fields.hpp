#pragma once

#include "vmdg/mesh.hpp"
#include "vmdg/quadrature.hpp"
#include "vmdg/solvers.hpp"

#include <optional>
#include <span>
#include <vector>

namespace vmdg {

// Interface value choices for the 1D Maxwell curl operators. The alternating
// selectors pick E from one fixed side and B from the other, globally
// (including at the periodic wrap).
enum class MaxwellFlux {
  central,
  alternating_Eplus_Bminus,
  alternating_Eminus_Bplus,
};

// Maxwell unknowns as per-x2-cell nodal values, nx * (k+1) each. Staggered
// half-step copies exist only when the owning integrator is leapfrog-staggered
// in that field (scheme 1 for B, scheme 3 for E); they hold the field at
// t - half_dt/2 and feed the modified-energy diagnostic.
struct EMField {
  int nx = 0;
  int np = 0;
  std::vector<double> e1;
  std::vector<double> e2;
  std::vector<double> b3;

  std::optional<std::vector<double>> b3_half;
  std::optional<std::vector<double>> e1_half;
  std::optional<std::vector<double>> e2_half;
  double half_dt = 0.0;

  int size() const { return nx * np; }
};

EMField make_em_field(const Mesh1D2V& mesh);

// Which trace a scalar DG derivative takes at interfaces.
enum class TraceSide { central, minus, plus };

// Weak DG d/dx2 with periodic wrap: out_(i,l) holds the mass-inverted
// Galerkin residual of u_x tested against the nodal basis.
void dg_deriv_periodic(const Mesh1D2V& mesh, const NodalBasis1D& basis,
                       std::span<const double> u, TraceSide side, std::span<double> out);

TraceSide e_trace_side(MaxwellFlux flux);
TraceSide b_trace_side(MaxwellFlux flux);

// Spatial parts of the Maxwell system: dE1/dt = (B3)_x and dB3/dt = (E1)_x,
// each with the trace side implied by the flux selector. Sources and the E2
// ODE are the caller's business.
void maxwell_weak_rhs(const Mesh1D2V& mesh, const NodalBasis1D& basis,
                      std::span<const double> e1, std::span<const double> b3, MaxwellFlux flux,
                      std::span<double> de1_dt, std::span<double> db3_dt);

// Implicit midpoint step of the coupled (E1, B3) system with a fixed current
// source j1 applied over the whole step:
//   E1' = E1 + dt * (Dx avg(B3) - j1_mid),  B3' = B3 + dt * Dx avg(E1).
// Matrix-free GMRES; negative dt is allowed.
void maxwell_midpoint_solve(const Mesh1D2V& mesh, const NodalBasis1D& basis,
                            std::span<double> e1, std::span<double> b3, double dt,
                            std::span<const double> j1_mid, MaxwellFlux flux,
                            const KrylovConfig& krylov);

// Same step via dense LU, for cross-checking the Krylov path. Only for
// nx * (k+1) <= 512.
void maxwell_midpoint_solve_dense(const Mesh1D2V& mesh, const NodalBasis1D& basis,
                                  std::span<double> e1, std::span<double> b3, double dt,
                                  std::span<const double> j1_mid, MaxwellFlux flux);

// Leapfrog sweep: half B update with E at t^n, full E1 update with the
// staggered B and the given midpoint current, half B update with E1 at
// t^{n+1}. b3_half receives the staggered field between the halves.
void maxwell_leapfrog_halves(const Mesh1D2V& mesh, const NodalBasis1D& basis,
                             std::span<double> e1, std::span<double> b3, double dt,
                             std::span<const double> j1_mid, MaxwellFlux flux,
                             std::span<double> b3_half);

} // namespace vmdg
