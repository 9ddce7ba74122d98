#pragma once

#include "vmdg/config.hpp"
#include "vmdg/state.hpp"

namespace vmdg {

// Energy-conserving splitting of the 1D2V system into three sub-flows:
//   a) free streaming in x2          (kinetic energy invariant)
//   b) electric acceleration + E ODE (kinetic + electric invariant)
//   c) magnetic rotation + Maxwell   (kinetic and electromagnetic invariant)
// Each sub-flow is advanced by an implicit midpoint rule on the Gauss-node
// representation, one reduced-dimension solve per node.

// Streaming: an independent periodic transport solve in x2 for every
// velocity node; fields untouched.
void scheme_a_step(const Discretization& disc, const SchemeConfig& cfg, SimState& state,
                   double dt);

// Acceleration: per x node, the coupled nonlinear system for (f slab, E1, E2)
// with midpoint advection and trapezoidal current; B untouched.
void scheme_b_step(const Discretization& disc, const SchemeConfig& cfg, SimState& state,
                   double dt);

// Rotation: midpoint Maxwell solve for (E1, B3), then per x node a linear
// midpoint rotation of the velocity slab by the time-averaged B3; E2
// untouched.
void scheme_c_step(const Discretization& disc, const SchemeConfig& cfg, SimState& state,
                   double dt);

// Strang composition a(dt/2) b(dt/2) c(dt) b(dt/2) a(dt/2).
void scheme5_step(const Discretization& disc, const SchemeConfig& cfg, SimState& state, double dt);

// Fourth-order triple jump over scheme5_step.
void scheme5f_step(const Discretization& disc, const SchemeConfig& cfg, SimState& state,
                   double dt);

} // namespace vmdg
