#pragma once

#include "vmdg/config.hpp"
#include "vmdg/state.hpp"

#include <functional>

namespace vmdg {

// Triple-jump composition weights: b1 + b2 + b3 = 1, b1^3 + b2^3 + b3^3 = 0,
// b1 = b3. The middle substep runs backward in time.
struct CompositionCoefficients {
  double b1, b2, b3;
};
CompositionCoefficients triple_jump_coefficients();

// Flux actually used for a substep: upwind dissipation must flip to
// downwind anti-dissipation when the substep runs backward.
VlasovFlux effective_vlasov_flux(VlasovFlux configured, double dt);

// CFL-driven time step for the explicit-in-f schemes:
//   dt = cfl * min( dx2 / V2c, dv1 / A, dv2 / A ),
// with A the max over x nodes of |E| + max(V1c, V2c) |B| for the current
// state (acceleration terms dropped while A is zero).
double cfl_dt(const Discretization& disc, const SimState& state, double cfl);
double default_cfl(int degree); // 0.3 / 0.15 / 0.08 for k = 1 / 2 / 3

// One full step of each unsplit scheme; advances state.time by dt.
void scheme1_step(const Discretization& disc, const SchemeConfig& cfg, SimState& state, double dt);
void scheme2_step(const Discretization& disc, const SchemeConfig& cfg, SimState& state, double dt);
void scheme3_step(const Discretization& disc, const SchemeConfig& cfg, SimState& state, double dt);
void scheme4_step(const Discretization& disc, const SchemeConfig& cfg, SimState& state, double dt);

using StepFn = std::function<void(const Discretization&, const SchemeConfig&, SimState&, double)>;

// Three substeps at b1 dt, b2 dt, b3 dt. step_fn must be time-symmetric.
void compose_triple_jump(const StepFn& step_fn, const CompositionCoefficients& coeffs,
                         const Discretization& disc, const SchemeConfig& cfg, SimState& state,
                         double dt);

// Prepares the virtual backward staggered copies a leapfrog-staggered scheme
// expects at t = 0, so the modified energy is defined from the first record.
void init_staggered(const Discretization& disc, const SchemeConfig& cfg, SimState& state,
                    double dt);

// Dispatch on cfg.id (split schemes included); advances state.time by dt.
void advance(const Discretization& disc, const SchemeConfig& cfg, SimState& state, double dt);

} // namespace vmdg
