#include "vmdg/integrators.hpp"

#include "vmdg/errors.hpp"
#include "vmdg/split.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace vmdg {

namespace {

void axpy(double a, std::span<const double> x, std::span<double> y) {
  for (size_t i = 0; i < x.size(); ++i) y[i] += a * x[i];
}

void require_finite(std::span<const double> v, const char* stage) {
  for (double x : v)
    if (!std::isfinite(x)) throw BlowUpError(stage);
}

} // namespace

CompositionCoefficients triple_jump_coefficients() {
  const double cbrt2 = std::cbrt(2.0);
  double b1 = (2.0 + cbrt2 + 1.0 / cbrt2) / 3.0;
  return {b1, 1.0 - 2.0 * b1, b1};
}

VlasovFlux effective_vlasov_flux(VlasovFlux configured, double dt) {
  if (dt >= 0.0) return configured;
  if (configured == VlasovFlux::upwind) return VlasovFlux::downwind;
  if (configured == VlasovFlux::downwind) return VlasovFlux::upwind;
  return configured;
}

double default_cfl(int degree) {
  switch (degree) {
    case 1: return 0.3;
    case 2: return 0.15;
    case 3: return 0.08;
    default: throw std::invalid_argument("default_cfl: no default for degree > 3");
  }
}

double cfl_dt(const Discretization& disc, const SimState& state, double cfl) {
  const Mesh1D2V& mesh = disc.mesh;
  double min_dx = mesh.dx(0);
  for (int i = 1; i < mesh.nx(); ++i) min_dx = std::min(min_dx, mesh.dx(i));
  double min_dv1 = mesh.dv1(0);
  for (int j = 1; j < mesh.nv1(); ++j) min_dv1 = std::min(min_dv1, mesh.dv1(j));
  double min_dv2 = mesh.dv2(0);
  for (int j = 1; j < mesh.nv2(); ++j) min_dv2 = std::min(min_dv2, mesh.dv2(j));

  double vmax = std::max(mesh.v1_max(), mesh.v2_max());
  double accel = 0.0;
  for (int xn = 0; xn < state.em.size(); ++xn) {
    double e = std::hypot(state.em.e1[xn], state.em.e2[xn]);
    accel = std::max(accel, e + vmax * std::abs(state.em.b3[xn]));
  }
  double dt = min_dx / mesh.v2_max();
  if (accel > 0.0) dt = std::min({dt, min_dv1 / accel, min_dv2 / accel});
  return cfl * dt;
}

namespace {

// Current at the x nodes; j1 feeds the Maxwell update, j2 the E2 ODE.
Moments state_moments(const Discretization& disc, const DistributionField& f) {
  return compute_moments(disc.mesh, disc.basis, disc.tables, f);
}

} // namespace

void init_staggered(const Discretization& disc, const SchemeConfig& cfg, SimState& state,
                    double dt) {
  const size_t n = state.em.e1.size();
  if (cfg.id == SchemeId::scheme1) {
    std::vector<double> curl(n), half(n);
    dg_deriv_periodic(disc.mesh, disc.basis, state.em.e1, e_trace_side(cfg.maxwell_flux), curl);
    for (size_t i = 0; i < n; ++i) half[i] = state.em.b3[i] - 0.5 * dt * curl[i];
    state.em.b3_half = std::move(half);
    state.em.half_dt = dt;
  } else if (cfg.id == SchemeId::scheme3 || cfg.id == SchemeId::scheme3f) {
    std::vector<double> curl(n), e1h(n), e2h(n);
    dg_deriv_periodic(disc.mesh, disc.basis, state.em.b3, b_trace_side(cfg.maxwell_flux), curl);
    Moments mom = state_moments(disc, state.f);
    for (size_t i = 0; i < n; ++i) {
      e1h[i] = state.em.e1[i] - 0.5 * dt * (curl[i] - mom.j1[i]);
      e2h[i] = state.em.e2[i] + 0.5 * dt * mom.j2[i];
    }
    state.em.e1_half = std::move(e1h);
    state.em.e2_half = std::move(e2h);
    state.em.half_dt = dt;
  }
}

void scheme1_step(const Discretization& disc, const SchemeConfig& cfg, SimState& state,
                  double dt) {
  const VlasovFlux vf = effective_vlasov_flux(cfg.vlasov_flux, dt);
  const size_t n = state.em.e1.size();

  // Half Vlasov step, forward Euler.
  DistributionField rhs = make_distribution(disc.mesh);
  vlasov_rhs(disc.mesh, disc.basis, disc.tables, state.f, state.em.e1, state.em.e2, state.em.b3,
             vf, rhs);
  DistributionField f_half = state.f;
  axpy(0.5 * dt, rhs.values, f_half.values);
  require_finite(f_half.values, "scheme1 half Vlasov step");

  Moments mom = state_moments(disc, f_half);

  // Leapfrog Maxwell around the midpoint current.
  std::vector<double> e1_new(state.em.e1.begin(), state.em.e1.end());
  std::vector<double> b3_new(state.em.b3.begin(), state.em.b3.end());
  std::vector<double> b_half(n);
  maxwell_leapfrog_halves(disc.mesh, disc.basis, e1_new, b3_new, dt, mom.j1, cfg.maxwell_flux,
                          b_half);
  std::vector<double> e2_new(n);
  for (size_t i = 0; i < n; ++i) e2_new[i] = state.em.e2[i] - dt * mom.j2[i];

  // Full Vlasov step with the time-averaged E and the staggered B.
  std::vector<double> e1_avg(n), e2_avg(n);
  for (size_t i = 0; i < n; ++i) {
    e1_avg[i] = 0.5 * (state.em.e1[i] + e1_new[i]);
    e2_avg[i] = 0.5 * (state.em.e2[i] + e2_new[i]);
  }
  vlasov_rhs(disc.mesh, disc.basis, disc.tables, f_half, e1_avg, e2_avg, b_half, vf, rhs);
  axpy(dt, rhs.values, state.f.values);
  require_finite(state.f.values, "scheme1 full Vlasov step");

  state.em.e1 = std::move(e1_new);
  state.em.e2 = std::move(e2_new);
  state.em.b3 = std::move(b3_new);
  state.em.b3_half = std::move(b_half);
  state.em.half_dt = dt;
  state.time += dt;
}

void scheme2_step(const Discretization& disc, const SchemeConfig& cfg, SimState& state,
                  double dt) {
  const VlasovFlux vf = effective_vlasov_flux(cfg.vlasov_flux, dt);
  const size_t n = state.em.e1.size();

  DistributionField rhs = make_distribution(disc.mesh);
  vlasov_rhs(disc.mesh, disc.basis, disc.tables, state.f, state.em.e1, state.em.e2, state.em.b3,
             vf, rhs);
  DistributionField f_half = state.f;
  axpy(0.5 * dt, rhs.values, f_half.values);
  require_finite(f_half.values, "scheme2 half Vlasov step");

  Moments mom = state_moments(disc, f_half);

  std::vector<double> e1_new(state.em.e1.begin(), state.em.e1.end());
  std::vector<double> b3_new(state.em.b3.begin(), state.em.b3.end());
  maxwell_midpoint_solve(disc.mesh, disc.basis, e1_new, b3_new, dt, mom.j1, cfg.maxwell_flux,
                         cfg.krylov);
  std::vector<double> e2_new(n);
  for (size_t i = 0; i < n; ++i) e2_new[i] = state.em.e2[i] - dt * mom.j2[i];

  std::vector<double> e1_avg(n), e2_avg(n), b3_avg(n);
  for (size_t i = 0; i < n; ++i) {
    e1_avg[i] = 0.5 * (state.em.e1[i] + e1_new[i]);
    e2_avg[i] = 0.5 * (state.em.e2[i] + e2_new[i]);
    b3_avg[i] = 0.5 * (state.em.b3[i] + b3_new[i]);
  }
  vlasov_rhs(disc.mesh, disc.basis, disc.tables, f_half, e1_avg, e2_avg, b3_avg, vf, rhs);
  axpy(dt, rhs.values, state.f.values);
  require_finite(state.f.values, "scheme2 full Vlasov step");

  state.em.e1 = std::move(e1_new);
  state.em.e2 = std::move(e2_new);
  state.em.b3 = std::move(b3_new);
  state.time += dt;
}

void scheme3_step(const Discretization& disc, const SchemeConfig& cfg, SimState& state,
                  double dt) {
  const VlasovFlux vf = effective_vlasov_flux(cfg.vlasov_flux, dt);
  const size_t n = state.em.e1.size();

  // Half E update with the current at t^n.
  Moments mom_n = state_moments(disc, state.f);
  std::vector<double> curl(n), e1_half(n), e2_half(n);
  dg_deriv_periodic(disc.mesh, disc.basis, state.em.b3, b_trace_side(cfg.maxwell_flux), curl);
  for (size_t i = 0; i < n; ++i) {
    e1_half[i] = state.em.e1[i] + 0.5 * dt * (curl[i] - mom_n.j1[i]);
    e2_half[i] = state.em.e2[i] - 0.5 * dt * mom_n.j2[i];
  }

  // Full B update with the staggered E.
  std::vector<double> b3_new(n);
  dg_deriv_periodic(disc.mesh, disc.basis, e1_half, e_trace_side(cfg.maxwell_flux), curl);
  for (size_t i = 0; i < n; ++i) b3_new[i] = state.em.b3[i] + dt * curl[i];
  std::vector<double> b3_avg(n);
  for (size_t i = 0; i < n; ++i) b3_avg[i] = 0.5 * (state.em.b3[i] + b3_new[i]);

  // Linear implicit midpoint Vlasov solve with known fields.
  const size_t fdim = state.f.size();
  DistributionField scratch_in = make_distribution(disc.mesh);
  DistributionField scratch_out = make_distribution(disc.mesh);
  auto apply = [&](std::span<const double> in, std::span<double> out) {
    std::copy(in.begin(), in.end(), scratch_in.values.begin());
    vlasov_rhs(disc.mesh, disc.basis, disc.tables, scratch_in, e1_half, e2_half, b3_avg, vf,
               scratch_out);
    for (size_t i = 0; i < fdim; ++i) out[i] = in[i] - 0.5 * dt * scratch_out.values[i];
  };
  vlasov_rhs(disc.mesh, disc.basis, disc.tables, state.f, e1_half, e2_half, b3_avg, vf,
             scratch_out);
  std::vector<double> rhs(fdim);
  for (size_t i = 0; i < fdim; ++i) rhs[i] = state.f.values[i] + 0.5 * dt * scratch_out.values[i];
  gmres_or_throw(apply, rhs, state.f.values, cfg.krylov, "scheme3 Vlasov midpoint system");
  require_finite(state.f.values, "scheme3 implicit Vlasov step");

  // Half E update with the current at t^{n+1}.
  Moments mom_new = state_moments(disc, state.f);
  dg_deriv_periodic(disc.mesh, disc.basis, b3_new, b_trace_side(cfg.maxwell_flux), curl);
  for (size_t i = 0; i < n; ++i) {
    state.em.e1[i] = e1_half[i] + 0.5 * dt * (curl[i] - mom_new.j1[i]);
    state.em.e2[i] = e2_half[i] - 0.5 * dt * mom_new.j2[i];
  }
  state.em.b3 = std::move(b3_new);
  state.em.e1_half = std::move(e1_half);
  state.em.e2_half = std::move(e2_half);
  state.em.half_dt = dt;
  state.time += dt;
}

void scheme4_step(const Discretization& disc, const SchemeConfig& cfg, SimState& state,
                  double dt) {
  const Mesh1D2V& mesh = disc.mesh;
  if (mesh.nx() > 16 || mesh.nv1() > 16 || mesh.nv2() > 16)
    throw std::invalid_argument(
        "scheme4_step: full phase-space Newton is restricted to meshes of at most 16 cells per "
        "direction");
  const VlasovFlux vf = effective_vlasov_flux(cfg.vlasov_flux, dt);
  const size_t fdim = state.f.size();
  const size_t n = state.em.e1.size();
  const size_t total = fdim + 3 * n;

  const DistributionField f_old = state.f;
  const std::vector<double> e1_old = state.em.e1;
  const std::vector<double> e2_old = state.em.e2;
  const std::vector<double> b3_old = state.em.b3;
  Moments mom_old = state_moments(disc, f_old);

  DistributionField f_avg = make_distribution(mesh);
  DistributionField frhs = make_distribution(mesh);
  std::vector<double> e1_avg(n), e2_avg(n), b3_avg(n), curl_b(n), curl_e(n);

  auto residual = [&](std::span<const double> u, std::span<double> r) {
    auto g = u.subspan(0, fdim);
    auto e1 = u.subspan(fdim, n);
    auto e2 = u.subspan(fdim + n, n);
    auto b3 = u.subspan(fdim + 2 * n, n);
    for (size_t i = 0; i < fdim; ++i) f_avg.values[i] = 0.5 * (g[i] + f_old.values[i]);
    for (size_t i = 0; i < n; ++i) {
      e1_avg[i] = 0.5 * (e1[i] + e1_old[i]);
      e2_avg[i] = 0.5 * (e2[i] + e2_old[i]);
      b3_avg[i] = 0.5 * (b3[i] + b3_old[i]);
    }
    vlasov_rhs(mesh, disc.basis, disc.tables, f_avg, e1_avg, e2_avg, b3_avg, vf, frhs);
    Moments mom_avg = compute_moments(mesh, disc.basis, disc.tables, f_avg);
    dg_deriv_periodic(mesh, disc.basis, b3_avg, b_trace_side(cfg.maxwell_flux), curl_b);
    dg_deriv_periodic(mesh, disc.basis, e1_avg, e_trace_side(cfg.maxwell_flux), curl_e);
    for (size_t i = 0; i < fdim; ++i) r[i] = g[i] - f_old.values[i] - dt * frhs.values[i];
    for (size_t i = 0; i < n; ++i) {
      r[fdim + i] = e1[i] - e1_old[i] - dt * (curl_b[i] - mom_avg.j1[i]);
      r[fdim + n + i] = e2[i] - e2_old[i] + dt * mom_avg.j2[i];
      r[fdim + 2 * n + i] = b3[i] - b3_old[i] - dt * curl_e[i];
    }
  };

  std::vector<double> u(total);
  std::copy(f_old.values.begin(), f_old.values.end(), u.begin());
  std::copy(e1_old.begin(), e1_old.end(), u.begin() + fdim);
  std::copy(e2_old.begin(), e2_old.end(), u.begin() + fdim + n);
  std::copy(b3_old.begin(), b3_old.end(), u.begin() + fdim + 2 * n);

  NewtonConfig ncfg;
  ncfg.tol = cfg.eps_tol;
  ncfg.max_iters = cfg.max_newton;
  newton_krylov(residual, u, ncfg, cfg.krylov, "scheme4 coupled midpoint system");

  std::copy(u.begin(), u.begin() + fdim, state.f.values.begin());
  std::copy(u.begin() + fdim, u.begin() + fdim + n, state.em.e1.begin());
  std::copy(u.begin() + fdim + n, u.begin() + fdim + 2 * n, state.em.e2.begin());
  std::copy(u.begin() + fdim + 2 * n, u.end(), state.em.b3.begin());
  require_finite(state.f.values, "scheme4 implicit step");
  state.time += dt;
}

void compose_triple_jump(const StepFn& step_fn, const CompositionCoefficients& coeffs,
                         const Discretization& disc, const SchemeConfig& cfg, SimState& state,
                         double dt) {
  step_fn(disc, cfg, state, coeffs.b1 * dt);
  step_fn(disc, cfg, state, coeffs.b2 * dt);
  step_fn(disc, cfg, state, coeffs.b3 * dt);
}

void advance(const Discretization& disc, const SchemeConfig& cfg, SimState& state, double dt) {
  switch (cfg.id) {
    case SchemeId::scheme1: scheme1_step(disc, cfg, state, dt); return;
    case SchemeId::scheme2: scheme2_step(disc, cfg, state, dt); return;
    case SchemeId::scheme3: scheme3_step(disc, cfg, state, dt); return;
    case SchemeId::scheme4: scheme4_step(disc, cfg, state, dt); return;
    case SchemeId::scheme5: scheme5_step(disc, cfg, state, dt); return;
    case SchemeId::scheme3f:
      compose_triple_jump(scheme3_step, triple_jump_coefficients(), disc, cfg, state, dt);
      return;
    case SchemeId::scheme4f:
      compose_triple_jump(scheme4_step, triple_jump_coefficients(), disc, cfg, state, dt);
      return;
    case SchemeId::scheme5f: scheme5f_step(disc, cfg, state, dt); return;
  }
  throw std::logic_error("advance: unknown scheme");
}

} // namespace vmdg
