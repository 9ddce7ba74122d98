#include "vmdg/split.hpp"

#include "vmdg/errors.hpp"
#include "vmdg/integrators.hpp"
#include "vmdg/solvers.hpp"

#include <atomic>
#include <cmath>
#include <exception>
#include <string>
#include <vector>

namespace vmdg {

namespace {

// Runs body(i) for i in [0, n) in parallel, rethrowing the first exception
// on the calling thread. Iterations write disjoint data.
template <typename Body>
void parallel_for_each(int n, const Body& body) {
  std::exception_ptr error = nullptr;
  std::atomic<bool> failed{false};
#pragma omp parallel for schedule(dynamic)
  for (int i = 0; i < n; ++i) {
    if (failed.load(std::memory_order_relaxed)) continue;
    try {
      body(i);
    } catch (...) {
#pragma omp critical
      {
        if (!error) error = std::current_exception();
      }
      failed.store(true, std::memory_order_relaxed);
    }
  }
  if (error) std::rethrow_exception(error);
}

} // namespace

void scheme_a_step(const Discretization& disc, const SchemeConfig& cfg, SimState& state,
                   double dt) {
  const Mesh1D2V& mesh = disc.mesh;
  const NodalBasis1D& basis = disc.basis;
  const VlasovFlux vf = effective_vlasov_flux(cfg.vlasov_flux, dt);
  const int np = mesh.points();
  const int vdim = state.f.vdim();
  const int xdim = state.f.xdim();
  const int slice_len = xdim;

  parallel_for_each(vdim, [&](int voff) {
    double speed = disc.tables.v2_node[voff];
    if (speed == 0.0) return; // midpoint transport at zero speed is the identity

    std::vector<double> u(slice_len), rhs(slice_len), au(slice_len);
    double* base = state.f.values.data() + voff;
    for (int xn = 0; xn < xdim; ++xn) u[xn] = base[size_t(xn) * vdim];

    auto apply = [&](std::span<const double> in, std::span<double> out) {
      transport_x_rhs(mesh, basis, in, speed, vf, out);
      for (int i = 0; i < slice_len; ++i) out[i] = in[i] - 0.5 * dt * out[i];
    };
    transport_x_rhs(mesh, basis, u, speed, vf, au);
    for (int i = 0; i < slice_len; ++i) rhs[i] = u[i] + 0.5 * dt * au[i];

    std::vector<double> g = u;
    try {
      gmres_or_throw(apply, rhs, g, cfg.krylov, "streaming slice");
    } catch (const SolverError& err) {
      int m2 = voff % np;
      int j2 = (voff / np) % mesh.nv2();
      int m1 = (voff / (np * mesh.nv2())) % np;
      int j1 = voff / (np * mesh.nv2() * np);
      throw SolverError("streaming solve failed at velocity node (j1=" + std::to_string(j1) +
                            ", m1=" + std::to_string(m1) + ", j2=" + std::to_string(j2) +
                            ", m2=" + std::to_string(m2) + "): " + err.what(),
                        err.residual(), err.iterations());
    }
    for (int xn = 0; xn < xdim; ++xn) base[size_t(xn) * vdim] = g[xn];
  });
  state.time += dt;
}

void scheme_b_step(const Discretization& disc, const SchemeConfig& cfg, SimState& state,
                   double dt) {
  const Mesh1D2V& mesh = disc.mesh;
  const NodalBasis1D& basis = disc.basis;
  const VlasovFlux vf = effective_vlasov_flux(cfg.vlasov_flux, dt);
  const int vdim = state.f.vdim();
  const int xdim = state.f.xdim();
  const int np = mesh.points();

  NewtonConfig ncfg;
  ncfg.tol = cfg.eps_tol;
  ncfg.max_iters = cfg.max_newton;

  parallel_for_each(xdim, [&](int xn) {
    auto slab = state.f.x_node_slab(xn);
    const double e1n = state.em.e1[xn];
    const double e2n = state.em.e2[xn];
    double rho_n, j1_n, j2_n;
    slab_moments(disc.tables, slab, rho_n, j1_n, j2_n);

    std::vector<double> f_old(slab.begin(), slab.end());
    std::vector<double> h(vdim), hrhs(vdim);

    // Unknown: the slab followed by (E1, E2) at this node.
    auto residual = [&](std::span<const double> u, std::span<double> r) {
      auto g = u.subspan(0, vdim);
      const double e1s = u[vdim];
      const double e2s = u[vdim + 1];
      const double e1_avg = 0.5 * (e1n + e1s);
      const double e2_avg = 0.5 * (e2n + e2s);
      for (int q = 0; q < vdim; ++q) h[q] = 0.5 * (g[q] + f_old[q]);
      transport_v_rhs(mesh, basis, h, LinearVCoeff{e1_avg, 0.0, 0.0},
                      LinearVCoeff{e2_avg, 0.0, 0.0}, vf, hrhs);
      double rho_g, j1_g, j2_g;
      slab_moments(disc.tables, g, rho_g, j1_g, j2_g);
      for (int q = 0; q < vdim; ++q) r[q] = g[q] - f_old[q] - dt * hrhs[q];
      r[vdim] = e1s - e1n + 0.5 * dt * (j1_n + j1_g);
      r[vdim + 1] = e2s - e2n + 0.5 * dt * (j2_n + j2_g);
    };

    std::vector<double> u(vdim + 2);
    std::copy(f_old.begin(), f_old.end(), u.begin());
    u[vdim] = e1n;
    u[vdim + 1] = e2n;
    try {
      newton_krylov(residual, u, ncfg, cfg.krylov, "acceleration node system");
    } catch (const SolverError& err) {
      throw SolverError("acceleration solve failed at x node (i=" + std::to_string(xn / np) +
                            ", l=" + std::to_string(xn % np) + "): " + err.what(),
                        err.residual(), err.iterations());
    }
    std::copy(u.begin(), u.begin() + vdim, slab.begin());
    state.em.e1[xn] = u[vdim];
    state.em.e2[xn] = u[vdim + 1];
  });
  state.time += dt;
}

void scheme_c_step(const Discretization& disc, const SchemeConfig& cfg, SimState& state,
                   double dt) {
  const Mesh1D2V& mesh = disc.mesh;
  const NodalBasis1D& basis = disc.basis;
  const VlasovFlux vf = effective_vlasov_flux(cfg.vlasov_flux, dt);
  const int vdim = state.f.vdim();
  const int xdim = state.f.xdim();
  const int np = mesh.points();

  // Source-free midpoint Maxwell solve for (E1, B3).
  std::vector<double> e1_new(state.em.e1.begin(), state.em.e1.end());
  std::vector<double> b3_new(state.em.b3.begin(), state.em.b3.end());
  std::vector<double> zero(xdim, 0.0);
  maxwell_midpoint_solve(mesh, basis, e1_new, b3_new, dt, zero, cfg.maxwell_flux, cfg.krylov);

  std::vector<double> b_avg(xdim);
  for (int xn = 0; xn < xdim; ++xn) b_avg[xn] = 0.5 * (state.em.b3[xn] + b3_new[xn]);

  // Midpoint rotation of each velocity slab by the time-averaged B3.
  parallel_for_each(xdim, [&](int xn) {
    double bv = b_avg[xn];
    if (bv == 0.0) return;
    auto slab = state.f.x_node_slab(xn);
    LinearVCoeff a1{0.0, 0.0, bv};
    LinearVCoeff a2{0.0, -bv, 0.0};

    std::vector<double> scratch(vdim), rhs(vdim);
    auto apply = [&](std::span<const double> in, std::span<double> out) {
      transport_v_rhs(mesh, basis, in, a1, a2, vf, out);
      for (int q = 0; q < vdim; ++q) out[q] = in[q] - 0.5 * dt * out[q];
    };
    transport_v_rhs(mesh, basis, slab, a1, a2, vf, scratch);
    for (int q = 0; q < vdim; ++q) rhs[q] = slab[q] + 0.5 * dt * scratch[q];

    std::vector<double> g(slab.begin(), slab.end());
    try {
      gmres_or_throw(apply, rhs, g, cfg.krylov, "rotation slab");
    } catch (const SolverError& err) {
      throw SolverError("rotation solve failed at x node (i=" + std::to_string(xn / np) +
                            ", l=" + std::to_string(xn % np) + "): " + err.what(),
                        err.residual(), err.iterations());
    }
    std::copy(g.begin(), g.end(), slab.begin());
  });

  state.em.e1 = std::move(e1_new);
  state.em.b3 = std::move(b3_new);
  state.time += dt;
}

void scheme5_step(const Discretization& disc, const SchemeConfig& cfg, SimState& state,
                  double dt) {
  double t0 = state.time;
  scheme_a_step(disc, cfg, state, 0.5 * dt);
  scheme_b_step(disc, cfg, state, 0.5 * dt);
  scheme_c_step(disc, cfg, state, dt);
  scheme_b_step(disc, cfg, state, 0.5 * dt);
  scheme_a_step(disc, cfg, state, 0.5 * dt);
  check_finite(state, "scheme5 step");
  state.time = t0 + dt;
}

void scheme5f_step(const Discretization& disc, const SchemeConfig& cfg, SimState& state,
                   double dt) {
  compose_triple_jump(scheme5_step, triple_jump_coefficients(), disc, cfg, state, dt);
}

} // namespace vmdg
