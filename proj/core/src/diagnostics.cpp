#include "vmdg/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace vmdg {

double particle_number(const Discretization& disc, const DistributionField& f) {
  const auto& t = disc.tables;
  double total = 0.0;
  for (int xn = 0; xn < f.xdim(); ++xn) {
    auto slab = f.x_node_slab(xn);
    double s = 0.0;
    for (int q = 0; q < f.vdim(); ++q) s += t.v_weight[q] * slab[q];
    total += t.x_weight[xn] * s;
  }
  return total;
}

double l2_norm_f(const Discretization& disc, const DistributionField& f) {
  const auto& t = disc.tables;
  double total = 0.0;
  for (int xn = 0; xn < f.xdim(); ++xn) {
    auto slab = f.x_node_slab(xn);
    double s = 0.0;
    for (int q = 0; q < f.vdim(); ++q) s += t.v_weight[q] * slab[q] * slab[q];
    total += t.x_weight[xn] * s;
  }
  return std::sqrt(total);
}

namespace {

double field_quadrature_dot(const Discretization& disc, std::span<const double> a,
                            std::span<const double> b) {
  double s = 0.0;
  for (size_t i = 0; i < a.size(); ++i) s += disc.tables.x_weight[i] * a[i] * b[i];
  return s;
}

} // namespace

EnergyReport energies(const Discretization& disc, const DistributionField& f, const EMField& em,
                      SchemeId scheme, MaxwellFlux maxwell_flux) {
  const auto& t = disc.tables;
  EnergyReport rep;
  const double length = disc.mesh.length();

  double kin1 = 0.0, kin2 = 0.0;
  for (int xn = 0; xn < f.xdim(); ++xn) {
    auto slab = f.x_node_slab(xn);
    double s1 = 0.0, s2 = 0.0;
    for (int q = 0; q < f.vdim(); ++q) {
      double wf = t.v_weight[q] * slab[q];
      s1 += wf * t.v1_node[q] * t.v1_node[q];
      s2 += wf * t.v2_node[q] * t.v2_node[q];
    }
    kin1 += t.x_weight[xn] * s1;
    kin2 += t.x_weight[xn] * s2;
  }
  double e1sq = field_quadrature_dot(disc, em.e1, em.e1);
  double e2sq = field_quadrature_dot(disc, em.e2, em.e2);
  double b3sq = field_quadrature_dot(disc, em.b3, em.b3);

  rep.k1 = kin1 / (2.0 * length);
  rep.k2 = kin2 / (2.0 * length);
  rep.e1_energy = e1sq / (2.0 * length);
  rep.e2_energy = e2sq / (2.0 * length);
  rep.b3_energy = b3sq / (2.0 * length);
  rep.total = 0.5 * (kin1 + kin2 + e1sq + e2sq + b3sq);

  const size_t n = em.e1.size();
  if (scheme == SchemeId::scheme1) {
    if (!em.b3_half || em.half_dt == 0.0)
      throw std::logic_error("energies: scheme 1 requires the staggered B field");
    // Forward staggered value B(t + dt/2) recomputed from the state.
    std::vector<double> curl(n), b_fwd(n);
    dg_deriv_periodic(disc.mesh, disc.basis, em.e1, e_trace_side(maxwell_flux), curl);
    for (size_t i = 0; i < n; ++i) b_fwd[i] = em.b3[i] + 0.5 * em.half_dt * curl[i];
    double cross = field_quadrature_dot(disc, *em.b3_half, b_fwd);
    rep.modified = 0.5 * (kin1 + kin2 + e1sq + e2sq + cross);
  } else if (scheme == SchemeId::scheme3) {
    if (!em.e1_half || !em.e2_half || em.half_dt == 0.0)
      throw std::logic_error("energies: scheme 3 requires the staggered E fields");
    std::vector<double> curl(n), e1_fwd(n), e2_fwd(n);
    dg_deriv_periodic(disc.mesh, disc.basis, em.b3, b_trace_side(maxwell_flux), curl);
    Moments mom = compute_moments(disc.mesh, disc.basis, disc.tables, f);
    for (size_t i = 0; i < n; ++i) {
      e1_fwd[i] = em.e1[i] + 0.5 * em.half_dt * (curl[i] - mom.j1[i]);
      e2_fwd[i] = em.e2[i] - 0.5 * em.half_dt * mom.j2[i];
    }
    double cross = field_quadrature_dot(disc, *em.e1_half, e1_fwd) +
                   field_quadrature_dot(disc, *em.e2_half, e2_fwd);
    rep.modified = 0.5 * (kin1 + kin2 + b3sq + cross);
  }
  return rep;
}

std::vector<double> log_fourier_modes(const Discretization& disc, std::span<const double> field,
                                      int count, double kappa) {
  if (kappa <= 0.0) throw std::invalid_argument("log_fourier_modes: kappa must be > 0");
  const double length = disc.mesh.length();
  std::vector<double> modes(count);
  for (int n = 1; n <= count; ++n) {
    double cs = 0.0, cc = 0.0;
    for (size_t xn = 0; xn < field.size(); ++xn) {
      double x = disc.tables.x_node[xn];
      double w = disc.tables.x_weight[xn];
      cs += w * field[xn] * std::sin(kappa * n * x);
      cc += w * field[xn] * std::cos(kappa * n * x);
    }
    double mag = std::hypot(cs, cc) / length;
    modes[n - 1] = mag > 0.0 ? std::max(std::log10(mag), -300.0) : -300.0;
  }
  return modes;
}

DiagnosticsRecord make_record(const Discretization& disc, const SimState& state,
                              const SchemeConfig& scheme, long step, double kappa) {
  DiagnosticsRecord rec;
  rec.step = step;
  rec.t = state.time;
  rec.particle_number = particle_number(disc, state.f);
  rec.l2_f = l2_norm_f(disc, state.f);
  EnergyReport e = energies(disc, state.f, state.em, scheme.id, scheme.maxwell_flux);
  rec.k1 = e.k1;
  rec.k2 = e.k2;
  rec.e1_energy = e.e1_energy;
  rec.e2_energy = e.e2_energy;
  rec.b3_energy = e.b3_energy;
  rec.total_energy = e.total;
  rec.modified_energy = e.modified;
  auto m1 = log_fourier_modes(disc, state.em.e1, 4, kappa);
  auto m2 = log_fourier_modes(disc, state.em.e2, 4, kappa);
  auto m3 = log_fourier_modes(disc, state.em.b3, 4, kappa);
  for (int i = 0; i < 4; ++i) {
    rec.logfm[0][i] = m1[i];
    rec.logfm[1][i] = m2[i];
    rec.logfm[2][i] = m3[i];
  }
  return rec;
}

} // namespace vmdg
