#include "vmdg/simulation.hpp"

#include "vmdg/errors.hpp"
#include "vmdg/integrators.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <ostream>

namespace vmdg {

std::string format_real(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

SimState weibel_initial_state(const Discretization& disc, const WeibelParams& p) {
  SimState state = make_state(disc);
  const int vdim = state.f.vdim();
  const double norm = 1.0 / (M_PI * p.beta);

  std::vector<double> fv(vdim);
  for (int q = 0; q < vdim; ++q) {
    double v1 = disc.tables.v1_node[q];
    double v2 = disc.tables.v2_node[q];
    double beams = p.delta * std::exp(-(v1 - p.v01) * (v1 - p.v01) / p.beta) +
                   (1.0 - p.delta) * std::exp(-(v1 + p.v02) * (v1 + p.v02) / p.beta);
    fv[q] = norm * std::exp(-v2 * v2 / p.beta) * beams;
  }
  for (int xn = 0; xn < state.f.xdim(); ++xn) {
    auto slab = state.f.x_node_slab(xn);
    std::copy(fv.begin(), fv.end(), slab.begin());
    state.em.b3[xn] = p.b * std::sin(p.k0 * disc.tables.x_node[xn]);
  }
  return state;
}

Mesh1D2V manifest_mesh(const RunManifest& m) {
  WeibelParams p = preset_params(m.preset);
  return build_mesh(m.nx, m.nv1, m.nv2, 2.0 * M_PI / p.k0, m.v1c, m.v2c, m.k);
}

namespace {

void require_symmetric_v(const Mesh1D2V& mesh) {
  auto symmetric = [](const std::vector<double>& edges) {
    size_t n = edges.size();
    for (size_t i = 0; i < n; ++i)
      if (std::abs(edges[i] + edges[n - 1 - i]) > 1e-12 * std::abs(edges.back())) return false;
    return true;
  };
  if (!symmetric(mesh.v1_edges) || !symmetric(mesh.v2_edges))
    throw std::invalid_argument(
        "time reversal requires a velocity mesh symmetric about 0 (exact index reflection)");
}

} // namespace

void reverse_state(const Discretization& disc, SimState& state) {
  require_symmetric_v(disc.mesh);
  DistributionField& f = state.f;
  const int np = f.np;
  DistributionField tmp = f;
  for (int xn = 0; xn < f.xdim(); ++xn) {
    auto src = tmp.x_node_slab(xn);
    auto dst = f.x_node_slab(xn);
    for (int j1 = 0; j1 < f.nv1; ++j1)
      for (int m1 = 0; m1 < np; ++m1)
        for (int j2 = 0; j2 < f.nv2; ++j2)
          for (int m2 = 0; m2 < np; ++m2)
            dst[f.voffset(j1, m1, j2, m2)] =
                src[f.voffset(f.nv1 - 1 - j1, np - 1 - m1, f.nv2 - 1 - j2, np - 1 - m2)];
  }
  for (double& b : state.em.b3) b = -b;
  state.em.b3_half.reset();
  state.em.e1_half.reset();
  state.em.e2_half.reset();
  state.em.half_dt = 0.0;
}

std::vector<double> reversal_errors(const Discretization& disc, const SimState& state,
                                    const WeibelParams& p) {
  const auto& t = disc.tables;
  const DistributionField& f = state.f;
  const double norm = 1.0 / (M_PI * p.beta);

  // Reversed initial data sampled at the nodes: f0(x, -v), E = 0, -B0.
  std::vector<double> target(f.vdim());
  for (int q = 0; q < f.vdim(); ++q) {
    double v1 = -t.v1_node[q];
    double v2 = -t.v2_node[q];
    double beams = p.delta * std::exp(-(v1 - p.v01) * (v1 - p.v01) / p.beta) +
                   (1.0 - p.delta) * std::exp(-(v1 + p.v02) * (v1 + p.v02) / p.beta);
    target[q] = norm * std::exp(-v2 * v2 / p.beta) * beams;
  }

  double ef = 0.0, ee1 = 0.0, ee2 = 0.0, eb3 = 0.0;
  for (int xn = 0; xn < f.xdim(); ++xn) {
    auto slab = f.x_node_slab(xn);
    double s = 0.0;
    for (int q = 0; q < f.vdim(); ++q) {
      double d = slab[q] - target[q];
      s += t.v_weight[q] * d * d;
    }
    ef += t.x_weight[xn] * s;
    double b_target = -p.b * std::sin(p.k0 * t.x_node[xn]);
    ee1 += t.x_weight[xn] * state.em.e1[xn] * state.em.e1[xn];
    ee2 += t.x_weight[xn] * state.em.e2[xn] * state.em.e2[xn];
    double db = state.em.b3[xn] - b_target;
    eb3 += t.x_weight[xn] * db * db;
  }
  return {std::sqrt(ef), std::sqrt(ee1), std::sqrt(ee2), std::sqrt(eb3)};
}

namespace {

void write_lines(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open output file: " + path);
  out << content;
}

std::string snapshot_label(double t) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%g", t);
  return buf;
}

int nearest_x_node(const Discretization& disc, double x) {
  int best = 0;
  double dist = std::numeric_limits<double>::infinity();
  for (size_t xn = 0; xn < disc.tables.x_node.size(); ++xn) {
    double d = std::abs(disc.tables.x_node[xn] - x);
    if (d < dist) {
      dist = d;
      best = static_cast<int>(xn);
    }
  }
  return best;
}

} // namespace

void write_diagnostics_csv(const std::string& path,
                           const std::vector<DiagnosticsRecord>& records) {
  std::string out =
      "step,t,particle_number,l2_f,K1,K2,E1_energy,E2_energy,B3_energy,total_energy,"
      "modified_energy\n";
  for (const auto& r : records) {
    out += std::to_string(r.step);
    out += ',' + format_real(r.t);
    out += ',' + format_real(r.particle_number);
    out += ',' + format_real(r.l2_f);
    out += ',' + format_real(r.k1);
    out += ',' + format_real(r.k2);
    out += ',' + format_real(r.e1_energy);
    out += ',' + format_real(r.e2_energy);
    out += ',' + format_real(r.b3_energy);
    out += ',' + format_real(r.total_energy);
    out += ',' + format_real(r.modified_energy ? *r.modified_energy
                                               : std::numeric_limits<double>::quiet_NaN());
    out += '\n';
  }
  write_lines(path, out);
}

void write_fields_csv(const std::string& path, const Discretization& disc, const EMField& em) {
  std::string out = "x2,E1,E2,B3\n";
  for (int xn = 0; xn < em.size(); ++xn) {
    out += format_real(disc.tables.x_node[xn]);
    out += ',' + format_real(em.e1[xn]);
    out += ',' + format_real(em.e2[xn]);
    out += ',' + format_real(em.b3[xn]);
    out += '\n';
  }
  write_lines(path, out);
}

void write_fslice_csv(const std::string& path, const Discretization& disc,
                      const DistributionField& f, int x_node) {
  std::string out = "v1,v2,f\n";
  auto slab = f.x_node_slab(x_node);
  for (int q = 0; q < f.vdim(); ++q) {
    out += format_real(disc.tables.v1_node[q]);
    out += ',' + format_real(disc.tables.v2_node[q]);
    out += ',' + format_real(slab[q]);
    out += '\n';
  }
  write_lines(path, out);
}

void write_logfm_csv(const std::string& path, const std::vector<DiagnosticsRecord>& records,
                     int field_index) {
  std::string out = "t,mode1,mode2,mode3,mode4\n";
  for (const auto& r : records) {
    out += format_real(r.t);
    for (int i = 0; i < 4; ++i) out += ',' + format_real(r.logfm[field_index][i]);
    out += '\n';
  }
  write_lines(path, out);
}

void write_convergence_csv(const std::string& path, const std::vector<ConvergenceRow>& rows) {
  std::string out = "mesh,field,l2_error,order\n";
  for (const auto& r : rows) {
    out += std::to_string(r.mesh_n);
    out += ',' + r.field;
    out += ',' + format_real(r.l2_error);
    out += ',' + format_real(r.order);
    out += '\n';
  }
  write_lines(path, out);
}

RunResult run_simulation(const RunManifest& manifest) {
  namespace fs = std::filesystem;
  fs::create_directories(manifest.out_dir);

  WeibelParams params = preset_params(manifest.preset);
  Discretization disc = make_discretization(manifest_mesh(manifest));
  SimState state = weibel_initial_state(disc, params);
  const SchemeConfig& cfg = manifest.scheme;

  auto next_dt = [&]() {
    if (cfg.dt) return *cfg.dt;
    return cfl_dt(disc, state, *cfg.cfl);
  };
  if (cfg.id == SchemeId::scheme1 || cfg.id == SchemeId::scheme3 || cfg.id == SchemeId::scheme3f)
    init_staggered(disc, cfg, state, manifest.t_final > 0.0 ? next_dt() : (cfg.dt ? *cfg.dt : 1.0));

  RunResult result;
  result.diagnostics.push_back(make_record(disc, state, cfg, 0, params.k0));

  std::vector<double> snapshots = manifest.snapshot_times;
  std::sort(snapshots.begin(), snapshots.end());
  size_t next_snap = 0;
  auto emit_snapshots = [&]() {
    while (next_snap < snapshots.size() && state.time >= snapshots[next_snap] - 1e-12) {
      std::string label = snapshot_label(snapshots[next_snap]);
      write_fields_csv(manifest.out_dir + "/fields_t" + label + ".csv", disc, state.em);
      for (double loc : manifest.slice_locations) {
        int xn = nearest_x_node(disc, loc);
        write_fslice_csv(manifest.out_dir + "/fslice_x" + snapshot_label(loc) + "_t" + label +
                             ".csv",
                         disc, state.f, xn);
      }
      ++next_snap;
    }
  };
  emit_snapshots();

  long step = 0;
  const double t_end = manifest.t_final;
  try {
    while (state.time < t_end - 1e-12 * std::max(1.0, t_end)) {
      double dt = next_dt();
      if (dt <= 0.0) throw std::runtime_error("nonpositive time step");
      if (state.time + dt > t_end) dt = t_end - state.time;
      advance(disc, cfg, state, dt);
      ++step;
      emit_snapshots();
      bool last = state.time >= t_end - 1e-12 * std::max(1.0, t_end);
      if (step % manifest.cadence == 0 || last)
        result.diagnostics.push_back(make_record(disc, state, cfg, step, params.k0));
    }
  } catch (const std::exception& err) {
    result.aborted = true;
    result.abort_message = err.what();
    write_lines(manifest.out_dir + "/ABORTED", std::string(err.what()) + "\n");
  }

  write_diagnostics_csv(manifest.out_dir + "/diagnostics.csv", result.diagnostics);
  const char* field_names[3] = {"E1", "E2", "B3"};
  for (int fi = 0; fi < 3; ++fi)
    write_logfm_csv(manifest.out_dir + "/logfm_" + field_names[fi] + ".csv", result.diagnostics,
                    fi);
  return result;
}

std::vector<ConvergenceRow> reversal_accuracy_study(const RunManifest& manifest,
                                                    const std::vector<int>& meshes,
                                                    std::ostream* progress) {
  if (meshes.size() < 2)
    throw std::invalid_argument("reversal_accuracy_study: need at least two meshes");
  if (manifest.t_final <= 0.0)
    throw std::invalid_argument("reversal_accuracy_study: t_final must be > 0");

  WeibelParams params = preset_params(manifest.preset);
  const double length = 2.0 * M_PI / params.k0;
  const SchemeConfig& base_cfg = manifest.scheme;
  const double power = 0.5 * (manifest.k + 1); // matches the temporal order to the spatial one

  auto min_h = [&](int n) {
    return std::min({length / n, 2.0 * manifest.v1c / n, 2.0 * manifest.v2c / n});
  };

  const char* field_names[4] = {"f", "E1", "E2", "B3"};
  std::vector<std::array<double, 4>> errors;
  std::vector<ConvergenceRow> rows;

  for (size_t mi = 0; mi < meshes.size(); ++mi) {
    int n = meshes[mi];
    Mesh1D2V mesh = build_mesh(n, n, n, length, manifest.v1c, manifest.v2c, manifest.k);
    Discretization disc = make_discretization(mesh);
    SimState state = weibel_initial_state(disc, params);

    double dt;
    if (base_cfg.cfl) {
      dt = *base_cfg.cfl * std::pow(min_h(n), power);
    } else {
      dt = *base_cfg.dt * std::pow(min_h(n) / min_h(meshes.front()), power);
    }
    long nsteps = static_cast<long>(std::ceil(manifest.t_final / dt - 1e-9));
    double dt_eff = manifest.t_final / static_cast<double>(nsteps);

    SchemeConfig cfg = base_cfg;
    if (cfg.id == SchemeId::scheme1 || cfg.id == SchemeId::scheme3 || cfg.id == SchemeId::scheme3f)
      init_staggered(disc, cfg, state, dt_eff);
    if (progress)
      *progress << "mesh " << n << "^3: dt = " << dt_eff << ", steps = " << 2 * nsteps << "\n";

    for (long s = 0; s < nsteps; ++s) advance(disc, cfg, state, dt_eff);
    reverse_state(disc, state);
    if (cfg.id == SchemeId::scheme1 || cfg.id == SchemeId::scheme3 || cfg.id == SchemeId::scheme3f)
      init_staggered(disc, cfg, state, dt_eff);
    for (long s = 0; s < nsteps; ++s) advance(disc, cfg, state, dt_eff);

    auto errs = reversal_errors(disc, state, params);
    errors.push_back({errs[0], errs[1], errs[2], errs[3]});
    for (int fi = 0; fi < 4; ++fi) {
      ConvergenceRow row;
      row.mesh_n = n;
      row.field = field_names[fi];
      row.l2_error = errs[fi];
      if (mi == 0) {
        row.order = std::numeric_limits<double>::quiet_NaN();
      } else {
        double ratio = static_cast<double>(meshes[mi]) / meshes[mi - 1];
        row.order = std::log(errors[mi - 1][fi] / errs[fi]) / std::log(ratio);
      }
      rows.push_back(row);
    }
  }
  return rows;
}

} // namespace vmdg
