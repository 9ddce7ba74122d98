#pragma once

#include "vmdg/config.hpp"
#include "vmdg/diagnostics.hpp"
#include "vmdg/state.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace vmdg {

// Collocates the counter-streaming Maxwellian mixture and the seeded B3
// perturbation; E1 = E2 = 0.
SimState weibel_initial_state(const Discretization& disc, const WeibelParams& params);

Mesh1D2V manifest_mesh(const RunManifest& manifest);

struct RunResult {
  std::vector<DiagnosticsRecord> diagnostics;
  bool aborted = false;
  std::string abort_message;
};

// Steps the manifest's preset to t_final, emitting diagnostics every
// `cadence` steps and snapshot files when snapshot times are crossed. All
// outputs land in manifest.out_dir; identical manifests produce
// byte-identical files. A blow-up stops the run, flags it (ABORTED file)
// and keeps the partial outputs.
RunResult run_simulation(const RunManifest& manifest);

// In-place time-reversal map: reflect f in both velocity axes (exact index
// reflection; requires a symmetric velocity mesh), negate B3, drop staggered
// copies. An involution on discrete states.
void reverse_state(const Discretization& disc, SimState& state);

struct ConvergenceRow {
  int mesh_n = 0;
  std::string field;
  double l2_error = 0.0;
  double order = 0.0; // nan for the first mesh
};

// For each mesh N (cube N^3): run to t_final, apply the reversal map, run to
// 2 t_final, and measure L2 errors of f, E1, E2, B3 against the reversed
// initial data. Per-mesh step sizes follow dt = coeff * min(dx, dv)^((k+1)/2)
// with coeff the manifest cfl, or scale the manifest dt by the same power of
// the mesh ratio.
std::vector<ConvergenceRow> reversal_accuracy_study(const RunManifest& manifest,
                                                    const std::vector<int>& meshes,
                                                    std::ostream* progress = nullptr);

// L2 errors of a state against the reversed initial data of `params`
// (the t = 2T targets of the reversal protocol): fields f, E1, E2, B3.
std::vector<double> reversal_errors(const Discretization& disc, const SimState& state,
                                    const WeibelParams& params);

void write_diagnostics_csv(const std::string& path,
                           const std::vector<DiagnosticsRecord>& records);
void write_fields_csv(const std::string& path, const Discretization& disc, const EMField& em);
void write_fslice_csv(const std::string& path, const Discretization& disc,
                      const DistributionField& f, int x_node);
void write_logfm_csv(const std::string& path, const std::vector<DiagnosticsRecord>& records,
                     int field_index);
void write_convergence_csv(const std::string& path, const std::vector<ConvergenceRow>& rows);

// Shortest representation of a real with 17 significant digits.
std::string format_real(double v);

} // namespace vmdg
