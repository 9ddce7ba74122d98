#pragma once

#include "vmdg/fields.hpp"
#include "vmdg/solvers.hpp"
#include "vmdg/vlasov.hpp"

#include <optional>
#include <string>
#include <vector>

namespace vmdg {

// Time integrators. 1: explicit Vlasov + leapfrog Maxwell. 2: explicit
// Vlasov + implicit midpoint Maxwell. 3: implicit midpoint Vlasov + leapfrog
// Maxwell. 4: implicit midpoint on the full system. 5: Strang-split implicit
// (streaming / electric / magnetic sub-flows). 3F/4F/5F: fourth-order
// triple-jump compositions of the time-symmetric schemes.
enum class SchemeId { scheme1, scheme2, scheme3, scheme4, scheme5, scheme3f, scheme4f, scheme5f };

const char* scheme_name(SchemeId id);
bool scheme_is_explicit_in_f(SchemeId id); // schemes 1 and 2
bool scheme_is_composition(SchemeId id);

struct SchemeConfig {
  SchemeId id = SchemeId::scheme2;
  VlasovFlux vlasov_flux = VlasovFlux::upwind;
  MaxwellFlux maxwell_flux = MaxwellFlux::alternating_Eplus_Bminus;
  std::optional<double> dt;  // fixed step
  std::optional<double> cfl; // explicit-in-f schemes only
  double eps_tol = 1e-12;    // Newton residual stop
  KrylovConfig krylov;       // linear solves
  int max_newton = 50;
};

// Counter-streaming Maxwellian beams with a seeded magnetic perturbation.
struct WeibelParams {
  double beta = 0.01;   // thermal spread
  double b = 0.001;     // B3 perturbation amplitude
  double delta = 0.5;   // beam symmetry in [0, 1]
  double v01 = 0.3;     // forward beam speed
  double v02 = 0.3;     // backward beam speed
  double k0 = 0.2;      // wave number; L = 2 pi / k0
};

enum class PresetId { weibel_run1, weibel_run2 };

WeibelParams preset_params(PresetId preset);
const char* preset_name(PresetId preset);

struct RunManifest {
  PresetId preset = PresetId::weibel_run1;
  SchemeConfig scheme;
  int k = 2;
  int nx = 32, nv1 = 32, nv2 = 32;
  double v1c = 1.5, v2c = 1.5;
  double t_final = 0.0;
  int cadence = 1;
  std::string out_dir = "out";
  std::vector<double> snapshot_times;
  std::vector<double> slice_locations;
};

// Parses the line-oriented "key = value" format ('#' comments). Applies
// defaults, validates constraints, rejects unknown keys; errors name the
// offending line. `accuracy_defaults` selects the smaller velocity box used
// by accuracy studies when v1c/v2c are not given.
RunManifest parse_config(const std::string& text, bool accuracy_defaults = false);

} // namespace vmdg
