#pragma once

#include "vmdg/config.hpp"
#include "vmdg/state.hpp"

#include <array>
#include <optional>
#include <vector>

namespace vmdg {

// Per-step conserved-quantity and spectral measurements. Energy partitions
// K1/K2 and the field energies carry the 1/(2L) normalization used for the
// published energy-history plots; total_energy is the plain integral
//   TE = 1/2 [ integral f |v|^2 + integral (E1^2 + E2^2 + B3^2) ].
struct DiagnosticsRecord {
  long step = 0;
  double t = 0.0;
  double particle_number = 0.0;
  double l2_f = 0.0;
  double k1 = 0.0, k2 = 0.0;
  double e1_energy = 0.0, e2_energy = 0.0, b3_energy = 0.0;
  double total_energy = 0.0;
  std::optional<double> modified_energy; // schemes 1 and 3 only
  std::array<std::array<double, 4>, 3> logfm{}; // E1, E2, B3
};

double particle_number(const Discretization& disc, const DistributionField& f);
double l2_norm_f(const Discretization& disc, const DistributionField& f);

struct EnergyReport {
  double k1 = 0.0, k2 = 0.0;                            // 1/(2L)-normalized
  double e1_energy = 0.0, e2_energy = 0.0, b3_energy = 0.0; // 1/(2L)-normalized
  double total = 0.0;                                   // un-normalized TE
  std::optional<double> modified;                       // un-normalized
};

// Quadrature energies of the state. For scheme 1 (or 3) the modified energy
// replaces |B|^2 (resp. |E|^2) by the product of the stored backward
// staggered field with the forward one recomputed from the state; both
// staggered copies must be present or this throws.
EnergyReport energies(const Discretization& disc, const DistributionField& f, const EMField& em,
                      SchemeId scheme, MaxwellFlux maxwell_flux);

// log10 of the magnitude of the first `count` spatial Fourier coefficients,
//   (1/L) sqrt( (int W sin(kappa n x))^2 + (int W cos(kappa n x))^2 ),
// floored at -300 so identically zero fields stay finite.
std::vector<double> log_fourier_modes(const Discretization& disc, std::span<const double> field,
                                      int count, double kappa);

DiagnosticsRecord make_record(const Discretization& disc, const SimState& state,
                              const SchemeConfig& scheme, long step, double kappa);

} // namespace vmdg
