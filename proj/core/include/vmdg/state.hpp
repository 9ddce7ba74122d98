#pragma once

#include "vmdg/fields.hpp"
#include "vmdg/mesh.hpp"
#include "vmdg/quadrature.hpp"
#include "vmdg/vlasov.hpp"

namespace vmdg {

// Mesh, nodal basis and precomputed node tables, shared read-only by all
// operators of a run.
struct Discretization {
  Mesh1D2V mesh;
  NodalBasis1D basis;
  PhaseTables tables;
};

Discretization make_discretization(const Mesh1D2V& mesh);

struct SimState {
  DistributionField f;
  EMField em;
  double time = 0.0;
};

SimState make_state(const Discretization& disc);

// Throws BlowUpError naming `stage` if any value of the state is non-finite.
void check_finite(const SimState& state, const char* stage);

} // namespace vmdg
