#include "vmdg/state.hpp"

#include "vmdg/errors.hpp"

#include <cmath>

namespace vmdg {

Discretization make_discretization(const Mesh1D2V& mesh) {
  Discretization disc;
  disc.mesh = mesh;
  disc.basis = nodal_basis(mesh.points());
  disc.tables = make_phase_tables(disc.mesh, disc.basis);
  return disc;
}

SimState make_state(const Discretization& disc) {
  SimState state;
  state.f = make_distribution(disc.mesh);
  state.em = make_em_field(disc.mesh);
  return state;
}

void check_finite(const SimState& state, const char* stage) {
  for (double v : state.f.values)
    if (!std::isfinite(v)) throw BlowUpError(stage);
  for (double v : state.em.e1)
    if (!std::isfinite(v)) throw BlowUpError(stage);
  for (double v : state.em.e2)
    if (!std::isfinite(v)) throw BlowUpError(stage);
  for (double v : state.em.b3)
    if (!std::isfinite(v)) throw BlowUpError(stage);
}

} // namespace vmdg
