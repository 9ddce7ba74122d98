#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

namespace vmdg {

// Applies a linear operator: out = A * in. Dimensions fixed by the caller.
using LinearOp = std::function<void(std::span<const double>, std::span<double>)>;

// Nonlinear residual: out = R(u).
using ResidualFn = std::function<void(std::span<const double>, std::span<double>)>;

struct KrylovConfig {
  int restart = 30;
  int max_iters = 200;
  double rtol = 1e-13;
  double atol = 1e-300; // effectively off unless set
};

struct KrylovReport {
  int iterations = 0;
  double residual = 0.0;
  bool converged = false;
  std::vector<double> residual_history; // one entry per inner iteration
};

// Restarted GMRES with modified Gram-Schmidt and Givens rotations, matrix
// free. x holds the initial guess on entry and the best iterate on return.
// Stops when ||b - A x|| <= max(rtol * ||b||, atol).
KrylovReport gmres(const LinearOp& apply, std::span<const double> b, std::span<double> x,
                   const KrylovConfig& config);

// As gmres, but throws SolverError when not converged (x keeps the best
// iterate). `what` names the system being solved.
KrylovReport gmres_or_throw(const LinearOp& apply, std::span<const double> b,
                            std::span<double> x, const KrylovConfig& config,
                            const std::string& what);

struct NewtonConfig {
  double tol = 1e-12; // stop when ||R(u)||_inf < tol
  int max_iters = 50;
  bool line_search = true;
  double forcing = 1e-2; // relative tolerance of the inner linear solves
  // extra iterations after the tolerance is met; they drive the achieved
  // residual well below tol (conserved quantities integrate the residual
  // over phase space) and never un-converge the iterate
  int polish = 1;
};

struct NewtonReport {
  int newton_iterations = 0;
  int krylov_iterations = 0;
  double residual_inf = 0.0;
  bool converged = false;
};

// Jacobian-free Newton-Krylov. Jacobian-vector products are one-sided finite
// differences with perturbation sqrt(eps_mach) * (1 + ||u||) / ||p||; the
// inner GMRES solves to max(forcing * ||R||, forcing * tol). Throws
// SolverError on divergence (line-search budget exhausted) or iteration
// exhaustion; `what` names the system.
NewtonReport newton_krylov(const ResidualFn& residual, std::span<double> u,
                           const NewtonConfig& newton_config, const KrylovConfig& krylov_config,
                           const std::string& what);

} // namespace vmdg
