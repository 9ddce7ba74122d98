#include "vmdg/solvers.hpp"

#include "vmdg/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace vmdg {

namespace {

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm2(std::span<const double> a) { return std::sqrt(dot(a, a)); }

double norm_inf(std::span<const double> a) {
  double m = 0.0;
  for (double v : a) m = std::max(m, std::abs(v));
  return m;
}

} // namespace

KrylovReport gmres(const LinearOp& apply, std::span<const double> b, std::span<double> x,
                   const KrylovConfig& config) {
  const size_t n = b.size();
  const int m = config.restart;
  KrylovReport report;

  const double bnorm = norm2(b);
  const double target = std::max(config.rtol * bnorm, config.atol);

  std::vector<double> r(n), w(n);
  // Krylov basis, (m+1) vectors of length n.
  std::vector<std::vector<double>> V(m + 1, std::vector<double>(n));
  std::vector<double> H((m + 1) * m, 0.0);
  std::vector<double> cs(m), sn(m), g(m + 1);
  std::vector<double> y(m);

  apply(x, r);
  for (size_t i = 0; i < n; ++i) r[i] = b[i] - r[i];
  double rnorm = norm2(r);
  report.residual = rnorm;
  report.residual_history.push_back(rnorm);
  if (rnorm <= target) {
    report.converged = true;
    return report;
  }

  while (report.iterations < config.max_iters) {
    double beta = rnorm;
    for (size_t i = 0; i < n; ++i) V[0][i] = r[i] / beta;
    std::fill(g.begin(), g.end(), 0.0);
    g[0] = beta;
    std::fill(H.begin(), H.end(), 0.0);

    int k = 0;
    for (; k < m && report.iterations < config.max_iters; ++k) {
      ++report.iterations;
      apply(V[k], w);
      // Modified Gram-Schmidt.
      for (int j = 0; j <= k; ++j) {
        double h = dot(w, V[j]);
        H[j * m + k] = h;
        for (size_t i = 0; i < n; ++i) w[i] -= h * V[j][i];
      }
      double hk1 = norm2(w);
      H[(k + 1) * m + k] = hk1;
      bool breakdown = hk1 <= 1e-300;
      if (!breakdown)
        for (size_t i = 0; i < n; ++i) V[k + 1][i] = w[i] / hk1;

      // Apply accumulated Givens rotations to the new column.
      for (int j = 0; j < k; ++j) {
        double t = cs[j] * H[j * m + k] + sn[j] * H[(j + 1) * m + k];
        H[(j + 1) * m + k] = -sn[j] * H[j * m + k] + cs[j] * H[(j + 1) * m + k];
        H[j * m + k] = t;
      }
      double denom = std::hypot(H[k * m + k], H[(k + 1) * m + k]);
      cs[k] = H[k * m + k] / denom;
      sn[k] = H[(k + 1) * m + k] / denom;
      H[k * m + k] = denom;
      H[(k + 1) * m + k] = 0.0;
      g[k + 1] = -sn[k] * g[k];
      g[k] = cs[k] * g[k];

      rnorm = std::abs(g[k + 1]);
      report.residual_history.push_back(rnorm);
      if (rnorm <= target || breakdown) {
        ++k;
        break;
      }
    }

    // Back-substitute H y = g and update x.
    for (int i = k - 1; i >= 0; --i) {
      double s = g[i];
      for (int j = i + 1; j < k; ++j) s -= H[i * m + j] * y[j];
      y[i] = s / H[i * m + i];
    }
    for (int j = 0; j < k; ++j)
      for (size_t i = 0; i < n; ++i) x[i] += y[j] * V[j][i];

    apply(x, r);
    for (size_t i = 0; i < n; ++i) r[i] = b[i] - r[i];
    rnorm = norm2(r);
    report.residual = rnorm;
    if (rnorm <= target) {
      report.converged = true;
      return report;
    }
  }
  report.residual = rnorm;
  report.converged = rnorm <= target;
  return report;
}

KrylovReport gmres_or_throw(const LinearOp& apply, std::span<const double> b,
                            std::span<double> x, const KrylovConfig& config,
                            const std::string& what) {
  KrylovReport report = gmres(apply, b, x, config);
  if (!report.converged)
    throw SolverError("gmres failed for " + what + ": residual " +
                          std::to_string(report.residual) + " after " +
                          std::to_string(report.iterations) + " iterations",
                      report.residual, report.iterations);
  return report;
}

NewtonReport newton_krylov(const ResidualFn& residual, std::span<double> u,
                           const NewtonConfig& newton_config, const KrylovConfig& krylov_config,
                           const std::string& what) {
  const size_t n = u.size();
  NewtonReport report;

  std::vector<double> r(n), r_trial(n), delta(n), u_trial(n), u_base(n);
  residual(u, r);
  double rinf = norm_inf(r);
  report.residual_inf = rinf;
  int polish_left = newton_config.polish;
  if (rinf < newton_config.tol && polish_left == 0) {
    report.converged = true;
    return report;
  }

  const double sqrt_eps = std::sqrt(std::numeric_limits<double>::epsilon());

  for (int it = 0; it < newton_config.max_iters + newton_config.polish; ++it) {
    const bool converged_already = rinf < newton_config.tol;
    std::copy(u.begin(), u.end(), u_base.begin());
    const double unorm = norm2(u_base);

    // Finite-difference directional derivative around the current iterate.
    auto jacobian_vec = [&](std::span<const double> p, std::span<double> out) {
      double pnorm = norm2(p);
      if (pnorm == 0.0) {
        std::fill(out.begin(), out.end(), 0.0);
        return;
      }
      double sigma = sqrt_eps * (1.0 + unorm) / pnorm;
      for (size_t i = 0; i < n; ++i) u_trial[i] = u_base[i] + sigma * p[i];
      residual(u_trial, out);
      for (size_t i = 0; i < n; ++i) out[i] = (out[i] - r[i]) / sigma;
    };

    std::vector<double> rhs(n);
    for (size_t i = 0; i < n; ++i) rhs[i] = -r[i];
    std::fill(delta.begin(), delta.end(), 0.0);

    KrylovConfig inner = krylov_config;
    inner.rtol = newton_config.forcing;
    inner.atol = newton_config.forcing * newton_config.tol;
    KrylovReport krep = gmres(jacobian_vec, rhs, delta, inner);
    report.krylov_iterations += krep.iterations;
    ++report.newton_iterations;

    // Backtracking line search on the infinity norm.
    double lambda = 1.0;
    bool accepted = false;
    for (int back = 0; back < 9; ++back) {
      for (size_t i = 0; i < n; ++i) u_trial[i] = u_base[i] + lambda * delta[i];
      residual(u_trial, r_trial);
      double trial_inf = norm_inf(r_trial);
      if (trial_inf < rinf || !newton_config.line_search) {
        std::copy(u_trial.begin(), u_trial.end(), u.begin());
        std::swap(r, r_trial);
        rinf = trial_inf;
        accepted = true;
        break;
      }
      lambda *= 0.5;
    }
    if (!accepted) {
      if (converged_already) { // polish could not improve; keep the converged iterate
        report.converged = true;
        return report;
      }
      throw SolverError("newton_krylov diverged for " + what + ": residual " +
                            std::to_string(rinf) + " not reduced within line-search budget",
                        rinf, report.newton_iterations);
    }

    report.residual_inf = rinf;
    if (rinf < newton_config.tol) {
      report.converged = true;
      if (polish_left == 0) return report;
      --polish_left;
    }
  }
  if (report.converged) return report;
  throw SolverError("newton_krylov failed for " + what + ": residual " + std::to_string(rinf) +
                        " after " + std::to_string(report.newton_iterations) + " iterations",
                    rinf, report.newton_iterations);
}

} // namespace vmdg
