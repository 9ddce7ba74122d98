#include "vmdg/quadrature.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace vmdg {

namespace {

// Legendre polynomial P_n and its derivative at x, by the three-term
// recurrence. Returns {P_n(x), P_n'(x)}.
std::pair<double, double> legendre(int n, double x) {
  double p0 = 1.0, p1 = x;
  if (n == 0) return {p0, 0.0};
  for (int j = 2; j <= n; ++j) {
    double p2 = ((2 * j - 1) * x * p1 - (j - 1) * p0) / j;
    p0 = p1;
    p1 = p2;
  }
  double dp = n * (x * p1 - p0) / (x * x - 1.0);
  return {p1, dp};
}

} // namespace

QuadRule gauss_rule(int order) {
  if (order < 1) throw std::invalid_argument("gauss_rule: order must be >= 1");
  QuadRule rule;
  rule.order = order;
  rule.nodes.resize(order);
  rule.weights.resize(order);
  if (order == 1) {
    rule.nodes[0] = 0.0;
    rule.weights[0] = 2.0;
    return rule;
  }
  const int n = order;
  for (int i = 0; i < (n + 1) / 2; ++i) {
    // Chebyshev-based initial guess, refined by Newton on P_n.
    double x = -std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      auto [p, d] = legendre(n, x);
      dp = d;
      double dx = -p / d;
      x += dx;
      if (std::abs(dx) < 1e-15) {
        dp = legendre(n, x).second;
        break;
      }
    }
    double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[i] = x;
    rule.weights[i] = w;
    rule.nodes[n - 1 - i] = -x;
    rule.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) {
    rule.nodes[n / 2] = 0.0;
    auto dp = legendre(n, 0.0).second;
    rule.weights[n / 2] = 2.0 / (dp * dp);
  }
  return rule;
}

NodalBasis1D nodal_basis(int order) {
  NodalBasis1D basis;
  basis.rule = gauss_rule(order);
  const int n = order;
  const auto& x = basis.rule.nodes;

  // Barycentric weights of the node set.
  std::vector<double> bary(n, 1.0);
  for (int l = 0; l < n; ++l)
    for (int j = 0; j < n; ++j)
      if (j != l) bary[l] /= (x[l] - x[j]);

  basis.diff.assign(n * n, 0.0);
  for (int m = 0; m < n; ++m) {
    double diag = 0.0;
    for (int l = 0; l < n; ++l) {
      if (l == m) continue;
      double d = bary[l] / (bary[m] * (x[m] - x[l]));
      basis.diff[m * n + l] = d;
      diag -= d;
    }
    basis.diff[m * n + m] = diag;
  }

  auto eval_at = [&](double xi) {
    std::vector<double> vals(n, 1.0);
    for (int l = 0; l < n; ++l) {
      for (int j = 0; j < n; ++j)
        if (j != l) vals[l] *= (xi - x[j]) / (x[l] - x[j]);
    }
    return vals;
  };
  basis.left = eval_at(-1.0);
  basis.right = eval_at(1.0);
  return basis;
}

std::vector<double> project_1d(const std::function<double(double)>& f,
                               const NodalBasis1D& basis, double a, double b) {
  const int n = basis.order();
  std::vector<double> vals(n);
  for (int m = 0; m < n; ++m) {
    double xm = a + 0.5 * (basis.rule.nodes[m] + 1.0) * (b - a);
    vals[m] = f(xm);
    if (!std::isfinite(vals[m]))
      throw std::runtime_error("project_1d: non-finite sample on cell [" + std::to_string(a) +
                               ", " + std::to_string(b) + "]");
  }
  return vals;
}

double lagrange_eval(const QuadRule& rule, std::span<const double> nodal, double xi) {
  const int n = rule.order;
  double value = 0.0;
  for (int l = 0; l < n; ++l) {
    double basis_l = 1.0;
    for (int j = 0; j < n; ++j)
      if (j != l) basis_l *= (xi - rule.nodes[j]) / (rule.nodes[l] - rule.nodes[j]);
    value += nodal[l] * basis_l;
  }
  return value;
}

} // namespace vmdg
