#pragma once

#include <functional>
#include <span>
#include <vector>

namespace vmdg {

// Gauss-Legendre rule on the reference cell [-1, 1].
// Weights are strictly positive and sum to 2; nodes are strictly increasing
// and symmetric about 0. A rule with `order` points integrates polynomials
// of degree <= 2*order - 1 exactly.
struct QuadRule {
  int order = 0;
  std::vector<double> nodes;
  std::vector<double> weights;
};

QuadRule gauss_rule(int order);

// Lagrange nodal basis at the Gauss points of a QuadRule.
//   diff[m * order + l]  = d/dxi L_l evaluated at node m (reference cell)
//   left[l], right[l]    = L_l(-1), L_l(+1)
// The mass matrix of this basis under its own quadrature is exactly diagonal
// with entries weights[l].
struct NodalBasis1D {
  QuadRule rule;
  std::vector<double> diff;
  std::vector<double> left;
  std::vector<double> right;

  int order() const { return rule.order; }
  double diff_at(int node, int poly) const { return diff[node * rule.order + poly]; }
};

NodalBasis1D nodal_basis(int order);

// Collocation projection: samples f at the Gauss nodes of [a, b]. Rejects
// non-finite samples, naming the cell.
std::vector<double> project_1d(const std::function<double(double)>& f,
                               const NodalBasis1D& basis, double a, double b);

// Value of the interpolating polynomial with the given nodal values at
// reference coordinate xi in [-1, 1].
double lagrange_eval(const QuadRule& rule, std::span<const double> nodal, double xi);

} // namespace vmdg
