#pragma once

#include "vmdg/quadrature.hpp"

#include <vector>

namespace vmdg {

enum class Axis { x2, v1, v2 };

// Cartesian phase-space mesh: periodic x2 on [0, L], hard-truncated velocity
// box [-V1c, V1c] x [-V2c, V2c]. Edge arrays may be nonuniform; operators
// always read cell widths from the edges.
struct Mesh1D2V {
  std::vector<double> x2_edges;
  std::vector<double> v1_edges;
  std::vector<double> v2_edges;
  int degree = 1; // polynomial degree k per direction

  int nx() const { return static_cast<int>(x2_edges.size()) - 1; }
  int nv1() const { return static_cast<int>(v1_edges.size()) - 1; }
  int nv2() const { return static_cast<int>(v2_edges.size()) - 1; }
  int points() const { return degree + 1; }

  double length() const { return x2_edges.back() - x2_edges.front(); }
  double v1_max() const { return v1_edges.back(); }
  double v2_max() const { return v2_edges.back(); }

  double dx(int i) const { return x2_edges[i + 1] - x2_edges[i]; }
  double dv1(int j) const { return v1_edges[j + 1] - v1_edges[j]; }
  double dv2(int j) const { return v2_edges[j + 1] - v2_edges[j]; }

  // Periodic neighbor index in x2; total and involutive.
  int x_wrap(int i) const {
    int n = nx();
    return ((i % n) + n) % n;
  }
};

Mesh1D2V build_mesh(int n_x, int n_v1, int n_v2, double length, double v1c, double v2c,
                    int degree);

// Physical coordinate of a local Gauss node inside a cell.
double physical_node(const Mesh1D2V& mesh, const QuadRule& rule, Axis axis, int cell, int node);

} // namespace vmdg
