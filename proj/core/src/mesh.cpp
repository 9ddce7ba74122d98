#include "vmdg/mesh.hpp"

#include <stdexcept>
#include <string>

namespace vmdg {

namespace {

std::vector<double> uniform_edges(int n, double lo, double hi) {
  std::vector<double> edges(n + 1);
  for (int i = 0; i <= n; ++i) edges[i] = lo + (hi - lo) * static_cast<double>(i) / n;
  edges.front() = lo;
  edges.back() = hi;
  return edges;
}

} // namespace

Mesh1D2V build_mesh(int n_x, int n_v1, int n_v2, double length, double v1c, double v2c,
                    int degree) {
  if (n_x < 1 || n_v1 < 1 || n_v2 < 1)
    throw std::invalid_argument("build_mesh: cell counts must be >= 1");
  if (length <= 0.0 || v1c <= 0.0 || v2c <= 0.0)
    throw std::invalid_argument("build_mesh: domain lengths must be > 0");
  if (degree < 1) throw std::invalid_argument("build_mesh: degree must be >= 1");

  Mesh1D2V mesh;
  mesh.degree = degree;
  mesh.x2_edges = uniform_edges(n_x, 0.0, length);
  mesh.v1_edges = uniform_edges(n_v1, -v1c, v1c);
  mesh.v2_edges = uniform_edges(n_v2, -v2c, v2c);
  return mesh;
}

double physical_node(const Mesh1D2V& mesh, const QuadRule& rule, Axis axis, int cell, int node) {
  const std::vector<double>* edges = nullptr;
  switch (axis) {
    case Axis::x2: edges = &mesh.x2_edges; break;
    case Axis::v1: edges = &mesh.v1_edges; break;
    case Axis::v2: edges = &mesh.v2_edges; break;
  }
  int ncells = static_cast<int>(edges->size()) - 1;
  if (cell < 0 || cell >= ncells)
    throw std::out_of_range("physical_node: cell index " + std::to_string(cell) + " out of range");
  if (node < 0 || node >= rule.order)
    throw std::out_of_range("physical_node: node index " + std::to_string(node) + " out of range");
  double a = (*edges)[cell], b = (*edges)[cell + 1];
  return a + 0.5 * (rule.nodes[node] + 1.0) * (b - a);
}

} // namespace vmdg
