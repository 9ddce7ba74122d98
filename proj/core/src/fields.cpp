#include "vmdg/fields.hpp"

#include "vmdg/errors.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <stdexcept>

namespace vmdg {

EMField make_em_field(const Mesh1D2V& mesh) {
  EMField em;
  em.nx = mesh.nx();
  em.np = mesh.points();
  em.e1.assign(em.size(), 0.0);
  em.e2.assign(em.size(), 0.0);
  em.b3.assign(em.size(), 0.0);
  return em;
}

TraceSide e_trace_side(MaxwellFlux flux) {
  switch (flux) {
    case MaxwellFlux::central: return TraceSide::central;
    case MaxwellFlux::alternating_Eplus_Bminus: return TraceSide::plus;
    case MaxwellFlux::alternating_Eminus_Bplus: return TraceSide::minus;
  }
  return TraceSide::central;
}

TraceSide b_trace_side(MaxwellFlux flux) {
  switch (flux) {
    case MaxwellFlux::central: return TraceSide::central;
    case MaxwellFlux::alternating_Eplus_Bminus: return TraceSide::minus;
    case MaxwellFlux::alternating_Eminus_Bplus: return TraceSide::plus;
  }
  return TraceSide::central;
}

void dg_deriv_periodic(const Mesh1D2V& mesh, const NodalBasis1D& basis,
                       std::span<const double> u, TraceSide side, std::span<double> out) {
  const int nx = mesh.nx();
  const int np = basis.order();
  if (u.size() != static_cast<size_t>(nx * np) || out.size() != u.size())
    throw std::invalid_argument("dg_deriv_periodic: shape mismatch");
  const auto& w = basis.rule.weights;

  // Single-valued interface values, face i+1/2 between cells i and i+1.
  std::vector<double> face(nx);
  for (int i = 0; i < nx; ++i) {
    int right_cell = mesh.x_wrap(i + 1);
    double um = 0.0, up = 0.0;
    for (int m = 0; m < np; ++m) {
      um += basis.right[m] * u[i * np + m];
      up += basis.left[m] * u[right_cell * np + m];
    }
    switch (side) {
      case TraceSide::central: face[i] = 0.5 * (um + up); break;
      case TraceSide::minus: face[i] = um; break;
      case TraceSide::plus: face[i] = up; break;
    }
  }

  for (int i = 0; i < nx; ++i) {
    double f_right = face[i];
    double f_left = face[mesh.x_wrap(i - 1)];
    double hx = mesh.dx(i);
    for (int l = 0; l < np; ++l) {
      double vol = 0.0;
      for (int m = 0; m < np; ++m) vol += u[i * np + m] * w[m] * basis.diff_at(m, l);
      out[i * np + l] =
          (2.0 / (hx * w[l])) * (-vol + f_right * basis.right[l] - f_left * basis.left[l]);
    }
  }
}

void maxwell_weak_rhs(const Mesh1D2V& mesh, const NodalBasis1D& basis,
                      std::span<const double> e1, std::span<const double> b3, MaxwellFlux flux,
                      std::span<double> de1_dt, std::span<double> db3_dt) {
  dg_deriv_periodic(mesh, basis, b3, b_trace_side(flux), de1_dt);
  dg_deriv_periodic(mesh, basis, e1, e_trace_side(flux), db3_dt);
}

namespace {

// out = z - (dt/2) L z with L the coupled curl operator, z = [e1; b3].
struct MidpointOp {
  const Mesh1D2V& mesh;
  const NodalBasis1D& basis;
  MaxwellFlux flux;
  double dt;

  void operator()(std::span<const double> z, std::span<double> out) const {
    const size_t half = z.size() / 2;
    auto e = z.subspan(0, half);
    auto b = z.subspan(half, half);
    std::vector<double> de(half), db(half);
    maxwell_weak_rhs(mesh, basis, e, b, flux, de, db);
    for (size_t i = 0; i < half; ++i) {
      out[i] = e[i] - 0.5 * dt * de[i];
      out[half + i] = b[i] - 0.5 * dt * db[i];
    }
  }
};

std::vector<double> midpoint_rhs(const Mesh1D2V& mesh, const NodalBasis1D& basis,
                                 std::span<const double> e1, std::span<const double> b3,
                                 double dt, std::span<const double> j1_mid, MaxwellFlux flux) {
  const size_t half = e1.size();
  std::vector<double> de(half), db(half), rhs(2 * half);
  maxwell_weak_rhs(mesh, basis, e1, b3, flux, de, db);
  for (size_t i = 0; i < half; ++i) {
    rhs[i] = e1[i] + 0.5 * dt * de[i] - dt * j1_mid[i];
    rhs[half + i] = b3[i] + 0.5 * dt * db[i];
  }
  return rhs;
}

} // namespace

void maxwell_midpoint_solve(const Mesh1D2V& mesh, const NodalBasis1D& basis,
                            std::span<double> e1, std::span<double> b3, double dt,
                            std::span<const double> j1_mid, MaxwellFlux flux,
                            const KrylovConfig& krylov) {
  if (dt == 0.0) throw std::invalid_argument("maxwell_midpoint_solve: dt must be nonzero");
  const size_t half = e1.size();
  std::vector<double> rhs = midpoint_rhs(mesh, basis, e1, b3, dt, j1_mid, flux);
  std::vector<double> z(2 * half);
  std::copy(e1.begin(), e1.end(), z.begin());
  std::copy(b3.begin(), b3.end(), z.begin() + half);
  MidpointOp op{mesh, basis, flux, dt};
  gmres_or_throw([&op](std::span<const double> in, std::span<double> out) { op(in, out); }, rhs,
                 z, krylov, "maxwell midpoint system");
  std::copy(z.begin(), z.begin() + half, e1.begin());
  std::copy(z.begin() + half, z.end(), b3.begin());
}

void maxwell_midpoint_solve_dense(const Mesh1D2V& mesh, const NodalBasis1D& basis,
                                  std::span<double> e1, std::span<double> b3, double dt,
                                  std::span<const double> j1_mid, MaxwellFlux flux) {
  const size_t half = e1.size();
  const size_t n = 2 * half;
  if (half > 512) throw std::invalid_argument("maxwell_midpoint_solve_dense: system too large");
  MidpointOp op{mesh, basis, flux, dt};
  Eigen::MatrixXd A(n, n);
  std::vector<double> unit(n, 0.0), col(n);
  for (size_t j = 0; j < n; ++j) {
    unit[j] = 1.0;
    op(unit, col);
    unit[j] = 0.0;
    for (size_t i = 0; i < n; ++i) A(i, j) = col[i];
  }
  std::vector<double> rhs = midpoint_rhs(mesh, basis, e1, b3, dt, j1_mid, flux);
  Eigen::VectorXd b = Eigen::Map<Eigen::VectorXd>(rhs.data(), n);
  Eigen::VectorXd z = A.partialPivLu().solve(b);
  for (size_t i = 0; i < half; ++i) {
    e1[i] = z(i);
    b3[i] = z(half + i);
  }
}

void maxwell_leapfrog_halves(const Mesh1D2V& mesh, const NodalBasis1D& basis,
                             std::span<double> e1, std::span<double> b3, double dt,
                             std::span<const double> j1_mid, MaxwellFlux flux,
                             std::span<double> b3_half) {
  const size_t n = e1.size();
  std::vector<double> deriv(n);

  dg_deriv_periodic(mesh, basis, e1, e_trace_side(flux), deriv);
  for (size_t i = 0; i < n; ++i) b3[i] += 0.5 * dt * deriv[i];
  std::copy(b3.begin(), b3.end(), b3_half.begin());

  dg_deriv_periodic(mesh, basis, b3, b_trace_side(flux), deriv);
  for (size_t i = 0; i < n; ++i) e1[i] += dt * (deriv[i] - j1_mid[i]);

  dg_deriv_periodic(mesh, basis, e1, e_trace_side(flux), deriv);
  for (size_t i = 0; i < n; ++i) b3[i] += 0.5 * dt * deriv[i];
}

} // namespace vmdg
