#include "vmdg/vlasov.hpp"

#include <cmath>
#include <stdexcept>

namespace vmdg {

namespace {

inline double face_flux(double a, double um, double up, VlasovFlux flux) {
  switch (flux) {
    case VlasovFlux::central: return 0.5 * a * (um + up);
    case VlasovFlux::upwind: return 0.5 * a * (um + up) + 0.5 * std::abs(a) * (um - up);
    case VlasovFlux::downwind: return 0.5 * a * (um + up) - 0.5 * std::abs(a) * (um - up);
  }
  return 0.0;
}

} // namespace

DistributionField make_distribution(const Mesh1D2V& mesh) {
  DistributionField f;
  f.nx = mesh.nx();
  f.nv1 = mesh.nv1();
  f.nv2 = mesh.nv2();
  f.np = mesh.points();
  f.values.assign(size_t(f.xdim()) * f.vdim(), 0.0);
  return f;
}

PhaseTables make_phase_tables(const Mesh1D2V& mesh, const NodalBasis1D& basis) {
  PhaseTables t;
  const int np = basis.order();
  const auto& xi = basis.rule.nodes;
  const auto& w = basis.rule.weights;

  t.x_node.resize(size_t(mesh.nx()) * np);
  t.x_weight.resize(t.x_node.size());
  for (int i = 0; i < mesh.nx(); ++i)
    for (int l = 0; l < np; ++l) {
      t.x_node[i * np + l] = mesh.x2_edges[i] + 0.5 * (xi[l] + 1.0) * mesh.dx(i);
      t.x_weight[i * np + l] = 0.5 * mesh.dx(i) * w[l];
    }

  const size_t vdim = size_t(mesh.nv1()) * np * mesh.nv2() * np;
  t.v1_node.resize(vdim);
  t.v2_node.resize(vdim);
  t.v_weight.resize(vdim);
  size_t q = 0;
  for (int j1 = 0; j1 < mesh.nv1(); ++j1)
    for (int m1 = 0; m1 < np; ++m1) {
      double v1 = mesh.v1_edges[j1] + 0.5 * (xi[m1] + 1.0) * mesh.dv1(j1);
      double w1 = 0.5 * mesh.dv1(j1) * w[m1];
      for (int j2 = 0; j2 < mesh.nv2(); ++j2)
        for (int m2 = 0; m2 < np; ++m2, ++q) {
          t.v1_node[q] = v1;
          t.v2_node[q] = mesh.v2_edges[j2] + 0.5 * (xi[m2] + 1.0) * mesh.dv2(j2);
          t.v_weight[q] = w1 * 0.5 * mesh.dv2(j2) * w[m2];
        }
    }
  return t;
}

void transport_x_rhs(const Mesh1D2V& mesh, const NodalBasis1D& basis,
                     std::span<const double> slice, double speed, VlasovFlux flux,
                     std::span<double> out) {
  const int nx = mesh.nx();
  const int np = basis.order();
  if (slice.size() != static_cast<size_t>(nx * np) || out.size() != slice.size())
    throw std::invalid_argument("transport_x_rhs: shape mismatch");
  if (!std::isfinite(speed)) throw std::invalid_argument("transport_x_rhs: non-finite speed");
  const auto& w = basis.rule.weights;

  // Numerical flux at face i+1/2 (between cells i and i+1, periodic).
  std::vector<double> face(nx);
  for (int i = 0; i < nx; ++i) {
    int rc = mesh.x_wrap(i + 1);
    double um = 0.0, up = 0.0;
    for (int m = 0; m < np; ++m) {
      um += basis.right[m] * slice[i * np + m];
      up += basis.left[m] * slice[rc * np + m];
    }
    face[i] = face_flux(speed, um, up, flux);
  }

  for (int i = 0; i < nx; ++i) {
    double f_right = face[i];
    double f_left = face[mesh.x_wrap(i - 1)];
    double hx = mesh.dx(i);
    for (int l = 0; l < np; ++l) {
      double vol = 0.0;
      for (int m = 0; m < np; ++m) vol += w[m] * basis.diff_at(m, l) * slice[i * np + m];
      out[i * np + l] =
          (2.0 / (hx * w[l])) * (speed * vol - f_right * basis.right[l] + f_left * basis.left[l]);
    }
  }
}

namespace {

// Accumulates the (v1, v2) transport residual into out (+=).
void add_transport_v(const Mesh1D2V& mesh, const NodalBasis1D& basis,
                     std::span<const double> slab, const LinearVCoeff& a1,
                     const LinearVCoeff& a2, VlasovFlux flux, std::span<double> out) {
  const int np = basis.order();
  const int nv1 = mesh.nv1();
  const int nv2 = mesh.nv2();
  const int lanes = nv2 * np; // contiguous (j2, m2) block
  const auto& w = basis.rule.weights;
  const auto& xi = basis.rule.nodes;

  // --- v1 direction: lanes run over (j2, m2) ---
  std::vector<double> v2_lane(lanes);
  for (int j2 = 0; j2 < nv2; ++j2)
    for (int m2 = 0; m2 < np; ++m2)
      v2_lane[j2 * np + m2] = mesh.v2_edges[j2] + 0.5 * (xi[m2] + 1.0) * mesh.dv2(j2);

  // Fluxes at the nv1+1 faces; zero exterior state at the box boundary.
  std::vector<double> face(size_t(nv1 + 1) * lanes);
  std::vector<double> um(lanes), up(lanes);
  for (int fi = 0; fi <= nv1; ++fi) {
    double v1f = mesh.v1_edges[fi];
    std::fill(um.begin(), um.end(), 0.0);
    std::fill(up.begin(), up.end(), 0.0);
    if (fi > 0) {
      for (int m1 = 0; m1 < np; ++m1) {
        const double* row = slab.data() + (size_t((fi - 1) * np + m1)) * lanes;
        double c = basis.right[m1];
        for (int q = 0; q < lanes; ++q) um[q] += c * row[q];
      }
    }
    if (fi < nv1) {
      for (int m1 = 0; m1 < np; ++m1) {
        const double* row = slab.data() + (size_t(fi * np + m1)) * lanes;
        double c = basis.left[m1];
        for (int q = 0; q < lanes; ++q) up[q] += c * row[q];
      }
    }
    double* fq = face.data() + size_t(fi) * lanes;
    for (int q = 0; q < lanes; ++q)
      fq[q] = face_flux(a1(v1f, v2_lane[q]), um[q], up[q], flux);
  }

  for (int j1 = 0; j1 < nv1; ++j1) {
    double h1 = mesh.dv1(j1);
    const double* f_left = face.data() + size_t(j1) * lanes;
    const double* f_right = face.data() + size_t(j1 + 1) * lanes;
    for (int l1 = 0; l1 < np; ++l1) {
      double* dst = out.data() + (size_t(j1 * np + l1)) * lanes;
      double scale = 2.0 / (h1 * w[l1]);
      for (int m1 = 0; m1 < np; ++m1) {
        const double* row = slab.data() + (size_t(j1 * np + m1)) * lanes;
        double v1m = mesh.v1_edges[j1] + 0.5 * (xi[m1] + 1.0) * h1;
        double cw = scale * w[m1] * basis.diff_at(m1, l1);
        double s0 = cw * (a1.c0 + a1.c_v1 * v1m);
        double s2 = cw * a1.c_v2;
        for (int q = 0; q < lanes; ++q) dst[q] += (s0 + s2 * v2_lane[q]) * row[q];
      }
      double cr = scale * basis.right[l1];
      double cl = scale * basis.left[l1];
      for (int q = 0; q < lanes; ++q) dst[q] += -cr * f_right[q] + cl * f_left[q];
    }
  }

  // --- v2 direction: each (j1, m1) row is a contiguous 1D transport ---
  std::vector<double> face2(nv2 + 1);
  for (int j1 = 0; j1 < nv1; ++j1)
    for (int m1 = 0; m1 < np; ++m1) {
      double v1m = mesh.v1_edges[j1] + 0.5 * (xi[m1] + 1.0) * mesh.dv1(j1);
      const double* row = slab.data() + (size_t(j1 * np + m1)) * lanes;
      double* dst = out.data() + (size_t(j1 * np + m1)) * lanes;

      for (int fi = 0; fi <= nv2; ++fi) {
        double a = a2(v1m, mesh.v2_edges[fi]);
        double tm = 0.0, tp = 0.0;
        if (fi > 0)
          for (int m = 0; m < np; ++m) tm += basis.right[m] * row[(fi - 1) * np + m];
        if (fi < nv2)
          for (int m = 0; m < np; ++m) tp += basis.left[m] * row[fi * np + m];
        face2[fi] = face_flux(a, tm, tp, flux);
      }
      for (int j2 = 0; j2 < nv2; ++j2) {
        double h2 = mesh.dv2(j2);
        for (int l2 = 0; l2 < np; ++l2) {
          double vol = 0.0;
          for (int m = 0; m < np; ++m) {
            double v2m = mesh.v2_edges[j2] + 0.5 * (xi[m] + 1.0) * h2;
            vol += w[m] * basis.diff_at(m, l2) * a2(v1m, v2m) * row[j2 * np + m];
          }
          dst[j2 * np + l2] += (2.0 / (h2 * w[l2])) * (vol - face2[j2 + 1] * basis.right[l2] +
                                                       face2[j2] * basis.left[l2]);
        }
      }
    }
}

} // namespace

void transport_v_rhs(const Mesh1D2V& mesh, const NodalBasis1D& basis,
                     std::span<const double> slab, const LinearVCoeff& a1,
                     const LinearVCoeff& a2, VlasovFlux flux, std::span<double> out) {
  const size_t vdim = size_t(mesh.nv1()) * basis.order() * mesh.nv2() * basis.order();
  if (slab.size() != vdim || out.size() != vdim)
    throw std::invalid_argument("transport_v_rhs: shape mismatch");
  std::fill(out.begin(), out.end(), 0.0);
  add_transport_v(mesh, basis, slab, a1, a2, flux, out);
}

void slab_moments(const PhaseTables& tables, std::span<const double> slab, double& rho,
                  double& j1, double& j2) {
  double r = 0.0, a = 0.0, b = 0.0;
  const size_t vdim = slab.size();
  for (size_t q = 0; q < vdim; ++q) {
    double wf = tables.v_weight[q] * slab[q];
    r += wf;
    a += wf * tables.v1_node[q];
    b += wf * tables.v2_node[q];
  }
  rho = r;
  j1 = a;
  j2 = b;
}

Moments compute_moments(const Mesh1D2V& mesh, const NodalBasis1D& basis,
                        const PhaseTables& tables, const DistributionField& f) {
  (void)mesh;
  (void)basis;
  Moments mom;
  const int xdim = f.xdim();
  mom.rho.resize(xdim);
  mom.j1.resize(xdim);
  mom.j2.resize(xdim);
#pragma omp parallel for schedule(static)
  for (int xn = 0; xn < xdim; ++xn)
    slab_moments(tables, f.x_node_slab(xn), mom.rho[xn], mom.j1[xn], mom.j2[xn]);
  return mom;
}

void vlasov_rhs(const Mesh1D2V& mesh, const NodalBasis1D& basis, const PhaseTables& tables,
                const DistributionField& f, std::span<const double> e1,
                std::span<const double> e2, std::span<const double> b3, VlasovFlux flux,
                DistributionField& out) {
  const int nx = f.nx;
  const int np = f.np;
  const int vdim = f.vdim();
  if (out.size() != f.size()) throw std::invalid_argument("vlasov_rhs: shape mismatch");
  const auto& w = basis.rule.weights;
  const double* speed = tables.v2_node.data();

  // x2 streaming, all velocity nodes as vector lanes.
#pragma omp parallel for schedule(static)
  for (int i = 0; i < nx; ++i) {
    std::vector<double> flux_left(vdim), flux_right(vdim), um(vdim), up(vdim);
    double hx = mesh.dx(i);
    for (int side = 0; side < 2; ++side) {
      // side 0: face i-1/2, side 1: face i+1/2
      int lc = side == 0 ? mesh.x_wrap(i - 1) : i;
      int rc = side == 0 ? i : mesh.x_wrap(i + 1);
      std::fill(um.begin(), um.end(), 0.0);
      std::fill(up.begin(), up.end(), 0.0);
      for (int m = 0; m < np; ++m) {
        const double* lrow = f.values.data() + (size_t(lc) * np + m) * vdim;
        const double* rrow = f.values.data() + (size_t(rc) * np + m) * vdim;
        double cm = basis.right[m], cp = basis.left[m];
        for (int q = 0; q < vdim; ++q) {
          um[q] += cm * lrow[q];
          up[q] += cp * rrow[q];
        }
      }
      double* dst = side == 0 ? flux_left.data() : flux_right.data();
      for (int q = 0; q < vdim; ++q) dst[q] = face_flux(speed[q], um[q], up[q], flux);
    }
    for (int l = 0; l < np; ++l) {
      double* dst = out.values.data() + (size_t(i) * np + l) * vdim;
      double scale = 2.0 / (hx * w[l]);
      std::fill(dst, dst + vdim, 0.0);
      for (int m = 0; m < np; ++m) {
        const double* row = f.values.data() + (size_t(i) * np + m) * vdim;
        double cw = scale * w[m] * basis.diff_at(m, l);
        for (int q = 0; q < vdim; ++q) dst[q] += cw * speed[q] * row[q];
      }
      double cr = scale * basis.right[l];
      double cl = scale * basis.left[l];
      for (int q = 0; q < vdim; ++q) dst[q] += -cr * flux_right[q] + cl * flux_left[q];
    }
  }

  // velocity transport per x node
  const int xdim = f.xdim();
#pragma omp parallel for schedule(static)
  for (int xn = 0; xn < xdim; ++xn) {
    LinearVCoeff a1{e1[xn], 0.0, b3[xn]};
    LinearVCoeff a2{e2[xn], -b3[xn], 0.0};
    add_transport_v(mesh, basis, f.x_node_slab(xn), a1, a2, flux, out.x_node_slab(xn));
  }
}

} // namespace vmdg
