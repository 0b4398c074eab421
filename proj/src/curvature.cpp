#include "mcflab/curvature.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

namespace mcf {

double CurvatureField::max_abs_H() const {
  double m = 0;
  for (double h : mean_curvature) m = std::max(m, std::abs(h));
  return m;
}

double CurvatureField::max_A() const {
  double m = 0;
  for (double a : second_form_norm) m = std::max(m, a);
  return m;
}

double CurvatureField::total_area() const {
  double a = 0;
  for (double v : vertex_area) a += v;
  return a;
}

double CurvatureField::energy() const {
  double e = 0;
  for (size_t i = 0; i < vertex_area.size(); ++i)
    e += second_form_norm[i] * second_form_norm[i] * vertex_area[i];
  return e;
}

namespace {

Vec3 angle_weighted_normal(const TriangleMesh& mesh, int v) {
  Vec3 n = Vec3::Zero();
  const Vec3& p = mesh.vertices()[v];
  for (int f : mesh.vertex_faces(v)) {
    const auto& t = mesh.faces()[f];
    int k = t[0] == v ? 0 : (t[1] == v ? 1 : 2);
    Vec3 e1 = (mesh.vertices()[t[(k + 1) % 3]] - p).normalized();
    Vec3 e2 = (mesh.vertices()[t[(k + 2) % 3]] - p).normalized();
    double ang = std::acos(std::clamp(e1.dot(e2), -1.0, 1.0));
    n += ang * mesh.face_normal(f);
  }
  double l = n.norm();
  return l > 0 ? Vec3(n / l) : Vec3(0, 0, 1);
}

double cotangent(const Vec3& a, const Vec3& b, const Vec3& c) {
  // cot of angle at a in triangle (a,b,c)
  Vec3 u = b - a, v = c - a;
  double denom = u.cross(v).norm();
  return denom > 0 ? u.dot(v) / denom : 0.0;
}

} // namespace

CurvatureField compute_curvatures(const TriangleMesh& mesh, const CurvatureOptions& opts) {
  const int nv = mesh.n_vertices();
  CurvatureField out;
  out.normal.assign(nv, Vec3::Zero());
  out.mean_curvature.assign(nv, 0.0);
  out.second_form_norm.assign(nv, 0.0);
  out.kappa1.assign(nv, 0.0);
  out.kappa2.assign(nv, 0.0);
  out.vertex_area.assign(nv, 0.0);
  out.gauss_curvature.assign(nv, 0.0);
  out.mean_curvature_cotan.assign(nv, 0.0);

  for (int f = 0; f < mesh.n_faces(); ++f) {
    double a3 = mesh.face_area(f) / 3.0;
    for (int k = 0; k < 3; ++k) out.vertex_area[mesh.faces()[f][k]] += a3;
  }

  for (int v = 0; v < nv; ++v) {
    Vec3 n0 = angle_weighted_normal(mesh, v);
    auto [e1, e2] = tangent_basis(n0);
    const Vec3& p = mesh.vertices()[v];

    std::vector<int> nbrs = mesh.two_ring(v);
    if ((int)nbrs.size() < 6) {
      if (opts.strict)
        fail(errc::ill_conditioned_fit,
             "vertex " + std::to_string(v) + " has only " + std::to_string(nbrs.size()) +
                 " two-ring neighbors");
      out.normal[v] = n0;
      continue;
    }

    // Fit w = c0 + c1 u + c2 v + c3 u^2 + c4 uv + c5 v^2 over the two-ring,
    // coordinates scaled by the neighborhood radius to keep the system tame.
    double scale = 0.0;
    for (int u : nbrs) scale = std::max(scale, (mesh.vertices()[u] - p).norm());
    if (scale <= 0) {
      if (opts.strict) fail(errc::ill_conditioned_fit, "vertex " + std::to_string(v) + " neighborhood collapsed");
      out.normal[v] = n0;
      continue;
    }
    // Normal equations with fixed-size accumulators; coordinates are O(1)
    // after the rescale so this stays well conditioned.
    Eigen::Matrix<double, 6, 6> A = Eigen::Matrix<double, 6, 6>::Zero();
    Eigen::Matrix<double, 6, 1> b = Eigen::Matrix<double, 6, 1>::Zero();
    Eigen::Matrix<double, 6, 1> row;
    auto accumulate = [&](double uu, double vv, double ww) {
      row << 1, uu, vv, uu * uu, uu * vv, vv * vv;
      A.noalias() += row * row.transpose();
      b.noalias() += row * ww;
    };
    for (int u : nbrs) {
      Vec3 d = (mesh.vertices()[u] - p) / scale;
      accumulate(d.dot(e1), d.dot(e2), d.dot(n0));
    }
    accumulate(0.0, 0.0, 0.0); // the vertex itself

    Eigen::LDLT<Eigen::Matrix<double, 6, 6>> ldlt(A);
    Eigen::Matrix<double, 6, 1> dvec = ldlt.vectorD();
    double dmax = dvec.cwiseAbs().maxCoeff();
    double dmin = dvec.cwiseAbs().minCoeff();
    // A = M^T M, so its condition number is the square of the fit's.
    if (ldlt.info() != Eigen::Success || dmin <= 0 ||
        dmax / dmin > opts.max_condition * opts.max_condition) {
      if (opts.strict)
        fail(errc::ill_conditioned_fit,
             "vertex " + std::to_string(v) + " quadric fit is rank deficient");
      out.normal[v] = n0;
      continue;
    }
    Eigen::Matrix<double, 6, 1> c = ldlt.solve(b);

    // Back to physical units: slopes are scale-free, second derivatives gain 1/scale.
    double cu = c(1), cv = c(2);
    double fuu = 2.0 * c(3) / scale, fuv = c(4) / scale, fvv = 2.0 * c(5) / scale;

    // Weingarten map of the graph (u,v) -> (u,v,w(u,v)) in the fit frame.
    double W = std::sqrt(1.0 + cu * cu + cv * cv);
    Mat2 first, second;
    first << 1 + cu * cu, cu * cv, cu * cv, 1 + cv * cv;
    second << fuu / W, fuv / W, fuv / W, fvv / W;
    Mat2 S = first.inverse() * second;
    // Eigenvalues of S (S is self-adjoint w.r.t. the first form; use the
    // symmetrized invariants).
    double tr = S.trace();
    double det = S.determinant();
    double disc = std::max(tr * tr / 4.0 - det, 0.0);
    double k1 = tr / 2.0 + std::sqrt(disc);
    double k2 = tr / 2.0 - std::sqrt(disc);

    // Graph normal in the fit frame is (-cu, -cv, 1)/W. The quadric opens
    // along +n0 when curving toward n0; for an outward n0 and a convex
    // surface (sphere) the neighbors fall below the tangent plane, so the
    // principal curvatures w.r.t. the outward normal flip sign.
    Vec3 n = ((-cu) * e1 + (-cv) * e2 + n0) / W;
    k1 = -k1;
    k2 = -k2;
    if (k1 < k2) std::swap(k1, k2);

    out.normal[v] = n.normalized();
    out.kappa1[v] = k1;
    out.kappa2[v] = k2;
    out.mean_curvature[v] = k1 + k2;
    out.second_form_norm[v] = std::sqrt(k1 * k1 + k2 * k2);
    out.gauss_curvature[v] = k1 * k2;
  }

  // Cotangent-Laplacian mean curvature, cross-check channel:
  // (1/2A_i) sum_j (cot α + cot β)(x_i - x_j) = H n (with H = k1 + k2).
  std::vector<Vec3> lap(nv, Vec3::Zero());
  for (int f = 0; f < mesh.n_faces(); ++f) {
    const auto& t = mesh.faces()[f];
    const Vec3 &pa = mesh.vertices()[t[0]], &pb = mesh.vertices()[t[1]], &pc = mesh.vertices()[t[2]];
    double ca = cotangent(pa, pb, pc);
    double cb = cotangent(pb, pc, pa);
    double cc = cotangent(pc, pa, pb);
    lap[t[0]] += cc * (pa - pb) + cb * (pa - pc);
    lap[t[1]] += cc * (pb - pa) + ca * (pb - pc);
    lap[t[2]] += cb * (pc - pa) + ca * (pc - pb);
  }
  for (int v = 0; v < nv; ++v) {
    if (mesh.is_boundary_vertex(v)) continue;
    Vec3 hn = lap[v] / (2.0 * out.vertex_area[v]);
    out.mean_curvature_cotan[v] = hn.dot(out.normal[v]);
  }

  return out;
}

} // namespace mcf
