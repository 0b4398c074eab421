#pragma once

#include "mcflab/mesh.hpp"

namespace mcf {

// Per-vertex curvature data. Sign convention: outward normal, H = k1 + k2,
// so the unit sphere has H = 2 and the flow dr/dt = -2/r.
struct CurvatureField {
  std::vector<Vec3> normal;
  std::vector<double> mean_curvature;  // H = k1 + k2
  std::vector<double> second_form_norm; // |A| = sqrt(k1^2 + k2^2)
  std::vector<double> kappa1, kappa2;   // k1 >= k2
  std::vector<double> vertex_area;      // barycentric dual area, sums to total area
  std::vector<double> gauss_curvature;  // k1 * k2
  std::vector<double> mean_curvature_cotan; // cross-check channel

  double max_abs_H() const;
  double max_A() const;
  double total_area() const;
  double energy() const; // integral of |A|^2
};

struct CurvatureOptions {
  // Vertices whose two-ring LS system has condition number above this are
  // reported as IllConditionedFit.
  double max_condition = 1e8;
  bool strict = true; // false: mark bad vertices with zero curvature instead of throwing
};

CurvatureField compute_curvatures(const TriangleMesh& mesh, const CurvatureOptions& opts = {});

} // namespace mcf
