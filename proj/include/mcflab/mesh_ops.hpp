#pragma once

#include <map>
#include <optional>

#include "mcflab/curvature.hpp"
#include "mcflab/mesh.hpp"

namespace mcf {

struct EnergyResult {
  double direct;       // integral of |A|^2 by vertex-area quadrature
  double gauss_bonnet; // integral of H^2 minus 4*pi*chi
};

EnergyResult total_energy(const TriangleMesh& mesh, const CurvatureField& field);

// Face-connected component of the surface inside a Euclidean ball. Faces are
// clipped exactly against the sphere (one subdivision, O(h^2) area error);
// adjacency passes through an edge only if the edge meets the open ball.
struct BallComponent {
  std::vector<int> faces;       // face ids touching the ball
  std::vector<double> clipped_area; // in-ball area per listed face
  double area = 0.0;
};

BallComponent connected_component(const TriangleMesh& mesh, const Vec3& center, double radius,
                                  int seed_vertex);

// Area(B_r cap Sigma) / (pi r^2); seeded variant restricts to the component
// of the seed vertex (n = 2, omega_2 = pi).
double area_ratio(const TriangleMesh& mesh, const Vec3& center, double radius,
                  std::optional<int> seed = std::nullopt);

double area_in_ball(const TriangleMesh& mesh, const Vec3& center, double radius);

// Integral of a per-vertex scalar over the in-ball surface (clipped quadrature).
double integral_in_ball(const TriangleMesh& mesh, const std::vector<double>& per_vertex,
                        const Vec3& center, double radius);

// Height graph of the surface component around a base vertex over its tangent
// plane. Domain radius defaults to r0/96; the sampled gradient bound 36/r0 is
// reported along with the component-restricted hypothesis check |A| <= 1/r0.
struct GraphPatch {
  Vec3 base_point;
  Vec3 tangent_u, tangent_v, normal;
  double domain_radius = 0.0;
  double domain_factor = 1.0 / 96.0;       // domain radius / r0
  double half_ball_domain_factor = 1.0 / 192.0; // same bound applied from a half-radius ball
  double gradient_bound_factor = 36.0;     // |grad u| <= (36/r0)|x'|
  struct Sample {
    Vec2 xy;     // in-plane coordinates
    double u;    // height
  };
  std::vector<Sample> samples;
  double max_gradient_ratio = 0.0; // max over faces of |grad u|(x') / |x'|
  bool gradient_bound_violated = false;
};

struct LocalGraphOptions {
  double domain_factor = 1.0 / 96.0;
  // Two samples landing in the same projected cell of this size (relative to
  // the domain radius) with heights differing more than height_tol flag the
  // projection as multi-valued.
  double cell_factor = 0.25;
  double height_tol_factor = 0.5; // relative to domain radius
};

GraphPatch local_graph(const TriangleMesh& mesh, const CurvatureField& field, int base_vertex,
                       double r0, const LocalGraphOptions& opts = {});

} // namespace mcf
