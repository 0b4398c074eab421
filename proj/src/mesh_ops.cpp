#include "mcflab/mesh_ops.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <unordered_map>

namespace mcf {

EnergyResult total_energy(const TriangleMesh& mesh, const CurvatureField& field) {
  double direct = 0, h2 = 0;
  for (int v = 0; v < mesh.n_vertices(); ++v) {
    double a = field.vertex_area[v];
    direct += field.second_form_norm[v] * field.second_form_norm[v] * a;
    h2 += field.mean_curvature[v] * field.mean_curvature[v] * a;
  }
  return {direct, h2 - 4.0 * kPi * mesh.euler_characteristic()};
}

namespace {

bool face_touches_ball(const TriangleMesh& mesh, int f, const Vec3& center, double r) {
  const auto& t = mesh.faces()[f];
  return point_triangle_distance(center, mesh.vertices()[t[0]], mesh.vertices()[t[1]],
                                 mesh.vertices()[t[2]]) <= r;
}

} // namespace

BallComponent connected_component(const TriangleMesh& mesh, const Vec3& center, double radius,
                                  int seed_vertex) {
  if (seed_vertex < 0 || seed_vertex >= mesh.n_vertices())
    fail(errc::invalid_argument, "seed vertex " + std::to_string(seed_vertex) + " out of range");
  if ((mesh.vertices()[seed_vertex] - center).norm() > radius)
    fail(errc::seed_outside_ball, "seed vertex " + std::to_string(seed_vertex) +
                                      " lies outside the ball of radius " + std::to_string(radius));

  std::vector<char> visited(mesh.n_faces(), 0);
  std::queue<int> frontier;
  for (int f : mesh.vertex_faces(seed_vertex)) {
    if (!visited[f] && face_touches_ball(mesh, f, center, radius)) {
      visited[f] = 1;
      frontier.push(f);
    }
  }
  BallComponent comp;
  while (!frontier.empty()) {
    int f = frontier.front();
    frontier.pop();
    const auto& t = mesh.faces()[f];
    double a = triangle_area_in_ball(mesh.vertices()[t[0]], mesh.vertices()[t[1]],
                                     mesh.vertices()[t[2]], center, radius);
    comp.faces.push_back(f);
    comp.clipped_area.push_back(a);
    comp.area += a;
    for (int e = 0; e < 3; ++e) {
      int nb = mesh.face_neighbor(f, e);
      if (nb < 0 || visited[nb]) continue;
      // cross the edge only where the edge itself meets the ball
      const Vec3& pa = mesh.vertices()[t[e]];
      const Vec3& pb = mesh.vertices()[t[(e + 1) % 3]];
      if (!segment_intersects_ball(pa, pb, center, radius)) continue;
      if (!face_touches_ball(mesh, nb, center, radius)) continue;
      visited[nb] = 1;
      frontier.push(nb);
    }
  }
  return comp;
}

double area_in_ball(const TriangleMesh& mesh, const Vec3& center, double radius) {
  double acc = 0;
  for (int f = 0; f < mesh.n_faces(); ++f) {
    const auto& t = mesh.faces()[f];
    acc += triangle_area_in_ball(mesh.vertices()[t[0]], mesh.vertices()[t[1]],
                                 mesh.vertices()[t[2]], center, radius);
  }
  return acc;
}

double integral_in_ball(const TriangleMesh& mesh, const std::vector<double>& per_vertex,
                        const Vec3& center, double radius) {
  double acc = 0;
  for (int f = 0; f < mesh.n_faces(); ++f) {
    const auto& t = mesh.faces()[f];
    acc += triangle_integral_in_ball(mesh.vertices()[t[0]], mesh.vertices()[t[1]],
                                     mesh.vertices()[t[2]], per_vertex[t[0]], per_vertex[t[1]],
                                     per_vertex[t[2]], center, radius);
  }
  return acc;
}

double area_ratio(const TriangleMesh& mesh, const Vec3& center, double radius,
                  std::optional<int> seed) {
  if (radius <= 0) fail(errc::invalid_argument, "area_ratio needs radius > 0");
  double area;
  if (seed) {
    area = connected_component(mesh, center, radius, *seed).area;
  } else {
    area = area_in_ball(mesh, center, radius);
  }
  if (area <= 0) fail(errc::empty_intersection, "surface does not meet the ball");
  return area / (kPi * radius * radius);
}

GraphPatch local_graph(const TriangleMesh& mesh, const CurvatureField& field, int base_vertex,
                       double r0, const LocalGraphOptions& opts) {
  if (r0 <= 0) fail(errc::invalid_argument, "local_graph needs r0 > 0");
  const Vec3& x0 = mesh.vertices()[base_vertex];
  BallComponent comp = connected_component(mesh, x0, r0, base_vertex);

  double limit = 1.0 / r0;
  for (int f : comp.faces) {
    for (int k = 0; k < 3; ++k) {
      int v = mesh.faces()[f][k];
      if ((mesh.vertices()[v] - x0).norm() <= r0 && field.second_form_norm[v] > limit)
        fail(errc::curvature_hypothesis_violated,
             "|A| = " + std::to_string(field.second_form_norm[v]) + " > 1/r0 = " +
                 std::to_string(limit) + " at vertex " + std::to_string(v));
    }
  }

  GraphPatch patch;
  patch.base_point = x0;
  patch.normal = field.normal[base_vertex];
  auto [e1, e2] = tangent_basis(patch.normal);
  patch.tangent_u = e1;
  patch.tangent_v = e2;
  patch.domain_factor = opts.domain_factor;
  patch.domain_radius = r0 * opts.domain_factor;

  double rd = patch.domain_radius;
  double cell = opts.cell_factor * rd;
  double height_tol = opts.height_tol_factor * rd;
  std::unordered_map<long long, std::pair<double, int>> cells; // cell -> (height, vertex)

  std::vector<char> in_comp(mesh.n_vertices(), 0);
  for (int f : comp.faces)
    for (int k = 0; k < 3; ++k) in_comp[mesh.faces()[f][k]] = 1;

  for (int v = 0; v < mesh.n_vertices(); ++v) {
    if (!in_comp[v]) continue;
    Vec3 d = mesh.vertices()[v] - x0;
    double u = d.dot(e1), w = d.dot(e2), h = d.dot(patch.normal);
    if (u * u + w * w >= rd * rd) continue;
    long long ci = (long long)std::floor(u / cell);
    long long cj = (long long)std::floor(w / cell);
    long long key = ci * 1000003LL + cj;
    auto it = cells.find(key);
    if (it != cells.end() && std::abs(it->second.first - h) > height_tol)
      fail(errc::multi_valued, "vertices " + std::to_string(it->second.second) + " and " +
                                   std::to_string(v) + " project to the same point");
    cells[key] = {h, v};
    patch.samples.push_back({Vec2(u, w), h});
  }
  if (patch.samples.empty())
    fail(errc::empty_domain, "no component vertices inside the graph domain");

  // Per-face height gradient over the tangent plane, evaluated at the centroid.
  double bound = patch.gradient_bound_factor / r0;
  for (int f : comp.faces) {
    const auto& t = mesh.faces()[f];
    Vec3 q[3];
    bool inside = true;
    for (int k = 0; k < 3; ++k) {
      Vec3 d = mesh.vertices()[t[k]] - x0;
      q[k] = Vec3(d.dot(e1), d.dot(e2), d.dot(patch.normal));
      if (q[k].head<2>().squaredNorm() >= rd * rd) inside = false;
    }
    if (!inside) continue;
    Vec2 g;
    Mat2 E;
    E << q[1].x() - q[0].x(), q[1].y() - q[0].y(), q[2].x() - q[0].x(), q[2].y() - q[0].y();
    if (std::abs(E.determinant()) < 1e-30) continue;
    Vec2 dh(q[1].z() - q[0].z(), q[2].z() - q[0].z());
    g = E.inverse() * dh;
    Vec2 cen = (q[0] + q[1] + q[2]).head<2>() / 3.0;
    double dist = cen.norm();
    if (dist < 1e-9 * rd) continue;
    double ratio = g.norm() / dist;
    patch.max_gradient_ratio = std::max(patch.max_gradient_ratio, ratio);
  }
  patch.gradient_bound_violated = patch.max_gradient_ratio > bound;
  return patch;
}

} // namespace mcf
