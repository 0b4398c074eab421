#include "mcflab/shapes.hpp"

#include <cmath>
#include <functional>
#include <map>

namespace mcf {
namespace shapes {

TriangleMesh tetrahedron(double scale) {
  double s = scale / std::sqrt(3.0);
  std::vector<Vec3> v = {{s, s, s}, {s, -s, -s}, {-s, s, -s}, {-s, -s, s}};
  std::vector<std::array<int, 3>> f = {{0, 2, 1}, {0, 1, 3}, {0, 3, 2}, {1, 2, 3}};
  return TriangleMesh::build(std::move(v), std::move(f));
}

TriangleMesh icosphere(int level, double radius, const Vec3& center) {
  const double phi = (1.0 + std::sqrt(5.0)) / 2.0;
  std::vector<Vec3> v = {
      {-1, phi, 0}, {1, phi, 0}, {-1, -phi, 0}, {1, -phi, 0},
      {0, -1, phi}, {0, 1, phi}, {0, -1, -phi}, {0, 1, -phi},
      {phi, 0, -1}, {phi, 0, 1}, {-phi, 0, -1}, {-phi, 0, 1}};
  for (Vec3& p : v) p.normalize();
  std::vector<std::array<int, 3>> f = {
      {0, 11, 5}, {0, 5, 1},  {0, 1, 7},   {0, 7, 10}, {0, 10, 11},
      {1, 5, 9},  {5, 11, 4}, {11, 10, 2}, {10, 7, 6}, {7, 1, 8},
      {3, 9, 4},  {3, 4, 2},  {3, 2, 6},   {3, 6, 8},  {3, 8, 9},
      {4, 9, 5},  {2, 4, 11}, {6, 2, 10},  {8, 6, 7},  {9, 8, 1}};
  for (int l = 0; l < level; ++l) {
    std::map<std::pair<int, int>, int> midpoint;
    auto mid = [&](int a, int b) {
      auto key = std::minmax(a, b);
      auto it = midpoint.find(key);
      if (it != midpoint.end()) return it->second;
      Vec3 m = (v[a] + v[b]).normalized();
      v.push_back(m);
      int id = (int)v.size() - 1;
      midpoint[key] = id;
      return id;
    };
    std::vector<std::array<int, 3>> nf;
    nf.reserve(4 * f.size());
    for (const auto& t : f) {
      int ab = mid(t[0], t[1]), bc = mid(t[1], t[2]), ca = mid(t[2], t[0]);
      nf.push_back({t[0], ab, ca});
      nf.push_back({t[1], bc, ab});
      nf.push_back({t[2], ca, bc});
      nf.push_back({ab, bc, ca});
    }
    f.swap(nf);
  }
  for (Vec3& p : v) p = center + radius * p;
  return TriangleMesh::build(std::move(v), std::move(f));
}

TriangleMesh ellipsoid(int level, double a, double b, double c) {
  TriangleMesh s = icosphere(level, 1.0);
  std::vector<Vec3> v = s.vertices();
  for (Vec3& p : v) p = Vec3(a * p.x(), b * p.y(), c * p.z());
  return s.with_vertices(std::move(v));
}

TriangleMesh torus(double R, double r, int nv, int nu) {
  std::vector<Vec3> verts;
  verts.reserve(nu * nv);
  for (int i = 0; i < nv; ++i) {
    double u = 2 * kPi * i / nv; // around the hole
    for (int j = 0; j < nu; ++j) {
      double w = 2 * kPi * j / nu; // around the tube
      double rad = R + r * std::cos(w);
      verts.emplace_back(rad * std::cos(u), rad * std::sin(u), r * std::sin(w));
    }
  }
  std::vector<std::array<int, 3>> faces;
  faces.reserve(2 * nu * nv);
  auto id = [&](int i, int j) { return (i % nv) * nu + (j % nu); };
  for (int i = 0; i < nv; ++i)
    for (int j = 0; j < nu; ++j) {
      int a = id(i, j), b = id(i + 1, j), c = id(i + 1, j + 1), d = id(i, j + 1);
      faces.push_back({a, b, c});
      faces.push_back({a, c, d});
    }
  return TriangleMesh::build(std::move(verts), std::move(faces));
}

namespace {

// Lathe a radial profile rho(t), z(t) for t in [0,1] (rho = 0 at both ends)
// around the z axis with pole vertices at the ends.
TriangleMesh lathe(const std::function<double(double)>& rho, const std::function<double(double)>& z,
                   int n_axial, int n_around) {
  std::vector<Vec3> verts;
  std::vector<std::array<int, 3>> faces;
  verts.emplace_back(0, 0, z(0.0)); // south pole
  for (int i = 1; i < n_axial; ++i) {
    double t = (double)i / n_axial;
    double rr = rho(t), zz = z(t);
    for (int j = 0; j < n_around; ++j) {
      double a = 2 * kPi * j / n_around;
      verts.emplace_back(rr * std::cos(a), rr * std::sin(a), zz);
    }
  }
  verts.emplace_back(0, 0, z(1.0)); // north pole
  int north = (int)verts.size() - 1;
  auto ring = [&](int i, int j) { return 1 + (i - 1) * n_around + (j % n_around); };
  for (int j = 0; j < n_around; ++j) faces.push_back({0, ring(1, j + 1), ring(1, j)});
  for (int i = 1; i + 1 < n_axial; ++i)
    for (int j = 0; j < n_around; ++j) {
      int a = ring(i, j), b = ring(i, j + 1), c = ring(i + 1, j + 1), d = ring(i + 1, j);
      faces.push_back({a, b, c});
      faces.push_back({a, c, d});
    }
  for (int j = 0; j < n_around; ++j)
    faces.push_back({north, ring(n_axial - 1, j), ring(n_axial - 1, j + 1)});
  return TriangleMesh::build(std::move(verts), std::move(faces));
}

double smoothstep5(double x) {
  x = std::clamp(x, 0.0, 1.0);
  return x * x * x * (x * (6 * x - 15) + 10);
}

} // namespace

TriangleMesh dumbbell(double bell_radius, double neck_radius, double bell_offset,
                      int n_axial, int n_around) {
  double zmax = bell_offset + bell_radius;
  auto profile = [=](double t) {
    double zz = -zmax + 2 * zmax * t;
    double az = std::abs(zz);
    // bell: circular arc around z = +-bell_offset; neck: blend toward neck_radius
    double bell = 0.0;
    if (az > bell_offset - bell_radius) {
      double d = az - bell_offset;
      if (std::abs(d) < bell_radius) bell = std::sqrt(bell_radius * bell_radius - d * d);
    }
    double blend = smoothstep5(az / std::max(bell_offset - 0.2 * bell_radius, 1e-9));
    double neck = neck_radius + (bell_radius - neck_radius) * blend;
    return std::max(bell, std::min(neck, bell_radius));
  };
  auto z_of = [=](double t) { return -zmax + 2 * zmax * t; };
  return lathe(profile, z_of, n_axial, n_around);
}

TriangleMesh capsule(double radius, double half_length, int n_axial, int n_around) {
  double zmax = half_length + radius;
  auto profile = [=](double t) {
    double zz = -zmax + 2 * zmax * t;
    double az = std::abs(zz);
    if (az <= half_length) return radius;
    double d = az - half_length;
    return std::sqrt(std::max(radius * radius - d * d, 0.0));
  };
  auto z_of = [=](double t) { return -zmax + 2 * zmax * t; };
  return lathe(profile, z_of, n_axial, n_around);
}

namespace {

// Square-grid disk triangulation; nodes at (i*s, j*s) with |p| <= radius.
void grid_disk(double radius, double s, double z,
               const std::function<double(double, double)>& height, bool flip,
               std::vector<Vec3>& verts, std::vector<std::array<int, 3>>& faces) {
  int n = (int)std::ceil(radius / s);
  int dim = 2 * n + 1;
  std::vector<int> id(dim * dim, -1);
  int base = (int)verts.size();
  auto node = [&](int i, int j) { return id[(i + n) * dim + (j + n)]; };
  for (int i = -n; i <= n; ++i)
    for (int j = -n; j <= n; ++j) {
      double x = i * s, y = j * s;
      if (x * x + y * y > radius * radius) continue;
      id[(i + n) * dim + (j + n)] = (int)verts.size();
      verts.emplace_back(x, y, z + (height ? height(x, y) : 0.0));
    }
  for (int i = -n; i < n; ++i)
    for (int j = -n; j < n; ++j) {
      int a = node(i, j), b = node(i + 1, j), c = node(i + 1, j + 1), d = node(i, j + 1);
      if (a >= 0 && b >= 0 && c >= 0) faces.push_back(flip ? std::array<int, 3>{a, c, b}
                                                           : std::array<int, 3>{a, b, c});
      if (a >= 0 && c >= 0 && d >= 0) faces.push_back(flip ? std::array<int, 3>{a, d, c}
                                                           : std::array<int, 3>{a, c, d});
    }
  (void)base;
}

} // namespace

TriangleMesh plane_disk(double radius, double spacing, double z) {
  std::vector<Vec3> verts;
  std::vector<std::array<int, 3>> faces;
  grid_disk(radius, spacing, z, nullptr, false, verts, faces);
  BuildOptions opts;
  opts.allow_boundary = true;
  return TriangleMesh::build(std::move(verts), std::move(faces), opts);
}

TriangleMesh two_planes(double radius, double spacing, double half_gap) {
  std::vector<Vec3> verts;
  std::vector<std::array<int, 3>> faces;
  grid_disk(radius, spacing, half_gap, nullptr, false, verts, faces);
  grid_disk(radius, spacing, -half_gap, nullptr, true, verts, faces);
  BuildOptions opts;
  opts.allow_boundary = true;
  return TriangleMesh::build(std::move(verts), std::move(faces), opts);
}

TriangleMesh two_sheet_graphs(double radius, double spacing,
                              const std::function<double(double, double)>& upper,
                              const std::function<double(double, double)>& lower) {
  std::vector<Vec3> verts;
  std::vector<std::array<int, 3>> faces;
  grid_disk(radius, spacing, 0.0, upper, false, verts, faces);
  grid_disk(radius, spacing, 0.0, lower, true, verts, faces);
  BuildOptions opts;
  opts.allow_boundary = true;
  return TriangleMesh::build(std::move(verts), std::move(faces), opts);
}

} // namespace shapes
} // namespace mcf
