#pragma once

#include <Eigen/Core>
#include <Eigen/Geometry>
#include <array>
#include <cstdint>
#include <optional>
#include <vector>

namespace mcf {

using Vec3 = Eigen::Vector3d;
using Vec2 = Eigen::Vector2d;
using Mat3 = Eigen::Matrix3d;
using Mat2 = Eigen::Matrix2d;

constexpr double kPi = 3.14159265358979323846;

inline double triangle_area(const Vec3& a, const Vec3& b, const Vec3& c) {
  return 0.5 * (b - a).cross(c - a).norm();
}

inline Vec3 triangle_normal(const Vec3& a, const Vec3& b, const Vec3& c) {
  Vec3 n = (b - a).cross(c - a);
  double l = n.norm();
  return l > 0 ? Vec3(n / l) : Vec3(0, 0, 0);
}

// Area of the part of triangle (a,b,c) inside the closed ball B_r(center).
// Faces crossing the sphere are split once along the chord between
// edge/sphere intersection points; error is O(h^2) in the edge length.
double triangle_area_in_ball(const Vec3& a, const Vec3& b, const Vec3& c,
                             const Vec3& center, double r);

// Integral of a per-vertex linear scalar over the in-ball part of a triangle,
// same clipping rule as triangle_area_in_ball.
double triangle_integral_in_ball(const Vec3& a, const Vec3& b, const Vec3& c,
                                 double fa, double fb, double fc,
                                 const Vec3& center, double r);

bool segment_intersects_ball(const Vec3& a, const Vec3& b, const Vec3& center, double r);

double point_triangle_distance(const Vec3& p, const Vec3& a, const Vec3& b, const Vec3& c);

// Conservative exact triangle/axis-aligned-box overlap (separating axes).
bool triangle_box_overlap(const Vec3& box_center, const Vec3& box_half,
                          const Vec3& a, const Vec3& b, const Vec3& c);

std::optional<double> ray_triangle_intersect(const Vec3& origin, const Vec3& dir,
                                             const Vec3& a, const Vec3& b, const Vec3& c);

// Clip a triangle against an axis-aligned square column in the (x,y) plane;
// returns the z-range of the clipped polygon, or nullopt if no overlap.
std::optional<std::pair<double, double>> triangle_column_zrange(
    const Vec3& a, const Vec3& b, const Vec3& c,
    double x0, double x1, double y0, double y1);

// Static AABB tree over triangles for distance and ray queries.
class TriangleBVH {
public:
  TriangleBVH() = default;
  TriangleBVH(const std::vector<Vec3>& vertices, const std::vector<std::array<int, 3>>& faces);

  double distance(const Vec3& p) const;
  // All parameters t with origin + t*dir on the surface (t in [tmin, tmax]).
  void ray_hits(const Vec3& origin, const Vec3& dir, double tmin, double tmax,
                std::vector<double>& out) const;
  bool empty() const { return nodes_.empty(); }

private:
  struct Node {
    Vec3 lo, hi;
    int left = -1, right = -1;
    int begin = 0, end = 0; // leaf triangle range
  };
  struct Tri {
    Vec3 a, b, c;
  };
  int build(int begin, int end, std::vector<int>& index);
  std::vector<Node> nodes_;
  std::vector<Tri> tris_;
  int root_ = -1;
};

// Orthonormal pair spanning the plane orthogonal to n (|n| = 1).
std::pair<Vec3, Vec3> tangent_basis(const Vec3& n);

} // namespace mcf
