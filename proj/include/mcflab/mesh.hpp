#pragma once

#include <array>
#include <memory>
#include <string>
#include <vector>

#include "mcflab/errors.hpp"
#include "mcflab/geometry.hpp"

namespace mcf {

struct BuildOptions {
  bool allow_boundary = false; // synthetic plane/sheet scenarios use open meshes
  bool check_duplicates = true;
  double duplicate_tol = 1e-12; // relative to bbox diagonal
};

// Closed (or explicitly boundary-allowed) oriented triangulated surface in R^3
// with per-vertex/per-face incidence. Immutable after construction.
class TriangleMesh {
public:
  static TriangleMesh build(std::vector<Vec3> vertices, std::vector<std::array<int, 3>> faces,
                            const BuildOptions& opts = {});

  const std::vector<Vec3>& vertices() const { return vertices_; }
  const std::vector<std::array<int, 3>>& faces() const { return faces_; }
  int n_vertices() const { return (int)vertices_.size(); }
  int n_faces() const { return (int)faces_.size(); }
  int n_edges() const { return n_edges_; }
  int euler_characteristic() const { return euler_; }
  bool closed() const { return closed_; }

  // face_neighbor(f, e): face across edge (faces[f][e], faces[f][(e+1)%3]), -1 on boundary.
  int face_neighbor(int f, int e) const { return face_adj_[3 * f + e]; }
  const std::vector<int>& vertex_faces(int v) const { return vertex_faces_[v]; }
  const std::vector<int>& one_ring(int v) const { return one_ring_[v]; }
  bool is_boundary_vertex(int v) const { return boundary_vertex_[v]; }

  double face_area(int f) const {
    const auto& t = faces_[f];
    return triangle_area(vertices_[t[0]], vertices_[t[1]], vertices_[t[2]]);
  }
  Vec3 face_normal(int f) const {
    const auto& t = faces_[f];
    return triangle_normal(vertices_[t[0]], vertices_[t[1]], vertices_[t[2]]);
  }
  Vec3 face_centroid(int f) const {
    const auto& t = faces_[f];
    return (vertices_[t[0]] + vertices_[t[1]] + vertices_[t[2]]) / 3.0;
  }
  double total_area() const;
  double mean_edge_length() const;
  double min_edge_length() const;
  std::pair<Vec3, Vec3> bounding_box() const;

  // Two-ring vertex neighborhood (excluding v itself), deterministic order.
  std::vector<int> two_ring(int v) const;

  // Same connectivity, moved vertices. Skips duplicate-vertex re-checking;
  // the caller owns geometric validity (used by the flow integrator).
  TriangleMesh with_vertices(std::vector<Vec3> vertices) const;

  TriangleMesh transformed(double scale, const Vec3& shift) const; // x -> scale*(x - shift)

  const TriangleBVH& bvh() const; // built lazily, cached

private:
  TriangleMesh() = default;
  void finalize(const BuildOptions& opts);

  std::vector<Vec3> vertices_;
  std::vector<std::array<int, 3>> faces_;
  std::vector<int> face_adj_;
  std::vector<std::vector<int>> vertex_faces_;
  std::vector<std::vector<int>> one_ring_;
  std::vector<char> boundary_vertex_;
  int n_edges_ = 0;
  int euler_ = 0;
  bool closed_ = true;
  mutable std::shared_ptr<TriangleBVH> bvh_;
};

} // namespace mcf
