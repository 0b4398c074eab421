#include "mcflab/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <unordered_map>

namespace mcf {

namespace {
inline uint64_t edge_key(int a, int b) {
  return (uint64_t)(uint32_t)a << 32 | (uint32_t)b;
}
} // namespace

TriangleMesh TriangleMesh::build(std::vector<Vec3> vertices,
                                 std::vector<std::array<int, 3>> faces,
                                 const BuildOptions& opts) {
  TriangleMesh m;
  m.vertices_ = std::move(vertices);
  m.faces_ = std::move(faces);
  m.finalize(opts);
  return m;
}

void TriangleMesh::finalize(const BuildOptions& opts) {
  const int nv = (int)vertices_.size();
  const int nf = (int)faces_.size();
  if (nv < 4) fail(errc::invalid_argument, "mesh needs at least 4 vertices, got " + std::to_string(nv));
  if (nf < 1) fail(errc::invalid_argument, "mesh has no faces");

  for (int f = 0; f < nf; ++f) {
    const auto& t = faces_[f];
    for (int k = 0; k < 3; ++k)
      if (t[k] < 0 || t[k] >= nv)
        fail(errc::invalid_argument,
             "face " + std::to_string(f) + " references vertex " + std::to_string(t[k]));
    if (t[0] == t[1] || t[1] == t[2] || t[0] == t[2])
      fail(errc::degenerate_face, "face " + std::to_string(f) + " repeats a vertex");
  }

  auto [lo, hi] = [&] {
    Vec3 a = vertices_[0], b = vertices_[0];
    for (const Vec3& p : vertices_) {
      a = a.cwiseMin(p);
      b = b.cwiseMax(p);
    }
    return std::pair<Vec3, Vec3>(a, b);
  }();
  double diag = (hi - lo).norm();
  if (diag == 0) fail(errc::degenerate_face, "all vertices coincide");

  double area_tol = 1e-14 * diag * diag;
  for (int f = 0; f < nf; ++f)
    if (face_area(f) <= area_tol)
      fail(errc::degenerate_face, "face " + std::to_string(f) + " has zero area");

  if (opts.check_duplicates) {
    double tol = opts.duplicate_tol * diag;
    double cell = std::max(tol, 1e-300);
    std::unordered_map<uint64_t, std::vector<int>> grid;
    grid.reserve(vertices_.size() * 2);
    auto cell_key = [&](const Vec3& p, int dx, int dy, int dz) {
      int64_t ix = (int64_t)std::floor(p.x() / cell) + dx;
      int64_t iy = (int64_t)std::floor(p.y() / cell) + dy;
      int64_t iz = (int64_t)std::floor(p.z() / cell) + dz;
      uint64_t h = (uint64_t)ix * 73856093u ^ (uint64_t)iy * 19349663u ^ (uint64_t)iz * 83492791u;
      return h;
    };
    for (int v = 0; v < nv; ++v) {
      for (int dx = -1; dx <= 1; ++dx)
        for (int dy = -1; dy <= 1; ++dy)
          for (int dz = -1; dz <= 1; ++dz) {
            auto it = grid.find(cell_key(vertices_[v], dx, dy, dz));
            if (it == grid.end()) continue;
            for (int u : it->second)
              if ((vertices_[u] - vertices_[v]).norm() <= tol)
                fail(errc::degenerate_face,
                     "duplicate vertices " + std::to_string(u) + " and " + std::to_string(v));
          }
      grid[cell_key(vertices_[v], 0, 0, 0)].push_back(v);
    }
  }

  // Directed edge map: orientation consistency means every undirected edge is
  // seen once in each direction.
  std::unordered_map<uint64_t, int> directed; // key -> face
  directed.reserve(3 * nf * 2);
  for (int f = 0; f < nf; ++f) {
    for (int e = 0; e < 3; ++e) {
      int a = faces_[f][e], b = faces_[f][(e + 1) % 3];
      auto [it, inserted] = directed.emplace(edge_key(a, b), f);
      if (!inserted)
        fail(errc::inconsistent_orientation,
             "edge (" + std::to_string(a) + "," + std::to_string(b) + ") appears twice in the same direction, faces " +
                 std::to_string(it->second) + " and " + std::to_string(f));
    }
  }

  face_adj_.assign(3 * nf, -1);
  int boundary_edges = 0;
  int undirected = 0;
  for (int f = 0; f < nf; ++f) {
    for (int e = 0; e < 3; ++e) {
      int a = faces_[f][e], b = faces_[f][(e + 1) % 3];
      if (a < b) ++undirected;
      auto it = directed.find(edge_key(b, a));
      if (it != directed.end()) {
        face_adj_[3 * f + e] = it->second;
      } else {
        if (a > b) ++undirected; // boundary edge counted once
        ++boundary_edges;
      }
    }
  }
  closed_ = boundary_edges == 0;
  if (!closed_ && !opts.allow_boundary)
    fail(errc::non_manifold_edge,
         "mesh is not closed: " + std::to_string(boundary_edges) + " boundary edges");

  n_edges_ = undirected;
  euler_ = nv - n_edges_ + nf;

  vertex_faces_.assign(nv, {});
  for (int f = 0; f < nf; ++f)
    for (int k = 0; k < 3; ++k) vertex_faces_[faces_[f][k]].push_back(f);

  boundary_vertex_.assign(nv, 0);
  for (int f = 0; f < nf; ++f)
    for (int e = 0; e < 3; ++e)
      if (face_adj_[3 * f + e] < 0) {
        boundary_vertex_[faces_[f][e]] = 1;
        boundary_vertex_[faces_[f][(e + 1) % 3]] = 1;
      }

  // Vertex manifoldness: incident faces must form a single fan around v.
  for (int v = 0; v < nv; ++v) {
    const auto& inc = vertex_faces_[v];
    if (inc.empty()) fail(errc::degenerate_face, "isolated vertex " + std::to_string(v));
    std::vector<char> seen(inc.size(), 0);
    std::vector<int> stack = {0};
    seen[0] = 1;
    int visited = 1;
    auto local = [&](int face) {
      for (size_t i = 0; i < inc.size(); ++i)
        if (inc[i] == face) return (int)i;
      return -1;
    };
    while (!stack.empty()) {
      int fi = inc[stack.back()];
      stack.pop_back();
      for (int e = 0; e < 3; ++e) {
        if (faces_[fi][e] != v && faces_[fi][(e + 1) % 3] != v) continue;
        int nb = face_adj_[3 * fi + e];
        if (nb < 0) continue;
        int li = local(nb);
        if (li >= 0 && !seen[li]) {
          seen[li] = 1;
          ++visited;
          stack.push_back(li);
        }
      }
    }
    if (visited != (int)inc.size())
      fail(errc::non_manifold_edge, "vertex " + std::to_string(v) + " has a non-manifold fan");
  }

  one_ring_.assign(nv, {});
  for (int v = 0; v < nv; ++v) {
    std::vector<int>& ring = one_ring_[v];
    for (int f : vertex_faces_[v])
      for (int k = 0; k < 3; ++k)
        if (faces_[f][k] != v) ring.push_back(faces_[f][k]);
    std::sort(ring.begin(), ring.end());
    ring.erase(std::unique(ring.begin(), ring.end()), ring.end());
  }
}

double TriangleMesh::total_area() const {
  double a = 0;
  for (int f = 0; f < n_faces(); ++f) a += face_area(f);
  return a;
}

double TriangleMesh::mean_edge_length() const {
  double acc = 0;
  int cnt = 0;
  for (int f = 0; f < n_faces(); ++f)
    for (int e = 0; e < 3; ++e) {
      int a = faces_[f][e], b = faces_[f][(e + 1) % 3];
      if (a < b || face_adj_[3 * f + e] < 0) {
        acc += (vertices_[a] - vertices_[b]).norm();
        ++cnt;
      }
    }
  return acc / cnt;
}

double TriangleMesh::min_edge_length() const {
  double best = 1e300;
  for (int f = 0; f < n_faces(); ++f)
    for (int e = 0; e < 3; ++e) {
      int a = faces_[f][e], b = faces_[f][(e + 1) % 3];
      best = std::min(best, (vertices_[a] - vertices_[b]).norm());
    }
  return best;
}

std::pair<Vec3, Vec3> TriangleMesh::bounding_box() const {
  Vec3 lo = vertices_[0], hi = vertices_[0];
  for (const Vec3& p : vertices_) {
    lo = lo.cwiseMin(p);
    hi = hi.cwiseMax(p);
  }
  return {lo, hi};
}

std::vector<int> TriangleMesh::two_ring(int v) const {
  std::vector<int> out = one_ring_[v];
  size_t first = out.size();
  for (size_t i = 0; i < first; ++i)
    for (int u : one_ring_[out[i]]) out.push_back(u);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  out.erase(std::remove(out.begin(), out.end(), v), out.end());
  return out;
}

TriangleMesh TriangleMesh::with_vertices(std::vector<Vec3> vertices) const {
  if ((int)vertices.size() != n_vertices())
    fail(errc::invalid_argument, "with_vertices: size mismatch");
  TriangleMesh m = *this;
  m.vertices_ = std::move(vertices);
  m.bvh_.reset();
  return m;
}

TriangleMesh TriangleMesh::transformed(double scale, const Vec3& shift) const {
  std::vector<Vec3> v(vertices_.size());
  for (size_t i = 0; i < v.size(); ++i) v[i] = scale * (vertices_[i] - shift);
  return with_vertices(std::move(v));
}

const TriangleBVH& TriangleMesh::bvh() const {
  if (!bvh_) bvh_ = std::make_shared<TriangleBVH>(vertices_, faces_);
  return *bvh_;
}

const char* errc_name(errc c) {
  switch (c) {
    case errc::non_manifold_edge: return "NonManifoldEdge";
    case errc::inconsistent_orientation: return "InconsistentOrientation";
    case errc::degenerate_face: return "DegenerateFace";
    case errc::parse_error: return "ParseError";
    case errc::unsupported_format: return "UnsupportedFormat";
    case errc::ill_conditioned_fit: return "IllConditionedFit";
    case errc::seed_outside_ball: return "SeedOutsideBall";
    case errc::empty_intersection: return "EmptyIntersection";
    case errc::curvature_hypothesis_violated: return "CurvatureHypothesisViolated";
    case errc::multi_valued: return "MultiValued";
    case errc::step_rejected: return "StepRejected";
    case errc::blowup_detected: return "BlowupDetected";
    case errc::topology_changed: return "TopologyChanged";
    case errc::time_beyond_T: return "TimeBeyondT";
    case errc::insufficient_approach: return "InsufficientApproach";
    case errc::hypothesis_violated: return "HypothesisViolated";
    case errc::trajectory_too_short: return "TrajectoryTooShort";
    case errc::chain_unbounded: return "ChainUnbounded";
    case errc::resolution_too_coarse: return "ResolutionTooCoarse";
    case errc::series_too_short: return "SeriesTooShort";
    case errc::not_two_sheet: return "NotTwoSheet";
    case errc::not_graphical: return "NotGraphical";
    case errc::empty_domain: return "EmptyDomain";
    case errc::insufficient_times: return "InsufficientTimes";
    case errc::nonpositive_gap_at_base: return "NonpositiveGapAtBase";
    case errc::cfl_violation: return "CFLViolation";
    case errc::not_compactly_supported: return "NotCompactlySupported";
    case errc::structure_conditions_fail: return "StructureConditionsFail";
    case errc::unknown_probe: return "UnknownProbe";
    case errc::invalid_argument: return "InvalidArgument";
    case errc::io_error: return "IOError";
  }
  return "UnknownError";
}

} // namespace mcf
