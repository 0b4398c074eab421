#include "mcflab/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace mcf {

namespace {

// Intersection parameters of segment a + t(b-a), t in [0,1], with sphere |x-c| = r.
int segment_sphere_params(const Vec3& a, const Vec3& b, const Vec3& c, double r, double t[2]) {
  Vec3 d = b - a;
  Vec3 m = a - c;
  double A = d.squaredNorm();
  if (A == 0) return 0;
  double B = 2.0 * m.dot(d);
  double C = m.squaredNorm() - r * r;
  double disc = B * B - 4 * A * C;
  if (disc < 0) return 0;
  double sq = std::sqrt(disc);
  double t0 = (-B - sq) / (2 * A);
  double t1 = (-B + sq) / (2 * A);
  int n = 0;
  if (t0 >= 0.0 && t0 <= 1.0) t[n++] = t0;
  if (t1 >= 0.0 && t1 <= 1.0 && t1 != t0) t[n++] = t1;
  return n;
}

double polygon_area(const std::vector<Vec3>& poly) {
  if (poly.size() < 3) return 0.0;
  Vec3 acc = Vec3::Zero();
  for (size_t i = 1; i + 1 < poly.size(); ++i)
    acc += (poly[i] - poly[0]).cross(poly[i + 1] - poly[0]);
  return 0.5 * acc.norm();
}

// Clip polygon (with per-vertex scalar) to the ball by inserting chord points.
// One pass: each edge contributes its inside endpoint plus crossing points.
void clip_poly_to_ball(const std::vector<Vec3>& pts, const std::vector<double>& vals,
                       const Vec3& center, double r,
                       std::vector<Vec3>& out_pts, std::vector<double>& out_vals) {
  size_t n = pts.size();
  out_pts.clear();
  out_vals.clear();
  for (size_t i = 0; i < n; ++i) {
    const Vec3& p = pts[i];
    const Vec3& q = pts[(i + 1) % n];
    double vp = vals[i], vq = vals[(i + 1) % n];
    bool pin = (p - center).squaredNorm() <= r * r;
    if (pin) {
      out_pts.push_back(p);
      out_vals.push_back(vp);
    }
    double t[2];
    int k = segment_sphere_params(p, q, center, r, t);
    for (int j = 0; j < k; ++j) {
      if (t[j] <= 0.0 || t[j] >= 1.0) continue;
      out_pts.push_back(p + t[j] * (q - p));
      out_vals.push_back(vp + t[j] * (vq - vp));
    }
  }
}

} // namespace

double triangle_area_in_ball(const Vec3& a, const Vec3& b, const Vec3& c,
                             const Vec3& center, double r) {
  return triangle_integral_in_ball(a, b, c, 1.0, 1.0, 1.0, center, r);
}

double triangle_integral_in_ball(const Vec3& a, const Vec3& b, const Vec3& c,
                                 double fa, double fb, double fc,
                                 const Vec3& center, double r) {
  double r2 = r * r;
  bool ia = (a - center).squaredNorm() <= r2;
  bool ib = (b - center).squaredNorm() <= r2;
  bool ic = (c - center).squaredNorm() <= r2;
  if (ia && ib && ic) {
    return triangle_area(a, b, c) * (fa + fb + fc) / 3.0;
  }
  if (!ia && !ib && !ic) {
    // Whole triangle outside, except possibly a lens where the sphere pokes
    // through the interior. Subdivide once at the midpoints and test centroids.
    double dmin = point_triangle_distance(center, a, b, c);
    if (dmin >= r) return 0.0;
    Vec3 ab = 0.5 * (a + b), bc = 0.5 * (b + c), ca = 0.5 * (c + a);
    double fab = 0.5 * (fa + fb), fbc = 0.5 * (fb + fc), fca = 0.5 * (fc + fa);
    auto piece = [&](const Vec3& p, const Vec3& q, const Vec3& s, double fp, double fq, double fs) {
      Vec3 g = (p + q + s) / 3.0;
      if ((g - center).squaredNorm() <= r2)
        return triangle_area(p, q, s) * (fp + fq + fs) / 3.0;
      return 0.0;
    };
    return piece(a, ab, ca, fa, fab, fca) + piece(ab, b, bc, fab, fb, fbc) +
           piece(ca, bc, c, fca, fbc, fc) + piece(ab, bc, ca, fab, fbc, fca);
  }
  std::vector<Vec3> pts = {a, b, c}, clipped;
  std::vector<double> vals = {fa, fb, fc}, cvals;
  clip_poly_to_ball(pts, vals, center, r, clipped, cvals);
  if (clipped.size() < 3) return 0.0;
  // Fan triangulation of the clipped polygon.
  double acc = 0.0;
  for (size_t i = 1; i + 1 < clipped.size(); ++i) {
    acc += triangle_area(clipped[0], clipped[i], clipped[i + 1]) *
           (cvals[0] + cvals[i] + cvals[i + 1]) / 3.0;
  }
  (void)polygon_area;
  return acc;
}

bool segment_intersects_ball(const Vec3& a, const Vec3& b, const Vec3& center, double r) {
  Vec3 d = b - a;
  double len2 = d.squaredNorm();
  double t = len2 > 0 ? std::clamp((center - a).dot(d) / len2, 0.0, 1.0) : 0.0;
  return (a + t * d - center).squaredNorm() <= r * r;
}

double point_triangle_distance(const Vec3& p, const Vec3& a, const Vec3& b, const Vec3& c) {
  // Ericson, Real-Time Collision Detection, closest point on triangle.
  Vec3 ab = b - a, ac = c - a, ap = p - a;
  double d1 = ab.dot(ap), d2 = ac.dot(ap);
  if (d1 <= 0 && d2 <= 0) return (p - a).norm();
  Vec3 bp = p - b;
  double d3 = ab.dot(bp), d4 = ac.dot(bp);
  if (d3 >= 0 && d4 <= d3) return (p - b).norm();
  double vc = d1 * d4 - d3 * d2;
  if (vc <= 0 && d1 >= 0 && d3 <= 0) {
    double v = d1 / (d1 - d3);
    return (p - (a + v * ab)).norm();
  }
  Vec3 cp = p - c;
  double d5 = ab.dot(cp), d6 = ac.dot(cp);
  if (d6 >= 0 && d5 <= d6) return (p - c).norm();
  double vb = d5 * d2 - d1 * d6;
  if (vb <= 0 && d2 >= 0 && d6 <= 0) {
    double w = d2 / (d2 - d6);
    return (p - (a + w * ac)).norm();
  }
  double va = d3 * d6 - d5 * d4;
  if (va <= 0 && (d4 - d3) >= 0 && (d5 - d6) >= 0) {
    double w = (d4 - d3) / ((d4 - d3) + (d5 - d6));
    return (p - (b + w * (c - b))).norm();
  }
  double denom = 1.0 / (va + vb + vc);
  double v = vb * denom, w = vc * denom;
  return (p - (a + ab * v + ac * w)).norm();
}

bool triangle_box_overlap(const Vec3& box_center, const Vec3& box_half,
                          const Vec3& a0, const Vec3& b0, const Vec3& c0) {
  Vec3 a = a0 - box_center, b = b0 - box_center, c = c0 - box_center;
  const Vec3& h = box_half;
  auto axis_test = [&](const Vec3& ax) {
    double pa = a.dot(ax), pb = b.dot(ax), pc = c.dot(ax);
    double mn = std::min({pa, pb, pc}), mx = std::max({pa, pb, pc});
    double rad = h.x() * std::abs(ax.x()) + h.y() * std::abs(ax.y()) + h.z() * std::abs(ax.z());
    return mn <= rad && mx >= -rad;
  };
  for (int i = 0; i < 3; ++i) {
    Vec3 e = Vec3::Zero();
    e[i] = 1.0;
    if (!axis_test(e)) return false;
  }
  Vec3 edges[3] = {b - a, c - b, a - c};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      Vec3 e = Vec3::Zero();
      e[j] = 1.0;
      Vec3 ax = edges[i].cross(e);
      if (ax.squaredNorm() > 1e-26 && !axis_test(ax)) return false;
    }
  Vec3 n = (b - a).cross(c - a);
  if (n.squaredNorm() > 0 && !axis_test(n)) return false;
  return true;
}

std::optional<double> ray_triangle_intersect(const Vec3& origin, const Vec3& dir,
                                             const Vec3& a, const Vec3& b, const Vec3& c) {
  // Moller-Trumbore.
  Vec3 e1 = b - a, e2 = c - a;
  Vec3 pv = dir.cross(e2);
  double det = e1.dot(pv);
  if (std::abs(det) < 1e-300) return std::nullopt;
  double inv = 1.0 / det;
  Vec3 tv = origin - a;
  double u = tv.dot(pv) * inv;
  if (u < -1e-12 || u > 1 + 1e-12) return std::nullopt;
  Vec3 qv = tv.cross(e1);
  double v = dir.dot(qv) * inv;
  if (v < -1e-12 || u + v > 1 + 1e-12) return std::nullopt;
  return e2.dot(qv) * inv;
}

std::optional<std::pair<double, double>> triangle_column_zrange(
    const Vec3& a, const Vec3& b, const Vec3& c,
    double x0, double x1, double y0, double y1) {
  // Sutherland-Hodgman clip in xy, carrying z along.
  std::vector<Vec3> poly = {a, b, c}, next;
  auto clip = [&](auto inside, auto cross_t) {
    next.clear();
    size_t n = poly.size();
    for (size_t i = 0; i < n; ++i) {
      const Vec3& p = poly[i];
      const Vec3& q = poly[(i + 1) % n];
      bool pin = inside(p), qin = inside(q);
      if (pin) next.push_back(p);
      if (pin != qin) {
        double t = cross_t(p, q);
        next.push_back(p + t * (q - p));
      }
    }
    poly = next;
  };
  clip([&](const Vec3& p) { return p.x() >= x0; },
       [&](const Vec3& p, const Vec3& q) { return (x0 - p.x()) / (q.x() - p.x()); });
  if (poly.empty()) return std::nullopt;
  clip([&](const Vec3& p) { return p.x() <= x1; },
       [&](const Vec3& p, const Vec3& q) { return (x1 - p.x()) / (q.x() - p.x()); });
  if (poly.empty()) return std::nullopt;
  clip([&](const Vec3& p) { return p.y() >= y0; },
       [&](const Vec3& p, const Vec3& q) { return (y0 - p.y()) / (q.y() - p.y()); });
  if (poly.empty()) return std::nullopt;
  clip([&](const Vec3& p) { return p.y() <= y1; },
       [&](const Vec3& p, const Vec3& q) { return (y1 - p.y()) / (q.y() - p.y()); });
  if (poly.empty()) return std::nullopt;
  double zmin = poly[0].z(), zmax = poly[0].z();
  for (const Vec3& p : poly) {
    zmin = std::min(zmin, p.z());
    zmax = std::max(zmax, p.z());
  }
  return std::make_pair(zmin, zmax);
}

TriangleBVH::TriangleBVH(const std::vector<Vec3>& vertices,
                         const std::vector<std::array<int, 3>>& faces) {
  tris_.resize(faces.size());
  for (size_t i = 0; i < faces.size(); ++i)
    tris_[i] = {vertices[faces[i][0]], vertices[faces[i][1]], vertices[faces[i][2]]};
  if (tris_.empty()) return;
  std::vector<int> index(tris_.size());
  std::iota(index.begin(), index.end(), 0);
  nodes_.reserve(2 * tris_.size());
  root_ = build(0, (int)tris_.size(), index);
  std::vector<Tri> reordered(tris_.size());
  for (size_t i = 0; i < index.size(); ++i) reordered[i] = tris_[index[i]];
  tris_.swap(reordered);
}

int TriangleBVH::build(int begin, int end, std::vector<int>& index) {
  Node node;
  node.lo = Vec3::Constant(1e300);
  node.hi = Vec3::Constant(-1e300);
  for (int i = begin; i < end; ++i) {
    const Tri& t = tris_[index[i]];
    for (const Vec3* p : {&t.a, &t.b, &t.c}) {
      node.lo = node.lo.cwiseMin(*p);
      node.hi = node.hi.cwiseMax(*p);
    }
  }
  int id = (int)nodes_.size();
  nodes_.push_back(node);
  if (end - begin <= 4) {
    nodes_[id].begin = begin;
    nodes_[id].end = end;
    return id;
  }
  Vec3 ext = node.hi - node.lo;
  int axis = 0;
  if (ext.y() > ext.x()) axis = 1;
  if (ext.z() > ext[axis]) axis = 2;
  int mid = (begin + end) / 2;
  std::nth_element(index.begin() + begin, index.begin() + mid, index.begin() + end,
                   [&](int l, int r) {
                     double cl = tris_[l].a[axis] + tris_[l].b[axis] + tris_[l].c[axis];
                     double cr = tris_[r].a[axis] + tris_[r].b[axis] + tris_[r].c[axis];
                     return cl < cr;
                   });
  int left = build(begin, mid, index);
  int right = build(mid, end, index);
  nodes_[id].left = left;
  nodes_[id].right = right;
  return id;
}

double TriangleBVH::distance(const Vec3& p) const {
  if (nodes_.empty()) return 1e300;
  double best = 1e300;
  // Manual stack; order children by box distance.
  std::vector<int> stack = {root_};
  auto box_dist = [&](const Node& n) {
    Vec3 d = (n.lo - p).cwiseMax(p - n.hi).cwiseMax(0.0);
    return d.norm();
  };
  while (!stack.empty()) {
    int id = stack.back();
    stack.pop_back();
    const Node& n = nodes_[id];
    if (box_dist(n) >= best) continue;
    if (n.left < 0) {
      for (int i = n.begin; i < n.end; ++i) {
        double d = point_triangle_distance(p, tris_[i].a, tris_[i].b, tris_[i].c);
        best = std::min(best, d);
      }
    } else {
      double dl = box_dist(nodes_[n.left]), dr = box_dist(nodes_[n.right]);
      if (dl < dr) {
        stack.push_back(n.right);
        stack.push_back(n.left);
      } else {
        stack.push_back(n.left);
        stack.push_back(n.right);
      }
    }
  }
  return best;
}

void TriangleBVH::ray_hits(const Vec3& origin, const Vec3& dir, double tmin, double tmax,
                           std::vector<double>& out) const {
  if (nodes_.empty()) return;
  Vec3 inv(1.0 / dir.x(), 1.0 / dir.y(), 1.0 / dir.z());
  std::vector<int> stack = {root_};
  while (!stack.empty()) {
    int id = stack.back();
    stack.pop_back();
    const Node& n = nodes_[id];
    double t0 = tmin, t1 = tmax;
    bool hit = true;
    for (int ax = 0; ax < 3; ++ax) {
      double ta = (n.lo[ax] - origin[ax]) * inv[ax];
      double tb = (n.hi[ax] - origin[ax]) * inv[ax];
      if (ta > tb) std::swap(ta, tb);
      t0 = std::max(t0, ta);
      t1 = std::min(t1, tb);
      if (t0 > t1) {
        hit = false;
        break;
      }
    }
    if (!hit) continue;
    if (n.left < 0) {
      for (int i = n.begin; i < n.end; ++i) {
        auto t = ray_triangle_intersect(origin, dir, tris_[i].a, tris_[i].b, tris_[i].c);
        if (t && *t >= tmin && *t <= tmax) out.push_back(*t);
      }
    } else {
      stack.push_back(n.left);
      stack.push_back(n.right);
    }
  }
}

std::pair<Vec3, Vec3> tangent_basis(const Vec3& n) {
  Vec3 a = std::abs(n.x()) < 0.9 ? Vec3(1, 0, 0) : Vec3(0, 1, 0);
  Vec3 e1 = (a - a.dot(n) * n).normalized();
  Vec3 e2 = n.cross(e1);
  return {e1, e2};
}

} // namespace mcf
