#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>

#include "mcflab/curvature.hpp"
#include "mcflab/mesh.hpp"
#include "mcflab/mesh_io.hpp"
#include "mcflab/mesh_ops.hpp"
#include "mcflab/shapes.hpp"

using namespace mcf;

namespace {
std::filesystem::path temp_dir() {
  auto p = std::filesystem::temp_directory_path() / "mcflab_test_mesh";
  std::filesystem::create_directories(p);
  return p;
}
} // namespace

TEST_CASE("tetrahedron, icosphere and torus have the expected Euler characteristic") {
  TriangleMesh tet = shapes::tetrahedron();
  CHECK(tet.n_vertices() == 4);
  CHECK(tet.n_faces() == 4);
  CHECK(tet.n_edges() == 6);
  CHECK(tet.euler_characteristic() == 2);
  CHECK(tet.closed());

  TriangleMesh sph = shapes::icosphere(3);
  CHECK(sph.euler_characteristic() == 2);
  CHECK(sph.closed());
  CHECK(sph.n_vertices() == 642);

  TriangleMesh tor = shapes::torus(2.0, 0.5, 48, 24);
  CHECK(tor.euler_characteristic() == 0);
  CHECK(tor.closed());
}

TEST_CASE("generators produce outward-oriented surfaces") {
  for (const TriangleMesh& m : {shapes::icosphere(2), shapes::torus(2.0, 0.5, 32, 16),
                                shapes::dumbbell(1.0, 0.3, 1.4, 64, 32),
                                shapes::capsule(1.0, 1.5, 48, 24)}) {
    // Signed volume via divergence theorem must be positive for outward normals.
    double vol = 0;
    for (int f = 0; f < m.n_faces(); ++f) {
      const auto& t = m.faces()[f];
      vol += m.vertices()[t[0]].dot(m.vertices()[t[1]].cross(m.vertices()[t[2]])) / 6.0;
    }
    CHECK(vol > 0);
  }
}

TEST_CASE("build_mesh rejects open, misoriented and degenerate input") {
  // hole: drop one face of a tetrahedron
  {
    auto tet = shapes::tetrahedron();
    std::vector<std::array<int, 3>> faces(tet.faces().begin(), tet.faces().end() - 1);
    CHECK_THROWS_AS(TriangleMesh::build(tet.vertices(), faces), error);
    try {
      TriangleMesh::build(tet.vertices(), faces);
    } catch (const error& e) {
      CHECK(e.code() == errc::non_manifold_edge);
    }
  }
  // flipped face
  {
    auto tet = shapes::tetrahedron();
    auto faces = tet.faces();
    std::swap(faces[0][0], faces[0][1]);
    try {
      TriangleMesh::build(tet.vertices(), faces);
      CHECK(false);
    } catch (const error& e) {
      CHECK(e.code() == errc::inconsistent_orientation);
    }
  }
  // repeated vertex in a face
  {
    auto tet = shapes::tetrahedron();
    auto faces = tet.faces();
    faces[0] = {0, 1, 1};
    try {
      TriangleMesh::build(tet.vertices(), faces);
      CHECK(false);
    } catch (const error& e) {
      CHECK(e.code() == errc::degenerate_face);
    }
  }
  // duplicate vertices
  {
    auto tet = shapes::tetrahedron();
    auto verts = tet.vertices();
    verts.push_back(verts[0]);
    auto faces = tet.faces();
    faces[3] = {1, 2, 4};
    try {
      TriangleMesh::build(verts, faces);
      CHECK(false);
    } catch (const error& e) {
      CHECK(e.code() == errc::degenerate_face);
    }
  }
}

TEST_CASE("curvature on the unit icosphere matches the round sphere") {
  TriangleMesh m = shapes::icosphere(3);
  CurvatureField f = compute_curvatures(m);
  for (int v = 0; v < m.n_vertices(); ++v) {
    CHECK(f.mean_curvature[v] == doctest::Approx(2.0).epsilon(0.02));
    CHECK(f.second_form_norm[v] * f.second_form_norm[v] == doctest::Approx(2.0).epsilon(0.02));
    CHECK(f.normal[v].norm() == doctest::Approx(1.0).epsilon(1e-12));
    // outward normal
    CHECK(f.normal[v].dot(m.vertices()[v]) > 0.99);
    // internal consistency of the field
    CHECK(f.mean_curvature[v] == doctest::Approx(f.kappa1[v] + f.kappa2[v]).epsilon(1e-12));
  }
  double area = 0;
  for (double a : f.vertex_area) area += a;
  CHECK(area == doctest::Approx(m.total_area()).epsilon(1e-10));
  // cotan channel agrees on the sphere
  for (int v = 0; v < m.n_vertices(); ++v)
    CHECK(f.mean_curvature_cotan[v] == doctest::Approx(2.0).epsilon(0.03));
}

TEST_CASE("curvature on a flat interior region vanishes") {
  double h = 0.1;
  TriangleMesh m = shapes::plane_disk(2.0, h);
  CurvatureField f = compute_curvatures(m);
  for (int v = 0; v < m.n_vertices(); ++v) {
    if (m.is_boundary_vertex(v)) continue;
    if (m.vertices()[v].head<2>().norm() > 1.5) continue;
    CHECK(std::abs(f.mean_curvature[v]) < 1e-3 / h);
    CHECK(f.second_form_norm[v] < 1e-3 / h);
  }
}

TEST_CASE("curvature on the cylinder part of a capsule gives principal pair (1, 0)") {
  TriangleMesh m = shapes::capsule(1.0, 2.0, 96, 48);
  CurvatureField f = compute_curvatures(m);
  int checked = 0;
  for (int v = 0; v < m.n_vertices(); ++v) {
    if (std::abs(m.vertices()[v].z()) > 1.0) continue; // stay away from the cap blend
    ++checked;
    CHECK(f.kappa1[v] == doctest::Approx(1.0).epsilon(0.03));
    CHECK(std::abs(f.kappa2[v]) < 0.03);
    CHECK(f.mean_curvature[v] == doctest::Approx(1.0).epsilon(0.03));
    CHECK(f.second_form_norm[v] * f.second_form_norm[v] == doctest::Approx(1.0).epsilon(0.03));
  }
  CHECK(checked > 100);
}

TEST_CASE("total energy: sphere gives 8*pi on both routes, any radius") {
  for (double r : {1.0, 2.0, 0.5}) {
    TriangleMesh m = shapes::icosphere(3, r);
    CurvatureField f = compute_curvatures(m);
    EnergyResult e = total_energy(m, f);
    CHECK(e.direct == doctest::Approx(8 * kPi).epsilon(0.02));
    CHECK(e.gauss_bonnet == doctest::Approx(8 * kPi).epsilon(0.02));
    CHECK(e.direct == doctest::Approx(e.gauss_bonnet).epsilon(0.01));
  }
}

TEST_CASE("total energy: torus routes agree within 1 percent") {
  TriangleMesh m = shapes::torus(2.0, 0.5, 192, 64);
  CurvatureField f = compute_curvatures(m);
  EnergyResult e = total_energy(m, f);
  CHECK(m.euler_characteristic() == 0);
  CHECK(e.direct == doctest::Approx(e.gauss_bonnet).epsilon(0.01));
  // chi = 0 means the Gauss-Bonnet route is exactly the H^2 integral
  double h2 = 0;
  for (int v = 0; v < m.n_vertices(); ++v)
    h2 += f.mean_curvature[v] * f.mean_curvature[v] * f.vertex_area[v];
  CHECK(e.gauss_bonnet == doctest::Approx(h2).epsilon(1e-12));
}

TEST_CASE("Gauss-Bonnet closure: integral of K equals 2*pi*chi within 1 percent") {
  auto closure = [](const TriangleMesh& m) {
    CurvatureField f = compute_curvatures(m);
    double k = 0;
    for (int v = 0; v < m.n_vertices(); ++v) k += f.gauss_curvature[v] * f.vertex_area[v];
    return k;
  };
  CHECK(closure(shapes::icosphere(3)) == doctest::Approx(4 * kPi).epsilon(0.01));
  CHECK(closure(shapes::icosphere(4, 2.0)) == doctest::Approx(4 * kPi).epsilon(0.01));
  CHECK(closure(shapes::ellipsoid(4, 1.0, 0.8, 0.6)) == doctest::Approx(4 * kPi).epsilon(0.01));
  // torus: 2*pi*chi = 0; compare against the positive part as the scale
  TriangleMesh tor = shapes::torus(2.0, 0.5, 192, 64);
  CurvatureField f = compute_curvatures(tor);
  double k = 0, kabs = 0;
  for (int v = 0; v < tor.n_vertices(); ++v) {
    k += f.gauss_curvature[v] * f.vertex_area[v];
    kabs += std::abs(f.gauss_curvature[v]) * f.vertex_area[v];
  }
  CHECK(std::abs(k) < 0.01 * kabs);
}

TEST_CASE("estimator converges with order >= 1 on icospheres") {
  std::vector<double> hs, errs;
  for (int level : {2, 3, 4}) {
    TriangleMesh m = shapes::icosphere(level);
    CurvatureField f = compute_curvatures(m);
    double err = 0;
    for (int v = 0; v < m.n_vertices(); ++v)
      err = std::max(err, std::abs(f.mean_curvature[v] - 2.0));
    hs.push_back(m.mean_edge_length());
    errs.push_back(err);
  }
  CHECK(errs[1] < errs[0]);
  CHECK(errs[2] < errs[1]);
  double slope = std::log(errs[0] / errs[2]) / std::log(hs[0] / hs[2]);
  CHECK(slope >= 1.0);
}

TEST_CASE("connected component of a ball around the north pole is the spherical cap") {
  TriangleMesh m = shapes::icosphere(4);
  // north pole: nearest vertex to (0,0,1)
  int pole = 0;
  double best = 1e300;
  for (int v = 0; v < m.n_vertices(); ++v) {
    double d = (m.vertices()[v] - Vec3(0, 0, 1)).norm();
    if (d < best) {
      best = d;
      pole = v;
    }
  }
  double r = 0.5;
  BallComponent comp = connected_component(m, m.vertices()[pole], r, pole);
  // Euclidean ball of radius r centered on a unit sphere cuts a cap of area
  // exactly pi r^2
  CHECK(comp.area == doctest::Approx(kPi * r * r).epsilon(0.01));
}

TEST_CASE("connected component separates disjoint sheets and dumbbell bells") {
  // two disjoint spheres inside one big ball
  TriangleMesh s1 = shapes::icosphere(2, 1.0, Vec3(-2, 0, 0));
  TriangleMesh s2 = shapes::icosphere(2, 1.0, Vec3(2, 0, 0));
  std::vector<Vec3> verts = s1.vertices();
  verts.insert(verts.end(), s2.vertices().begin(), s2.vertices().end());
  std::vector<std::array<int, 3>> faces = s1.faces();
  int off = s1.n_vertices();
  for (auto f : s2.faces()) faces.push_back({f[0] + off, f[1] + off, f[2] + off});
  TriangleMesh both = TriangleMesh::build(verts, faces);
  BallComponent comp = connected_component(both, Vec3::Zero(), 10.0, 0);
  CHECK((int)comp.faces.size() == s1.n_faces());
  CHECK(comp.area == doctest::Approx(4 * kPi).epsilon(0.02));

  // dumbbell with the neck outside the ball: one bell only
  TriangleMesh db = shapes::dumbbell(1.0, 0.25, 1.6, 96, 48);
  int seed = 0;
  double bz = -1e9;
  for (int v = 0; v < db.n_vertices(); ++v)
    if (db.vertices()[v].z() > bz) {
      bz = db.vertices()[v].z();
      seed = v;
    }
  BallComponent bell = connected_component(db, Vec3(0, 0, 1.6), 1.15, seed);
  CHECK(!bell.faces.empty());
  for (int f : bell.faces) CHECK(db.face_centroid(f).z() > 0.4);
}

TEST_CASE("area ratio: plane, on-surface sphere cap, and enclosing ball") {
  TriangleMesh plane = shapes::plane_disk(3.0, 0.05);
  CHECK(area_ratio(plane, Vec3::Zero(), 1.0) == doctest::Approx(1.0).epsilon(0.005));

  TriangleMesh sph = shapes::icosphere(4);
  // centered at a surface point
  int v0 = 0;
  CHECK(area_ratio(sph, sph.vertices()[v0], 0.2) == doctest::Approx(1.0).epsilon(0.02));
  // ball containing the whole unit sphere
  CHECK(area_ratio(sph, Vec3::Zero(), 2.0) == doctest::Approx(4 * kPi / (kPi * 4)).epsilon(0.01));
}

TEST_CASE("area ratio and energy are invariant under rescaling") {
  TriangleMesh m = shapes::icosphere(3);
  double lambda = 2.7;
  Vec3 p0(0.3, -0.2, 0.1);
  TriangleMesh t = m.transformed(lambda, p0);

  Vec3 center = m.vertices()[17];
  double r = 0.4;
  double ratio0 = area_ratio(m, center, r, 17);
  double ratio1 = area_ratio(t, lambda * (center - p0), lambda * r, 17);
  CHECK(ratio0 == doctest::Approx(ratio1).epsilon(1e-12));

  CurvatureField f0 = compute_curvatures(m);
  CurvatureField f1 = compute_curvatures(t);
  CHECK(f0.energy() == doctest::Approx(f1.energy()).epsilon(1e-10));
  EnergyResult e0 = total_energy(m, f0), e1 = total_energy(t, f1);
  CHECK(e0.direct == doctest::Approx(e1.direct).epsilon(1e-10));
}

TEST_CASE("local graph over the tangent plane") {
  TriangleMesh m = shapes::icosphere(4);
  CurvatureField f = compute_curvatures(m);
  // |A| = sqrt(2) on the unit sphere, so the hypothesis needs r0 <= 1/sqrt(2)
  double r0 = 0.7;
  LocalGraphOptions opts;
  opts.domain_factor = 0.4;
  GraphPatch patch = local_graph(m, f, 0, r0, opts);
  CHECK(patch.samples.size() > 50);
  CHECK(patch.max_gradient_ratio < patch.gradient_bound_factor / r0);
  CHECK(patch.max_gradient_ratio == doctest::Approx(1.0).epsilon(0.15));
  CHECK(!patch.gradient_bound_violated);

  // default domain (r0/96) is tiny but valid
  GraphPatch small = local_graph(m, f, 0, r0);
  CHECK(small.domain_radius == doctest::Approx(r0 / 96.0));
  CHECK(small.samples.size() >= 1);

  // hypothesis gate: r0 beyond 1/max|A|
  CHECK_THROWS_AS(local_graph(m, f, 0, 1.2), error);

  // flat region: gradient ratio ~ 0
  TriangleMesh plane = shapes::plane_disk(2.0, 0.05);
  CurvatureField fp = compute_curvatures(plane);
  int center = -1;
  for (int v = 0; v < plane.n_vertices(); ++v)
    if (plane.vertices()[v].head<2>().norm() < 1e-9) center = v;
  REQUIRE(center >= 0);
  LocalGraphOptions popts;
  popts.domain_factor = 0.5;
  GraphPatch flat = local_graph(plane, fp, center, 1.0, popts);
  CHECK(flat.max_gradient_ratio < 1e-8);
}

TEST_CASE("mesh IO round trips OFF and OBJ bit-stably") {
  auto dir = temp_dir();
  TriangleMesh m = shapes::icosphere(3, 1.0, Vec3(0.1, -0.2, 0.337));
  for (const char* name : {"icosphere.off", "icosphere.obj"}) {
    std::string path = (dir / name).string();
    save_mesh(m, path);
    TriangleMesh back = load_mesh(path);
    REQUIRE(back.n_vertices() == m.n_vertices());
    REQUIRE(back.faces() == m.faces());
    for (int v = 0; v < m.n_vertices(); ++v)
      CHECK((back.vertices()[v] - m.vertices()[v]).norm() == 0.0);
  }
}

TEST_CASE("mesh IO rejects holes, quads and garbage") {
  auto dir = temp_dir();
  // OFF with a hole
  {
    std::string path = (dir / "hole.off").string();
    FILE* fp = fopen(path.c_str(), "w");
    fputs("OFF\n4 3 0\n0 0 0\n1 0 0\n0 1 0\n0 0 1\n3 0 2 1\n3 0 1 3\n3 0 3 2\n", fp);
    fclose(fp);
    try {
      load_mesh(path);
      CHECK(false);
    } catch (const error& e) {
      CHECK(e.code() == errc::non_manifold_edge);
    }
  }
  // OBJ with a quad
  {
    std::string path = (dir / "quad.obj").string();
    FILE* fp = fopen(path.c_str(), "w");
    fputs("v 0 0 0\nv 1 0 0\nv 1 1 0\nv 0 1 0\nf 1 2 3 4\n", fp);
    fclose(fp);
    try {
      load_mesh(path);
      CHECK(false);
    } catch (const error& e) {
      CHECK(e.code() == errc::unsupported_format);
    }
    LoadOptions lo;
    lo.triangulate_quads = true;
    lo.allow_boundary = true;
    TriangleMesh q = load_mesh(path, lo);
    CHECK(q.n_faces() == 2);
  }
  // parse error carries a line number
  {
    std::string path = (dir / "bad.off").string();
    FILE* fp = fopen(path.c_str(), "w");
    fputs("OFF\n4 4 0\n0 0 zebra\n", fp);
    fclose(fp);
    try {
      load_mesh(path);
      CHECK(false);
    } catch (const error& e) {
      CHECK(std::string(e.what()).find(":3:") != std::string::npos);
    }
  }
}
