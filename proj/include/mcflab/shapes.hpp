#pragma once

#include <functional>

#include "mcflab/mesh.hpp"

namespace mcf {
namespace shapes {

TriangleMesh tetrahedron(double scale = 1.0);

// Subdivided icosahedron projected to the sphere; level 0 has 12 vertices.
TriangleMesh icosphere(int level, double radius = 1.0, const Vec3& center = Vec3::Zero());

TriangleMesh ellipsoid(int level, double a, double b, double c);

// nu around the tube (minor), nv around the hole (major).
TriangleMesh torus(double major_radius, double minor_radius, int nv, int nu);

// Surface of revolution around the z axis: two bells of radius bell_radius at
// z = +-bell_offset joined by a neck of radius neck_radius, with smooth blend.
TriangleMesh dumbbell(double bell_radius, double neck_radius, double bell_offset,
                      int n_axial, int n_around);

// Cylinder of given radius and half-length capped by hemispheres.
TriangleMesh capsule(double radius, double half_length, int n_axial, int n_around);

// Open flat disk at height z, triangulated on a square grid clipped to the
// radius; boundary allowed.
TriangleMesh plane_disk(double radius, double spacing, double z = 0.0);

// Two stacked open disks at z = +-half_gap (one mesh, two components).
TriangleMesh two_planes(double radius, double spacing, double half_gap);

// Pair of open graph sheets z = base +- height(x, y) over a square grid disk.
TriangleMesh two_sheet_graphs(double radius, double spacing,
                              const std::function<double(double, double)>& upper,
                              const std::function<double(double, double)>& lower);

} // namespace shapes
} // namespace mcf
