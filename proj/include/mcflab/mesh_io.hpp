#pragma once

#include <string>

#include "mcflab/mesh.hpp"

namespace mcf {

struct LoadOptions {
  bool allow_boundary = false;
  bool triangulate_quads = false; // OBJ only; off by default, quads are rejected
};

// Format chosen by extension: .off or .obj (ASCII). Coordinates are written
// with 17 significant digits so a round trip is bit-stable.
TriangleMesh load_mesh(const std::string& path, const LoadOptions& opts = {});
void save_mesh(const TriangleMesh& mesh, const std::string& path);

} // namespace mcf
