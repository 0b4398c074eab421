#include "mcflab/mesh_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "mcflab/io_util.hpp"

namespace mcf {

namespace {

std::string lower_ext(const std::string& path) {
  auto dot = path.rfind('.');
  if (dot == std::string::npos) return "";
  std::string e = path.substr(dot + 1);
  for (char& c : e) c = (char)std::tolower((unsigned char)c);
  return e;
}

[[noreturn]] void parse_fail(const std::string& path, int line, const std::string& what) {
  fail(errc::parse_error, path + ":" + std::to_string(line) + ": " + what);
}

TriangleMesh load_off(const std::string& path, const LoadOptions& opts) {
  std::ifstream in(path);
  if (!in) fail(errc::io_error, "cannot open " + path);
  std::string token;
  int lineno = 0;
  std::string line;
  auto next_content_line = [&]() -> std::string {
    while (std::getline(in, line)) {
      ++lineno;
      auto pos = line.find('#');
      if (pos != std::string::npos) line.erase(pos);
      if (line.find_first_not_of(" \t\r\n") != std::string::npos) return line;
    }
    parse_fail(path, lineno, "unexpected end of file");
  };
  std::istringstream hdr(next_content_line());
  hdr >> token;
  if (token != "OFF") parse_fail(path, lineno, "expected OFF header, got '" + token + "'");
  long nv = 0, nf = 0, ne = 0;
  std::istringstream counts(next_content_line());
  if (!(counts >> nv >> nf >> ne)) parse_fail(path, lineno, "bad vertex/face/edge counts");
  std::vector<Vec3> verts;
  verts.reserve(nv);
  for (long i = 0; i < nv; ++i) {
    std::istringstream ls(next_content_line());
    double x, y, z;
    if (!(ls >> x >> y >> z)) parse_fail(path, lineno, "bad vertex line");
    verts.emplace_back(x, y, z);
  }
  std::vector<std::array<int, 3>> faces;
  faces.reserve(nf);
  for (long i = 0; i < nf; ++i) {
    std::istringstream ls(next_content_line());
    int k;
    if (!(ls >> k)) parse_fail(path, lineno, "bad face line");
    if (k != 3) fail(errc::unsupported_format, path + ":" + std::to_string(lineno) +
                                                   ": only triangle faces supported, got " +
                                                   std::to_string(k) + "-gon");
    int a, b, c;
    if (!(ls >> a >> b >> c)) parse_fail(path, lineno, "bad face indices");
    faces.push_back({a, b, c});
  }
  BuildOptions bopts;
  bopts.allow_boundary = opts.allow_boundary;
  return TriangleMesh::build(std::move(verts), std::move(faces), bopts);
}

TriangleMesh load_obj(const std::string& path, const LoadOptions& opts) {
  std::ifstream in(path);
  if (!in) fail(errc::io_error, "cannot open " + path);
  std::vector<Vec3> verts;
  std::vector<std::array<int, 3>> faces;
  std::string line;
  int lineno = 0;
  auto obj_index = [&](const std::string& tok) {
    // "v", "v/vt", "v/vt/vn", "v//vn" forms; only the vertex index is used
    size_t slash = tok.find('/');
    std::string v = slash == std::string::npos ? tok : tok.substr(0, slash);
    int idx = 0;
    try {
      idx = std::stoi(v);
    } catch (...) {
      parse_fail(path, lineno, "bad face index '" + tok + "'");
    }
    if (idx < 0) idx = (int)verts.size() + idx + 1; // negative = relative
    return idx - 1;
  };
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::string tag;
    if (!(ls >> tag)) continue;
    if (tag == "v") {
      double x, y, z;
      if (!(ls >> x >> y >> z)) parse_fail(path, lineno, "bad vertex line");
      verts.emplace_back(x, y, z);
    } else if (tag == "f") {
      std::vector<int> idx;
      std::string tok;
      while (ls >> tok) idx.push_back(obj_index(tok));
      if (idx.size() == 3) {
        faces.push_back({idx[0], idx[1], idx[2]});
      } else if (idx.size() == 4 && opts.triangulate_quads) {
        faces.push_back({idx[0], idx[1], idx[2]});
        faces.push_back({idx[0], idx[2], idx[3]});
      } else if (idx.size() > 3) {
        fail(errc::unsupported_format,
             path + ":" + std::to_string(lineno) + ": " + std::to_string(idx.size()) +
                 "-gon face (pass triangulate_quads to split quads)");
      } else {
        parse_fail(path, lineno, "face with fewer than 3 vertices");
      }
    }
    // other tags (vn, vt, o, g, s, mtllib, usemtl) are ignored
  }
  BuildOptions bopts;
  bopts.allow_boundary = opts.allow_boundary;
  return TriangleMesh::build(std::move(verts), std::move(faces), bopts);
}

} // namespace

TriangleMesh load_mesh(const std::string& path, const LoadOptions& opts) {
  std::string ext = lower_ext(path);
  if (ext == "off") return load_off(path, opts);
  if (ext == "obj") return load_obj(path, opts);
  fail(errc::unsupported_format, "unknown mesh extension '" + ext + "' for " + path);
}

void save_mesh(const TriangleMesh& mesh, const std::string& path) {
  std::string ext = lower_ext(path);
  std::ofstream out(path);
  if (!out) fail(errc::io_error, "cannot write " + path);
  if (ext == "off") {
    out << "OFF\n" << mesh.n_vertices() << " " << mesh.n_faces() << " " << mesh.n_edges() << "\n";
    for (const Vec3& p : mesh.vertices())
      out << fmt_g17(p.x()) << " " << fmt_g17(p.y()) << " " << fmt_g17(p.z()) << "\n";
    for (const auto& f : mesh.faces()) out << "3 " << f[0] << " " << f[1] << " " << f[2] << "\n";
  } else if (ext == "obj") {
    for (const Vec3& p : mesh.vertices())
      out << "v " << fmt_g17(p.x()) << " " << fmt_g17(p.y()) << " " << fmt_g17(p.z()) << "\n";
    for (const auto& f : mesh.faces())
      out << "f " << f[0] + 1 << " " << f[1] + 1 << " " << f[2] + 1 << "\n";
  } else {
    fail(errc::unsupported_format, "unknown mesh extension '" + ext + "' for " + path);
  }
  if (!out) fail(errc::io_error, "write failed for " + path);
}

} // namespace mcf
