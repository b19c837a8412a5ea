#pragma once

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "cwf/mesh.hpp"

namespace cwf {

struct ObjError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

namespace detail {
// "12", "12/3", "12/3/4", "12//4" -> 12
inline int parse_obj_index(const std::string& token, int line_no) {
  std::size_t slash = token.find('/');
  const std::string head = slash == std::string::npos ? token : token.substr(0, slash);
  try {
    std::size_t used = 0;
    const int idx = std::stoi(head, &used);
    if (used != head.size()) throw std::invalid_argument(head);
    return idx;
  } catch (const std::exception&) {
    throw ObjError("line " + std::to_string(line_no) + ": bad face index '" + token + "'");
  }
}
}  // namespace detail

// Reads `v x y z` and triangular `f a b c` records; every other record
// type is ignored. OBJ indices are 1-based and converted to 0-based.
inline TriangleMesh load_obj(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ObjError("cannot open '" + path + "'");

  TriangleMesh mesh;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream ss(line);
    std::string tag;
    if (!(ss >> tag)) continue;
    if (tag == "v") {
      V3 p;
      if (!(ss >> p.x >> p.y >> p.z))
        throw ObjError("line " + std::to_string(line_no) + ": malformed vertex record");
      mesh.positions.push_back(p);
    } else if (tag == "f") {
      std::vector<int> corners;
      std::string token;
      while (ss >> token) corners.push_back(detail::parse_obj_index(token, line_no));
      if (corners.size() != 3)
        throw ObjError("line " + std::to_string(line_no) + ": non-triangular face (" +
                       std::to_string(corners.size()) + " corners)");
      Face f;
      for (int c = 0; c < 3; ++c) {
        const int idx = corners[c] - 1;
        if (idx < 0 || idx >= mesh.vertex_count())
          throw ObjError("line " + std::to_string(line_no) + ": face index " +
                         std::to_string(corners[c]) + " out of range");
        f[c] = idx;
      }
      mesh.faces.push_back(f);
    }
    // anything else: ignored
  }
  validate_face_indices(mesh);
  return mesh;
}

// Writes positions at 17 significant digits so a load round-trips the
// binary64 values, faces 1-based.
inline void save_obj(const TriangleMesh& mesh, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ObjError("cannot write '" + path + "'");
  out << "# " << mesh.vertex_count() << " vertices, " << mesh.face_count()
      << " faces\n";
  char buf[96];
  for (const V3& p : mesh.positions) {
    std::snprintf(buf, sizeof(buf), "v %.17g %.17g %.17g\n", p.x, p.y, p.z);
    out << buf;
  }
  for (const Face& f : mesh.faces)
    out << "f " << f[0] + 1 << ' ' << f[1] + 1 << ' ' << f[2] + 1 << '\n';
  if (!out) throw ObjError("write failed for '" + path + "'");
}

}  // namespace cwf
