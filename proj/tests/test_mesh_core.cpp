#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>

#include "cwf/cwf.hpp"
#include "oracles.hpp"

namespace fs = std::filesystem;

namespace {

fs::path temp_file(const std::string& name) {
  return fs::temp_directory_path() / name;
}

}  // namespace

TEST_CASE("obj round trip preserves a tetrahedron") {
  const cwf::TriangleMesh mesh = cwf::make_tetrahedron();
  const fs::path path = temp_file("cwf_tetra.obj");
  cwf::save_obj(mesh, path.string());
  const cwf::TriangleMesh back = cwf::load_obj(path.string());
  REQUIRE(back.vertex_count() == 4);
  REQUIRE(back.face_count() == 4);
  for (int v = 0; v < 4; ++v)
    CHECK(dist(back.positions[v], mesh.positions[v]) < 1e-9);
  for (int f = 0; f < 4; ++f) CHECK(back.faces[f] == mesh.faces[f]);
  fs::remove(path);
}

TEST_CASE("obj loader accepts plain files and ignores foreign records") {
  const fs::path path = temp_file("cwf_loader.obj");
  {
    std::ofstream out(path);
    out << "# comment\n"
        << "vn 0 0 1\n"
        << "v 0 0 0\nv 1 0 0\nv 0 1 0\nv 0 0 1\n"
        << "usemtl whatever\n"
        << "f 1 2 3\nf 1 4 2\nf 2 4 3\nf 1 3 4\n";
  }
  const cwf::TriangleMesh mesh = cwf::load_obj(path.string());
  CHECK(mesh.vertex_count() == 4);
  CHECK(mesh.face_count() == 4);
  fs::remove(path);
}

TEST_CASE("obj loader rejects bad input") {
  const fs::path quad = temp_file("cwf_quad.obj");
  {
    std::ofstream out(quad);
    out << "v 0 0 0\nv 1 0 0\nv 1 1 0\nv 0 1 0\nf 1 2 3 4\n";
  }
  CHECK_THROWS_WITH_AS(cwf::load_obj(quad.string()),
                       doctest::Contains("non-triangular"), cwf::ObjError);
  fs::remove(quad);

  const fs::path oob = temp_file("cwf_oob.obj");
  {
    std::ofstream out(oob);
    out << "v 0 0 0\nv 1 0 0\nv 0 1 0\nf 1 2 7\n";
  }
  CHECK_THROWS_AS(cwf::load_obj(oob.string()), cwf::ObjError);
  fs::remove(oob);

  CHECK_THROWS_AS(cwf::load_obj("/nonexistent/definitely_missing.obj"), cwf::ObjError);
}

TEST_CASE("saving an empty mesh writes only the header") {
  const fs::path path = temp_file("cwf_empty.obj");
  cwf::save_obj(cwf::TriangleMesh{}, path.string());
  std::ifstream in(path);
  std::string line;
  int lines = 0;
  while (std::getline(in, line)) {
    ++lines;
    CHECK(line[0] == '#');
  }
  CHECK(lines == 1);
  fs::remove(path);
}

TEST_CASE("topology of the regular tetrahedron") {
  const cwf::TriangleMesh mesh = cwf::make_tetrahedron();
  const cwf::MeshTopology topo = cwf::build_topology(mesh);
  CHECK(topo.edge_count() == 6);
  CHECK(topo.interior_edge_count() == 6);
  CHECK(topo.euler_characteristic == 2);
  CHECK(topo.closed());
  for (int v = 0; v < 4; ++v) CHECK(topo.valence[v] == 3);
  for (const cwf::EdgeRecord& e : topo.edges) {
    CHECK(e.interior());
    // stated faces really are faces with the stated cyclic orientation
    auto has_cyclic = [&](int a, int b, int c, int f) {
      const cwf::Face& face = mesh.faces[f];
      for (int r = 0; r < 3; ++r)
        if (face[r] == a && face[(r + 1) % 3] == b && face[(r + 2) % 3] == c)
          return true;
      return false;
    };
    CHECK(has_cyclic(e.i, e.j, e.k, e.f1));
    CHECK(has_cyclic(e.j, e.i, e.l, e.f2));
  }
}

TEST_CASE("topology of a torus grid") {
  const cwf::TriangleMesh mesh = cwf::generate_torus(2.0, 1.0, 8, 8);
  const cwf::MeshTopology topo = cwf::build_topology(mesh);
  CHECK(topo.vertex_count == 64);
  CHECK(topo.edge_count() == 192);
  CHECK(topo.face_count == 128);
  CHECK(topo.euler_characteristic == 0);
  CHECK(topo.closed());
  for (int v = 0; v < topo.vertex_count; ++v) CHECK(topo.valence[v] == 6);
}

TEST_CASE("single triangle has only boundary edges") {
  cwf::TriangleMesh mesh;
  mesh.positions = {{0, 0, 0}, {1, 0, 0}, {0, 1, 0}};
  mesh.faces = {{0, 1, 2}};
  const cwf::MeshTopology topo = cwf::build_topology(mesh);
  CHECK(topo.edge_count() == 3);
  CHECK(topo.interior_edge_count() == 0);
  CHECK(topo.boundary_edge_count == 3);
  CHECK_FALSE(topo.closed());
  CHECK(topo.interior_vertex_count() == 0);
}

TEST_CASE("non-manifold and inconsistently oriented meshes are rejected") {
  cwf::TriangleMesh bad;
  bad.positions = {{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {1, 1, 1}};
  // same directed edge (0,1) twice
  bad.faces = {{0, 1, 2}, {0, 1, 3}};
  CHECK_THROWS_AS(cwf::build_topology(bad), cwf::MeshError);

  cwf::TriangleMesh repeat;
  repeat.positions = {{0, 0, 0}, {1, 0, 0}};
  repeat.faces = {{0, 1, 1}};
  CHECK_THROWS_AS(cwf::build_topology(repeat), cwf::MeshError);
}

TEST_CASE("incidence matrix and weights of the regular solids") {
  auto check = [](const cwf::TriangleMesh& mesh, int expect_valence) {
    const cwf::MeshTopology topo = cwf::build_topology(mesh);
    const cwf::GraphData g = cwf::incidence_and_weights(topo);
    CHECK(g.vertex_count == topo.vertex_count);
    CHECK(g.edge_count() == topo.edge_count());
    for (int e = 0; e < g.edge_count(); ++e)
      CHECK(g.edge_weight[e] == doctest::Approx(2.0 * expect_valence));
    for (int v = 0; v < g.vertex_count; ++v) CHECK(g.valence[v] == expect_valence);
  };
  check(cwf::make_tetrahedron(), 3);
  check(cwf::make_octahedron(), 4);
  check(cwf::make_icosahedron(), 5);
}

TEST_CASE("incidence matrix columns sum to two and rows to the valence") {
  for (std::uint64_t seed : {11u, 22u, 33u}) {
    const cwf::TriangleMesh mesh = oracle::random_hull(seed, 12);
    const cwf::MeshTopology topo = cwf::build_topology(mesh);
    const cwf::GraphData g = cwf::incidence_and_weights(topo);
    std::vector<int> row_sum(g.vertex_count, 0);
    for (const auto& [i, j] : g.edges) {
      row_sum[i]++;
      row_sum[j]++;
    }
    for (int v = 0; v < g.vertex_count; ++v) CHECK(row_sum[v] == g.valence[v]);
    // full row rank for a polyhedron graph
    const Eigen::MatrixXd lap = cwf::signless_laplacian(g);
    const Eigen::FullPivLU<Eigen::MatrixXd> lu(lap);
    CHECK(lu.rank() == g.vertex_count);
  }
}

TEST_CASE("incidence_and_weights rejects boundary meshes") {
  cwf::TriangleMesh tri;
  tri.positions = {{0, 0, 0}, {1, 0, 0}, {0, 1, 0}};
  tri.faces = {{0, 1, 2}};
  const cwf::MeshTopology topo = cwf::build_topology(tri);
  CHECK_THROWS_AS(cwf::incidence_and_weights(topo), cwf::MeshError);
}

TEST_CASE("dual graphs of the regular solids") {
  auto degree_counts = [](const cwf::DualGraph& dual) {
    std::vector<int> deg(dual.node_count, 0);
    for (const auto& arc : dual.arcs) {
      deg[arc.u]++;
      deg[arc.v]++;
    }
    return deg;
  };

  // tetrahedron: self-dual K4
  {
    const cwf::MeshTopology topo = cwf::build_topology(cwf::make_tetrahedron());
    const cwf::DualGraph dual = cwf::dual_graph(topo);
    CHECK(dual.node_count == 4);
    CHECK(dual.arcs.size() == 6);
    std::set<std::pair<int, int>> pairs;
    for (const auto& arc : dual.arcs)
      pairs.insert({std::min(arc.u, arc.v), std::max(arc.u, arc.v)});
    CHECK(pairs.size() == 6);  // every pair of the 4 nodes: K4
  }
  // octahedron: cube graph
  {
    const cwf::MeshTopology topo = cwf::build_topology(cwf::make_octahedron());
    const cwf::DualGraph dual = cwf::dual_graph(topo);
    CHECK(dual.node_count == 8);
    CHECK(dual.arcs.size() == 12);
    for (int d : degree_counts(dual)) CHECK(d == 3);
  }
  // icosahedron: dodecahedron graph
  {
    const cwf::MeshTopology topo = cwf::build_topology(cwf::make_icosahedron());
    const cwf::DualGraph dual = cwf::dual_graph(topo);
    CHECK(dual.node_count == 20);
    CHECK(dual.arcs.size() == 30);
    for (int d : degree_counts(dual)) CHECK(d == 3);
  }
}

TEST_CASE("dual graph is 3-regular on random closed meshes") {
  for (std::uint64_t seed : {5u, 17u, 29u}) {
    const cwf::TriangleMesh mesh = oracle::random_hull(seed, 20);
    const cwf::MeshTopology topo = cwf::build_topology(mesh);
    const cwf::DualGraph dual = cwf::dual_graph(topo);
    std::vector<int> deg(dual.node_count, 0);
    for (const auto& arc : dual.arcs) {
      deg[arc.u]++;
      deg[arc.v]++;
    }
    for (int d : deg) CHECK(d == 3);
  }
}

TEST_CASE("torus generator") {
  const cwf::TriangleMesh mesh = cwf::generate_torus(2.0, 1.0, 8, 8);
  CHECK(mesh.vertex_count() == 64);
  CHECK(mesh.face_count() == 128);
  // every vertex at distance r from the center circle of radius R
  for (const cwf::V3& p : mesh.positions) {
    const double rho = std::hypot(p.x, p.y);
    const double d = std::hypot(rho - 2.0, p.z);
    CHECK(d == doctest::Approx(1.0).epsilon(1e-12));
  }
  // minimal case is still a valid closed mesh
  const cwf::TriangleMesh tiny = cwf::generate_torus(2.0, 1.0, 3, 3);
  CHECK(tiny.vertex_count() == 9);
  const cwf::MeshTopology topo = cwf::build_topology(tiny);
  CHECK(topo.closed());
  CHECK(topo.euler_characteristic == 0);

  CHECK_THROWS_AS(cwf::generate_torus(1.0, 2.0, 8, 8), cwf::MeshError);
  CHECK_THROWS_AS(cwf::generate_torus(2.0, 1.0, 2, 8), cwf::MeshError);
}

TEST_CASE("random inscribed generator is deterministic and keeps sphere points") {
  const cwf::TriangleMesh a = cwf::generate_random_inscribed(50, {1, 1, 1}, 7);
  const cwf::TriangleMesh b = cwf::generate_random_inscribed(50, {1, 1, 1}, 7);
  REQUIRE(a.vertex_count() == 50);  // all sphere samples are extreme
  REQUIRE(a.vertex_count() == b.vertex_count());
  for (int v = 0; v < a.vertex_count(); ++v)
    CHECK(dist(a.positions[v], b.positions[v]) == 0.0);
  REQUIRE(a.face_count() == b.face_count());
  for (int f = 0; f < a.face_count(); ++f) CHECK(a.faces[f] == b.faces[f]);

  const cwf::TriangleMesh tetra = cwf::generate_random_inscribed(4, {1, 1, 1}, 3);
  CHECK(tetra.vertex_count() == 4);
  CHECK(tetra.face_count() == 4);
}

TEST_CASE("convex hull basics") {
  // 4 non-coplanar points
  const cwf::TriangleMesh tetra =
      cwf::convex_hull({{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}});
  CHECK(tetra.vertex_count() == 4);
  CHECK(tetra.face_count() == 4);

  // cube corners: coplanar quads triangulated
  std::vector<cwf::V3> cube;
  for (int x : {0, 1})
    for (int y : {0, 1})
      for (int z : {0, 1}) cube.push_back({double(x), double(y), double(z)});
  const cwf::TriangleMesh hull = cwf::convex_hull(cube);
  CHECK(hull.vertex_count() == 8);
  CHECK(hull.face_count() == 12);

  // interior point is dropped
  std::vector<cwf::V3> with_center = cube;
  with_center.push_back({0.5, 0.5, 0.5});
  const cwf::TriangleMesh hull2 = cwf::convex_hull(with_center);
  CHECK(hull2.vertex_count() == 8);

  CHECK_THROWS_AS(cwf::convex_hull({{0, 0, 0}, {1, 0, 0}, {0, 1, 0}}), cwf::HullError);
  CHECK_THROWS_AS(
      cwf::convex_hull({{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {1, 1, 0}, {2, 2, 0}}),
      cwf::HullError);
}

TEST_CASE("convex hull output is convex over many seeds") {
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    const int count = 4 + static_cast<int>(seed % 40);
    const cwf::TriangleMesh hull = oracle::random_hull(seed, count, {1.0, 1.3, 0.8});
    CAPTURE(seed);
    const cwf::MeshTopology topo = cwf::build_topology(hull);
    REQUIRE(topo.closed());
    REQUIRE(topo.euler_characteristic == 2);
    CHECK(cwf::is_convex_position(hull));
    CHECK(cwf::signed_volume6(hull) > 0.0);
  }
}

TEST_CASE("generated closed meshes satisfy the Euler formula for their genus") {
  CHECK(cwf::build_topology(cwf::make_icosahedron()).euler_characteristic == 2);
  CHECK(cwf::build_topology(oracle::random_hull(3, 30)).euler_characteristic == 2);
  CHECK(cwf::build_topology(cwf::generate_torus(3, 1, 5, 7)).euler_characteristic == 0);
}
