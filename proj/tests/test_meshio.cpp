#include <cstdio>
#include <fstream>
#include <sstream>

#include "bcm/meshio.hpp"
#include "doctest.h"

using namespace bcm;

namespace {

BCData make_data(const std::string& h, double mu) {
    BCData d;
    d.h = parse_holomorphic(h);
    d.mu = mu;
    return d;
}

GridSpec rect(double x0, double x1, double y0, double y1, int nx, int ny) {
    GridSpec g;
    g.shape = GridSpec::Shape::Rectangle;
    g.x_min = x0;
    g.x_max = x1;
    g.y_min = y0;
    g.y_max = y1;
    g.nx = nx;
    g.ny = ny;
    return g;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    REQUIRE(in.good());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

struct TempFile {
    std::string path;
    explicit TempFile(const std::string& name) : path("bcm_test_" + name) {}
    ~TempFile() { std::remove(path.c_str()); }
};

} // namespace

TEST_CASE("grid nodes and validation") {
    GridSpec g = rect(0, 1, 0, 2, 3, 5);
    g.validate();
    CHECK(g.node_count() == 15);
    CHECK(g.node(0, 0) == Complex{0, 0});
    CHECK(g.node(2, 4) == Complex{1, 2});
    CHECK(g.node(1, 2).real() == doctest::Approx(0.5));

    GridSpec bad = rect(1, 0, 0, 1, 4, 4);
    CHECK_THROWS_AS(bad.validate(), Error);
    GridSpec tiny = rect(0, 1, 0, 1, 2, 4);
    CHECK_THROWS_AS(tiny.validate(), Error);

    GridSpec ann;
    ann.shape = GridSpec::Shape::Annulus;
    ann.r_min = 0.2;
    ann.r_max = 0.6;
    ann.nx = 4;
    ann.ny = 8;
    ann.validate();
    CHECK(std::abs(ann.node(0, 0) - Complex{0.2, 0}) < 1e-15);
    CHECK(std::abs(std::abs(ann.node(3, 5)) - 0.6) < 1e-15);
    CHECK(ann.wraps());
}

TEST_CASE("sample_grid tolerates per-node failures") {
    SUBCASE("pole node is flagged, grid proceeds") {
        const SampleField f = sample_grid(make_data("1/z", -1), rect(-0.5, 0.5, -0.5, 0.5, 3, 3));
        const NodeResult& centre_node = f.nodes[static_cast<std::size_t>(f.grid.index(1, 1))];
        CHECK(centre_node.z == Complex{0, 0});
        CHECK(centre_node.status == ErrorCode::PoleAtPoint);
        CHECK(f.valid_count() == 8);
    }

    SUBCASE("degenerate radius band along |z| = 1") {
        const SampleField f = sample_grid(make_data("z^2", 1), rect(0.9, 1.1, -0.1, 0.1, 5, 3));
        std::size_t degenerate = 0;
        for (const NodeResult& n : f.nodes)
            if (n.status == ErrorCode::DegenerateSphere) ++degenerate;
        CHECK(degenerate >= 1);  // the node at exactly |z| = 1
        CHECK(f.valid_count() > 0);
    }

    SUBCASE("healthy run has at least 90 percent valid nodes") {
        const SampleField f = sample_grid(make_data("z^2", 1), rect(0.1, 0.9, 0.1, 0.9, 32, 32));
        CHECK(f.valid_count() >= f.nodes.size() * 9 / 10);
    }

    SUBCASE("all nodes excluded raises EmptyGrid") {
        try {
            sample_grid(make_data("z", -1), rect(1e9, 2e9, 1e9, 2e9, 3, 3));
            FAIL("expected EmptyGrid");
        } catch (const Error& e) {
            CHECK(e.code() == ErrorCode::EmptyGrid);
        }
    }
}

TEST_CASE("sample_grid is deterministic under parallel evaluation") {
    const BCData d = make_data("z^3 + z", 2);
    const GridSpec g = rect(0.1, 0.45, 0.05, 0.4, 16, 16);
    const SampleField a = sample_grid(d, g);
    const SampleField b = sample_grid(d, g);
    REQUIRE(a.nodes.size() == b.nodes.size());
    for (std::size_t i = 0; i < a.nodes.size(); ++i) {
        CHECK(a.nodes[i].status == b.nodes[i].status);
        if (a.nodes[i].envelope && b.nodes[i].envelope) {
            CHECK(a.nodes[i].envelope->position.height == b.nodes[i].envelope->position.height);
            CHECK(a.nodes[i].envelope->position.u == b.nodes[i].envelope->position.u);
        }
    }
}

TEST_CASE("mesh faces skip invalid corners") {
    SampleField field;
    field.grid = rect(0, 1, 0, 1, 3, 3);
    field.nodes.resize(9);
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            NodeResult& n = field.nodes[static_cast<std::size_t>(field.grid.index(i, j))];
            n.z = field.grid.node(i, j);
            n.envelope = EnvelopeSample{};
            n.envelope->position = {0.0, n.z.real(), n.z.imag()};
        }
    }

    SUBCASE("all valid: full quad lattice") {
        const SurfaceMesh m = build_mesh(field);
        CHECK(m.vertices.size() == 9);
        CHECK(m.quads.size() == 4);
    }

    SUBCASE("one invalid corner drops one quad") {
        field.nodes[static_cast<std::size_t>(field.grid.index(0, 0))].status =
            ErrorCode::PoleAtPoint;
        const SurfaceMesh m = build_mesh(field);
        CHECK(m.quads.size() == 3);
    }

    SUBCASE("interior invalid node drops all four touching quads") {
        field.nodes[static_cast<std::size_t>(field.grid.index(1, 1))].status =
            ErrorCode::DegenerateSphere;
        const SurfaceMesh m = build_mesh(field);
        CHECK(m.quads.size() == 0);
    }
}

TEST_CASE("OBJ export: counting, round-trip, determinism") {
    SurfaceMesh mesh;
    mesh.vertices = {{0.1, 0.25, -1.0 / 3.0}, {1, 0, 0}, {1, 1, 0.125}, {0, 1, 2e-17}};
    mesh.vertex_valid = {1, 1, 1, 1};
    mesh.quads = {{0, 1, 2, 3}};

    TempFile f("mesh.obj");
    export_obj(mesh, f.path);
    const std::string text = slurp(f.path);

    SUBCASE("2x2 all-valid grid: 4 vertices, 1 quad") {
        int v = 0, faces = 0;
        std::istringstream in(text);
        std::string line;
        while (std::getline(in, line)) {
            if (line.rfind("v ", 0) == 0) ++v;
            if (line.rfind("f ", 0) == 0) ++faces;
        }
        CHECK(v == 4);
        CHECK(faces == 1);
    }

    SUBCASE("triangulated mode emits two faces") {
        TempFile ft("mesh_tri.obj");
        export_obj(mesh, ft.path, true);
        const std::string tri = slurp(ft.path);
        int faces = 0;
        std::istringstream in(tri);
        std::string line;
        while (std::getline(in, line))
            if (line.rfind("f ", 0) == 0) ++faces;
        CHECK(faces == 2);
    }

    SUBCASE("re-parsed vertices round-trip exactly") {
        std::istringstream in(text);
        std::string tag;
        std::size_t idx = 0;
        double x, y, z;
        while (in >> tag) {
            if (tag == "v") {
                in >> x >> y >> z;
                REQUIRE(idx < mesh.vertices.size());
                CHECK(x == mesh.vertices[idx].u);
                CHECK(y == mesh.vertices[idx].v);
                CHECK(z == mesh.vertices[idx].height);
                ++idx;
            } else {
                std::getline(in, tag);
            }
        }
        CHECK(idx == 4);
    }

    SUBCASE("byte-identical re-export") {
        TempFile g("mesh2.obj");
        export_obj(mesh, g.path);
        CHECK(slurp(g.path) == text);
    }
}

TEST_CASE("PLY export structure") {
    SurfaceMesh mesh;
    mesh.vertices = {{0, 0, 0}, {1, 0, 0}, {1, 1, 0}, {0, 1, 0}};
    mesh.vertex_valid = {1, 1, 1, 1};
    mesh.quads = {{0, 1, 2, 3}};
    TempFile f("mesh.ply");
    export_ply(mesh, f.path);
    const std::string text = slurp(f.path);
    CHECK(text.rfind("ply\nformat ascii 1.0\n", 0) == 0);
    CHECK(text.find("element vertex 4") != std::string::npos);
    CHECK(text.find("element face 1") != std::string::npos);
    CHECK(text.find("4 0 1 2 3") != std::string::npos);
}

TEST_CASE("CSV report: schema, counting, error rows") {
    const BCData d = make_data("1/z", -1);
    const GridSpec g = rect(-0.5, 0.5, -0.5, 0.5, 3, 3);
    const std::vector<CurvatureReport> reports = report_field(d, g);
    TempFile f("report.csv");
    export_report_csv(reports, f.path);
    const std::string text = slurp(f.path);

    std::vector<std::string> lines;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) lines.push_back(line);
    REQUIRE(lines.size() == 10);  // header + 9 nodes
    CHECK(lines[0] ==
          "z_re,z_im,r,H,K_ext,k1,k2,weingarten_residual,cayley_hamilton_residual,"
          "metric_mismatch,conformal_mismatch,wedge_norm,brioschi_defect,rodrigues_offdiag,"
          "status");

    // the pole node has empty numeric columns and the error code in status
    bool found_pole = false;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        if (lines[i].find("PoleAtPoint") != std::string::npos) {
            found_pole = true;
            CHECK(lines[i].rfind("0,0,,,,,,,,,,,,,PoleAtPoint") != std::string::npos);
        }
    }
    CHECK(found_pole);
}

TEST_CASE("profile curves") {
    BCData d = make_data("z^2", 1);

    SUBCASE("revolution symmetry of h = z^2") {
        const auto base = profile_curve(d, 0.0, 0.2, 0.6, 12);
        for (int k = 1; k < 8; ++k) {
            const auto ray = profile_curve(d, k * std::acos(-1.0) / 4.0, 0.2, 0.6, 12);
            for (std::size_t i = 0; i < base.size(); ++i) {
                REQUIRE(base[i].position);
                REQUIRE(ray[i].position);
                const Point3& a = *base[i].position;
                const Point3& b = *ray[i].position;
                CHECK(std::abs(a.height - b.height) < 1e-8);
                CHECK(std::abs(std::hypot(a.u, a.v) - std::hypot(b.u, b.v)) < 1e-8);
            }
        }
    }

    SUBCASE("single point") {
        const auto one = profile_curve(d, 0.0, 0.3, 0.9, 1);
        REQUIRE(one.size() == 1);
        CHECK(one[0].z == Complex{0.3, 0});
        CHECK(one[0].position);
    }

    SUBCASE("gap at the radius zero locus") {
        const auto ray = profile_curve(d, 0.0, 0.9, 1.1, 5);  // crosses |z| = 1 at node 2
        CHECK(ray[2].status == ErrorCode::DegenerateSphere);
        CHECK(!ray[2].position);
        CHECK(ray[0].position);
        CHECK(ray[4].position);
    }
}

TEST_CASE("annulus meshes wrap in the angular direction") {
    BCData d = make_data("z^2", 1);
    GridSpec g;
    g.shape = GridSpec::Shape::Annulus;
    g.r_min = 0.2;
    g.r_max = 0.5;
    g.nx = 4;
    g.ny = 12;
    const SampleField f = sample_grid(d, g);
    CHECK(f.valid_count() == f.nodes.size());
    const SurfaceMesh m = build_mesh(f);
    CHECK(m.quads.size() == static_cast<std::size_t>((g.nx - 1) * g.ny));
}
