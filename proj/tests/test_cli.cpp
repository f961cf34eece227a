#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>

#include "config.hpp"
#include "doctest.h"
#include "runner.hpp"

using namespace bcm;
using namespace bcm::cli;

namespace {

int run(const std::string& args) {
    const std::string cmd = std::string(BCM_CLI_PATH) + " " + args + " > bcm_cli_stdout.txt 2>&1";
    const int status = std::system(cmd.c_str());
    REQUIRE(status != -1);
#ifdef _WIN32
    return status;
#else
    return WEXITSTATUS(status);
#endif
}

std::string fixture(const std::string& name) { return std::string(BCM_FIXTURE_DIR) + "/" + name; }

bool file_exists(const std::string& path) { return std::ifstream(path).good(); }

struct Cleanup {
    std::vector<std::string> paths;
    ~Cleanup() {
        for (const auto& p : paths) std::remove(p.c_str());
    }
};

} // namespace

TEST_CASE("config defaults and required fields") {
    const RunConfig cfg = parse_config("h = \"z^2\"\nmu = 1.0\n");
    CHECK(cfg.mu == 1.0);
    CHECK(cfg.fd_step == 1e-4);
    CHECK(cfg.tol.weingarten == 1e-5);
    CHECK(cfg.tol.conformal == 1e-9);
    CHECK(cfg.grid.nx == 32);
    CHECK(!cfg.mesh_path);

    try {
        parse_config("h = \"z^2\"\n");
        FAIL("expected ConfigError");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::ConfigError);
        CHECK(std::string(e.what()).find("mu") != std::string::npos);
    }
    try {
        parse_config("mu = 1\n");
        FAIL("expected ConfigError");
    } catch (const Error& e) {
        CHECK(std::string(e.what()).find("'h'") != std::string::npos);
    }
}

TEST_CASE("config rejects malformed input with line diagnostics") {
    try {
        parse_config("h = \"z^2\"\nmu = 1\nbogus line\n", "test.toml");
        FAIL("expected ConfigError");
    } catch (const Error& e) {
        CHECK(std::string(e.what()).find("test.toml:3") != std::string::npos);
    }
    CHECK_THROWS_AS(parse_config("h = \"z^\"\nmu = 1\n"), Error);
    CHECK_THROWS_AS(parse_config("h = \"z\"\nmu = 1\n[tolerances]\nwedge = -1\n"), Error);
    CHECK_THROWS_AS(parse_config("h = \"z\"\nmu = 1\n[grid]\nnx = 2\n"), Error);
    CHECK_THROWS_AS(parse_config("h = \"z\"\nmu = 1\nfd_step = 0\n"), Error);
    CHECK_THROWS_AS(parse_config("h = \"z\"\nmu = 1\nmu = 2\n"), Error);
}

TEST_CASE("config sections parse") {
    const std::string text =
        "h = \"z^2\"          # comment\n"
        "mu = 1.0\n"
        "fd_step = 2e-5\n"
        "[grid]\n"
        "shape = \"annulus\"\n"
        "r_min = 0.2\n"
        "r_max = 0.7\n"
        "nx = 8\n"
        "ny = 16\n"
        "[tolerances]\n"
        "weingarten = 1e-4\n"
        "[outputs]\n"
        "mesh_path = \"a.obj\"\n"
        "[family]\n"
        "rho = [0.0, 0.5, -0.5]\n"
        "[reparam]\n"
        "a = [1.0, 0.0]\n"
        "b = [0.4, 0.1]\n"
        "c = 0.2\n"
        "d = 1.0\n"
        "[[sweep]]\n"
        "h = \"z^3 + z\"\n"
        "mu = 2.0\n"
        "x_min = 0.1\n"
        "x_max = 0.4\n"
        "y_min = 0.1\n"
        "y_max = 0.4\n";
    const RunConfig cfg = parse_config(text);
    CHECK(cfg.fd_step == 2e-5);
    CHECK(cfg.grid.shape == GridSpec::Shape::Annulus);
    CHECK(cfg.grid.ny == 16);
    CHECK(cfg.tol.weingarten == 1e-4);
    CHECK(cfg.mesh_path == "a.obj");
    CHECK(cfg.family_rho.size() == 3);
    REQUIRE(cfg.reparam);
    CHECK((*cfg.reparam)[1] == Complex{0.4, 0.1});
    CHECK((*cfg.reparam)[2] == Complex{0.2, 0.0});
    REQUIRE(cfg.sweep.size() == 1);
    CHECK(cfg.sweep[0].mu == 2.0);
    REQUIRE(cfg.sweep[0].grid);
    CHECK(cfg.sweep[0].grid->x_max == 0.4);
    CHECK(cfg.sweep[0].grid->ny == 16);  // inherits the base grid counts
}

TEST_CASE("verify_data passes on a Bryant-type run and fails under perturbation") {
    RunConfig cfg = load_config(fixture("verify_z3z_mu2.toml"));
    BCData data{cfg.h, cfg.mu, cfg.grid, 1.0};
    const VerifySummary ok = verify_data(data, cfg.grid, {cfg.fd_step, cfg.brioschi_step}, cfg.tol);
    CHECK(ok.pass);

    data.r_scale = 1.01;
    const VerifySummary bad =
        verify_data(data, cfg.grid, {cfg.fd_step, cfg.brioschi_step}, cfg.tol);
    CHECK(!bad.pass);
}

TEST_CASE("cli exit codes follow the 0/1/2 contract") {
    Cleanup cleanup;
    cleanup.paths = {"bcm_cli_stdout.txt"};

    SUBCASE("verify passes on the checked-in fixture") {
        CHECK(run("verify " + fixture("verify_z3z_mu2.toml")) == 0);
    }

    SUBCASE("verify reports H = 1 for a cmc-1 run") {
        // (h = z, mu = -1): congruence-side identities are asserted; the
        // envelope degenerates to a point, so curvature rows are vacuous
        Cleanup c2;
        c2.paths = {"bcm_cli_z.toml"};
        std::ofstream("bcm_cli_z.toml") << "h = \"z\"\nmu = -1.0\n[grid]\nnx = 8\nny = 8\n";
        CHECK(run("verify bcm_cli_z.toml") == 0);
    }

    SUBCASE("unreachable tolerance demonstrates the failure path") {
        CHECK(run("verify " + fixture("verify_z3z_mu2.toml") + " --tolerance.weingarten 0") == 1);
    }

    SUBCASE("missing field and missing file are config errors") {
        CHECK(run("verify " + fixture("bad_missing_mu.toml")) == 2);
        CHECK(run("verify no_such_config.toml") == 2);
        CHECK(run("frobnicate x.toml") == 2);
    }

    SUBCASE("generate writes mesh and csv") {
        cleanup.paths.push_back("bcm_cli_fig1.obj");
        cleanup.paths.push_back("bcm_cli_fig1.csv");
        CHECK(run("generate " + fixture("fig1.toml") +
                  " --out bcm_cli_fig1.obj --csv bcm_cli_fig1.csv") == 0);
        CHECK(file_exists("bcm_cli_fig1.obj"));
        CHECK(file_exists("bcm_cli_fig1.csv"));
    }

    SUBCASE("family verifies every member and the radius law") {
        cleanup.paths.push_back("bcm_cli_family.json");
        CHECK(run("family " + fixture("family.toml") + " --report bcm_cli_family.json") == 0);
        CHECK(file_exists("bcm_cli_family.json"));
    }

    SUBCASE("sweep aggregates and the perturbation flag fails it") {
        CHECK(run("sweep " + fixture("sweep.toml")) == 0);
        CHECK(run("sweep " + fixture("sweep.toml") + " --r-scale 1.01") == 1);
        CHECK(run("sweep " + fixture("verify_z3z_mu2.toml")) == 2);  // no [[sweep]] list
    }
}

TEST_CASE("verify writes a deterministic machine-readable report") {
    Cleanup cleanup;
    cleanup.paths = {"bcm_cli_stdout.txt", "bcm_r1.json", "bcm_r2.json"};
    REQUIRE(run("verify " + fixture("verify_z3z_mu2.toml") + " --report bcm_r1.json") == 0);
    REQUIRE(run("verify " + fixture("verify_z3z_mu2.toml") + " --report bcm_r2.json") == 0);
    std::ifstream a("bcm_r1.json"), b("bcm_r2.json");
    const std::string sa((std::istreambuf_iterator<char>(a)), std::istreambuf_iterator<char>());
    const std::string sb((std::istreambuf_iterator<char>(b)), std::istreambuf_iterator<char>());
    CHECK(sa == sb);
    CHECK(sa.find("\"weingarten\"") != std::string::npos);
    CHECK(sa.find("\"pass\": true") != std::string::npos);
}
