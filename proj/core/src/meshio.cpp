#include "bcm/meshio.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <numbers>
#include <sstream>
#include <thread>

namespace bcm {

void GridSpec::validate() const {
    if (nx < 3 || ny < 3)
        throw Error(ErrorCode::ConfigError, "grid counts must be at least 3");
    if (shape == Shape::Rectangle) {
        if (!(x_min < x_max) || !(y_min < y_max))
            throw Error(ErrorCode::ConfigError, "rectangle bounds must be ordered");
    } else {
        if (!(0 < r_min && r_min < r_max))
            throw Error(ErrorCode::ConfigError, "annulus radii must satisfy 0 < r_min < r_max");
    }
}

std::complex<double> GridSpec::node(int i, int j) const {
    if (shape == Shape::Rectangle) {
        const double x = x_min + (x_max - x_min) * i / (nx - 1);
        const double y = y_min + (y_max - y_min) * j / (ny - 1);
        return {x, y};
    }
    const double rho = r_min + (r_max - r_min) * i / (nx - 1);
    const double theta = 2.0 * std::numbers::pi * j / ny;
    return std::polar(rho, theta);
}

GridSpec GridSpec::scaled(double k) const {
    GridSpec g = *this;
    g.x_min *= k;
    g.x_max *= k;
    g.y_min *= k;
    g.y_max *= k;
    g.r_min *= k;
    g.r_max *= k;
    if (k < 0 && g.shape == Shape::Rectangle) {
        std::swap(g.x_min, g.x_max);
        std::swap(g.y_min, g.y_max);
    }
    return g;
}

void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body) {
    unsigned threads = std::thread::hardware_concurrency();
    if (const char* env = std::getenv("BCM_THREADS")) {
        const long v = std::strtol(env, nullptr, 10);
        if (v >= 1) threads = static_cast<unsigned>(v);
    }
    threads = std::max(1u, std::min<unsigned>(threads, 64));
    if (threads == 1 || count < 2 * threads) {
        for (std::size_t i = 0; i < count; ++i) body(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) {
        pool.emplace_back([&, t] {
            for (std::size_t i = t; i < count; i += threads) body(i);
        });
    }
    for (auto& th : pool) th.join();
}

std::size_t SampleField::valid_count() const {
    std::size_t n = 0;
    for (const auto& node : nodes)
        if (node.status == ErrorCode::Ok) ++n;
    return n;
}

SampleField sample_grid(const BCData& data, const GridSpec& grid) {
    grid.validate();
    SampleField field;
    field.grid = grid;
    field.nodes.resize(static_cast<std::size_t>(grid.node_count()));

    parallel_for(field.nodes.size(), [&](std::size_t idx) {
        const int i = static_cast<int>(idx) / grid.ny;
        const int j = static_cast<int>(idx) % grid.ny;
        NodeResult& out = field.nodes[idx];
        out.z = grid.node(i, j);
        try {
            out.sphere = horosphere_lift(out.z, data);
            out.envelope = second_envelope(*out.sphere);
        } catch (const Error& e) {
            out.status = e.code();
        }
    });

    if (field.valid_count() == 0)
        throw Error(ErrorCode::EmptyGrid, "no valid node in the sampled grid");
    return field;
}

SurfaceMesh build_mesh(const SampleField& field) {
    const GridSpec& g = field.grid;
    SurfaceMesh mesh;
    mesh.vertices.resize(field.nodes.size());
    mesh.vertex_valid.resize(field.nodes.size(), 0);
    mesh.vertex_status.resize(field.nodes.size(), ErrorCode::Ok);

    for (std::size_t idx = 0; idx < field.nodes.size(); ++idx) {
        const NodeResult& n = field.nodes[idx];
        mesh.vertex_status[idx] = n.status;
        if (n.status == ErrorCode::Ok && n.envelope) {
            mesh.vertices[idx] = n.envelope->position;
            mesh.vertex_valid[idx] = 1;
        }
    }

    const int jmax = g.wraps() ? g.ny : g.ny - 1;
    for (int i = 0; i + 1 < g.nx; ++i) {
        for (int j = 0; j < jmax; ++j) {
            const int jn = (j + 1) % g.ny;
            const std::array<int, 4> quad = {g.index(i, j), g.index(i + 1, j),
                                             g.index(i + 1, jn), g.index(i, jn)};
            bool ok = true;
            for (int v : quad)
                if (!mesh.vertex_valid[static_cast<std::size_t>(v)]) ok = false;
            if (ok) mesh.quads.push_back(quad);
        }
    }
    return mesh;
}

namespace {

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw Error(ErrorCode::IoError, "cannot open for writing: " + path);
    return out;
}

// RFC 4180: quote when the field contains a comma, quote, or newline
std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string quoted = "\"";
    for (char c : s) {
        if (c == '"') quoted += '"';
        quoted += c;
    }
    quoted += '"';
    return quoted;
}

} // namespace

void export_obj(const SurfaceMesh& mesh, const std::string& path, bool triangulate) {
    std::ofstream out = open_out(path);
    // vertex coordinates as (u, v, height); indices over all grid nodes so
    // the lattice structure survives, invalid nodes get a zero placeholder
    for (std::size_t i = 0; i < mesh.vertices.size(); ++i) {
        const Point3& p = mesh.vertices[i];
        out << "v " << fmt17(p.u) << ' ' << fmt17(p.v) << ' ' << fmt17(p.height) << '\n';
    }
    for (const auto& q : mesh.quads) {
        if (triangulate) {
            out << "f " << q[0] + 1 << ' ' << q[1] + 1 << ' ' << q[2] + 1 << '\n';
            out << "f " << q[0] + 1 << ' ' << q[2] + 1 << ' ' << q[3] + 1 << '\n';
        } else {
            out << "f " << q[0] + 1 << ' ' << q[1] + 1 << ' ' << q[2] + 1 << ' ' << q[3] + 1
                << '\n';
        }
    }
    if (!out) throw Error(ErrorCode::IoError, "write failed: " + path);
}

void export_ply(const SurfaceMesh& mesh, const std::string& path) {
    std::ofstream out = open_out(path);
    out << "ply\nformat ascii 1.0\n";
    out << "element vertex " << mesh.vertices.size() << '\n';
    out << "property double x\nproperty double y\nproperty double z\n";
    out << "element face " << mesh.quads.size() << '\n';
    out << "property list uchar int vertex_indices\nend_header\n";
    for (const Point3& p : mesh.vertices)
        out << fmt17(p.u) << ' ' << fmt17(p.v) << ' ' << fmt17(p.height) << '\n';
    for (const auto& q : mesh.quads)
        out << "4 " << q[0] << ' ' << q[1] << ' ' << q[2] << ' ' << q[3] << '\n';
    if (!out) throw Error(ErrorCode::IoError, "write failed: " + path);
}

void export_report_csv(const std::vector<CurvatureReport>& reports, const std::string& path) {
    std::ofstream out = open_out(path);
    out << "z_re,z_im,r,H,K_ext,k1,k2,weingarten_residual,cayley_hamilton_residual,"
           "metric_mismatch,conformal_mismatch,wedge_norm,brioschi_defect,rodrigues_offdiag,"
           "status\n";
    auto cell = [](const std::optional<double>& v) { return v ? fmt17(*v) : std::string(); };
    for (const CurvatureReport& r : reports) {
        out << fmt17(r.z.real()) << ',' << fmt17(r.z.imag()) << ',' << cell(r.r) << ','
            << cell(r.H) << ',' << cell(r.Kext) << ',' << cell(r.k1) << ',' << cell(r.k2) << ','
            << cell(r.weingarten) << ',' << cell(r.cayham) << ',' << cell(r.metric_mismatch)
            << ',' << cell(r.conformal) << ',' << cell(r.wedge_norm) << ','
            << cell(r.brioschi_defect) << ',' << cell(r.rodrigues) << ','
            << csv_field(to_string(r.status)) << '\n';
    }
    if (!out) throw Error(ErrorCode::IoError, "write failed: " + path);
}

std::vector<ProfilePoint> profile_curve(const BCData& data, double theta, double t_min,
                                        double t_max, int n) {
    std::vector<ProfilePoint> curve(static_cast<std::size_t>(std::max(n, 0)));
    const Complex dir = std::polar(1.0, theta);
    for (int k = 0; k < n; ++k) {
        const double t = (n == 1) ? t_min : t_min + (t_max - t_min) * k / (n - 1);
        ProfilePoint& p = curve[static_cast<std::size_t>(k)];
        p.z = t * dir;
        try {
            p.position = second_envelope(horosphere_lift(p.z, data)).position;
        } catch (const Error& e) {
            p.status = e.code();
        }
    }
    return curve;
}

std::vector<CurvatureReport> report_field(const BCData& data, const GridSpec& grid,
                                          const ReportParams& params) {
    grid.validate();
    std::vector<CurvatureReport> reports(static_cast<std::size_t>(grid.node_count()));
    parallel_for(reports.size(), [&](std::size_t idx) {
        const int i = static_cast<int>(idx) / grid.ny;
        const int j = static_cast<int>(idx) % grid.ny;
        reports[idx] = node_report(data, grid.node(i, j), params);
    });
    return reports;
}

} // namespace bcm
