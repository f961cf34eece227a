#include "runner.hpp"

#include <cmath>
#include <fstream>
#include <iostream>

#include "json.hpp"

namespace bcm::cli {

namespace {

using Json = nlohmann::ordered_json;

constexpr double kCayleyHamiltonTol = 1e-6;
constexpr double kStructuralTol = 1e-9;
constexpr double kRadiusLawTol = 1e-12;

struct Accumulator {
    IdentitySummary summary;

    explicit Accumulator(std::string name, double tol) {
        summary.name = std::move(name);
        summary.tolerance = tol;
    }

    void add(Complex z, double value) {
        if (summary.checked == 0 || value > summary.max) {
            summary.max = value;
            summary.argmax = z;
        }
        ++summary.checked;
    }

    IdentitySummary finish() {
        summary.pass = summary.checked == 0 || summary.max <= summary.tolerance;
        return summary;
    }
};

enum class Specialization { None, Cmc1, FlatFront, Hmc1 };

Specialization specialization_for(double mu) {
    if (std::abs(mu + 1.0) < 1e-12) return Specialization::Cmc1;
    if (std::abs(mu) < 1e-12) return Specialization::FlatFront;
    if (std::abs(mu - 1.0) < 1e-12) return Specialization::Hmc1;
    return Specialization::None;
}

const char* specialization_name(Specialization s) {
    switch (s) {
        case Specialization::Cmc1: return "specialization |H - 1| (mu = -1)";
        case Specialization::FlatFront: return "specialization |K - 1| (mu = 0)";
        case Specialization::Hmc1: return "specialization |K - H| (mu = 1)";
        default: return "specialization";
    }
}

Json identity_json(const IdentitySummary& s) {
    Json j;
    j["max"] = s.checked ? s.max : Json();
    j["argmax_z"] = s.checked ? Json::array({s.argmax.real(), s.argmax.imag()}) : Json();
    j["tolerance"] = s.tolerance;
    j["checked_nodes"] = s.checked;
    j["pass"] = s.pass;
    return j;
}

Json summary_json(const BCData& data, const GridSpec& grid, const VerifySummary& s) {
    Json j;
    j["h"] = pretty_print(data.h);
    j["mu"] = data.mu;
    j["r_scale"] = data.r_scale;
    Json g;
    g["shape"] = grid.shape == GridSpec::Shape::Rectangle ? "rectangle" : "annulus";
    if (grid.shape == GridSpec::Shape::Rectangle) {
        g["x_min"] = grid.x_min;
        g["x_max"] = grid.x_max;
        g["y_min"] = grid.y_min;
        g["y_max"] = grid.y_max;
    } else {
        g["r_min"] = grid.r_min;
        g["r_max"] = grid.r_max;
    }
    g["nx"] = grid.nx;
    g["ny"] = grid.ny;
    j["grid"] = g;
    Json nodes;
    nodes["total"] = s.total_nodes;
    nodes["ok"] = s.ok_nodes;
    Json counts;
    for (const auto& [name, count] : s.status_counts) counts[name] = count;
    nodes["status_counts"] = counts;
    j["nodes"] = nodes;
    Json ids;
    for (const IdentitySummary& id : s.identities) ids[id.name] = identity_json(id);
    j["identities"] = ids;
    j["pass"] = s.pass;
    return j;
}

void write_report(const std::string& path, const Json& j) {
    std::ofstream out(path);
    if (!out) throw Error(ErrorCode::IoError, "cannot open report file: " + path);
    out << j.dump(2) << '\n';
}

std::string with_suffix(const std::string& path, const std::string& suffix) {
    const std::size_t dot = path.find_last_of('.');
    const std::size_t slash = path.find_last_of("/\\");
    if (dot == std::string::npos || (slash != std::string::npos && dot < slash))
        return path + suffix;
    return path.substr(0, dot) + suffix + path.substr(dot);
}

void write_mesh_by_extension(const SurfaceMesh& mesh, const std::string& path) {
    if (path.size() >= 4 && path.substr(path.size() - 4) == ".ply")
        export_ply(mesh, path);
    else
        export_obj(mesh, path);
}

BCData make_data(const RunConfig& cfg) {
    return BCData{cfg.h, cfg.mu, cfg.grid, cfg.r_scale};
}

} // namespace

VerifySummary verify_data(const BCData& data, const GridSpec& grid, const ReportParams& params,
                          const Tolerances& tol) {
    const std::vector<CurvatureReport> reports = report_field(data, grid, params);

    Accumulator weingarten("weingarten", tol.weingarten);
    Accumulator cayham("cayley_hamilton", kCayleyHamiltonTol);
    Accumulator metric("metric", tol.metric);
    Accumulator conformal("conformal", tol.conformal);
    Accumulator wedge("wedge", tol.wedge);
    Accumulator brioschi("brioschi", tol.brioschi);
    Accumulator structural("structural", kStructuralTol);
    const Specialization spec = specialization_for(data.mu);
    Accumulator special(specialization_name(spec), tol.specialization);

    VerifySummary out;
    out.total_nodes = reports.size();
    for (const CurvatureReport& r : reports) {
        if (r.status == ErrorCode::Ok)
            ++out.ok_nodes;
        else
            ++out.status_counts[to_string(r.status)];

        if (r.weingarten && r.H && r.Kext)
            weingarten.add(r.z, std::abs(*r.weingarten) / (1.0 + std::abs(*r.Kext) + std::abs(*r.H)));
        if (r.cayham) cayham.add(r.z, *r.cayham);
        if (r.metric_mismatch) metric.add(r.z, *r.metric_mismatch);
        if (r.conformal) conformal.add(r.z, *r.conformal);
        if (r.wedge_norm) wedge.add(r.z, *r.wedge_norm);
        if (r.brioschi_defect) brioschi.add(r.z, *r.brioschi_defect);
        if (r.structural) structural.add(r.z, *r.structural);
        if (spec != Specialization::None && r.H && r.Kext) {
            double v = 0;
            switch (spec) {
                case Specialization::Cmc1: v = std::abs(*r.H - 1.0); break;
                case Specialization::FlatFront: v = std::abs(*r.Kext - 1.0); break;
                case Specialization::Hmc1: v = std::abs(*r.Kext - *r.H); break;
                default: break;
            }
            special.add(r.z, v);
        }
    }

    out.identities.push_back(weingarten.finish());
    if (spec != Specialization::None) out.identities.push_back(special.finish());
    out.identities.push_back(cayham.finish());
    out.identities.push_back(metric.finish());
    out.identities.push_back(conformal.finish());
    out.identities.push_back(wedge.finish());
    out.identities.push_back(brioschi.finish());
    out.identities.push_back(structural.finish());

    out.pass = true;
    for (const IdentitySummary& id : out.identities) out.pass = out.pass && id.pass;
    return out;
}

void print_summary(std::ostream& out, const std::string& label, const VerifySummary& s) {
    out << label << ": " << s.ok_nodes << "/" << s.total_nodes << " nodes fully evaluated\n";
    for (const auto& [name, count] : s.status_counts)
        out << "  flagged " << name << ": " << count << '\n';
    for (const IdentitySummary& id : s.identities) {
        out << "  " << id.name << ": ";
        if (id.checked == 0) {
            out << "no checkable nodes (vacuous)";
        } else {
            out << "max " << id.max << " at z = (" << id.argmax.real() << ", "
                << id.argmax.imag() << ") over " << id.checked << " nodes, tol " << id.tolerance;
        }
        out << (id.pass ? "  [pass]" : "  [FAIL]") << '\n';
    }
    out << label << ": " << (s.pass ? "PASS" : "FAIL") << '\n';
}

int run_generate(const RunConfig& cfg) {
    const BCData data = make_data(cfg);
    SampleField field;
    try {
        field = sample_grid(data, cfg.grid);
    } catch (const Error& e) {
        std::cerr << "generate: " << e.what() << '\n';
        return 2;
    }
    const SurfaceMesh mesh = build_mesh(field);
    const std::string mesh_path = cfg.mesh_path.value_or("surface.obj");
    const std::string csv_path = cfg.csv_path.value_or("surface.csv");
    try {
        write_mesh_by_extension(mesh, mesh_path);
        const std::vector<CurvatureReport> reports =
            report_field(data, cfg.grid, {cfg.fd_step, cfg.brioschi_step});
        export_report_csv(reports, csv_path);
    } catch (const Error& e) {
        std::cerr << "generate: " << e.what() << '\n';
        return 2;
    }
    std::cout << "generate: wrote " << mesh_path << " (" << mesh.quads.size() << " faces, "
              << field.valid_count() << "/" << field.nodes.size() << " valid nodes) and "
              << csv_path << '\n';
    return 0;
}

int run_verify(const RunConfig& cfg) {
    const BCData data = make_data(cfg);
    const VerifySummary summary =
        verify_data(data, cfg.grid, {cfg.fd_step, cfg.brioschi_step}, cfg.tol);
    print_summary(std::cout, "verify", summary);
    if (cfg.report_path) write_report(*cfg.report_path, summary_json(data, cfg.grid, summary));
    if (cfg.csv_path)
        export_report_csv(report_field(data, cfg.grid, {cfg.fd_step, cfg.brioschi_step}),
                          *cfg.csv_path);
    return summary.pass ? 0 : 1;
}

int run_family(const RunConfig& cfg) {
    if (cfg.family_rho.empty())
        throw Error(ErrorCode::ConfigError, "family requires a non-empty family.rho list");

    const BCData base = make_data(cfg);
    bool all_pass = true;
    Json members = Json::array();

    for (std::size_t k = 0; k < cfg.family_rho.size(); ++k) {
        const double rho = cfg.family_rho[k];
        const BCData member = parallel_family(base, rho);

        // radius law r~(e^rho z) = e^{-rho} r(z), checked on the base grid
        double radius_defect = 0;
        const double shrink = std::exp(-rho);
        for (int i = 0; i < base.domain.nx; ++i) {
            for (int j = 0; j < base.domain.ny; ++j) {
                const Complex z = base.domain.node(i, j);
                try {
                    const double r0 = horosphere_lift(z, base).r;
                    const double r1 = horosphere_lift(z * std::exp(rho), member).r;
                    radius_defect = std::max(radius_defect, std::abs(r1 - shrink * r0));
                } catch (const Error&) {
                    // nodes at singular loci do not participate in the check
                }
            }
        }
        const bool radius_ok = radius_defect <= kRadiusLawTol;

        const VerifySummary summary =
            verify_data(member, member.domain, {cfg.fd_step, cfg.brioschi_step}, cfg.tol);
        const std::string label = "family[" + std::to_string(k) + "] rho=" + std::to_string(rho) +
                                  " mu~=" + std::to_string(member.mu);
        std::cout << label << ": radius-law defect " << radius_defect
                  << (radius_ok ? "  [pass]" : "  [FAIL]") << '\n';
        print_summary(std::cout, label, summary);

        if (cfg.mesh_path) {
            const SampleField field = sample_grid(member, member.domain);
            write_mesh_by_extension(build_mesh(field),
                                    with_suffix(*cfg.mesh_path, "_" + std::to_string(k)));
        }

        Json m = summary_json(member, member.domain, summary);
        m["rho"] = rho;
        m["radius_law_defect"] = radius_defect;
        m["radius_law_pass"] = radius_ok;
        members.push_back(m);
        all_pass = all_pass && summary.pass && radius_ok;
    }

    if (cfg.report_path) {
        Json j;
        j["members"] = members;
        j["pass"] = all_pass;
        write_report(*cfg.report_path, j);
    }
    std::cout << "family: " << (all_pass ? "PASS" : "FAIL") << '\n';
    return all_pass ? 0 : 1;
}

int run_sweep(const RunConfig& cfg) {
    if (cfg.sweep.empty())
        throw Error(ErrorCode::ConfigError, "sweep requires a non-empty [[sweep]] list");

    bool all_pass = true;
    Json rows = Json::array();
    for (std::size_t k = 0; k < cfg.sweep.size(); ++k) {
        const SweepEntry& entry = cfg.sweep[k];
        BCData data{parse_holomorphic(entry.h_text), entry.mu,
                    entry.grid.value_or(cfg.grid), cfg.r_scale};
        const GridSpec grid = entry.grid.value_or(cfg.grid);
        const VerifySummary summary =
            verify_data(data, grid, {cfg.fd_step, cfg.brioschi_step}, cfg.tol);
        const std::string label = "sweep[" + std::to_string(k) + "] h=" + entry.h_text +
                                  " mu=" + std::to_string(entry.mu);
        print_summary(std::cout, label, summary);
        Json row = summary_json(data, grid, summary);
        rows.push_back(row);
        all_pass = all_pass && summary.pass;
    }

    if (cfg.report_path) {
        Json j;
        j["sweep"] = rows;
        j["pass"] = all_pass;
        write_report(*cfg.report_path, j);
    }
    std::cout << "sweep: " << (all_pass ? "PASS" : "FAIL") << '\n';
    return all_pass ? 0 : 1;
}

} // namespace bcm::cli
