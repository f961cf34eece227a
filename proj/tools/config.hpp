#ifndef BCM_TOOLS_CONFIG_HPP
#define BCM_TOOLS_CONFIG_HPP

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "bcm/bianchi_calo.hpp"

namespace bcm::cli {

/// Per-identity acceptance thresholds; zero is allowed (forces failure),
/// negative values are rejected.
struct Tolerances {
    double weingarten = 1e-5;      // normalized Weingarten residual
    double metric = 1e-8;          // isothermic metric mismatch, relative
    double conformal = 1e-9;       // conformal factor residual
    double wedge = 1e-6;           // normalized wedge sup norm
    double brioschi = 1e-3;        // |K_int + mu|
    double specialization = 1e-6;  // mu in {-1, 0, 1} curvature lines
};

struct SweepEntry {
    std::string h_text;
    double mu = 0;
    std::optional<GridSpec> grid;
};

/// Declarative run configuration (see docs/config-format.md).
struct RunConfig {
    std::string h_text;
    HoloExpr h;
    double mu = 0;
    GridSpec grid;

    double fd_step = 1e-4;
    double brioschi_step = 1e-3;
    double r_scale = 1.0;
    Tolerances tol;

    std::optional<std::string> mesh_path;
    std::optional<std::string> csv_path;
    std::optional<std::string> report_path;

    std::vector<double> family_rho;
    std::optional<std::array<Complex, 4>> reparam;  // a, b, c, d
    std::vector<SweepEntry> sweep;
};

/// Load and validate a config file. Throws Error(ConfigError) with
/// line/field diagnostics.
RunConfig load_config(const std::string& path);

/// Parse from an already-read string (tests); source names the input in
/// diagnostics.
RunConfig parse_config(const std::string& text, const std::string& source = "<string>");

} // namespace bcm::cli

#endif
