#ifndef BCM_TOOLS_RUNNER_HPP
#define BCM_TOOLS_RUNNER_HPP

#include <iosfwd>

#include "bcm/meshio.hpp"
#include "config.hpp"

namespace bcm::cli {

struct IdentitySummary {
    std::string name;
    double max = 0;
    Complex argmax{};
    std::size_t checked = 0;
    double tolerance = 0;
    bool pass = true;  // vacuous when checked == 0
};

struct VerifySummary {
    std::vector<IdentitySummary> identities;
    std::size_t total_nodes = 0;
    std::size_t ok_nodes = 0;
    std::map<std::string, std::size_t> status_counts;
    bool pass = true;
};

/// Evaluate every identity over the grid and compare against tolerances.
VerifySummary verify_data(const BCData& data, const GridSpec& grid, const ReportParams& params,
                          const Tolerances& tol);

void print_summary(std::ostream& out, const std::string& label, const VerifySummary& summary);

// Exit codes: 0 = pass, 1 = checks ran and failed, 2 = could not run.
int run_generate(const RunConfig& cfg);
int run_verify(const RunConfig& cfg);
int run_family(const RunConfig& cfg);
int run_sweep(const RunConfig& cfg);

} // namespace bcm::cli

#endif
