#ifndef BCM_MESHIO_HPP
#define BCM_MESHIO_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "bcm/curvature.hpp"

namespace bcm {

/// Outcome of the pipeline at one grid node.
struct NodeResult {
    Complex z{};
    ErrorCode status = ErrorCode::Ok;
    std::optional<SphereSample> sphere;
    std::optional<EnvelopeSample> envelope;
};

struct SampleField {
    GridSpec grid;
    std::vector<NodeResult> nodes;  // grid.index(i, j) layout

    std::size_t valid_count() const;
};

/// Evaluate the congruence + envelope at every grid node. Per-node errors
/// are flagged, never fatal. Throws EmptyGrid when no node is valid.
SampleField sample_grid(const BCData& data, const GridSpec& grid);

struct SurfaceMesh {
    std::vector<Point3> vertices;              // one per grid node
    std::vector<std::array<int, 4>> quads;     // faces with all corners valid
    std::vector<std::uint8_t> vertex_valid;    // 1 = valid envelope point
    std::vector<ErrorCode> vertex_status;
};

SurfaceMesh build_mesh(const SampleField& field);

/// Text OBJ (v/f records, 1-based indices); quads by default, triangulated
/// on request. Byte-deterministic: 17-significant-digit formatting.
void export_obj(const SurfaceMesh& mesh, const std::string& path, bool triangulate = false);

/// ASCII PLY with the same determinism contract.
void export_ply(const SurfaceMesh& mesh, const std::string& path);

/// RFC-4180 CSV of per-node reports; numeric columns empty on error nodes.
void export_report_csv(const std::vector<CurvatureReport>& reports, const std::string& path);

struct ProfilePoint {
    Complex z{};
    ErrorCode status = ErrorCode::Ok;
    std::optional<Point3> position;
};

/// Envelope positions along the ray z = t e^{i theta}, t in [t_min, t_max].
std::vector<ProfilePoint> profile_curve(const BCData& data, double theta, double t_min,
                                        double t_max, int n);

/// node_report over the whole grid, evaluated in parallel with a
/// deterministic layout. Thread count from BCM_THREADS, else hardware.
std::vector<CurvatureReport> report_field(const BCData& data, const GridSpec& grid,
                                          const ReportParams& params = {});

/// Deterministic parallel loop helper used by the grid evaluators.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

} // namespace bcm

#endif
