#ifndef BCM_ERRORS_HPP
#define BCM_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace bcm {

enum class ErrorCode {
    Ok,
    // minkowski
    ZeroRadius,
    PointAtInfinity,
    NotNull,
    DegeneratePlane,
    // holomorphic
    SyntaxError,
    UnsupportedFunction,
    PoleAtPoint,
    Overflow,
    // bianchi_calo
    DegenerateSphere,
    NotImmersed,
    DegenerateNormalPlane,
    IdealEnvelopePoint,
    AmbiguousNullSplit,
    SingularMobius,
    // curvature_lab
    StencilDegenerate,
    NonImmersed,
    // meshio / cli
    EmptyGrid,
    IoError,
    ConfigError,
};

const char* to_string(ErrorCode code);

/// Exception carrying a stable error code; parse errors also carry the
/// byte offset of the offending token.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(message), code_(code) {}
    Error(ErrorCode code, const std::string& message, std::size_t position)
        : std::runtime_error(message), code_(code), position_(position), has_position_(true) {}

    ErrorCode code() const noexcept { return code_; }
    bool has_position() const noexcept { return has_position_; }
    std::size_t position() const noexcept { return position_; }

private:
    ErrorCode code_;
    std::size_t position_ = 0;
    bool has_position_ = false;
};

} // namespace bcm

#endif
