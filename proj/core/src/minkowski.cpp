#include "bcm/minkowski.hpp"

#include <cmath>

namespace bcm {

const char* to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::Ok: return "Ok";
        case ErrorCode::ZeroRadius: return "ZeroRadius";
        case ErrorCode::PointAtInfinity: return "PointAtInfinity";
        case ErrorCode::NotNull: return "NotNull";
        case ErrorCode::DegeneratePlane: return "DegeneratePlane";
        case ErrorCode::SyntaxError: return "SyntaxError";
        case ErrorCode::UnsupportedFunction: return "UnsupportedFunction";
        case ErrorCode::PoleAtPoint: return "PoleAtPoint";
        case ErrorCode::Overflow: return "Overflow";
        case ErrorCode::DegenerateSphere: return "DegenerateSphere";
        case ErrorCode::NotImmersed: return "NotImmersed";
        case ErrorCode::DegenerateNormalPlane: return "DegenerateNormalPlane";
        case ErrorCode::IdealEnvelopePoint: return "IdealEnvelopePoint";
        case ErrorCode::AmbiguousNullSplit: return "AmbiguousNullSplit";
        case ErrorCode::SingularMobius: return "SingularMobius";
        case ErrorCode::StencilDegenerate: return "StencilDegenerate";
        case ErrorCode::NonImmersed: return "NonImmersed";
        case ErrorCode::EmptyGrid: return "EmptyGrid";
        case ErrorCode::IoError: return "IoError";
        case ErrorCode::ConfigError: return "ConfigError";
    }
    return "Unknown";
}

double inner41(const Vec41& a, const Vec41& b) {
    return -(a.co * b.cinf + a.cinf * b.co) + a.cq * b.cq + a.cx * b.cx + a.cy * b.cy;
}

double inner42(const Vec42& a, const Vec42& b) {
    return -a.cp * b.cp + inner41(a.rest, b.rest);
}

double euclid_norm_sq(const Vec41& v) {
    return v.co * v.co + v.cinf * v.cinf + v.cq * v.cq + v.cx * v.cx + v.cy * v.cy;
}

double euclid_norm(const Vec41& v) { return std::sqrt(euclid_norm_sq(v)); }

Vec41 euclidean_lift(const Point3& y) {
    const double n2 = y.height * y.height + y.u * y.u + y.v * y.v;
    return {1.0, n2 / 2.0, y.height, y.u, y.v};
}

Vec41 sphere_lift(const Point3& c, double r, double eps) {
    if (std::abs(r) <= eps)
        throw Error(ErrorCode::ZeroRadius, "sphere radius below epsilon");
    const double n2 = c.height * c.height + c.u * c.u + c.v * c.v;
    const double w = 1.0 / r;
    return {w, w * (n2 - r * r) / 2.0, w * c.height, w * c.u, w * c.v};
}

Point3 project_null_point(const Vec41& v, double null_tol) {
    const double scale = euclid_norm_sq(v);
    const double vinf = inner41(v, Vec41::infinity());  // equals -v.co
    if (std::abs(vinf) < 1e-12 * std::sqrt(scale))
        throw Error(ErrorCode::PointAtInfinity, "null vector represents the point at infinity");
    if (std::abs(inner41(v, v)) > null_tol * scale)
        throw Error(ErrorCode::NotNull, "vector is not null to tolerance");
    const double k = -1.0 / vinf;  // rescales to o-coefficient 1
    return {k * v.cq, k * v.cx, k * v.cy};
}

std::pair<Vec41, Vec41> null_directions_in_plane(const Vec41& u1, const Vec41& u2, double eps) {
    const double g11 = inner41(u1, u1);
    const double g12 = inner41(u1, u2);
    const double g22 = inner41(u2, u2);
    const double scale = euclid_norm_sq(u1) * euclid_norm_sq(u2);
    const double det = g11 * g22 - g12 * g12;
    if (!(det < -eps * scale))
        throw Error(ErrorCode::DegeneratePlane, "plane carries no two null directions");

    const double disc = std::sqrt(g12 * g12 - g11 * g22);
    Vec41 d1, d2;
    const double gmax = std::max(std::abs(g11), std::abs(g22));
    if (gmax <= 1e-14 * std::max(std::abs(g12), 1.0)) {
        // both basis vectors already null
        d1 = u1;
        d2 = u2;
    } else if (std::abs(g11) >= std::abs(g22)) {
        // roots of g11 t^2 + 2 g12 t + g22 = 0, t = coefficient of u1
        const double s = (g12 >= 0) ? 1.0 : -1.0;
        const double qq = -(g12 + s * disc);
        const double t1 = qq / g11;
        d1 = u1 * t1 + u2;
        if (std::abs(qq) > 0) {
            d2 = u1 * (g22 / qq) + u2;
        } else {
            d2 = u1;  // g12 = g22 = 0: u1 itself is the second null direction
        }
    } else {
        const double s = (g12 >= 0) ? 1.0 : -1.0;
        const double qq = -(g12 + s * disc);
        const double t1 = qq / g22;
        d1 = u1 + u2 * t1;
        if (std::abs(qq) > 0) {
            d2 = u1 + u2 * (g11 / qq);
        } else {
            d2 = u2;
        }
    }

    auto normalize = [](Vec41 v) {
        v = v / euclid_norm(v);
        // deterministic sign: make the largest-magnitude coordinate positive
        const auto c = v.coords();
        int arg = 0;
        for (int i = 1; i < 5; ++i)
            if (std::abs(c[i]) > std::abs(c[arg])) arg = i;
        return c[arg] < 0 ? -v : v;
    };
    return {normalize(d1), normalize(d2)};
}

} // namespace bcm
