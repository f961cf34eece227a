#ifndef BCM_MINKOWSKI_HPP
#define BCM_MINKOWSKI_HPP

#include <array>
#include <utility>

#include "bcm/errors.hpp"

namespace bcm {

/// Vector of R^{4,1} in the fixed basis (o, inf, q, e1, e2).
/// The form is (o,inf) = -1, (o,o) = (inf,inf) = 0, (q,q) = (e1,e1) = (e2,e2) = 1,
/// all other basis pairings zero.
struct Vec41 {
    double co = 0;    // coefficient of o
    double cinf = 0;  // coefficient of inf
    double cq = 0;    // coefficient of q
    double cx = 0;    // coefficient of e1
    double cy = 0;    // coefficient of e2

    static Vec41 o() { return {1, 0, 0, 0, 0}; }
    static Vec41 infinity() { return {0, 1, 0, 0, 0}; }
    static Vec41 q() { return {0, 0, 1, 0, 0}; }
    static Vec41 e1() { return {0, 0, 0, 1, 0}; }
    static Vec41 e2() { return {0, 0, 0, 0, 1}; }

    Vec41 operator+(const Vec41& b) const { return {co + b.co, cinf + b.cinf, cq + b.cq, cx + b.cx, cy + b.cy}; }
    Vec41 operator-(const Vec41& b) const { return {co - b.co, cinf - b.cinf, cq - b.cq, cx - b.cx, cy - b.cy}; }
    Vec41 operator-() const { return {-co, -cinf, -cq, -cx, -cy}; }
    Vec41 operator*(double k) const { return {k * co, k * cinf, k * cq, k * cx, k * cy}; }
    Vec41 operator/(double k) const { return {co / k, cinf / k, cq / k, cx / k, cy / k}; }

    std::array<double, 5> coords() const { return {co, cinf, cq, cx, cy}; }
};

inline Vec41 operator*(double k, const Vec41& v) { return v * k; }

/// Vector of R^{4,2}: the point sphere complex direction p with (p,p) = -1,
/// orthogonal to R^{4,1}.
struct Vec42 {
    double cp = 0;
    Vec41 rest;

    static Vec42 p() { return {1, {}}; }

    Vec42 operator+(const Vec42& b) const { return {cp + b.cp, rest + b.rest}; }
    Vec42 operator-(const Vec42& b) const { return {cp - b.cp, rest - b.rest}; }
    Vec42 operator*(double k) const { return {k * cp, rest * k}; }

    std::array<double, 6> coords() const {
        return {cp, rest.co, rest.cinf, rest.cq, rest.cx, rest.cy};
    }
};

/// Point of Euclidean 3-space R^3 = <q> (+) C. The height is the q coordinate,
/// (u, v) the C part.
struct Point3 {
    double height = 0;
    double u = 0;
    double v = 0;
};

double inner41(const Vec41& a, const Vec41& b);
double inner42(const Vec42& a, const Vec42& b);

/// Euclidean norm of the coordinate 5-tuple (not the Minkowski form).
double euclid_norm(const Vec41& v);
double euclid_norm_sq(const Vec41& v);

/// Parabolic light-cone lift o + y + (y,y)/2 inf. Null, with (lift, inf) = -1.
Vec41 euclidean_lift(const Point3& y);

/// Lift of the sphere with centre c and radius r != 0 into the de Sitter
/// sphere S^{3,1}: (1/r)(o + c + ((c,c) - r^2)/2 inf). Negative r encodes
/// the opposite orientation of the same sphere.
/// Throws ZeroRadius when |r| <= eps.
Vec41 sphere_lift(const Point3& c, double r, double eps = 1e-12);

/// Inverse of euclidean_lift on null vectors with (v, inf) != 0; accepts any
/// scale of the lift. Throws PointAtInfinity / NotNull.
Point3 project_null_point(const Vec41& v, double null_tol = 1e-9);

/// The two null directions of a signature-(1,1) plane span{u1, u2}, each
/// normalized to unit Euclidean coordinate norm. Throws DegeneratePlane when
/// the Gram determinant is not negative (no or degenerate null directions).
std::pair<Vec41, Vec41> null_directions_in_plane(const Vec41& u1, const Vec41& u2,
                                                 double eps = 1e-12);

} // namespace bcm

#endif
