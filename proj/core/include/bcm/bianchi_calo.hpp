#ifndef BCM_BIANCHI_CALO_HPP
#define BCM_BIANCHI_CALO_HPP

#include <complex>
#include <utility>

#include "bcm/grid.hpp"
#include "bcm/holomorphic.hpp"
#include "bcm/minkowski.hpp"

namespace bcm {

/// Input data of the construction: a holomorphic map h, the Bryant
/// parameter mu, and the parameter domain. r_scale is a debug knob that
/// multiplies the radius function; 1.0 is the honest construction.
struct BCData {
    HoloExpr h;
    double mu = -1.0;
    GridSpec domain;
    double r_scale = 1.0;
};

/// Per-point data of the horosphere congruence. The centre is stored in
/// half-space coordinates (r, h(z)); the lift s and its analytic partials
/// live in R^{4,1}, normalized so the q coefficient of s is exactly -1.
struct SphereSample {
    Complex z;
    double r = 0;
    Point3 centre;
    Vec41 s, s_x, s_y;
    double mu = 0;        // carried along for the curvature stage
    double dh_abs = 0;    // |h'(z)|, the local scale of the data
};

/// Per-point data of the second envelope: null lift f with (f,q) = -1,
/// its half-space position, the tangent plane map t = s - f, and the
/// Gauss map lift h = s + q.
struct EnvelopeSample {
    Complex z;
    Vec41 f;
    Point3 position;
    Vec41 t;
    Vec41 hlift;
};

/// r = (1 - mu |z|^2) |h'| / 2. May be zero or negative.
double radius(Complex z, double mu, Complex h1);

/// Centre surface (r, Re h, Im h) in half-space coordinates.
Point3 centre(Complex z, const BCData& data);

/// Horosphere congruence lift with analytic x/y partials.
/// Throws DegenerateSphere when |r| is below the scale-aware epsilon,
/// and propagates PoleAtPoint / Overflow from the jet evaluation.
SphereSample horosphere_lift(Complex z, const BCData& data);

/// Finite-difference cross-check of the analytic partials (central
/// differences of the lift itself).
std::pair<Vec41, Vec41> horosphere_partials_fd(Complex z, const BCData& data, double step = 1e-5);

/// Second envelope of the congruence: the null direction of
/// span{s, s_x, s_y}^perp that is not the Gauss map lift s + q, scaled so
/// (f, q) = -1. Throws NotImmersed, DegenerateNormalPlane,
/// IdealEnvelopePoint, AmbiguousNullSplit.
EnvelopeSample second_envelope(const SphereSample& sample);

/// Parallel family member: mu e^{-2 rho}, h precomposed with e^{-rho} z,
/// domain scaled by e^{rho}.
BCData parallel_family(const BCData& data, double rho);

/// Same mu, h precomposed with the Moebius map (a z + b)/(c z + d).
/// Throws SingularMobius when |ad - bc| is negligible.
BCData mobius_reparam(const BCData& data, Complex a, Complex b, Complex c, Complex d);

/// For a reparametrization z = z(zt) that is an isometry of the metric
/// |dz|^2/(1 - mu |z|^2)^2, the radius function is invariant. Returns
/// max over the domain grid of |r~(zt)/r(z(zt)) - 1|.
double isometric_reparam_check(const BCData& data, const HoloExpr& reparam);

} // namespace bcm

#endif
