#ifndef BCM_CURVATURE_HPP
#define BCM_CURVATURE_HPP

#include <array>
#include <optional>

#include "bcm/bianchi_calo.hpp"

namespace bcm {

/// Coefficients of a symmetric 2-form in the coordinates (x, y), z = x + iy.
struct Metric2 {
    double E = 0, F = 0, G = 0;
};

/// Five-point stencil of envelope samples around a grid node, used for
/// central differences of f and t at the given step.
struct EnvelopeStencil {
    EnvelopeSample c, xp, xm, yp, ym;
    double step = 1e-4;
};

/// First and second fundamental forms of the envelope from central
/// differences, plus (dt, dt) for the Cayley-Hamilton cross-check.
struct Forms {
    Metric2 I;     // (df, df)
    Metric2 II;    // -(dt, df), mixed term symmetrized
    Metric2 dtdt;  // (dt, dt)
    double mixed_asymmetry = 0;  // |(t_x, f_y) - (t_y, f_x)|
    Vec41 f_x, f_y, t_x, t_y;
};

struct CurvaturePair {
    double H = 0;
    double Kext = 0;
    double k1 = 0;
    double k2 = 0;
};

Forms fundamental_forms(const EnvelopeStencil& stencil);

/// Closed-form mean/Gauss curvature and principal curvatures; a slightly
/// negative discriminant H^2 - K is clamped to the umbilic case.
/// Throws NonImmersed when EG - F^2 <= 0 or the discriminant is genuinely
/// negative.
CurvaturePair mean_gauss(const Metric2& I, const Metric2& II);

/// Max component of (dt,dt) + 2H (dt,df) + K (df,df), normalized by the
/// sup of |(dt,dt)| components.
double cayley_hamilton_residual(const Forms& forms, double H, double Kext);

/// H, K from a least-squares fit of the Cayley-Hamilton relation over the
/// three form components (independent route for cross-validation).
CurvaturePair cayley_hamilton_least_squares(const Forms& forms);

/// (mu+1) Kext - 2 mu H + (mu-1); zero on Bryant-type surfaces.
double weingarten_residual(double H, double Kext, double mu);

struct InducedMetric {
    Metric2 m;           // (ds, ds) from analytic partials
    double target = 0;   // 4 / (1 - mu |z|^2)^2
    double mismatch = 0; // max(|E - target|, |F|, |G - target|) / target
};

InducedMetric induced_metric_s(const SphereSample& sample);

/// Max component defect of (dh, dh) = r^2 (ds, ds), normalized by |h'|^2.
double conformal_factor_residual(const SphereSample& sample, const ComplexJet2& jet);

/// Intrinsic Gauss curvature via the Brioschi formula, metric derivatives
/// by second-order central differences on a 3x3 stencil (row-major in the
/// x offset, then y offset, spacing = step).
double brioschi_curvature(const std::array<Metric2, 9>& stencil, double step);

/// Element of the second exterior power of R^{4,2}; components w_ij, i < j,
/// over the basis (p, o, inf, q, e1, e2).
struct Lambda2Vec42 {
    std::array<double, 15> w{};
    double sup() const;
};

Lambda2Vec42 wedge(const Vec42& a, const Vec42& b);

struct WedgeResult {
    Lambda2Vec42 form;   // sigma+_x ^ sigma-_y - sigma+_y ^ sigma-_x
    double norm = 0;     // sup norm over components, relative normalization
};

/// Assembles sigma+ = p + s and sigma- = (1+mu)/2 sigma+ - f and evaluates
/// the wedge 2-form that vanishes exactly on Bryant-type data. s-partials
/// analytic, f-partials from the envelope stencil.
WedgeResult sigma_wedge(const SphereSample& sphere, const EnvelopeStencil& stencil);

/// Off-diagonal magnitude of the shape operator I^{-1} II relative to its
/// Frobenius norm; a diagnostic for curvature-line coordinates.
double rodrigues_offdiag(const Metric2& I, const Metric2& II);

// ---- per-node verification report ----------------------------------------

struct ReportParams {
    double fd_step = 1e-4;
    double brioschi_step = 1e-3;
};

/// One row of the diagnostic table. Congruence-side and envelope-side
/// entries are filled independently; status records the first failure.
struct CurvatureReport {
    Complex z{};
    ErrorCode status = ErrorCode::Ok;

    std::optional<double> r;
    std::optional<double> H, Kext, k1, k2;
    std::optional<double> weingarten;        // raw (mu+1)K - 2 mu H + (mu-1)
    std::optional<double> cayham;            // normalized
    std::optional<double> metric_mismatch;   // relative
    std::optional<double> conformal;         // normalized by |h'|^2
    std::optional<double> wedge_norm;        // normalized sup
    std::optional<double> brioschi_defect;   // |K_int + mu|
    std::optional<double> rodrigues;         // normalized off-diagonal
    std::optional<double> structural;        // max defect of the lift identities
};

/// Build the 5-point envelope stencil by evaluating the full pipeline at
/// z and z +- step, z +- i step. Propagates pipeline errors.
EnvelopeStencil envelope_stencil(const BCData& data, Complex z, double step);

/// Evaluate every identity at one node; never throws, failures are recorded
/// in the status field while independent groups are still computed.
CurvatureReport node_report(const BCData& data, Complex z, const ReportParams& params = {});

} // namespace bcm

#endif
