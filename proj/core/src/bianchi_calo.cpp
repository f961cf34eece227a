#include "bcm/bianchi_calo.hpp"

#include <Eigen/Dense>
#include <cmath>

namespace bcm {

namespace {

// metric of R^{4,1} in coordinates (o, inf, q, e1, e2); involutive (G^2 = I)
Eigen::Matrix<double, 5, 5> metric41() {
    Eigen::Matrix<double, 5, 5> g = Eigen::Matrix<double, 5, 5>::Zero();
    g(0, 1) = g(1, 0) = -1;
    g(2, 2) = g(3, 3) = g(4, 4) = 1;
    return g;
}

Eigen::Matrix<double, 5, 1> to_eigen(const Vec41& v) {
    Eigen::Matrix<double, 5, 1> e;
    e << v.co, v.cinf, v.cq, v.cx, v.cy;
    return e;
}

Vec41 from_eigen(const Eigen::Matrix<double, 5, 1>& e) {
    return {e(0), e(1), e(2), e(3), e(4)};
}

double sphere_eps(double dh_abs) { return 1e-6 * (dh_abs + 1.0); }

} // namespace

double radius(Complex z, double mu, Complex h1) {
    return (1.0 - mu * std::norm(z)) * std::abs(h1) / 2.0;
}

Point3 centre(Complex z, const BCData& data) {
    const ComplexJet2 jet = eval_jet2(data.h, z);
    const double r = radius(z, data.mu, jet.f1) * data.r_scale;
    return {r, jet.f0.real(), jet.f0.imag()};
}

SphereSample horosphere_lift(Complex z, const BCData& data) {
    const ComplexJet2 jet = eval_jet2(data.h, z);
    const double dh = std::abs(jet.f1);
    const double r = radius(z, data.mu, jet.f1) * data.r_scale;
    if (std::abs(r) <= sphere_eps(dh))
        throw Error(ErrorCode::DegenerateSphere, "radius below epsilon (h' = 0 or |z|^2 = 1/mu)");

    const double x = z.real(), y = z.imag();
    const double hx = jet.f0.real(), hy = jet.f0.imag();
    const double n2 = hx * hx + hy * hy;

    // the half-space height of the centre is measured against q, so the
    // lift carries the q coefficient -r/r = -1 and touches the boundary
    // sphere with (s, q) = -1
    const double w = 1.0 / r;
    Vec41 s{w, w * n2 / 2.0, -1.0, w * hx, w * hy};

    // gradient of r: with phi = h''/h',
    // r_x = -mu x |h'| + r Re phi,  r_y = -mu y |h'| - r Im phi
    const Complex phi = jet.f2 / jet.f1;
    const double r_unscaled = r / data.r_scale;
    const double rx = (-data.mu * x * dh + r_unscaled * phi.real()) * data.r_scale;
    const double ry = (-data.mu * y * dh - r_unscaled * phi.imag()) * data.r_scale;
    const double wx = -rx / (r * r);
    const double wy = -ry / (r * r);

    // d/dx (Re h, Im h) = (Re h', Im h'); d/dy = (-Im h', Re h')
    const double hxx = jet.f1.real(), hyx = jet.f1.imag();
    const double hxy = -jet.f1.imag(), hyy = jet.f1.real();
    const double n2x = 2.0 * (hx * hxx + hy * hyx);
    const double n2y = 2.0 * (hx * hxy + hy * hyy);

    Vec41 sx{wx, wx * n2 / 2.0 + w * n2x / 2.0, 0.0, wx * hx + w * hxx, wx * hy + w * hyx};
    Vec41 sy{wy, wy * n2 / 2.0 + w * n2y / 2.0, 0.0, wy * hx + w * hxy, wy * hy + w * hyy};

    return {z, r, Point3{r, hx, hy}, s, sx, sy, data.mu, dh};
}

std::pair<Vec41, Vec41> horosphere_partials_fd(Complex z, const BCData& data, double step) {
    const Vec41 sxp = horosphere_lift(z + step, data).s;
    const Vec41 sxm = horosphere_lift(z - step, data).s;
    const Vec41 syp = horosphere_lift(z + Complex(0, step), data).s;
    const Vec41 sym = horosphere_lift(z - Complex(0, step), data).s;
    return {(sxp - sxm) / (2 * step), (syp - sym) / (2 * step)};
}

EnvelopeSample second_envelope(const SphereSample& sample) {
    // rows are the metric duals of s, s_x, s_y; the kernel is the normal
    // plane.  G is involutive, so singular values match those of the
    // coordinate matrix itself.
    Eigen::Matrix<double, 3, 5> a;
    a.row(0) = to_eigen(sample.s).transpose();
    a.row(1) = to_eigen(sample.s_x).transpose();
    a.row(2) = to_eigen(sample.s_y).transpose();
    const Eigen::Matrix<double, 3, 5> b = a * metric41();

    Eigen::JacobiSVD<Eigen::Matrix<double, 3, 5>> svd(b, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    if (sv(2) < 1e-8 * sv(0))
        throw Error(ErrorCode::NotImmersed, "congruence does not immerse: rank{s, s_x, s_y} < 3");

    const Vec41 n1 = from_eigen(svd.matrixV().col(3));
    const Vec41 n2 = from_eigen(svd.matrixV().col(4));

    const double g11 = inner41(n1, n1);
    const double g12 = inner41(n1, n2);
    const double g22 = inner41(n2, n2);
    if (!(g11 * g22 - g12 * g12 < -1e-12))
        throw Error(ErrorCode::DegenerateNormalPlane, "normal plane is not signature (1,1)");

    auto [d1, d2] = null_directions_in_plane(n1, n2);

    const Vec41 hlift = sample.s + Vec41::q();
    const double hn = euclid_norm(hlift);
    auto align = [&](const Vec41& d) {
        // cosine of the Euclidean angle with hlift
        double dot = d.co * hlift.co + d.cinf * hlift.cinf + d.cq * hlift.cq +
                     d.cx * hlift.cx + d.cy * hlift.cy;
        return std::abs(dot) / (euclid_norm(d) * hn);
    };
    const double al1 = align(d1);
    const double al2 = align(d2);
    const double kAngTol = 1.0 - 1e-9;
    if (al1 >= kAngTol && al2 >= kAngTol)
        throw Error(ErrorCode::AmbiguousNullSplit, "both null directions align with s + q");
    const Vec41 f0 = (al1 > al2) ? d2 : d1;

    const double fq = inner41(f0, Vec41::q());
    if (std::abs(fq) < 1e-9 * euclid_norm(f0))
        throw Error(ErrorCode::IdealEnvelopePoint, "envelope touches the ideal boundary");

    const Vec41 f = f0 * (-1.0 / fq);  // (f, q) = -1
    const Point3 p = project_null_point(f);
    // half-space chart: height against q, matching the (r, h) centre chart
    const Point3 position{-p.height, p.u, p.v};
    return {sample.z, f, position, sample.s - f, hlift};
}

BCData parallel_family(const BCData& data, double rho) {
    const double k = std::exp(-rho);
    BCData out = data;
    out.mu = data.mu * std::exp(-2.0 * rho);
    out.h = substitute(data.h, mobius_expr(Complex(k, 0), 0.0, 0.0, 1.0));
    out.domain = data.domain.scaled(std::exp(rho));
    return out;
}

BCData mobius_reparam(const BCData& data, Complex a, Complex b, Complex c, Complex d) {
    if (std::abs(a * d - b * c) < 1e-12)
        throw Error(ErrorCode::SingularMobius, "Moebius determinant ad - bc is negligible");
    BCData out = data;
    out.h = substitute(data.h, mobius_expr(a, b, c, d));
    return out;
}

double isometric_reparam_check(const BCData& data, const HoloExpr& reparam) {
    BCData transformed = data;
    transformed.h = substitute(data.h, reparam);

    double worst = 0;
    const GridSpec& g = data.domain;
    for (int i = 0; i < g.nx; ++i) {
        for (int j = 0; j < g.ny; ++j) {
            const Complex zt = g.node(i, j);
            const ComplexJet2 rep = eval_jet2(reparam, zt);
            const ComplexJet2 orig = eval_jet2(data.h, rep.f0);
            const double r_orig = radius(rep.f0, data.mu, orig.f1);
            if (std::abs(r_orig) <= sphere_eps(std::abs(orig.f1))) continue;
            const ComplexJet2 trans = eval_jet2(transformed.h, zt);
            const double r_new = radius(zt, transformed.mu, trans.f1);
            worst = std::max(worst, std::abs(r_new / r_orig - 1.0));
        }
    }
    return worst;
}

} // namespace bcm
