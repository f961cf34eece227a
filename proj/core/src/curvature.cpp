#include "bcm/curvature.hpp"

#include <Eigen/Dense>
#include <cmath>

namespace bcm {

namespace {

Vec41 central(const Vec41& plus, const Vec41& minus, double step) {
    return (plus - minus) / (2.0 * step);
}

double det3(const Eigen::Matrix3d& m) { return m.determinant(); }

} // namespace

Forms fundamental_forms(const EnvelopeStencil& st) {
    Forms f;
    f.f_x = central(st.xp.f, st.xm.f, st.step);
    f.f_y = central(st.yp.f, st.ym.f, st.step);
    f.t_x = central(st.xp.t, st.xm.t, st.step);
    f.t_y = central(st.yp.t, st.ym.t, st.step);

    f.I = {inner41(f.f_x, f.f_x), inner41(f.f_x, f.f_y), inner41(f.f_y, f.f_y)};
    const double m1 = inner41(f.t_x, f.f_y);
    const double m2 = inner41(f.t_y, f.f_x);
    f.II = {-inner41(f.t_x, f.f_x), -0.5 * (m1 + m2), -inner41(f.t_y, f.f_y)};
    f.mixed_asymmetry = std::abs(m1 - m2);
    f.dtdt = {inner41(f.t_x, f.t_x), inner41(f.t_x, f.t_y), inner41(f.t_y, f.t_y)};

    if (f.I.E * f.I.G - f.I.F * f.I.F <= 0)
        throw Error(ErrorCode::NonImmersed, "envelope first fundamental form is degenerate");
    return f;
}

CurvaturePair mean_gauss(const Metric2& I, const Metric2& II) {
    const double det = I.E * I.G - I.F * I.F;
    if (det <= 0) throw Error(ErrorCode::NonImmersed, "EG - F^2 <= 0");
    CurvaturePair c;
    c.Kext = (II.E * II.G - II.F * II.F) / det;
    c.H = (I.E * II.G - 2.0 * I.F * II.F + I.G * II.E) / (2.0 * det);
    double disc = c.H * c.H - c.Kext;
    if (disc < 0) {
        const double clamp = 1e-12 * std::max({1.0, c.H * c.H, std::abs(c.Kext)});
        if (disc < -clamp)
            throw Error(ErrorCode::NonImmersed, "curvature discriminant is negative");
        disc = 0;  // umbilic within roundoff
    }
    const double root = std::sqrt(disc);
    c.k1 = c.H - root;
    c.k2 = c.H + root;
    return c;
}

double cayley_hamilton_residual(const Forms& f, double H, double Kext) {
    // (dt,dt) + 2H (dt,df) + K (df,df), with (dt,df) = -II
    const double ruu = f.dtdt.E - 2.0 * H * f.II.E + Kext * f.I.E;
    const double ruv = f.dtdt.F - 2.0 * H * f.II.F + Kext * f.I.F;
    const double rvv = f.dtdt.G - 2.0 * H * f.II.G + Kext * f.I.G;
    const double scale = std::max({std::abs(f.dtdt.E), std::abs(f.dtdt.F), std::abs(f.dtdt.G), 1e-300});
    return std::max({std::abs(ruu), std::abs(ruv), std::abs(rvv)}) / scale;
}

CurvaturePair cayley_hamilton_least_squares(const Forms& f) {
    // solve [2 II | -I] (H, K)^T = (dt, dt) componentwise in least squares
    Eigen::Matrix<double, 3, 2> A;
    A << 2.0 * f.II.E, -f.I.E,
         2.0 * f.II.F, -f.I.F,
         2.0 * f.II.G, -f.I.G;
    Eigen::Vector3d b(f.dtdt.E, f.dtdt.F, f.dtdt.G);
    const Eigen::Vector2d hk = A.colPivHouseholderQr().solve(b);
    CurvaturePair c;
    c.H = hk(0);
    c.Kext = hk(1);
    double disc = std::max(0.0, c.H * c.H - c.Kext);
    c.k1 = c.H - std::sqrt(disc);
    c.k2 = c.H + std::sqrt(disc);
    return c;
}

double weingarten_residual(double H, double Kext, double mu) {
    return (mu + 1.0) * Kext - 2.0 * mu * H + (mu - 1.0);
}

InducedMetric induced_metric_s(const SphereSample& s) {
    InducedMetric im;
    im.m = {inner41(s.s_x, s.s_x), inner41(s.s_x, s.s_y), inner41(s.s_y, s.s_y)};
    const double d = 1.0 - s.mu * std::norm(s.z);
    im.target = 4.0 / (d * d);
    im.mismatch = std::max({std::abs(im.m.E - im.target), std::abs(im.m.F),
                            std::abs(im.m.G - im.target)}) /
                  im.target;
    return im;
}

double conformal_factor_residual(const SphereSample& s, const ComplexJet2& jet) {
    const double dh2 = std::norm(jet.f1);  // (dh, dh) has E = G = |h'|^2, F = 0
    const double r2 = s.r * s.r;
    const Metric2 ds{inner41(s.s_x, s.s_x), inner41(s.s_x, s.s_y), inner41(s.s_y, s.s_y)};
    return std::max({std::abs(dh2 - r2 * ds.E), std::abs(r2 * ds.F), std::abs(dh2 - r2 * ds.G)}) /
           dh2;
}

double brioschi_curvature(const std::array<Metric2, 9>& m, double step) {
    // index layout: m[(i+1)*3 + (j+1)] at offset (i, j), i along x, j along y
    auto at = [&m](int i, int j) -> const Metric2& { return m[(i + 1) * 3 + (j + 1)]; };
    const double h = step;
    if (!(h > 0)) throw Error(ErrorCode::StencilDegenerate, "non-positive stencil step");

    const Metric2& c = at(0, 0);
    const double E = c.E, F = c.F, G = c.G;
    const double Eu = (at(1, 0).E - at(-1, 0).E) / (2 * h);
    const double Ev = (at(0, 1).E - at(0, -1).E) / (2 * h);
    const double Fu = (at(1, 0).F - at(-1, 0).F) / (2 * h);
    const double Fv = (at(0, 1).F - at(0, -1).F) / (2 * h);
    const double Gu = (at(1, 0).G - at(-1, 0).G) / (2 * h);
    const double Gv = (at(0, 1).G - at(0, -1).G) / (2 * h);
    const double Evv = (at(0, 1).E - 2 * E + at(0, -1).E) / (h * h);
    const double Guu = (at(1, 0).G - 2 * G + at(-1, 0).G) / (h * h);
    const double Fuv =
        (at(1, 1).F - at(1, -1).F - at(-1, 1).F + at(-1, -1).F) / (4 * h * h);

    const double det = E * G - F * F;
    if (det <= 0) throw Error(ErrorCode::StencilDegenerate, "metric not positive definite");

    Eigen::Matrix3d m1, m2;
    m1 << -0.5 * Evv + Fuv - 0.5 * Guu, 0.5 * Eu, Fu - 0.5 * Ev,
          Fv - 0.5 * Gu,                E,        F,
          0.5 * Gv,                     F,        G;
    m2 << 0.0,      0.5 * Ev, 0.5 * Gu,
          0.5 * Ev, E,        F,
          0.5 * Gu, F,        G;
    return (det3(m1) - det3(m2)) / (det * det);
}

double Lambda2Vec42::sup() const {
    double s = 0;
    for (double c : w) s = std::max(s, std::abs(c));
    return s;
}

Lambda2Vec42 wedge(const Vec42& a, const Vec42& b) {
    const auto ca = a.coords();
    const auto cb = b.coords();
    Lambda2Vec42 out;
    int k = 0;
    for (int i = 0; i < 6; ++i)
        for (int j = i + 1; j < 6; ++j) out.w[k++] = ca[i] * cb[j] - ca[j] * cb[i];
    return out;
}

namespace {

double norm6(const Vec42& v) {
    const auto c = v.coords();
    double s = 0;
    for (double x : c) s += x * x;
    return std::sqrt(s);
}

} // namespace

WedgeResult sigma_wedge(const SphereSample& sphere, const EnvelopeStencil& st) {
    const double mu = sphere.mu;
    const double k = (1.0 + mu) / 2.0;
    // d sigma+ = ds (cp constant), d sigma- = k ds - df
    const Vec41 fx = central(st.xp.f, st.xm.f, st.step);
    const Vec41 fy = central(st.yp.f, st.ym.f, st.step);
    const Vec42 spx{0.0, sphere.s_x};
    const Vec42 spy{0.0, sphere.s_y};
    const Vec42 smx{0.0, sphere.s_x * k - fx};
    const Vec42 smy{0.0, sphere.s_y * k - fy};

    WedgeResult out;
    const Lambda2Vec42 w1 = wedge(spx, smy);
    const Lambda2Vec42 w2 = wedge(spy, smx);
    for (int i = 0; i < 15; ++i) out.form.w[i] = w1.w[i] - w2.w[i];
    const double scale = norm6(spx) * norm6(smy) + norm6(spy) * norm6(smx);
    out.norm = scale > 0 ? out.form.sup() / scale : 0.0;
    return out;
}

double rodrigues_offdiag(const Metric2& I, const Metric2& II) {
    const double det = I.E * I.G - I.F * I.F;
    if (det <= 0) throw Error(ErrorCode::NonImmersed, "EG - F^2 <= 0");
    // shape operator S = I^{-1} II
    const double s00 = (I.G * II.E - I.F * II.F) / det;
    const double s01 = (I.G * II.F - I.F * II.G) / det;
    const double s10 = (I.E * II.F - I.F * II.E) / det;
    const double s11 = (I.E * II.G - I.F * II.F) / det;
    const double fro = std::sqrt(s00 * s00 + s01 * s01 + s10 * s10 + s11 * s11);
    if (fro == 0) return 0;
    return std::max(std::abs(s01), std::abs(s10)) / fro;
}

EnvelopeStencil envelope_stencil(const BCData& data, Complex z, double step) {
    auto eval = [&](Complex w) { return second_envelope(horosphere_lift(w, data)); };
    EnvelopeStencil st;
    st.step = step;
    st.c = eval(z);
    st.xp = eval(z + step);
    st.xm = eval(z - step);
    st.yp = eval(z + Complex(0, step));
    st.ym = eval(z - Complex(0, step));
    return st;
}

namespace {

double structural_defect(const SphereSample& sp, const EnvelopeSample& env) {
    const Vec41 q = Vec41::q();
    double d = 0;
    auto acc = [&d](double v) { d = std::max(d, std::abs(v)); };
    acc(inner41(sp.s, sp.s) - 1.0);
    acc(inner41(sp.s, q) + 1.0);
    acc(inner41(env.f, env.f));
    acc(inner41(env.f, q) + 1.0);
    acc(inner41(env.f, sp.s));
    acc(inner41(env.t, env.t) - 1.0);
    acc(inner41(env.t, q));
    acc(inner41(env.t, env.f));
    acc(inner41(env.hlift, env.hlift));
    acc(inner41(env.hlift, q));
    acc(inner41(env.hlift, env.f) + 1.0);
    // envelope condition, scale-aware
    acc(inner41(env.f, sp.s_x) / (1.0 + euclid_norm(sp.s_x)));
    acc(inner41(env.f, sp.s_y) / (1.0 + euclid_norm(sp.s_y)));
    return d;
}

} // namespace

CurvatureReport node_report(const BCData& data, Complex z, const ReportParams& params) {
    CurvatureReport rep;
    rep.z = z;

    SphereSample sphere;
    try {
        sphere = horosphere_lift(z, data);
    } catch (const Error& e) {
        rep.status = e.code();
        return rep;
    }
    rep.r = sphere.r;

    // congruence side (analytic)
    const InducedMetric im = induced_metric_s(sphere);
    rep.metric_mismatch = im.mismatch;
    rep.conformal = conformal_factor_residual(sphere, eval_jet2(data.h, z));

    auto record = [&rep](ErrorCode code) {
        if (rep.status == ErrorCode::Ok) rep.status = code;
    };

    try {
        std::array<Metric2, 9> st;
        const double b = params.brioschi_step;
        for (int i = -1; i <= 1; ++i)
            for (int j = -1; j <= 1; ++j)
                st[(i + 1) * 3 + (j + 1)] =
                    induced_metric_s(horosphere_lift(z + Complex(i * b, j * b), data)).m;
        rep.brioschi_defect = std::abs(brioschi_curvature(st, b) + data.mu);
    } catch (const Error&) {
        record(ErrorCode::StencilDegenerate);
    }

    // envelope side
    EnvelopeSample env;
    try {
        env = second_envelope(sphere);
    } catch (const Error& e) {
        record(e.code());
        return rep;
    }
    rep.structural = structural_defect(sphere, env);

    EnvelopeStencil stencil;
    try {
        stencil = envelope_stencil(data, z, params.fd_step);
    } catch (const Error&) {
        record(ErrorCode::StencilDegenerate);
        return rep;
    }

    try {
        const Forms forms = fundamental_forms(stencil);
        // a stationary envelope (constant f) yields pure-noise derivatives;
        // treat it as not immersed rather than dividing by garbage
        const double fscale = 1.0 + euclid_norm(stencil.c.f);
        if (std::max(euclid_norm(forms.f_x), euclid_norm(forms.f_y)) <= 1e-6 * fscale)
            throw Error(ErrorCode::NonImmersed, "envelope is stationary");
        const double idet = forms.I.E * forms.I.G - forms.I.F * forms.I.F;
        if (idet <= 1e-16 * im.m.E * im.m.G)
            throw Error(ErrorCode::NonImmersed, "envelope metric degenerate against congruence");

        const CurvaturePair c = mean_gauss(forms.I, forms.II);
        rep.H = c.H;
        rep.Kext = c.Kext;
        rep.k1 = c.k1;
        rep.k2 = c.k2;
        rep.weingarten = weingarten_residual(c.H, c.Kext, data.mu);
        rep.cayham = cayley_hamilton_residual(forms, c.H, c.Kext);
        rep.rodrigues = rodrigues_offdiag(forms.I, forms.II);
        rep.wedge_norm = sigma_wedge(sphere, stencil).norm;
    } catch (const Error& e) {
        record(e.code());
    }
    return rep;
}

} // namespace bcm
