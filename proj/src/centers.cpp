#include "wintgen/centers.hpp"

#include <cmath>
#include <limits>

#include "wintgen/errors.hpp"

namespace wintgen {

SphereGeometry sphere_center(const LorentzVec& xi1, const LorentzVec& xi2, const PolePair& poles, double tol) {
    const LorentzVec& p = poles.p();
    if (xi1.size() != p.size()) throw DimensionMismatch(xi1.size(), p.size());
    SphereGeometry g;
    const double a = inner(p, xi1), b = inner(p, xi2);
    g.center = p - 2 * a * xi1 - 2 * b * xi2;
    g.sigma = -inner(g.center, p);
    if (g.sigma <= tol) throw PoleOnSphere(std::sqrt(std::max(g.sigma, 0.0) / 2));
    const LorentzVec xt = g.center / g.sigma;
    const LorentzVec flat = xt - 0.5 * poles.p_star() + 0.5 * inner(xt, poles.p_star()) * p;
    g.euclideanCenter = poles.flatten(flat);
    g.radius = std::sqrt(2 / g.sigma);
    return g;
}

Vec flat_point(const LorentzVec& Y, const PolePair& poles) {
    const double yp = inner(Y, poles.p());
    if (std::abs(yp) <= 1e-14 * Y.norm()) throw PoleOnSphere(std::abs(yp));
    const LorentzVec y = Y / (-yp);
    return poles.flatten(LorentzVec(y - 0.5 * poles.p_star() + 0.5 * inner(y, poles.p_star()) * poles.p()));
}

double pole_clearance(const PolyCurve& xi, const std::vector<cplx>& zs, const PolePair& poles) {
    const LorentzVec p = poles.p() / poles.p()[0];
    double best = std::numeric_limits<double>::infinity();
    for (cplx z : zs) {
        const auto [x1, x2] = sphere_pair(xi.eval(z));
        best = std::min(best, std::hypot(inner(p, x1), inner(p, x2)));
    }
    return best;
}

std::pair<LorentzVec, LorentzVec> sphere_pair(const CVec& xi) {
    LorentzVec a = xi.real(), b = -xi.imag();
    const double na = inner(a, a), nb = inner(b, b);
    if (na <= 0 || nb <= 0) throw NotInQuadric("lift does not span a spacelike plane");
    return {a / std::sqrt(na), b / std::sqrt(nb)};
}

namespace {

struct ScalarJet {
    cplx v, d, dd, dbar;
};

struct VectorJet {
    CVec v, d, dd, dbar;
};

// Jet of N / a by the quotient rule.
VectorJet quotient(const VectorJet& n, const ScalarJet& a) {
    VectorJet q;
    q.v = n.v / a.v;
    q.d = (n.d - q.v * a.d) / a.v;
    q.dd = (n.dd - 2.0 * q.d * a.d - q.v * a.dd) / a.v;
    q.dbar = (n.dbar - q.v * a.dbar) / a.v;
    return q;
}

ScalarJet pairing(const CurveJet& j, const CVec& w) {
    return {cinner(j.value, w), cinner(j.dz, w), cinner(j.dzz, w), cinner(j.dzbar, w)};
}

// Second-order jets in (u, v): value, gradient, Hessian (uu, uv, vv).
struct RealJet {
    double f = 0, fu = 0, fv = 0, fuu = 0, fuv = 0, fvv = 0;
};

struct VecJet {
    Vec f, fu, fv, fuu, fuv, fvv;
};

VecJet constant(const Vec& c) {
    const Vec z = Vec::Zero(c.size());
    return {c, z, z, z, z, z};
}

RealJet pair(const VecJet& a, const VecJet& b) {
    return {inner(a.f, b.f),
            inner(a.fu, b.f) + inner(a.f, b.fu),
            inner(a.fv, b.f) + inner(a.f, b.fv),
            inner(a.fuu, b.f) + 2 * inner(a.fu, b.fu) + inner(a.f, b.fuu),
            inner(a.fuv, b.f) + inner(a.fu, b.fv) + inner(a.fv, b.fu) + inner(a.f, b.fuv),
            inner(a.fvv, b.f) + 2 * inner(a.fv, b.fv) + inner(a.f, b.fvv)};
}

VecJet scale(const RealJet& s, const VecJet& a) {
    return {s.f * a.f,
            s.fu * a.f + s.f * a.fu,
            s.fv * a.f + s.f * a.fv,
            s.fuu * a.f + 2 * s.fu * a.fu + s.f * a.fuu,
            s.fuv * a.f + s.fu * a.fv + s.fv * a.fu + s.f * a.fuv,
            s.fvv * a.f + 2 * s.fv * a.fv + s.f * a.fvv};
}

VecJet add(const VecJet& a, const VecJet& b) {
    return {a.f + b.f, a.fu + b.fu, a.fv + b.fv, a.fuu + b.fuu, a.fuv + b.fuv, a.fvv + b.fvv};
}

// g(s) with g', g'' given at s.f
RealJet compose(const RealJet& s, double g, double g1, double g2) {
    return {g,
            g1 * s.fu,
            g1 * s.fv,
            g2 * s.fu * s.fu + g1 * s.fuu,
            g2 * s.fu * s.fv + g1 * s.fuv,
            g2 * s.fv * s.fv + g1 * s.fvv};
}

RealJet rsqrt(const RealJet& s) {
    const double r = 1 / std::sqrt(s.f);
    return compose(s, r, -0.5 * r / s.f, 0.75 * r / (s.f * s.f));
}

RealJet reciprocal(const RealJet& s) {
    return compose(s, 1 / s.f, -1 / (s.f * s.f), 2 / (s.f * s.f * s.f));
}

RealJet times(double c, RealJet s) {
    for (double* x : {&s.f, &s.fu, &s.fv, &s.fuu, &s.fuv, &s.fvv}) *x *= c;
    return s;
}

}  // namespace

ImmersionJet reflection_center_jet(const PolyCurve& xi, cplx z, const PolePair& poles) {
    const CurveJet j = xi.jet(z, 2);
    // a = Re xi, b = -Im xi; d/du = d/dz, d/dv = i d/dz on holomorphic data.
    const VecJet a{j.value.real(), j.dz.real(), -j.dz.imag(), j.dzz.real(), -j.dzz.imag(), -j.dzz.real()};
    const VecJet b{-j.value.imag(), -j.dz.imag(), -j.dz.real(), -j.dzz.imag(), -j.dzz.real(), j.dzz.imag()};
    if (a.f.size() != poles.p().size()) throw DimensionMismatch(a.f.size(), poles.p().size());
    const RealJet na = pair(a, a), nb = pair(b, b);
    if (na.f <= 0 || nb.f <= 0) throw NotInQuadric("lift does not span a spacelike plane");
    const VecJet x1 = scale(rsqrt(na), a), x2 = scale(rsqrt(nb), b);

    const VecJet p = constant(poles.p()), ps = constant(poles.p_star());
    const VecJet center = add(p, add(scale(times(-2, pair(p, x1)), x1), scale(times(-2, pair(p, x2)), x2)));
    const RealJet sigma = times(-1, pair(center, p));
    if (sigma.f <= 1e-12) throw PoleOnSphere(std::sqrt(std::max(sigma.f, 0.0) / 2));
    const VecJet xt = scale(reciprocal(sigma), center);
    const VecJet flat = add(add(xt, constant(-0.5 * poles.p_star())), scale(times(0.5, pair(xt, ps)), p));

    ImmersionJet out;
    out.position = poles.flatten(flat.f);
    const int k = static_cast<int>(out.position.size());
    out.first.resize(k, 2);
    out.first.col(0) = poles.flatten(flat.fu);
    out.first.col(1) = poles.flatten(flat.fv);
    out.second.assign(2, Mat(k, 2));
    out.second[0].col(0) = poles.flatten(flat.fuu);
    out.second[0].col(1) = poles.flatten(flat.fuv);
    out.second[1].col(0) = poles.flatten(flat.fuv);
    out.second[1].col(1) = poles.flatten(flat.fvv);
    return out;
}

CenterJet center_jet(const PolyCurve& xi, cplx z, const PolePair& poles, double tol) {
    const CurveJet j = xi.jet(z, 2);
    const CVec p = poles.p().cast<cplx>(), ps = poles.p_star().cast<cplx>();
    const ScalarJet a = pairing(j, p);
    if (std::abs(a.v) <= tol * j.value.norm()) throw PoleOnSphere(std::abs(a.v));
    const ScalarJet b = pairing(j, ps);

    const VectorJet q = quotient({j.value, j.dz, j.dzz, j.dzbar}, a);
    const cplx r = b.v / a.v;
    const cplx rd = (b.d - r * a.d) / a.v;
    const cplx rdd = (b.dd - 2.0 * rd * a.d - r * a.dd) / a.v;
    const cplx rbar = (b.dbar - r * a.dbar) / a.v;

    auto strip = [&](CVec x) {
        x += (cinner(x, ps) / 2.0) * p + (cinner(x, p) / 2.0) * ps;
        return x;
    };
    CenterJet c;
    c.z = z;
    c.X = strip(-q.v - 0.5 * ps - 0.5 * r * p);
    c.Xz = strip(-q.d - 0.5 * rd * p);
    c.Xzz = strip(-q.dd - 0.5 * rdd * p);
    c.Xzbar = strip(-q.dbar - 0.5 * rbar * p);

    c.Xt = poles.flatten(Vec(c.X.real()));
    const int k = static_cast<int>(c.Xt.size());
    c.surface.position = c.Xt;
    c.surface.first.resize(k, 2);
    c.surface.first.col(0) = poles.flatten(Vec(c.Xz.real()));
    c.surface.first.col(1) = poles.flatten(Vec(-c.Xz.imag()));
    const Vec uu = poles.flatten(Vec(c.Xzz.real()));
    const Vec uv = poles.flatten(Vec(-c.Xzz.imag()));
    c.surface.second.assign(2, Mat(k, 2));
    c.surface.second[0].col(0) = uu;
    c.surface.second[0].col(1) = uv;
    c.surface.second[1].col(0) = uv;
    c.surface.second[1].col(1) = -uu;
    return c;
}

CenterReport verify_center_point(const PolyCurve& xi, cplx z, const PolePair& poles) {
    const CenterJet c = center_jet(xi, z, poles);
    CenterReport r;
    const double xz = c.Xz.norm();
    if (xz == 0.0) throw RankDeficient("center surface is not immersed");
    r.holomorphy = c.Xzbar.norm() / xz;
    r.isotropy = std::abs(cinner(c.Xz, c.Xz)) / c.Xz.squaredNorm();
    const ImmersionJet reflected = reflection_center_jet(xi, z, poles);
    const auto h = harmonicity_residual(reflected);
    r.harmonicity = h.harmonicity;
    r.conformality = h.conformality;
    const auto [x1, x2] = sphere_pair(xi.eval(z));
    r.pathAgreement = (sphere_center(x1, x2, poles).euclideanCenter - c.Xt).norm();
    r.derivativeAgreement = (reflected.first - c.surface.first).norm() / c.surface.first.norm();
    return r;
}

GridField center_surface(const PolyCurve& xi, double u0, double v0, int nu, int nv, double h, const PolePair& poles) {
    GridField f({nu, nv}, {h, h}, poles.ambient_dim() - 2);
    for (int i = 0; i < nu; ++i)
        for (int j = 0; j < nv; ++j) f.at({i, j}) = center_jet(xi, {u0 + i * h, v0 + j * h}, poles).Xt;
    return f;
}

std::vector<HarmonicityReport> verify_minimal(const GridField& surface) {
    std::vector<HarmonicityReport> out;
    const auto& s = surface.shape();
    for (int i = 2; i < s[0] - 2; ++i)
        for (int j = 2; j < s[1] - 2; ++j) out.push_back(harmonicity_residual(surface, {i, j}));
    return out;
}

}  // namespace wintgen
