#include "wintgen/stereographic.hpp"

#include <cmath>

#include "wintgen/errors.hpp"

namespace wintgen {

namespace {

constexpr double kPoleTol = 1e-12;

// Columns e0 = (p + p*)/2, e1 = (p - p*)/2, then an orthonormal basis of the
// (positive definite) complement obtained from the canonical vectors.
Mat adapted_frame(const LorentzVec& p, const LorentzVec& ps) {
    const int n = static_cast<int>(p.size());
    Mat t(n, n);
    t.col(0) = (p + ps) / 2;
    t.col(1) = (p - ps) / 2;
    int filled = 2;
    for (int k = 0; k < n && filled < n; ++k) {
        LorentzVec v = LorentzVec::Unit(n, k);
        for (int pass = 0; pass < 2; ++pass)
            for (int j = 0; j < filled; ++j) {
                const double s = inner(t.col(j), t.col(j));
                v -= (inner(v, t.col(j)) / s) * t.col(j);
            }
        const double nn = inner(v, v);
        if (nn < 1e-6) continue;
        t.col(filled++) = v / std::sqrt(nn);
    }
    if (filled != n) throw PoleNormalization("could not complete an adapted frame for the poles");
    return t;
}

}  // namespace

PolePair::PolePair(LorentzVec p, LorentzVec pStar) : p_(std::move(p)), pStar_(std::move(pStar)) {
    const int n = static_cast<int>(p_.size());
    LorentzVec sp = LorentzVec::Zero(n), sps = LorentzVec::Zero(n);
    sp[0] = sp[1] = 1.0;
    sps[0] = 1.0;
    sps[1] = -1.0;
    standard_ = (p_ == sp && pStar_ == sps);
    if (standard_) {
        adapted_ = Mat::Identity(n, n);
        adaptedInv_ = adapted_;
    } else {
        adapted_ = adapted_frame(p_, pStar_);
        const Mat eta = minkowski(n);
        adaptedInv_ = eta * adapted_.transpose() * eta;
    }
}

PolePair PolePair::standard(int n) {
    LorentzVec p = LorentzVec::Zero(n), ps = LorentzVec::Zero(n);
    p[0] = p[1] = 1.0;
    ps[0] = 1.0;
    ps[1] = -1.0;
    return PolePair(p, ps);
}

PolePair PolePair::from(const LorentzVec& p, const LorentzVec& pStar) {
    if (p.size() != pStar.size()) throw DimensionMismatch(p.size(), pStar.size());
    if (p.size() < 3) throw PoleNormalization("pole vectors need at least three coordinates");
    if (std::abs(inner(p, p)) > kPoleTol || std::abs(inner(pStar, pStar)) > kPoleTol ||
        std::abs(inner(p, pStar) + 2.0) > kPoleTol)
        throw PoleNormalization("poles must satisfy <p,p> = <p*,p*> = 0 and <p,p*> = -2");
    return PolePair(p, pStar);
}

PolePair PolePair::transformed(const Mat& lorentz) const {
    return PolePair(lorentz * p_, lorentz * pStar_);
}

CVec PolePair::embed(const CVec& flat) const {
    const int n = ambient_dim();
    if (flat.size() != n - 2) throw DimensionMismatch(flat.size(), n - 2);
    CVec full = CVec::Zero(n);
    full.tail(n - 2) = flat;
    return adapted_.cast<cplx>() * full;
}

CVec PolePair::flatten(const CVec& ambient) const {
    const int n = ambient_dim();
    if (ambient.size() != n) throw DimensionMismatch(ambient.size(), n);
    return (adaptedInv_.cast<cplx>() * ambient).tail(n - 2);
}

Vec PolePair::embed(const Vec& flat) const { return embed(CVec(flat.cast<cplx>())).real(); }
Vec PolePair::flatten(const Vec& ambient) const { return flatten(CVec(ambient.cast<cplx>())).real(); }

CLorentzVec project_complex(const CLorentzVec& xi, const PolePair& poles, double tol) {
    const CVec p = poles.p().cast<cplx>();
    const CVec ps = poles.p_star().cast<cplx>();
    const cplx xp = cinner(xi, p);
    if (std::abs(xp) <= tol * xi.norm()) throw PoleOnSphere(std::abs(xp));
    const cplx xps = cinner(xi, ps);
    CVec x = (-1.0 / (2.0 * xp)) * (xp * ps + xps * p + 2.0 * xi);
    // remove residual pole components: <p,p*> = -2
    x += (cinner(x, ps) / 2.0) * p + (cinner(x, p) / 2.0) * ps;
    return x;
}

CLorentzVec lift_complex(const CLorentzVec& x, const PolePair& poles, double tol) {
    const CVec p = poles.p().cast<cplx>();
    const CVec ps = poles.p_star().cast<cplx>();
    const double bound = tol * (1.0 + x.norm());
    if (std::abs(cinner(x, p)) > bound || std::abs(cinner(x, ps)) > bound)
        throw PoleNormalization("X must be orthogonal to both poles");
    return ps + cinner(x, x) * p + 2.0 * x;
}

namespace {

Vec standard_pole(Eigen::Index n) { return Vec::Unit(n, 0); }

// Householder reflection exchanging `pole` and e0 (identity when equal).
Mat pole_reflection(const Vec& pole) {
    const auto n = pole.size();
    Vec w = pole - Vec::Unit(n, 0);
    const double nw = w.squaredNorm();
    if (nw < 1e-30) return Mat::Identity(n, n);
    return Mat::Identity(n, n) - 2.0 * w * w.transpose() / nw;
}

}  // namespace

Vec project_classical(const Vec& x, const Vec& pole) {
    if (x.size() != pole.size()) throw DimensionMismatch(x.size(), pole.size());
    const Vec y = pole_reflection(pole) * x;
    const double denom = 1.0 - y[0];
    if (std::abs(denom) < 1e-14) throw PoleOnSphere(std::abs(denom));
    return y.tail(y.size() - 1) / denom;
}

Vec project_classical(const Vec& x) { return project_classical(x, standard_pole(x.size())); }

Vec unproject_classical(const Vec& y, const Vec& pole) {
    if (y.size() + 1 != pole.size()) throw DimensionMismatch(y.size() + 1, pole.size());
    const double r2 = y.squaredNorm();
    Vec x(y.size() + 1);
    x[0] = (r2 - 1.0) / (r2 + 1.0);
    x.tail(y.size()) = 2.0 * y / (r2 + 1.0);
    return pole_reflection(pole) * x;
}

Vec unproject_classical(const Vec& y) { return unproject_classical(y, standard_pole(y.size() + 1)); }

}  // namespace wintgen
