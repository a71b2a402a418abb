#include "wintgen/quadric.hpp"

#include <algorithm>
#include <cmath>

#include "wintgen/errors.hpp"

namespace wintgen {

const char* to_string(QuadricClass c) {
    switch (c) {
        case QuadricClass::LightconePoint: return "lightcone";
        case QuadricClass::QPlusPoint: return "qplus";
        case QuadricClass::Invalid: return "invalid";
    }
    return "invalid";
}

QuadricClass classify(const CLorentzVec& lift, double tol) {
    const double s = lift.squaredNorm();
    if (s == 0.0) throw ZeroVector("cannot classify the zero vector");
    const double iso = std::abs(cinner(lift, lift)) / s;
    const double herm = cinner(lift, lift.conjugate()).real() / s;
    if (iso > tol) return QuadricClass::Invalid;
    if (herm > tol) return QuadricClass::QPlusPoint;
    if (std::abs(herm) <= tol) return QuadricClass::LightconePoint;
    return QuadricClass::Invalid;
}

CVec horizontal(const CVec& v, const CVec& xi) {
    const CVec xb = xi.conjugate();
    return v - (cinner(v, xb) / cinner(xi, xb)) * xi;
}

double hermitian_metric(const CVec& xi, const CVec& dxi, double tol) {
    const double norm = cinner(xi, xi.conjugate()).real();
    if (norm <= tol * xi.squaredNorm()) throw NotInQuadric("<xi, conj xi> is not positive");
    const CVec w = horizontal(dxi, xi);
    return cinner(w, w.conjugate()).real() / norm;
}

double hermitian_metric(const CurveJet& jet, double tol) { return hermitian_metric(jet.value, jet.dz, tol); }

IsotropyReport certify_point(const CurveJet& jet, double tol) {
    IsotropyReport r{};
    r.z = jet.z;
    r.cls = classify(jet.value, tol);
    if (r.cls != QuadricClass::QPlusPoint) throw NotInQuadric("base point is not in Q_+");
    const CVec xb = jet.value.conjugate();
    const cplx norm = cinner(jet.value, xb);
    r.lambdaCoeff = cinner(jet.dzbar, xb) / norm;

    const double dzNorm = jet.dz.norm();
    const CVec w = horizontal(jet.dz, jet.value);
    const double wNormSq = cinner(w, w.conjugate()).real();
    if (dzNorm == 0.0 || wNormSq <= 1e-24 * jet.dz.squaredNorm() || wNormSq == 0.0)
        throw NotInQuadric("curve is not immersed at this point (horizontal xi_z vanishes)");
    r.holoResidual = (jet.dzbar - r.lambdaCoeff * jet.value).norm() / dzNorm;
    r.isoResidual = std::abs(cinner(w, w)) / wNormSq;
    r.hermitianNormSq = wNormSq / norm.real();
    return r;
}

std::vector<IsotropyReport> certify_isotropic_holomorphic(const std::vector<CurveJet>& jets, double tol) {
    std::vector<IsotropyReport> out;
    out.reserve(jets.size());
    for (const auto& j : jets) out.push_back(certify_point(j, tol));
    return out;
}

double projective_distance(const CVec& a, const CVec& b) {
    if (a.size() != b.size()) throw DimensionMismatch(a.size(), b.size());
    const double na = a.norm(), nb = b.squaredNorm();
    if (na == 0.0 || nb == 0.0) throw ZeroVector("projective distance of a zero vector");
    // sine of the angle, from the residual of projecting a onto b
    const CVec residual = a - (b.dot(a) / nb) * b;
    return residual.norm() / na;
}

double sphere_distance(const CVec& a, const CVec& b) {
    return std::min(projective_distance(a, b), projective_distance(a, CVec(b.conjugate())));
}

double mu_squared(int m) { return (m - 1.0) / (4.0 * m); }

GaussCheckReport forward_gauss_check(const GaussCheckInput& in, double tol) {
    if (static_cast<int>(in.dxiAdapted.size()) < in.m || in.m < 2)
        throw Error("missing adapted frame for the forward Gauss-map check");
    const double norm = cinner(in.xi, in.xi.conjugate()).real();
    if (norm <= tol * in.xi.squaredNorm()) throw NotInQuadric("<xi, conj xi> is not positive");

    std::vector<CVec> hor;
    for (const auto& d : in.dxiAdapted) hor.push_back(horizontal(d, in.xi));

    GaussCheckReport r;
    const double scale = std::max(hor[0].norm(), hor[1].norm());
    for (int a = 2; a < in.m; ++a) r.fiberResidual = std::max(r.fiberResidual, hor[a].norm() / scale);

    const double hScale = cinner(hor[0], hor[0].conjugate()).real();
    for (int i = 0; i < 2; ++i)
        for (int j = i; j < 2; ++j)
            r.isotropyResidual = std::max(r.isotropyResidual, std::abs(cinner(hor[i], hor[j])) / hScale);

    const double plus = (hor[0] - cplx(0, 1) * hor[1]).norm();
    const double minus = (hor[0] + cplx(0, 1) * hor[1]).norm();
    r.holomorphyResidual = std::min(plus, minus) / scale;

    const double target = mu_squared(in.m) * in.rho * in.rho;
    for (int i = 0; i < 2; ++i) {
        const double h = cinner(hor[i], hor[i].conjugate()).real() / norm;
        if (i == 0) r.submersionRatio = h / target;
        r.submersionResidual = std::max(r.submersionResidual, std::abs(h - target) / target);
    }
    return r;
}

}  // namespace wintgen
