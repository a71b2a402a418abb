#include "wintgen/moebius.hpp"

#include <algorithm>
#include <cmath>

#include "wintgen/errors.hpp"

namespace wintgen {

LorentzVec flat_light_cone(const Vec& x) {
    const double r2 = x.squaredNorm();
    LorentzVec l(x.size() + 2);
    l[0] = (1 + r2) / 2;
    l[1] = (1 - r2) / 2;
    l.tail(x.size()) = x;
    return l;
}

double traceless_norm_sq(const ExtrinsicData& data) {
    const int m = data.dim();
    double s = 0.0;
    for (int r = 0; r < data.codim(); ++r)
        s += (data.h[r] - data.meanCurvature[r] * Mat::Identity(m, m)).squaredNorm();
    return s;
}

CanonicalLift canonical_lift(const ExtrinsicData& data, const ImmersionJet& jet, Target target, double umbilicRel) {
    const int m = data.dim();
    if (m < 2) throw DimensionMismatch(m, 2);
    double full = 0.0;
    for (const auto& h : data.h) full += h.squaredNorm();
    const double tl = traceless_norm_sq(data);
    if (tl == 0.0 || std::sqrt(tl) <= umbilicRel * std::sqrt(full)) throw UmbilicError("umbilic point: II is proportional to I");

    CanonicalLift out;
    out.rho = std::sqrt(m / (m - 1.0) * tl);
    if (target == Target::Sphere) {
        out.Y.resize(jet.position.size() + 1);
        out.Y[0] = 1.0;
        out.Y.tail(jet.position.size()) = jet.position;
        out.Y *= out.rho;
    } else {
        out.Y = out.rho * flat_light_cone(jet.position);
    }
    return out;
}

std::vector<LorentzVec> mean_curvature_spheres(const ExtrinsicData& data, const ImmersionJet& jet, Target target) {
    const Vec& x = jet.position;
    const auto n = x.size();
    std::vector<LorentzVec> xi;
    for (int r = 0; r < data.codim(); ++r) {
        const double hr = data.meanCurvature[r];
        const Vec& nr = data.normals[r];
        LorentzVec v;
        if (target == Target::Sphere) {
            v.resize(n + 1);
            v[0] = hr;
            v.tail(n) = nr + hr * x;
        } else {
            v = hr * flat_light_cone(x);
            const double xn = x.dot(nr);
            v[0] += xn;
            v[1] -= xn;
            v.tail(n) += nr;
        }
        xi.push_back(std::move(v));
    }
    return xi;
}

MoebiusB moebius_B(const ExtrinsicData& data, double rho) {
    const int m = data.dim();
    MoebiusB out;
    double norm = 0.0;
    for (int r = 0; r < data.codim(); ++r) {
        Mat b = (data.h[r] - data.meanCurvature[r] * Mat::Identity(m, m)) / rho;
        out.traceResidual = std::max(out.traceResidual, std::abs(b.trace()));
        norm += b.squaredNorm();
        out.B.push_back(std::move(b));
    }
    out.normResidual = std::abs(norm - (m - 1.0) / m);
    return out;
}

Mat moebius_C(const ExtrinsicData& data, double rho, const Mat& dHvec, const Vec& dLogRho) {
    const int m = data.dim();
    if (dHvec.cols() != m) throw DimensionMismatch(dHvec.cols(), m);
    if (dLogRho.size() != m) throw DimensionMismatch(dLogRho.size(), m);
    const Mat dH = data.to_frame(dHvec);
    const Vec eLogRho = data.to_frame(Mat(dLogRho.transpose())).transpose();
    Mat c(data.codim(), m);
    for (int r = 0; r < data.codim(); ++r) {
        const Mat traceless = data.h[r] - data.meanCurvature[r] * Mat::Identity(m, m);
        const Vec hComma = dH.transpose() * data.normals[r];
        c.row(r) = (-(hComma + traceless * eLogRho) / (rho * rho)).transpose();
    }
    return c;
}

MoebiusData moebius_data(const ExtrinsicData& data, const ImmersionJet& jet, Target target, double umbilicRel) {
    MoebiusData md;
    const auto lift = canonical_lift(data, jet, target, umbilicRel);
    md.rho = lift.rho;
    md.Y = lift.Y;
    md.g = lift.rho * lift.rho * data.metric;
    md.xi = mean_curvature_spheres(data, jet, target);
    auto b = moebius_B(data, lift.rho);
    md.B = std::move(b.B);
    md.traceResidual = b.traceResidual;
    md.normResidual = b.normResidual;
    return md;
}

double sphere_frame_defect(const MoebiusData& md) {
    double d = 0.0;
    for (std::size_t r = 0; r < md.xi.size(); ++r) {
        d = std::max(d, std::abs(inner(md.xi[r], md.Y)) / md.rho);
        for (std::size_t s = 0; s < md.xi.size(); ++s)
            d = std::max(d, std::abs(inner(md.xi[r], md.xi[s]) - (r == s ? 1.0 : 0.0)));
    }
    return d;
}

}  // namespace wintgen
