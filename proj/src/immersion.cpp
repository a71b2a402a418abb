#include "wintgen/immersion.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "wintgen/errors.hpp"

namespace wintgen {

ImmersionJet ImmersionJet::from_fd(const FdJet& jet) {
    ImmersionJet out;
    out.position = jet.value;
    out.first = jet.gradient;
    out.second = jet.hessian;
    return out;
}

Vec ExtrinsicData::mean_curvature_vector() const {
    Vec hv = Vec::Zero(normals.front().size());
    for (int r = 0; r < codim(); ++r) hv += meanCurvature[r] * normals[r];
    return hv;
}

Mat ExtrinsicData::to_frame(const Mat& coordGradient) const {
    const Mat t = cholesky.triangularView<Eigen::Lower>().solve(coordGradient.transpose());
    return t.transpose();
}

double relative_rank_gap(const Mat& first) {
    Eigen::JacobiSVD<Mat> svd(first);
    const Vec& s = svd.singularValues();
    if (s.size() == 0 || s[0] == 0.0) return 0.0;
    return s[s.size() - 1] / s[0];
}

int numerical_rank(const Mat& first, double relTol) {
    Eigen::JacobiSVD<Mat> svd(first);
    const Vec& s = svd.singularValues();
    if (s.size() == 0 || s[0] == 0.0) return 0;
    return static_cast<int>(std::count_if(s.data(), s.data() + s.size(), [&](double v) { return v > relTol * s[0]; }));
}

ExtrinsicData fundamental_forms(const ImmersionJet& jet, Target target, const std::vector<Vec>* seedNormals,
                                double rankTol) {
    const int n = static_cast<int>(jet.position.size());
    const int m = jet.dim();
    if (jet.first.rows() != n) throw DimensionMismatch(jet.first.rows(), n);
    if (static_cast<int>(jet.second.size()) != m) throw DimensionMismatch(jet.second.size(), m);
    if (relative_rank_gap(jet.first) <= rankTol) throw RankDeficient("first derivative is rank deficient");

    ExtrinsicData d;
    d.metric = jet.first.transpose() * jet.first;
    Eigen::LLT<Mat> llt(d.metric);
    if (llt.info() != Eigen::Success) throw RankDeficient("induced metric is not positive definite");
    d.cholesky = llt.matrixL();
    d.tangentFrame = d.to_frame(jet.first);

    Mat constraints(n, m + (target == Target::Sphere ? 1 : 0));
    constraints.leftCols(m) = jet.first;
    if (target == Target::Sphere) constraints.col(m) = jet.position;
    const int codim = n - static_cast<int>(constraints.cols());
    if (codim < 1) throw DimensionMismatch(n, constraints.cols());
    Eigen::HouseholderQR<Mat> qr(constraints);
    const Mat q = qr.householderQ() * Mat::Identity(n, constraints.cols());
    auto project = [&](const Vec& v) {
        Vec w = v - q * (q.transpose() * v);
        return Vec(w - q * (q.transpose() * w));
    };
    auto accept = [&](Vec v) {
        for (int pass = 0; pass < 2; ++pass)
            for (const auto& e : d.normals) v -= e.dot(v) * e;
        return v;
    };

    if (seedNormals != nullptr) {
        for (const auto& s : *seedNormals) {
            if (static_cast<int>(d.normals.size()) == codim) break;
            Vec v = accept(project(s));
            if (v.norm() < 0.1 * s.norm()) {
                d.normals.clear();
                break;
            }
            d.normals.push_back(v.normalized());
        }
    }
    if (static_cast<int>(d.normals.size()) != codim) {
        d.normals.clear();
        std::vector<Vec> cand;
        for (int k = 0; k < n; ++k) cand.push_back(project(Vec::Unit(n, k)));
        std::vector<int> order(n);
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(),
                         [&](int a, int b) { return cand[a].norm() > cand[b].norm(); });
        for (int k : order) {
            if (static_cast<int>(d.normals.size()) == codim) break;
            Vec v = accept(cand[k]);
            if (v.norm() < 1e-6) continue;
            d.normals.push_back(v.normalized());
        }
        if (static_cast<int>(d.normals.size()) != codim) throw RankDeficient("normal frame completion failed");
    }

    d.meanCurvature.resize(codim);
    for (int r = 0; r < codim; ++r) {
        Mat hc(m, m);
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j) hc(i, j) = d.normals[r].dot(jet.second[i].col(j));
        hc = 0.5 * (hc + hc.transpose());
        const Mat half = d.cholesky.triangularView<Eigen::Lower>().solve(hc);
        Mat hr = d.cholesky.triangularView<Eigen::Lower>().solve(half.transpose());
        hr = 0.5 * (hr + hr.transpose());
        d.meanCurvature[r] = hr.trace() / m;
        d.h.push_back(std::move(hr));
    }
    return d;
}

std::vector<Mat> shape_operators(const ExtrinsicData& data) { return data.h; }

HarmonicityReport harmonicity_residual(const ImmersionJet& surface) {
    if (surface.dim() != 2) throw DimensionMismatch(surface.dim(), 2);
    const Vec xu = surface.first.col(0), xv = surface.first.col(1);
    const double e = xu.squaredNorm(), g = xv.squaredNorm();
    const double norm = e + g;
    if (norm == 0.0) throw RankDeficient("surface is not immersed");
    HarmonicityReport r;
    r.harmonicity = (surface.second[0].col(0) + surface.second[1].col(1)).norm() / std::sqrt(norm);
    r.conformality = (std::abs(e - g) + std::abs(xu.dot(xv))) / norm;
    return r;
}

HarmonicityReport harmonicity_residual(const GridField& surface, const std::vector<int>& index) {
    if (surface.axes() != 2) throw DimensionMismatch(surface.axes(), 2);
    return harmonicity_residual(ImmersionJet::from_fd(fd_jet(surface, index, {0, 1})));
}

}  // namespace wintgen
