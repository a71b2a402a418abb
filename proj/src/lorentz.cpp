#include "wintgen/lorentz.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "wintgen/errors.hpp"

namespace wintgen {

double inner(const LorentzVec& u, const LorentzVec& v) {
    if (u.size() != v.size()) throw DimensionMismatch(u.size(), v.size());
    if (u.size() == 0) return 0.0;
    return -u[0] * v[0] + u.tail(u.size() - 1).dot(v.tail(v.size() - 1));
}

cplx cinner(const CLorentzVec& u, const CLorentzVec& v) {
    if (u.size() != v.size()) throw DimensionMismatch(u.size(), v.size());
    if (u.size() == 0) return 0.0;
    // bilinear: no conjugation (Eigen's dot() conjugates its first argument)
    cplx s = -u[0] * v[0];
    for (Eigen::Index k = 1; k < u.size(); ++k) s += u[k] * v[k];
    return s;
}

Mat minkowski(int n) {
    Mat eta = Mat::Identity(n, n);
    eta(0, 0) = -1.0;
    return eta;
}

Mat gram(std::span<const LorentzVec> vectors) {
    const auto k = static_cast<Eigen::Index>(vectors.size());
    Mat g(k, k);
    for (Eigen::Index i = 0; i < k; ++i)
        for (Eigen::Index j = i; j < k; ++j) g(i, j) = g(j, i) = inner(vectors[i], vectors[j]);
    return g;
}

Signature subspace_signature(std::span<const LorentzVec> vectors, double rankRel) {
    Signature sig;
    if (vectors.empty()) return sig;
    Eigen::SelfAdjointEigenSolver<Mat> es(gram(vectors), Eigen::EigenvaluesOnly);
    const Vec& ev = es.eigenvalues();
    const double scale = ev.cwiseAbs().maxCoeff();
    for (Eigen::Index i = 0; i < ev.size(); ++i) {
        if (scale == 0.0 || std::abs(ev[i]) <= rankRel * scale)
            ++sig.null;
        else if (ev[i] < 0)
            ++sig.neg;
        else
            ++sig.pos;
    }
    return sig;
}

namespace {

// Orthogonal projector onto span(basis)^perp with respect to the Lorentz form.
class ComplementProjector {
public:
    ComplementProjector(std::span<const LorentzVec> basis, const FrameTolerances& tol) {
        const auto n = basis.front().size();
        const auto k = static_cast<Eigen::Index>(basis.size());
        b_.resize(n, k);
        for (Eigen::Index j = 0; j < k; ++j) {
            if (basis[j].size() != n) throw DimensionMismatch(n, basis[j].size());
            b_.col(j) = basis[j];
        }
        const Mat g = gram(basis);
        Eigen::SelfAdjointEigenSolver<Mat> es(g);
        const Vec& ev = es.eigenvalues();
        const double scale = ev.cwiseAbs().maxCoeff();
        if (scale == 0.0 || ev.cwiseAbs().minCoeff() <= tol.rankRel * scale)
            throw DegenerateSpan("basis spans a degenerate subspace (Gram condition below threshold)");
        basisSig_ = subspace_signature(basis, tol.rankRel);
        etaB_ = minkowski(static_cast<int>(n)) * b_;
        gInv_ = es.eigenvectors() * ev.cwiseInverse().asDiagonal() * es.eigenvectors().transpose();
    }

    LorentzVec operator()(const LorentzVec& v) const { return v - b_ * (gInv_ * (etaB_.transpose() * v)); }

    Signature basisSignature() const { return basisSig_; }
    Eigen::Index ambient() const { return b_.rows(); }

private:
    Mat b_, etaB_, gInv_;
    Signature basisSig_;
};

void normalize_sign(LorentzVec& v, bool timelike) {
    if (timelike) {
        if (v[0] < 0) v = -v;
        return;
    }
    Eigen::Index idx = 0;
    v.cwiseAbs().maxCoeff(&idx);
    if (v[idx] < 0) v = -v;
}

// One Gram-Schmidt sweep of v against already accepted pseudo-unit vectors.
void orthogonalize(LorentzVec& v, const std::vector<LorentzVec>& accepted) {
    for (const auto& u : accepted) v -= (inner(v, u) / inner(u, u)) * u;
}

}  // namespace

PseudoFrame orthonormal_complement(std::span<const LorentzVec> basis, Signature expected,
                                   const PseudoFrame* seed, const FrameTolerances& tol) {
    if (basis.empty()) throw DegenerateSpan("empty basis");
    ComplementProjector project(basis, tol);
    const auto n = project.ambient();
    const int dim = static_cast<int>(n) - static_cast<int>(basis.size());
    const Signature bs = project.basisSignature();
    const Signature actual{1 - bs.neg, static_cast<int>(n) - 1 - bs.pos, 0};
    if (expected.neg + expected.pos != dim || actual.neg != expected.neg || actual.pos != expected.pos)
        throw SignatureMismatch("complement signature (" + std::to_string(actual.neg) + "," +
                                std::to_string(actual.pos) + ") differs from expected (" +
                                std::to_string(expected.neg) + "," + std::to_string(expected.pos) + ")");

    PseudoFrame out;
    out.neg = expected.neg;
    out.pos = expected.pos;

    if (seed != nullptr) {
        if (static_cast<int>(seed->size()) != dim) throw DimensionMismatch(seed->size(), dim);
        for (int j = 0; j < dim; ++j) {
            LorentzVec v = project((*seed)[j]);
            orthogonalize(v, out.vectors);
            v = project(v);
            orthogonalize(v, out.vectors);
            const double s = inner(v, v);
            const bool wantTimelike = j < expected.neg;
            if ((wantTimelike && s >= 0) || (!wantTimelike && s <= 0))
                throw SignatureMismatch("seeded frame lost its causal character at vector " +
                                        std::to_string(j));
            v /= std::sqrt(std::abs(s));
            if (wantTimelike && v[0] < 0) v = -v;
            out.vectors.push_back(std::move(v));
        }
        return out;
    }

    // Project the canonical basis and diagonalize the Gram matrix of the projections.
    Mat c(n, n);
    for (Eigen::Index j = 0; j < n; ++j) c.col(j) = project(LorentzVec::Unit(n, j));
    const Mat m = c.transpose() * minkowski(static_cast<int>(n)) * c;
    Eigen::SelfAdjointEigenSolver<Mat> es(m);
    const Vec& ev = es.eigenvalues();
    const double scale = ev.cwiseAbs().maxCoeff();

    std::vector<Eigen::Index> order;
    for (Eigen::Index i = 0; i < ev.size(); ++i)
        if (std::abs(ev[i]) > tol.rankRel * scale) order.push_back(i);
    if (static_cast<int>(order.size()) != dim)
        throw DegenerateSpan("complement projections have unexpected rank");
    std::stable_sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) {
        const bool ta = ev[a] < 0, tb = ev[b] < 0;
        if (ta != tb) return ta;
        return std::abs(ev[a]) > std::abs(ev[b]);
    });

    for (int j = 0; j < dim; ++j) {
        const auto i = order[j];
        LorentzVec v = c * es.eigenvectors().col(i);
        // clean-up pass against rounding
        v = project(v);
        orthogonalize(v, out.vectors);
        const double s = inner(v, v);
        v /= std::sqrt(std::abs(s));
        normalize_sign(v, j < expected.neg);
        out.vectors.push_back(std::move(v));
    }
    return out;
}

double frame_defect(const PseudoFrame& frame) {
    const Mat g = gram(frame.vectors);
    double worst = 0.0;
    for (Eigen::Index i = 0; i < g.rows(); ++i)
        for (Eigen::Index j = 0; j < g.cols(); ++j) {
            const double target = (i == j) ? (i < frame.neg ? -1.0 : 1.0) : 0.0;
            worst = std::max(worst, std::abs(g(i, j) - target));
        }
    return worst;
}

}  // namespace wintgen
