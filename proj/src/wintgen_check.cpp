#include "wintgen/wintgen_check.hpp"

#include <algorithm>
#include <cmath>

#include "wintgen/errors.hpp"

namespace wintgen {

namespace {

constexpr double kTieRel = 1e-9;

// Spin-2 coordinate of the traceless part of a symmetric 2x2 block.
cplx spin2(const Mat& a) { return {(a(0, 0) - a(1, 1)) / 2, a(0, 1)}; }

}  // namespace

TracelessPair traceless_pair(const Mat& A1, const Mat& A2) {
    if (A1.rows() != A1.cols() || A2.rows() != A1.rows() || A2.cols() != A1.cols())
        throw DimensionMismatch(A1.rows(), A2.rows());
    const auto m = A1.rows();
    TracelessPair t;
    t.H1 = A1.trace() / static_cast<double>(m);
    t.H2 = A2.trace() / static_cast<double>(m);
    t.A1 = A1 - t.H1 * Mat::Identity(m, m);
    t.A2 = A2 - t.H2 * Mat::Identity(m, m);
    return t;
}

WintgenReport wintgen_defect(const Mat& At1, const Mat& At2) {
    const int m = static_cast<int>(At1.rows());
    if (m < 2 || At1.cols() != m || At2.rows() != m || At2.cols() != m) throw DimensionMismatch(At1.rows(), At2.rows());

    const double g11 = (At1 * At1).trace(), g22 = (At2 * At2).trace(), g12 = (At1 * At2).trace();
    const double total = g11 + g22;
    if (total == 0.0) throw UmbilicError("Wintgen defect of a zero pair");

    WintgenReport rep;
    rep.r1 = std::hypot(g11 - g22, 2 * g12);
    const double theta = rep.r1 <= kTieRel * total ? 0.0 : 0.5 * std::atan2(2 * g12, g11 - g22);
    rep.adaptedNormalAngle = theta;
    const double c = std::cos(theta), s = std::sin(theta);
    const Mat a1 = c * At1 + s * At2;
    const Mat a2 = -s * At1 + c * At2;

    const Mat sq = a1 * a1 + a2 * a2;
    Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (sq + sq.transpose()));
    const Vec& lam = es.eigenvalues();  // ascending
    rep.r2 = std::abs(lam[m - 1] - lam[m - 2]);
    for (int k = 0; k < m - 2; ++k) rep.r2 += std::abs(lam[k]);

    Mat p(m, 2);
    p.col(0) = es.eigenvectors().col(m - 1);
    p.col(1) = es.eigenvectors().col(m - 2);
    const Mat q = es.eigenvectors().leftCols(m - 2);

    const Mat b1 = p.transpose() * a1 * p, b2 = p.transpose() * a2 * p;
    rep.r3 = std::abs(b1.squaredNorm() - b2.squaredNorm()) + 2 * std::abs((b1.array() * b2.array()).sum());
    rep.r4 = (a1 * q).squaredNorm() + (a2 * q).squaredNorm();
    rep.defect = (rep.r1 + rep.r2 + rep.r3 + rep.r4) / total;
    rep.mu0 = std::sqrt((b1.squaredNorm() + b2.squaredNorm()) / 4);

    cplx w1 = spin2(b1), w2 = spin2(b2);
    if (std::imag(w1 * std::conj(w2)) < 0) {
        p.col(1) = -p.col(1);
        w1 = std::conj(w1);
        w2 = std::conj(w2);
    }
    const double alpha = std::abs(w2) > 0 ? std::arg(w2) / 2 : 0.0;
    const double ca = std::cos(alpha), sa = std::sin(alpha);
    rep.adaptedTangentFrame.resize(m, m);
    rep.adaptedTangentFrame.col(0) = ca * p.col(0) + sa * p.col(1);
    rep.adaptedTangentFrame.col(1) = -sa * p.col(0) + ca * p.col(1);
    if (m > 2) rep.adaptedTangentFrame.rightCols(m - 2) = q;
    if (m > 2 && rep.adaptedTangentFrame.determinant() < 0)
        rep.adaptedTangentFrame.col(m - 1) = -rep.adaptedTangentFrame.col(m - 1);
    rep.D = rep.adaptedTangentFrame.leftCols(2);
    return rep;
}

Mat to_adapted(const WintgenReport& report, const Mat& tensor) {
    if (tensor.rows() != 2) throw DimensionMismatch(tensor.rows(), 2);
    const double c = std::cos(report.adaptedNormalAngle), s = std::sin(report.adaptedNormalAngle);
    Mat rn(2, 2);
    rn << c, s, -s, c;
    return rn * tensor * report.adaptedTangentFrame;
}

std::pair<Mat, Mat> canonical_pair(int m, double mu) {
    Mat b1 = Mat::Zero(m, m), b2 = Mat::Zero(m, m);
    b1(0, 1) = b1(1, 0) = mu;
    b2(0, 0) = mu;
    b2(1, 1) = -mu;
    return {b1, b2};
}

std::pair<Mat, Mat> reconstruct(const WintgenReport& report, double H1, double H2) {
    const int m = static_cast<int>(report.adaptedTangentFrame.rows());
    const auto [c1, c2] = canonical_pair(m, report.mu0);
    const Mat& e = report.adaptedTangentFrame;
    const Mat a1 = e * c1 * e.transpose(), a2 = e * c2 * e.transpose();
    const double c = std::cos(report.adaptedNormalAngle), s = std::sin(report.adaptedNormalAngle);
    const Mat id = Mat::Identity(m, m);
    return {c * a1 - s * a2 + H1 * id, s * a1 + c * a2 + H2 * id};
}

DefectStatistics summarize(std::vector<double> values) {
    DefectStatistics st;
    st.count = values.size();
    if (values.empty()) return st;
    st.max = *std::max_element(values.begin(), values.end());
    std::sort(values.begin(), values.end());
    const std::size_t n = values.size();
    st.median = n % 2 ? values[n / 2] : 0.5 * (values[n / 2 - 1] + values[n / 2]);
    return st;
}

}  // namespace wintgen
