#include <doctest.h>

#include <cmath>
#include <numbers>

#include "brute_force.hpp"
#include "support.hpp"
#include "wintgen/errors.hpp"
#include "wintgen/wintgen_check.hpp"

using namespace testing;

namespace {

struct Pair {
    Mat a1, a2;
    double mu = 0;
};

// Ideal pair seen in random orthonormal tangent and normal frames.
Pair random_ideal(int m, Rng& rng, bool withMean = false) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    Pair p;
    p.mu = 0.1 + 2 * unit(rng);
    const Mat q = random_orthogonal(m, rng, false);
    Mat c1 = Mat::Zero(m, m), c2 = Mat::Zero(m, m);
    c1(0, 1) = c1(1, 0) = p.mu;
    c2(0, 0) = p.mu;
    c2(1, 1) = -p.mu;
    const Mat b1 = q * c1 * q.transpose(), b2 = q * c2 * q.transpose();
    const double phi = 2 * std::numbers::pi * unit(rng);
    p.a1 = std::cos(phi) * b1 - std::sin(phi) * b2;
    p.a2 = std::sin(phi) * b1 + std::cos(phi) * b2;
    if (withMean) {
        p.a1 += random_vec(1, rng)[0] * Mat::Identity(m, m);
        p.a2 += random_vec(1, rng)[0] * Mat::Identity(m, m);
    }
    return p;
}

double max_abs(const Mat& a) { return a.cwiseAbs().maxCoeff(); }

}  // namespace

TEST_CASE("canonical pair is ideal") {
    const double mu = std::sqrt(1.0 / 6);
    const auto [c1, c2] = canonical_pair(3, mu);
    const WintgenReport r = wintgen_defect(c1, c2);
    CHECK(r.defect < 1e-15);
    CHECK(r.mu0 == doctest::Approx(mu).epsilon(1e-15));
    const auto [a1, a2] = reconstruct(r, 0, 0);
    CHECK(max_abs(a1 - c1) < 1e-15);
    CHECK(max_abs(a2 - c2) < 1e-15);
}

TEST_CASE("non-ideal examples") {
    Mat d = Mat::Zero(3, 3);
    d(0, 0) = 1;
    d(1, 1) = -1;
    const WintgenReport r = wintgen_defect(d, Mat::Zero(3, 3));
    CHECK(r.defect > 0.4);
    CHECK(r.defect == doctest::Approx(2).epsilon(1e-14));
    CHECK_THROWS_AS(wintgen_defect(Mat::Zero(3, 3), Mat::Zero(3, 3)), UmbilicError);
    CHECK_THROWS_AS(wintgen_defect(Mat::Zero(3, 3), Mat::Zero(2, 2)), DimensionMismatch);

    const TracelessPair t = traceless_pair(d + 2 * Mat::Identity(3, 3), -Mat::Identity(3, 3));
    CHECK(t.H1 == doctest::Approx(2));
    CHECK(t.H2 == doctest::Approx(-1));
    CHECK(max_abs(t.A1 - d) < 1e-15);
    CHECK(t.A2.norm() < 1e-15);
}

TEST_CASE("flat three-torus in S^5 is far from ideal") {
    // x = (r e^{i u_1}, r e^{i u_2}, r e^{i u_3}) with r^2 = 1/3
    const double r = 1 / std::sqrt(3.0);
    const Vec u = vec_of({0.3, 1.1, -0.7});
    ImmersionJet j;
    j.position = Vec::Zero(6);
    j.first = Mat::Zero(6, 3);
    j.second.assign(3, Mat::Zero(6, 3));
    for (int k = 0; k < 3; ++k) {
        j.position.segment(2 * k, 2) << r * std::cos(u[k]), r * std::sin(u[k]);
        j.first.col(k).segment(2 * k, 2) << -r * std::sin(u[k]), r * std::cos(u[k]);
        j.second[k].col(k).segment(2 * k, 2) = -j.position.segment(2 * k, 2);
    }
    const ExtrinsicData e = fundamental_forms(j, Target::Sphere);
    REQUIRE(e.codim() == 2);
    const auto a = shape_operators(e);
    const TracelessPair t = traceless_pair(a[0], a[1]);
    const WintgenReport rep = wintgen_defect(t.A1, t.A2);
    CHECK(rep.defect > 0.1);
    CHECK(rep.defect < 10);
}

TEST_CASE("property: ideal pairs in random frames") {
    Rng rng(81);
    for (int t = 0; t < 500; ++t) {
        const int m = 3 + t % 3;
        const Pair p = random_ideal(m, rng, true);
        const TracelessPair tp = traceless_pair(p.a1, p.a2);
        const WintgenReport r = wintgen_defect(tp.A1, tp.A2);
        CHECK(r.defect < 1e-12);
        CHECK(std::abs(r.mu0 - p.mu) < 1e-12 * p.mu);
        const auto [b1, b2] = reconstruct(r, tp.H1, tp.H2);
        CHECK(max_abs(b1 - p.a1) < 1e-8);
        CHECK(max_abs(b2 - p.a2) < 1e-8);

        // the adapted frames put the pair in normal form
        const Mat& e = r.adaptedTangentFrame;
        CHECK(max_abs(e.transpose() * e - Mat::Identity(m, m)) < 1e-12);
        CHECK(max_abs(r.D - e.leftCols(2)) == 0);
        const double c = std::cos(r.adaptedNormalAngle), s = std::sin(r.adaptedNormalAngle);
        const auto [c1, c2] = canonical_pair(m, r.mu0);
        CHECK(max_abs(e.transpose() * (c * tp.A1 + s * tp.A2) * e - c1) < 1e-10 * p.mu);
        CHECK(max_abs(e.transpose() * (-s * tp.A1 + c * tp.A2) * e - c2) < 1e-10 * p.mu);

        // a normal-by-tangent tensor is rotated into the adapted frames
        const Mat tensor = Mat::NullaryExpr(2, m, [&](Eigen::Index, Eigen::Index) { return random_vec(1, rng)[0]; });
        const Mat adapted = to_adapted(r, tensor);
        for (int i = 0; i < m; ++i) {
            CHECK(std::abs(adapted(0, i) - (c * tensor.row(0) + s * tensor.row(1)).dot(e.col(i))) < 1e-12 * (1 + tensor.norm()));
            CHECK(std::abs(adapted(1, i) - (-s * tensor.row(0) + c * tensor.row(1)).dot(e.col(i))) < 1e-12 * (1 + tensor.norm()));
        }
    }
}

TEST_CASE("property: defect is invariant under frame changes and scaling") {
    Rng rng(82);
    for (int t = 0; t < 300; ++t) {
        const int m = 2 + t % 4;
        const Mat a1 = random_traceless(m, rng), a2 = random_traceless(m, rng);
        const WintgenReport r = wintgen_defect(a1, a2);
        CHECK(r.defect >= 0);

        const Mat q = random_orthogonal(m, rng);
        const double phi = random_vec(1, rng)[0];
        const Mat b1 = q * a1 * q.transpose(), b2 = q * a2 * q.transpose();
        const WintgenReport rt = wintgen_defect(std::cos(phi) * b1 - std::sin(phi) * b2, std::sin(phi) * b1 + std::cos(phi) * b2);
        CHECK(std::abs(rt.defect - r.defect) < 1e-10 * (1 + r.defect));
        CHECK(std::abs(rt.mu0 - r.mu0) < 1e-10 * (1 + r.mu0));

        const double lambda = 0.01 + std::abs(random_vec(1, rng)[0]) * 10;
        const WintgenReport rs = wintgen_defect(lambda * a1, lambda * a2);
        CHECK(std::abs(rs.defect - r.defect) < 1e-10 * (1 + r.defect));
        CHECK(std::abs(rs.mu0 - lambda * r.mu0) < 1e-10 * lambda * (1 + r.mu0));
    }
}

TEST_CASE("brute-force rotation search agrees with the closed-form decision") {
    const RotationGridOracle oracle(6.0);
    Rng rng(83);
    for (int t = 0; t < 20; ++t) {
        const Pair p = random_ideal(3, rng);
        CHECK(oracle.relative_residual(p.a1, p.a2) < 0.01);
        CHECK(wintgen_defect(p.a1, p.a2).defect < 1e-8);
    }
    for (int t = 0; t < 20; ++t) {
        const Mat a1 = random_traceless(3, rng), a2 = random_traceless(3, rng);
        CHECK(oracle.relative_residual(a1, a2) > 0.01);
        CHECK(wintgen_defect(a1, a2).defect > 1e-8);
    }
    const auto [c1, c2] = canonical_pair(3, 0.7);
    CHECK(oracle.relative_residual(c1, c2) < 1e-12);
}

TEST_CASE("defect statistics") {
    CHECK(summarize({}).count == 0);
    const DefectStatistics odd = summarize({3, 1, 2});
    CHECK(odd.median == 2);
    CHECK(odd.max == 3);
    const DefectStatistics even = summarize({4, 1, 2, 3});
    CHECK(even.median == 2.5);
    CHECK(even.count == 4);
}
