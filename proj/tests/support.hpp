#pragma once

// Generators and independent oracles shared by the test binaries.

#include <cmath>
#include <initializer_list>
#include <random>
#include <vector>

#include "wintgen/curve_gen.hpp"
#include "wintgen/envelope.hpp"
#include "wintgen/immersion.hpp"
#include "wintgen/lorentz.hpp"

namespace testing {

using namespace wintgen;
using Rng = std::mt19937_64;

inline Vec random_vec(int n, Rng& rng) {
    std::normal_distribution<double> d(0.0, 1.0);
    Vec v(n);
    for (int i = 0; i < n; ++i) v[i] = d(rng);
    return v;
}

inline CVec random_cvec(int n, Rng& rng) {
    return random_vec(n, rng).cast<cplx>() + cplx(0, 1) * random_vec(n, rng).cast<cplx>();
}

inline cplx random_cplx(Rng& rng) {
    std::normal_distribution<double> d(0.0, 1.0);
    return {d(rng), d(rng)};
}

inline Mat random_orthogonal(int m, Rng& rng, bool special = true) {
    Mat g(m, m);
    for (int j = 0; j < m; ++j) g.col(j) = random_vec(m, rng);
    Eigen::HouseholderQR<Mat> qr(g);
    Mat q = qr.householderQ();
    if (special && q.determinant() < 0) q.col(0) = -q.col(0);
    return q;
}

inline Mat random_traceless(int m, Rng& rng) {
    Mat a(m, m);
    for (int j = 0; j < m; ++j) a.col(j) = random_vec(m, rng);
    a = (a + a.transpose()) / 2;
    a -= (a.trace() / m) * Mat::Identity(m, m);
    return a;
}

inline Mat minkowski_metric(int n) {
    Mat eta = Mat::Identity(n, n);
    eta(0, 0) = -1;
    return eta;
}

// Lorentz product written out by hand.
inline double lorentz(const Vec& a, const Vec& b) {
    double s = -a[0] * b[0];
    for (Eigen::Index i = 1; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline cplx lorentz(const CVec& a, const CVec& b) {
    cplx s = -a[0] * b[0];
    for (Eigen::Index i = 1; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

// Polynomial with small Gaussian-integer coefficients, exact in binary.
inline Poly random_poly(int maxDegree, Rng& rng, bool nonzero = false) {
    std::uniform_int_distribution<int> deg(nonzero ? 0 : -1, maxDegree), c(-3, 3);
    const int d = deg(rng);
    std::vector<cplx> coeffs;
    for (int k = 0; k <= d; ++k) coeffs.emplace_back(c(rng), c(rng));
    if (nonzero && coeffs.back() == cplx(0, 0)) coeffs.back() = 1;
    return Poly::from_doubles(coeffs);
}

inline WeierstrassData random_weierstrass(int m, int maxDegree, Rng& rng) {
    WeierstrassData d;
    d.m = m;
    d.f = random_poly(maxDegree, rng, true);
    for (int k = 0; k < m; ++k) d.g.push_back(random_poly(maxDegree, rng));
    return d;
}

inline PolyCurve lifted(const std::string& name, const PolePair* poles = nullptr) {
    const WeierstrassData d = fixture(name);
    const PolePair p = poles ? *poles : PolePair::standard(d.m + 4);
    return lift_to_quadric(weierstrass_isotropic(d).x, p);
}

// Pair of orthonormal spacelike vectors in R^n_1 in general position.
template <class R>
std::pair<Vec, Vec> random_spacelike_pair(int n, R& rng) {
    const Mat t = random_lorentz(n, rng, 1.0);
    return {t.col(2), t.col(3)};
}

// Point of the light cone over the flat point y, normalized by <P, p> = -1:
// P = y + p*/2 + |y|^2 p / 2 (derived by hand from the flat chart).
inline Vec cone_point(const Vec& y, const PolePair& poles) {
    return poles.embed(y) + 0.5 * poles.p_star() + 0.5 * y.squaredNorm() * poles.p();
}

// Surface jet from hand-computed partial derivatives.
inline ImmersionJet surface_jet(const Vec& x, const Vec& xu, const Vec& xv, const Vec& xuu, const Vec& xuv,
                                const Vec& xvv) {
    ImmersionJet j;
    j.position = x;
    j.first.resize(x.size(), 2);
    j.first << xu, xv;
    j.second.assign(2, Mat(x.size(), 2));
    j.second[0] << xuu, xuv;
    j.second[1] << xuv, xvv;
    return j;
}

inline Vec vec_of(std::initializer_list<double> xs) {
    Vec v(static_cast<Eigen::Index>(xs.size()));
    Eigen::Index i = 0;
    for (double x : xs) v[i++] = x;
    return v;
}

// x(u, v) = (u, v, sin(u) cos(v) / 2, u v / 3) in R^4, a generic codimension-2 surface.
inline ImmersionJet codim_two_jet(double u, double v) {
    const double su = std::sin(u), cu = std::cos(u), sv = std::sin(v), cv = std::cos(v);
    return surface_jet(vec_of({u, v, su * cv / 2, u * v / 3}), vec_of({1, 0, cu * cv / 2, v / 3}),
                       vec_of({0, 1, -su * sv / 2, u / 3}), vec_of({0, 0, -su * cv / 2, 0}),
                       vec_of({0, 0, -cu * sv / 2, 1.0 / 3}), vec_of({0, 0, -su * cv / 2, 0}));
}

}  // namespace testing
