#include <doctest.h>

#include <cmath>

#include "support.hpp"
#include "wintgen/errors.hpp"
#include "wintgen/quadric.hpp"

using namespace testing;

namespace {

// h = <xi_z, conj xi_z> / <xi, conj xi> - |<xi_z, conj xi>|^2 / <xi, conj xi>^2
double hermitian_oracle(const CurveJet& j) {
    const double n = lorentz(j.value, CVec(j.value.conjugate())).real();
    const double a = lorentz(j.dz, CVec(j.dz.conjugate())).real();
    const cplx b = lorentz(j.dz, CVec(j.value.conjugate()));
    return a / n - std::norm(b) / (n * n);
}

PolyCurve scaled(const PolyCurve& c, const Poly& lambda) {
    std::vector<Poly> comps;
    for (const auto& p : c.components()) comps.push_back(lambda * p);
    return PolyCurve(comps);
}

PolyCurve shifted(const PolyCurve& c, const Vec& dir, double eps) {
    std::vector<Poly> comps = c.components();
    for (int k = 0; k < c.dimension(); ++k) comps[k] = comps[k] + Poly::from_doubles({eps * dir[k]});
    return PolyCurve(comps);
}

double max_iso(const PolyCurve& xi) {
    double worst = 0;
    for (int i = 1; i < 8; ++i)
        for (int j = 1; j < 8; ++j)
            // loose classification tolerance: the perturbed lift leaves the quadric by O(eps)
            worst = std::max(worst, certify_point(xi.jet({0.2 + 0.05 * i, 0.1 + 0.05 * j}, 2), 1e-2).isoResidual);
    return worst;
}

}  // namespace

TEST_CASE("classification examples") {
    CVec p = CVec::Zero(7);
    p[0] = p[1] = 1;
    CHECK(classify(p) == QuadricClass::LightconePoint);
    Rng rng(31);
    const auto [x1, x2] = random_spacelike_pair(7, rng);
    CHECK(classify(x1.cast<cplx>() - cplx(0, 1) * x2.cast<cplx>()) == QuadricClass::QPlusPoint);
    CVec s = CVec::Zero(7);
    s[1] = 1;
    CHECK(classify(s) == QuadricClass::Invalid);
    CHECK_THROWS_AS(classify(CVec::Zero(7)), ZeroVector);
    CHECK(std::string(to_string(QuadricClass::QPlusPoint)) != to_string(QuadricClass::Invalid));
}

TEST_CASE("property: classification is projective") {
    Rng rng(32);
    const PolyCurve xi = lifted("enneper5");
    for (int t = 0; t < 100; ++t) {
        const auto [x1, x2] = random_spacelike_pair(7, rng);
        const CVec q = x1.cast<cplx>() - cplx(0, 1) * x2.cast<cplx>();
        const cplx c = random_cplx(rng);
        CHECK(classify(c * q) == QuadricClass::QPlusPoint);
        const CVec e = xi.eval({0.2 + 0.004 * t, 0.3});
        CHECK(classify(c * e) == classify(e));
        CVec l = CVec::Zero(7);
        l.tail(6) = random_vec(6, rng).normalized().cast<cplx>();
        l[0] = 1;
        CHECK(classify(c * l) == QuadricClass::LightconePoint);
    }
}

TEST_CASE("Hermitian metric examples") {
    const PolyCurve xi = lifted("enneper5");
    const CurveJet j = xi.jet({0.3, 0.2}, 1);
    const double h = hermitian_metric(j);
    CHECK(h > 0);
    CHECK(std::abs(h - hermitian_oracle(j)) <= 1e-12 * h);

    CurveJet k = j;
    k.value *= cplx(2, 1);
    k.dz *= cplx(2, 1);
    CHECK(std::abs(hermitian_metric(k) - h) <= 1e-8 * h);

    CurveJet par = j;
    par.dz = cplx(0.3, -1.2) * j.value;
    CHECK(std::abs(hermitian_metric(par)) <= 1e-12 * h);

    std::vector<Poly> constant(7);
    constant[1] = Poly::from_doubles({1});
    constant[2] = Poly::from_doubles({{0, -1}});
    CHECK(hermitian_metric(PolyCurve(constant).jet({0.1, 0.1}, 1)) == 0);
}

TEST_CASE("property: Hermitian metric is invariant under holomorphic rescaling") {
    Rng rng(33);
    const PolyCurve xi = lifted("twisted5");
    for (int t = 0; t < 50; ++t) {
        const cplx z = 0.4 * random_cplx(rng);
        const cplx c = random_cplx(rng);
        const CurveJet j = xi.jet(z, 1);
        CurveJet k = j;
        k.value *= c;
        k.dz *= c;
        const double h = hermitian_metric(j);
        CHECK(std::abs(hermitian_metric(k) - h) <= 1e-10 * h);
        // lambda(z) = 1 + z changes the jet by lambda' xi, which is vertical
        const Poly lambda = Poly::from_doubles({1, 1});
        if (std::abs(1.0 + z) > 0.1)
            CHECK(std::abs(hermitian_metric(scaled(xi, lambda).jet(z, 1)) - h) <= 1e-9 * h);
    }
}

TEST_CASE("certification of generated curves") {
    const PolyCurve xi = lifted("enneper5");
    std::vector<CurveJet> jets;
    for (int i = 0; i < 9; ++i)
        for (int j = 0; j < 9; ++j) jets.push_back(xi.jet({0.2 + 0.05 * i, 0.1 + 0.05 * j}, 2));
    for (const auto& r : certify_isotropic_holomorphic(jets)) {
        CHECK(r.holoResidual == 0);
        CHECK(r.isoResidual < 1e-12);
        CHECK(r.cls == QuadricClass::QPlusPoint);
        CHECK(r.hermitianNormSq > 0);
    }
}

TEST_CASE("property: random generated curves certify at machine level") {
    Rng rng(34);
    for (int t = 0; t < 30; ++t) {
        const WeierstrassData d = random_weierstrass(3, 3, rng);
        const PolyCurve xi = lift_to_quadric(weierstrass_isotropic(d).x, PolePair::standard(7));
        for (int s = 0; s < 5; ++s) {
            const CurveJet j = xi.jet(0.5 * random_cplx(rng), 2);
            try {
                const IsotropyReport r = certify_point(j);
                CHECK(r.holoResidual == 0);
                CHECK(r.isoResidual <= 1e-12);
            } catch (const NotInQuadric&) {
                // branch points of the datum (X_z = 0) are not immersed
            }
        }
    }
}

TEST_CASE("isotropy detector responds to a perturbation") {
    const PolyCurve xi = lifted("enneper5");
    Vec dir = Vec::Zero(7);
    dir[2] = 0.6;
    dir[4] = 0.8;
    const double r3 = max_iso(shifted(xi, dir, 1e-3));
    const double r4 = max_iso(shifted(xi, dir, 1e-4));
    CHECK(r3 > 1e-4);
    // measured log-log slope of the detector
    const double slope = std::log10(r3 / r4);
    CHECK(slope > 0.8);
    CHECK(slope < 1.2);
}

TEST_CASE("forward Gauss check on a synthetic ideal sample") {
    const PolyCurve xi = lifted("enneper5");
    const CurveJet j = xi.jet({0.4, 0.3}, 1);
    const double h = hermitian_metric(j);
    const double mu2 = mu_squared(3);
    CHECK(mu2 == doctest::Approx(1.0 / 6).epsilon(1e-15));

    GaussCheckInput in;
    in.m = 3;
    in.xi = j.value;
    // dxi(E_1) = xi_z, dxi(E_2) = i xi_z, fiber direction vertical
    in.dxiAdapted = {j.dz, cplx(0, 1) * j.dz, cplx(0.2, 0.1) * j.value};
    in.rho = std::sqrt(h / mu2);
    const GaussCheckReport r = forward_gauss_check(in);
    CHECK(r.fiberResidual < 1e-12);
    CHECK(r.isotropyResidual < 1e-12);
    CHECK(r.holomorphyResidual < 1e-12);
    CHECK(r.submersionResidual < 1e-12);
    CHECK(r.submersionRatio == doctest::Approx(1).epsilon(1e-12));

    GaussCheckInput broken = in;
    broken.dxiAdapted[2] = 0.5 * j.dz;
    CHECK(forward_gauss_check(broken).fiberResidual > 0.1);
    broken = in;
    broken.dxiAdapted[1] = j.dz;
    CHECK(forward_gauss_check(broken).holomorphyResidual > 0.1);
    broken = in;
    broken.rho *= 1.1;
    CHECK(forward_gauss_check(broken).submersionResidual > 0.1);
    broken = in;
    broken.dxiAdapted.pop_back();
    CHECK_THROWS_AS(forward_gauss_check(broken), Error);
}

TEST_CASE("projective and sphere distances") {
    Rng rng(35);
    const CVec a = random_cvec(7, rng);
    CHECK(projective_distance(a, cplx(0.3, -2) * a) < 1e-14);
    CVec e1 = CVec::Zero(7), e2 = CVec::Zero(7);
    e1[1] = 1;
    e2[2] = 1;
    CHECK(projective_distance(e1, e2) == doctest::Approx(1));
    CHECK(projective_distance(a, a.conjugate()) > 1e-3);
    CHECK(sphere_distance(a, a.conjugate()) < 1e-14);
}
