#include <doctest.h>

#include <cmath>
#include <sstream>

#include "support.hpp"
#include "wintgen/errors.hpp"
#include "wintgen/fd.hpp"

using namespace testing;

TEST_CASE("jet of z^2 at 2") {
    const PolyCurve c({Poly::from_doubles({0, 0, 1})});
    const CurveJet j = c.jet({2, 0}, 2);
    CHECK(j.value[0] == cplx(4, 0));
    CHECK(j.dz[0] == cplx(4, 0));
    CHECK(j.dzz[0] == cplx(2, 0));
    CHECK(j.dzbar[0] == cplx(0, 0));
}

TEST_CASE("constant curve has vanishing derivatives") {
    const PolyCurve c({Poly::from_doubles({{1.5, -2}}), Poly::from_doubles({3})});
    const CurveJet j = c.jet({0.7, -0.2}, 2);
    CHECK(j.dz.norm() == 0);
    CHECK(j.dzz.norm() == 0);
    CHECK(j.value[0] == cplx(1.5, -2));
}

TEST_CASE("first Weierstrass component of ENNEPER5 at z = i") {
    const PolyCurve phi = weierstrass_isotropic(fixture("enneper5")).phi;
    CHECK(std::abs(phi.eval({0, 1})[0] - cplx(1, 0)) == 0);
}

TEST_CASE("antiderivatives") {
    CHECK(Poly::from_doubles({1}).antiderivative() == Poly::from_doubles({0, 1}));
    const Poly third = Poly::monomial(GaussRational(mpq_class(1, 3), mpq_class(0)), 3);
    CHECK(Poly::from_doubles({0, 0, 1}).antiderivative() == third);
}

TEST_CASE("property: derivative inverts antiderivative coefficientwise") {
    Rng rng(11);
    for (int t = 0; t < 200; ++t) {
        const Poly p = random_poly(6, rng);
        CHECK(p.antiderivative().derivative() == p);
        CHECK(p.antiderivative().coeff(0).is_zero());
    }
}

TEST_CASE("property: polynomial jets are exactly holomorphic and match Horner") {
    Rng rng(12);
    for (int t = 0; t < 100; ++t) {
        std::vector<Poly> comps;
        for (int k = 0; k < 4; ++k) comps.push_back(random_poly(5, rng));
        const PolyCurve c(comps);
        const cplx z = random_cplx(rng);
        const CurveJet j = c.jet(z, 2);
        CHECK(j.dzbar.norm() == 0);
        for (int k = 0; k < 4; ++k) {
            // independent evaluation from the exact coefficients
            cplx v = 0, d = 0, dd = 0;
            const auto coeffs = comps[k].to_complex();
            for (std::size_t n = 0; n < coeffs.size(); ++n) {
                const double nn = static_cast<double>(n);
                v += coeffs[n] * std::pow(z, nn);
                if (n >= 1) d += nn * coeffs[n] * std::pow(z, nn - 1);
                if (n >= 2) dd += nn * (nn - 1) * coeffs[n] * std::pow(z, nn - 2);
            }
            const double scale = 1 + std::pow(std::abs(z), 5) * 50;
            CHECK(std::abs(j.value[k] - v) < 1e-12 * scale);
            CHECK(std::abs(j.dz[k] - d) < 1e-12 * scale);
            CHECK(std::abs(j.dzz[k] - dd) < 1e-12 * scale);
        }
    }
}

namespace {

template <class F>
GridField sample(F f, int n, double h, double x0, double y0, int dim = 1) {
    GridField g({n, n}, {h, h}, dim);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) g.at({i, j}) = f(x0 + i * h, y0 + j * h);
    return g;
}

Vec scalar(double v) { return Vec::Constant(1, v); }

}  // namespace

TEST_CASE("second derivative of u^2") {
    const GridField g = sample([](double u, double) { return scalar(u * u); }, 9, 1e-2, 0.3, 0.0);
    const FdJet j = fd_jet(g, {4, 4}, {0, 1});
    CHECK(std::abs(j.hessian[0](0, 0) - 2) < 1e-8);
    CHECK(std::abs(j.hessian[1](0, 1)) < 1e-8);
}

TEST_CASE("Richardson gradient of sin(u) cos(v)") {
    const double h = 1e-2;
    const GridField g = sample([](double u, double v) { return scalar(std::sin(u) * std::cos(v)); }, 9, h, -4 * h, -4 * h);
    const FdJet j = fd_jet(g, {4, 4}, {0, 1});
    CHECK(std::abs(j.gradient(0, 0) - 1) < 1e-9);
    CHECK(std::abs(j.gradient(0, 1)) < 1e-9);
}

TEST_CASE("boundary index is rejected") {
    const GridField g = sample([](double u, double) { return scalar(u); }, 9, 0.1, 0, 0);
    CHECK_THROWS_AS(fd_jet(g, {1, 4}, {0, 1}), BoundaryViolation);
    CHECK_THROWS_AS(fd_jet(g, {4, 7}, {0, 1}), BoundaryViolation);
    CHECK_NOTHROW(fd_jet(g, {1, 4}, {1}));
}

TEST_CASE("property: error estimates bound the true error") {
    struct Field {
        double (*f)(double, double);
        double (*fu)(double, double);
        double (*fuu)(double, double);
        double (*fuv)(double, double);
    };
    const std::vector<Field> fields = {
        {[](double u, double v) { return std::sin(u) * std::cos(v); }, [](double u, double v) { return std::cos(u) * std::cos(v); },
         [](double u, double v) { return -std::sin(u) * std::cos(v); }, [](double u, double v) { return -std::cos(u) * std::sin(v); }},
        {[](double u, double v) { return std::exp(u + 2 * v); }, [](double u, double v) { return std::exp(u + 2 * v); },
         [](double u, double v) { return std::exp(u + 2 * v); }, [](double u, double v) { return 2 * std::exp(u + 2 * v); }},
        {[](double u, double v) { return u * u * u * v - 2 * u * v * v + 0.5; }, [](double u, double v) { return 3 * u * u * v - 2 * v * v; },
         [](double u, double v) { return 6 * u * v; }, [](double u, double v) { return 3 * u * u - 4 * v; }},
        {[](double u, double v) { return std::pow(u, 6) + v * v * v * u; }, [](double u, double v) { return 6 * std::pow(u, 5) + v * v * v; },
         [](double u, double) { return 30 * std::pow(u, 4); }, [](double, double v) { return 3 * v * v; }},
    };
    for (double h : {0.05, 0.01, 1e-3}) {
        for (const auto& fld : fields) {
            const double x0 = 0.3, y0 = -0.4;
            const GridField g = sample([&](double u, double v) { return scalar(fld.f(u, v)); }, 15, h, x0, y0);
            int total = 0, bounded = 0;
            for (int i = 2; i < 13; ++i)
                for (int j = 2; j < 13; ++j) {
                    const double u = x0 + i * h, v = y0 + j * h;
                    const FdJet jet = fd_jet(g, {i, j}, {0, 1});
                    total += 3;
                    bounded += std::abs(jet.gradient(0, 0) - fld.fu(u, v)) <= jet.gradientErr(0, 0);
                    bounded += std::abs(jet.hessian[0](0, 0) - fld.fuu(u, v)) <= jet.hessianErr[0](0, 0);
                    bounded += std::abs(jet.hessian[0](0, 1) - fld.fuv(u, v)) <= jet.hessianErr[0](0, 1);
                }
            CHECK(bounded >= 0.99 * total);
        }
    }
}

TEST_CASE("Richardson order: halving h cuts the error by at least 8") {
    // u^6 and sin: Richardson is exact on quartics, so a quartic has no
    // truncation error left to measure.
    auto err = [](auto f, auto fu, double h) {
        const GridField g = sample([&](double u, double) { return scalar(f(u)); }, 9, h, 0.5 - 4 * h, 0.0);
        return std::abs(fd_jet(g, {4, 4}, {0}).gradient(0, 0) - fu(0.5));
    };
    auto sextic = [](double u) { return std::pow(u, 6); };
    auto sexticD = [](double u) { return 6 * std::pow(u, 5); };
    auto sine = [](double u) { return std::sin(3 * u); };
    auto sineD = [](double u) { return 3 * std::cos(3 * u); };
    for (double h : {0.08, 0.04}) {
        CHECK(err(sextic, sexticD, h) / err(sextic, sexticD, h / 2) >= 8);
        CHECK(err(sine, sineD, h) / err(sine, sineD, h / 2) >= 8);
    }
}

TEST_CASE("grid CSV round trip") {
    const GridField g = sample([](double u, double v) { Vec x(2); x << u, v * v; return x; }, 5, 0.25, 0, 0, 2);
    std::stringstream ss;
    g.write_csv(ss);
    const GridField back = GridField::read_csv(ss, {5, 5}, {0.25, 0.25});
    for (std::size_t k = 0; k < g.points(); ++k) CHECK((back.at_flat(k) - g.at_flat(k)).norm() == 0);
}
