#include "wintgen/curve_gen.hpp"

#include "wintgen/errors.hpp"

namespace wintgen {

namespace {

const GaussRational kHalf{mpq_class(1, 2), mpq_class(0)};
const GaussRational kHalfI{mpq_class(0), mpq_class(1, 2)};
const GaussRational kOne{mpq_class(1), mpq_class(0)};
const GaussRational kTwo{mpq_class(2), mpq_class(0)};

Poly poly_from_json(const nlohmann::json& arr, const std::string& where) {
    if (!arr.is_array()) throw ConfigError(where + ": expected an array of [re, im] pairs");
    std::vector<cplx> c;
    for (std::size_t k = 0; k < arr.size(); ++k) {
        const auto& e = arr[k];
        if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number())
            throw ConfigError(where + "[" + std::to_string(k) + "]: expected [re, im]");
        c.emplace_back(e[0].get<double>(), e[1].get<double>());
    }
    return Poly::from_doubles(c);
}

}  // namespace

IsotropicCurve weierstrass_isotropic(const WeierstrassData& data) {
    if (data.m < 2) throw ConfigError("Weierstrass data needs m >= 2");
    if (static_cast<int>(data.g.size()) != data.m)
        throw ConfigError("Weierstrass data needs exactly m functions g_k");
    if (data.f.is_zero()) throw ConfigError("Weierstrass datum f must not vanish identically");

    Poly q;
    for (const auto& gk : data.g) q = q + gk * gk;
    const Poly one = Poly::constant(kOne);

    std::vector<Poly> phi;
    phi.push_back(kHalf * (data.f * (one - q)));
    phi.push_back(kHalfI * (data.f * (one + q)));
    for (const auto& gk : data.g) phi.push_back(data.f * gk);

    PolyCurve phiCurve(std::move(phi));
    return {phiCurve, phiCurve.antiderivative()};
}

PolyCurve lift_to_quadric(const PolyCurve& x, const PolePair& poles) {
    const int n = poles.ambient_dim();
    if (x.dimension() != n - 2) throw DimensionMismatch(x.dimension(), n - 2);

    // ambient components of X: sum_k adapted(:, k+2) * X_k
    const Mat& t = poles.adapted();
    std::vector<Poly> ambient(n);
    for (int row = 0; row < n; ++row)
        for (int k = 0; k < n - 2; ++k) {
            const double a = t(row, k + 2);
            if (a == 0.0) continue;
            ambient[row] = ambient[row] + GaussRational::from_double({a, 0.0}) * x[k];
        }

    const Poly xx = euclid_cinner(x, x);  // the complement is Euclidean in adapted coordinates
    std::vector<Poly> xi(n);
    for (int row = 0; row < n; ++row) {
        xi[row] = Poly::constant(GaussRational::from_double({poles.p_star()[row], 0.0})) +
                  GaussRational::from_double({poles.p()[row], 0.0}) * xx + kTwo * ambient[row];
    }
    return PolyCurve(std::move(xi));
}

WeierstrassData weierstrass_from_json(const nlohmann::json& doc) {
    if (!doc.is_object()) throw ConfigError("Weierstrass data must be a JSON object");
    if (!doc.contains("m") || !doc["m"].is_number_integer()) throw ConfigError("Weierstrass data: integer 'm' required");
    WeierstrassData d;
    d.m = doc["m"].get<int>();
    if (d.m < 2) throw ConfigError("Weierstrass data: m must be >= 2");
    if (!doc.contains("f")) throw ConfigError("Weierstrass data: 'f' required");
    d.f = poly_from_json(doc["f"], "f");
    if (!doc.contains("g") || !doc["g"].is_array()) throw ConfigError("Weierstrass data: array 'g' required");
    for (std::size_t k = 0; k < doc["g"].size(); ++k)
        d.g.push_back(poly_from_json(doc["g"][k], "g[" + std::to_string(k) + "]"));
    if (static_cast<int>(d.g.size()) != d.m)
        throw ConfigError("Weierstrass data: 'g' must hold m = " + std::to_string(d.m) + " polynomials");
    if (d.f.is_zero()) throw ConfigError("Weierstrass data: f must not vanish identically");
    return d;
}

nlohmann::json poly_to_json(const Poly& p) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& c : p.coeffs()) arr.push_back({c.re.get_d(), c.im.get_d()});
    return arr;
}

nlohmann::json curve_to_json(const PolyCurve& c) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& p : c.components()) arr.push_back(poly_to_json(p));
    return arr;
}

nlohmann::json weierstrass_to_json(const WeierstrassData& data) {
    nlohmann::json g = nlohmann::json::array();
    for (const auto& gk : data.g) g.push_back(poly_to_json(gk));
    return {{"m", data.m}, {"f", poly_to_json(data.f)}, {"g", g}};
}

WeierstrassData fixture(const std::string& name) {
    auto z = [](double re) { return Poly::from_doubles({0.0, {re, 0.0}}); };
    auto c = [](double re) { return Poly::from_doubles({{re, 0.0}}); };
    WeierstrassData d;
    if (name == "enneper5") {
        d.m = 3;
        d.f = c(1);
        d.g = {z(1), Poly(), Poly()};
    } else if (name == "null-line") {
        d.m = 3;
        d.f = c(1);
        d.g = {Poly(), Poly(), Poly()};
    } else if (name == "twisted5") {
        d.m = 3;
        d.f = c(2);
        d.g = {z(1), z(1), Poly()};
    } else if (name == "enneper6") {
        d.m = 4;
        d.f = c(1);
        d.g = {z(1), Poly(), Poly(), Poly()};
    } else {
        throw ConfigError("unknown fixture '" + name + "'");
    }
    return d;
}

}  // namespace wintgen
