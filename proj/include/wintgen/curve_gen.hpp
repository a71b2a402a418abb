#pragma once

// Holomorphic 1-isotropic curves in C^{m+2} from Weierstrass-type data, and
// their lift to the quadric in C^{m+4}_1.

#include <string>

#include <nlohmann/json.hpp>

#include "wintgen/poly.hpp"
#include "wintgen/stereographic.hpp"

namespace wintgen {

// f and g_3..g_{m+2}. The generated curve is
//   phi_1 = f (1 - Q) / 2,  phi_2 = i f (1 + Q) / 2,  phi_k = f g_k,  Q = sum g_k^2,
// which is isotropic identically in z.
struct WeierstrassData {
    int m = 3;
    Poly f;
    std::vector<Poly> g;
};

struct IsotropicCurve {
    PolyCurve phi;  // derivative, C^{m+2}
    PolyCurve x;    // antiderivative with zero constant term
};

IsotropicCurve weierstrass_isotropic(const WeierstrassData& data);

// xi = p* + <X,X> p + 2 X, X embedded in the complement of the poles.
PolyCurve lift_to_quadric(const PolyCurve& x, const PolePair& poles);

// { "m": int, "f": [[re,im],...], "g": [ [[re,im],...], ... ] }
WeierstrassData weierstrass_from_json(const nlohmann::json& doc);
nlohmann::json weierstrass_to_json(const WeierstrassData& data);
nlohmann::json poly_to_json(const Poly& p);
nlohmann::json curve_to_json(const PolyCurve& c);

// Built-in fixtures: "enneper5" (m=3, f=1, g=(z,0,0)), "null-line" (f=1, g=0),
// "twisted5" (m=3, f=2, g=(z,z,0)), "enneper6" (m=4, f=1, g=(z,0,0,0)).
WeierstrassData fixture(const std::string& name);

}  // namespace wintgen
