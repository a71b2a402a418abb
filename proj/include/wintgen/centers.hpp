#pragma once

// Centers of the mean curvature spheres and the minimal surface they sweep
// out in R^{m+2}.

#include <vector>

#include "wintgen/fd.hpp"
#include "wintgen/immersion.hpp"
#include "wintgen/poly.hpp"
#include "wintgen/stereographic.hpp"

namespace wintgen {

struct SphereGeometry {
    LorentzVec center;      // O = p - 2<p,xi_1> xi_1 - 2<p,xi_2> xi_2, lightlike
    double sigma = 0.0;     // -<O, p>
    Vec euclideanCenter;    // flat coordinates of O / sigma
    double radius = 0.0;    // sqrt(2 / sigma)
};

// Throws PoleOnSphere when sigma <= tol (|xi_1|,|xi_2| are unit).
SphereGeometry sphere_center(const LorentzVec& xi1, const LorentzVec& xi2, const PolePair& poles, double tol = 1e-12);

// Flat coordinates of the point [Y] of the light cone (Y not a multiple of p).
Vec flat_point(const LorentzVec& Y, const PolePair& poles);

// min over z of hypot(<p^, xi_1>, <p^, xi_2>) with p^ = p / p^0 on the unit
// sphere: how far the pole stays from the spheres of the congruence.
double pole_clearance(const PolyCurve& xi, const std::vector<cplx>& zs, const PolePair& poles);

// Real spacelike pair (Re xi, -Im xi), normalized, of a lift in Q_+.
std::pair<LorentzVec, LorentzVec> sphere_pair(const CVec& xi);

// X(z) = -1/(2<xi,p>) (2 xi + <xi,p> p* + <xi,p*> p) with its z-jet, from
// exact jets of xi; Xt = Re X in flat coordinates.
struct CenterJet {
    cplx z;
    CVec X, Xz, Xzz, Xzbar;  // ambient, pole components removed
    Vec Xt;                  // flat coordinates of Re X
    ImmersionJet surface;    // (u, v) jet of Xt, in flat coordinates
};

CenterJet center_jet(const PolyCurve& xi, cplx z, const PolePair& poles, double tol = 1e-12);

// (u, v) jet of the Euclidean center of the sphere pair (Re xi, -Im xi),
// carried exactly through the normalization and the reflection formula of
// sphere_center. Nothing here assumes the result is holomorphic.
ImmersionJet reflection_center_jet(const PolyCurve& xi, cplx z, const PolePair& poles);

struct CenterReport {
    double holomorphy = 0.0;          // |X_zbar| / |X_z|
    double isotropy = 0.0;            // |<X_z, X_z>| / |X_z|^2
    double harmonicity = 0.0;         // of the reflection jet
    double conformality = 0.0;        // of the reflection jet
    double pathAgreement = 0.0;       // |Xt - euclideanCenter(sphere_center)|
    double derivativeAgreement = 0.0; // first derivatives of the two jets, relative
};

CenterReport verify_center_point(const PolyCurve& xi, cplx z, const PolePair& poles);

// X_t sampled on a (u, v) grid (GridField with value dimension m+2).
GridField center_surface(const PolyCurve& xi, double u0, double v0, int nu, int nv, double h, const PolePair& poles);

// Harmonicity/conformality at interior grid points of a sampled surface.
std::vector<HarmonicityReport> verify_minimal(const GridField& surface);

}  // namespace wintgen
