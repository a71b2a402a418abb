#pragma once

// Points of the quadric Q and Q_+, the indefinite Hermitian metric, and
// certification of holomorphic 1-isotropic curves.

#include <vector>

#include "wintgen/poly.hpp"

namespace wintgen {

enum class QuadricClass { LightconePoint, QPlusPoint, Invalid };

const char* to_string(QuadricClass c);

// Relative tolerance on |<xi,xi>| and <xi,conj xi>, scaled by |xi|^2.
inline constexpr double kIsoTol = 1e-8;

QuadricClass classify(const CLorentzVec& lift, double tol = kIsoTol);

// Horizontal part of a derivative: v - (<v, conj xi> / <xi, conj xi>) xi.
CVec horizontal(const CVec& v, const CVec& xi);

// h_xi on the d/dz direction of the jet. Throws NotInQuadric when
// <xi, conj xi> <= tol * |xi|^2.
double hermitian_metric(const CurveJet& jet, double tol = kIsoTol);
// Same, for an arbitrary tangent vector dxi at the lift xi.
double hermitian_metric(const CVec& xi, const CVec& dxi, double tol = kIsoTol);

struct IsotropyReport {
    cplx z;
    cplx lambdaCoeff;      // best fit xi_zbar ~ lambda xi
    double holoResidual;   // |xi_zbar - lambda xi| / |xi_z|
    double isoResidual;    // |<w,w>| / <w, conj w>, w = horizontal xi_z
    double hermitianNormSq;
    QuadricClass cls;
};

IsotropyReport certify_point(const CurveJet& jet, double tol = kIsoTol);
std::vector<IsotropyReport> certify_isotropic_holomorphic(const std::vector<CurveJet>& jets,
                                                          double tol = kIsoTol);

// Sine of the Hermitian angle between the lines [a] and [b], in the
// Euclidean coordinates of the standard basis.
double projective_distance(const CVec& a, const CVec& b);
// The same between the real 2-planes they span: [b] and [conj b] describe the
// same sphere with opposite orientations.
double sphere_distance(const CVec& a, const CVec& b);

// mu^2 = (m - 1) / (4m)
double mu_squared(int m);

// Input of the forward Gauss-map check at one sample of an immersion:
// xi = xi_1 - i xi_2 of the computed mean curvature sphere, its derivatives
// along an adapted I-orthonormal tangent frame (first two span D), and the
// Moebius scale rho (so g(E,E) = rho^2 for I-unit E).
struct GaussCheckInput {
    int m = 3;
    CVec xi;
    std::vector<CVec> dxiAdapted;
    double rho = 0.0;
};

struct GaussCheckReport {
    double fiberResidual = 0.0;      // (a) max_a |hor dxi(E_a)| / |hor dxi(E_1)|
    double isotropyResidual = 0.0;   // (b) max |<hor dxi(E_i), hor dxi(E_j)>| / h-scale on D
    double holomorphyResidual = 0.0; // hor dxi(E_1) = +-i hor dxi(E_2)
    double submersionResidual = 0.0; // (c) max over E in {E_1,E_2} of |h - mu^2 g| / (mu^2 g)
    double submersionRatio = 0.0;    // h(E_1) / (mu^2 g(E_1,E_1))
};

// Throws Error("missing adapted frame") when dxiAdapted has fewer than m entries.
GaussCheckReport forward_gauss_check(const GaussCheckInput& in, double tol = kIsoTol);

}  // namespace wintgen
