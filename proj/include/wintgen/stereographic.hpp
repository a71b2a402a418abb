#pragma once

// Complex stereographic projection between the quadric and C^{m+2}, and the
// classical real stereographic projection of the sphere.

#include "wintgen/lorentz.hpp"

namespace wintgen {

// Two lightlike vectors with <p,p> = <p*,p*> = 0 and <p,p*> = -2. [p] is the
// point at infinity of the flat chart. `adapted` is a Lorentz transformation
// taking the standard pair ((1,1,0..), (1,-1,0..)) to this one; flat
// coordinates are the last n-2 coordinates after undoing it.
class PolePair {
public:
    static PolePair standard(int n);
    // Validates the normalization to 1e-12 (PoleNormalization otherwise).
    static PolePair from(const LorentzVec& p, const LorentzVec& pStar);

    const LorentzVec& p() const { return p_; }
    const LorentzVec& p_star() const { return pStar_; }
    int ambient_dim() const { return static_cast<int>(p_.size()); }
    bool is_standard() const { return standard_; }
    const Mat& adapted() const { return adapted_; }

    // C^{m+2} <-> orthogonal complement of {p, p*} in C^{m+4}_1.
    CVec embed(const CVec& flat) const;
    CVec flatten(const CVec& ambient) const;
    Vec embed(const Vec& flat) const;
    Vec flatten(const Vec& ambient) const;

    PolePair transformed(const Mat& lorentz) const;

private:
    PolePair(LorentzVec p, LorentzVec pStar);
    LorentzVec p_, pStar_;
    Mat adapted_, adaptedInv_;
    bool standard_ = false;
};

// X = (-1 / 2<xi,p>) (<xi,p> p* + <xi,p*> p + 2 xi), returned in the ambient
// space with its p, p* components removed explicitly. Throws PoleOnSphere when
// |<xi,p>| <= tol * |xi|.
CLorentzVec project_complex(const CLorentzVec& xi, const PolePair& poles, double tol = 1e-12);

// xi = p* + <X,X> p + 2 X for ambient X orthogonal to both poles; throws
// PoleNormalization if X has a pole component above tol * (1 + |X|).
CLorentzVec lift_complex(const CLorentzVec& x, const PolePair& poles, double tol = 1e-10);

// x = (x', x'') on the unit sphere of R^{m+3} -> x'' / (1 - x'), with x' the
// component along the pole. The pole defaults to (1, 0, ..., 0).
Vec project_classical(const Vec& x, const Vec& pole);
Vec project_classical(const Vec& x);
Vec unproject_classical(const Vec& y, const Vec& pole);
Vec unproject_classical(const Vec& y);

}  // namespace wintgen
