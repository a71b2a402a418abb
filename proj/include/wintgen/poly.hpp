#pragma once

// Exact complex polynomials and holomorphic polynomial curves.
//
// Coefficients are Gaussian rationals (GMP), so identities such as
// sum phi_k^2 == 0 can be asserted at the coefficient level with no tolerance.
// Every finite double converts exactly, so user data loses nothing on entry.
// Evaluation goes through a cached double copy of the coefficients.

#include <complex>
#include <vector>

#include <gmpxx.h>

#include "wintgen/lorentz.hpp"

namespace wintgen {

struct GaussRational {
    mpq_class re{0};
    mpq_class im{0};

    GaussRational() = default;
    GaussRational(mpq_class r, mpq_class i) : re(std::move(r)), im(std::move(i)) {}
    static GaussRational from_double(cplx z);

    bool is_zero() const { return sgn(re) == 0 && sgn(im) == 0; }
    cplx to_complex() const { return {re.get_d(), im.get_d()}; }
    GaussRational conj() const { return {re, -im}; }

    friend GaussRational operator+(const GaussRational& a, const GaussRational& b) {
        return {a.re + b.re, a.im + b.im};
    }
    friend GaussRational operator-(const GaussRational& a, const GaussRational& b) {
        return {a.re - b.re, a.im - b.im};
    }
    friend GaussRational operator-(const GaussRational& a) { return {-a.re, -a.im}; }
    friend GaussRational operator*(const GaussRational& a, const GaussRational& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend bool operator==(const GaussRational& a, const GaussRational& b) {
        return a.re == b.re && a.im == b.im;
    }
};

// Polynomial in z with exact coefficients, ascending degree, no trailing zeros.
class Poly {
public:
    Poly() = default;
    explicit Poly(std::vector<GaussRational> coeffs);
    static Poly constant(const GaussRational& c);
    static Poly monomial(const GaussRational& c, int degree);
    static Poly from_doubles(const std::vector<cplx>& coeffs);

    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }  // -1 for zero
    bool is_zero() const { return coeffs_.empty(); }
    const std::vector<GaussRational>& coeffs() const { return coeffs_; }
    GaussRational coeff(int k) const;

    Poly derivative() const;
    // Antiderivative with zero constant term.
    Poly antiderivative() const;

    // Horner evaluation in double precision.
    cplx eval(cplx z) const;
    std::vector<cplx> to_complex() const;

    friend Poly operator+(const Poly& a, const Poly& b);
    friend Poly operator-(const Poly& a, const Poly& b);
    friend Poly operator*(const Poly& a, const Poly& b);
    friend Poly operator*(const GaussRational& c, const Poly& p);
    friend bool operator==(const Poly& a, const Poly& b) { return a.coeffs_ == b.coeffs_; }

private:
    void trim();
    std::vector<GaussRational> coeffs_;
};

// Jet of a holomorphic curve at z: value and z-derivatives up to order 2, and
// the d/dzbar component (identically zero for polynomial curves).
struct CurveJet {
    cplx z;
    CVec value;
    CVec dz;
    CVec dzz;
    CVec dzbar;
};

// Vector of polynomials; component 0 is the timelike one when the curve lives
// in the complexified Lorentz space.
class PolyCurve {
public:
    PolyCurve() = default;
    explicit PolyCurve(std::vector<Poly> components);

    int dimension() const { return static_cast<int>(components_.size()); }
    const std::vector<Poly>& components() const { return components_; }
    const Poly& operator[](int k) const { return components_[k]; }
    int degree() const;

    PolyCurve derivative() const;
    PolyCurve antiderivative() const;

    // order in {0,1,2}; higher-order fields of the jet are left zero.
    CurveJet jet(cplx z, int order = 2) const;
    CVec eval(cplx z) const;

private:
    std::vector<Poly> components_;
    // double copies of the coefficients for fast Horner evaluation
    std::vector<std::vector<cplx>> values_, firsts_, seconds_;
};

// Bilinear products as exact polynomials.
// Lorentz form (component 0 timelike) for curves in C^{m+4}_1 ...
Poly lorentz_cinner(const PolyCurve& a, const PolyCurve& b);
// ... and the Euclidean complex bilinear form for curves in C^{m+2}.
Poly euclid_cinner(const PolyCurve& a, const PolyCurve& b);

CurveJet eval_poly_jet(const PolyCurve& curve, cplx z, int order);
Poly poly_antiderivative(const Poly& p);

}  // namespace wintgen
