#include "wintgen/poly.hpp"

#include <algorithm>
#include <cmath>

#include "wintgen/errors.hpp"

namespace wintgen {

GaussRational GaussRational::from_double(cplx z) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
        throw Error("polynomial coefficient is not finite");
    return {mpq_class(z.real()), mpq_class(z.imag())};
}

Poly::Poly(std::vector<GaussRational> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

Poly Poly::constant(const GaussRational& c) { return Poly({c}); }

Poly Poly::monomial(const GaussRational& c, int degree) {
    std::vector<GaussRational> v(static_cast<std::size_t>(degree) + 1);
    v.back() = c;
    return Poly(std::move(v));
}

Poly Poly::from_doubles(const std::vector<cplx>& coeffs) {
    std::vector<GaussRational> v;
    v.reserve(coeffs.size());
    for (const auto& c : coeffs) v.push_back(GaussRational::from_double(c));
    return Poly(std::move(v));
}

void Poly::trim() {
    while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
}

GaussRational Poly::coeff(int k) const {
    if (k < 0 || k >= static_cast<int>(coeffs_.size())) return {};
    return coeffs_[k];
}

Poly Poly::derivative() const {
    if (coeffs_.size() <= 1) return {};
    std::vector<GaussRational> d(coeffs_.size() - 1);
    for (std::size_t k = 1; k < coeffs_.size(); ++k) {
        const mpq_class f(static_cast<long>(k));
        d[k - 1] = {coeffs_[k].re * f, coeffs_[k].im * f};
    }
    return Poly(std::move(d));
}

Poly Poly::antiderivative() const {
    if (coeffs_.empty()) return {};
    std::vector<GaussRational> a(coeffs_.size() + 1);
    for (std::size_t k = 0; k < coeffs_.size(); ++k) {
        const mpq_class f(1, static_cast<long>(k + 1));
        a[k + 1] = {coeffs_[k].re * f, coeffs_[k].im * f};
    }
    return Poly(std::move(a));
}

cplx Poly::eval(cplx z) const {
    cplx acc = 0.0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * z + it->to_complex();
    return acc;
}

std::vector<cplx> Poly::to_complex() const {
    std::vector<cplx> out;
    out.reserve(coeffs_.size());
    for (const auto& c : coeffs_) out.push_back(c.to_complex());
    return out;
}

Poly operator+(const Poly& a, const Poly& b) {
    std::vector<GaussRational> s(std::max(a.coeffs_.size(), b.coeffs_.size()));
    for (std::size_t k = 0; k < s.size(); ++k) s[k] = a.coeff(static_cast<int>(k)) + b.coeff(static_cast<int>(k));
    return Poly(std::move(s));
}

Poly operator-(const Poly& a, const Poly& b) {
    std::vector<GaussRational> s(std::max(a.coeffs_.size(), b.coeffs_.size()));
    for (std::size_t k = 0; k < s.size(); ++k) s[k] = a.coeff(static_cast<int>(k)) - b.coeff(static_cast<int>(k));
    return Poly(std::move(s));
}

Poly operator*(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<GaussRational> p(a.coeffs_.size() + b.coeffs_.size() - 1);
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
        if (a.coeffs_[i].is_zero()) continue;
        for (std::size_t j = 0; j < b.coeffs_.size(); ++j) p[i + j] = p[i + j] + a.coeffs_[i] * b.coeffs_[j];
    }
    return Poly(std::move(p));
}

Poly operator*(const GaussRational& c, const Poly& p) { return Poly::constant(c) * p; }

Poly poly_antiderivative(const Poly& p) { return p.antiderivative(); }

// --- PolyCurve -------------------------------------------------------------

PolyCurve::PolyCurve(std::vector<Poly> components) : components_(std::move(components)) {
    for (const auto& p : components_) {
        const Poly d1 = p.derivative();
        values_.push_back(p.to_complex());
        firsts_.push_back(d1.to_complex());
        seconds_.push_back(d1.derivative().to_complex());
    }
}

int PolyCurve::degree() const {
    int d = -1;
    for (const auto& p : components_) d = std::max(d, p.degree());
    return d;
}

PolyCurve PolyCurve::derivative() const {
    std::vector<Poly> d;
    for (const auto& p : components_) d.push_back(p.derivative());
    return PolyCurve(std::move(d));
}

PolyCurve PolyCurve::antiderivative() const {
    std::vector<Poly> a;
    for (const auto& p : components_) a.push_back(p.antiderivative());
    return PolyCurve(std::move(a));
}

namespace {
cplx horner(const std::vector<cplx>& c, cplx z) {
    cplx acc = 0.0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * z + *it;
    return acc;
}
}  // namespace

CVec PolyCurve::eval(cplx z) const {
    CVec v(dimension());
    for (int k = 0; k < dimension(); ++k) v[k] = horner(values_[k], z);
    return v;
}

CurveJet PolyCurve::jet(cplx z, int order) const {
    if (order < 0 || order > 2) throw Error("jet order must be 0, 1 or 2");
    const int n = dimension();
    CurveJet j{z, CVec::Zero(n), CVec::Zero(n), CVec::Zero(n), CVec::Zero(n)};
    for (int k = 0; k < n; ++k) {
        j.value[k] = horner(values_[k], z);
        if (order >= 1) j.dz[k] = horner(firsts_[k], z);
        if (order >= 2) j.dzz[k] = horner(seconds_[k], z);
    }
    return j;
}

CurveJet eval_poly_jet(const PolyCurve& curve, cplx z, int order) { return curve.jet(z, order); }

Poly lorentz_cinner(const PolyCurve& a, const PolyCurve& b) {
    if (a.dimension() != b.dimension()) throw DimensionMismatch(a.dimension(), b.dimension());
    if (a.dimension() == 0) return {};
    Poly s = Poly() - a[0] * b[0];
    for (int k = 1; k < a.dimension(); ++k) s = s + a[k] * b[k];
    return s;
}

Poly euclid_cinner(const PolyCurve& a, const PolyCurve& b) {
    if (a.dimension() != b.dimension()) throw DimensionMismatch(a.dimension(), b.dimension());
    Poly s;
    for (int k = 0; k < a.dimension(); ++k) s = s + a[k] * b[k];
    return s;
}

}  // namespace wintgen
