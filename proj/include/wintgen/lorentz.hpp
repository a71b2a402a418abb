#pragma once

// Linear algebra over the Lorentz space R^{n}_1 (signature -,+,...,+ with the
// timelike coordinate first) and its complex bilinear extension.

#include <complex>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace wintgen {

using Vec = Eigen::VectorXd;
using CVec = Eigen::VectorXcd;
using Mat = Eigen::MatrixXd;
using CMat = Eigen::MatrixXcd;
using cplx = std::complex<double>;

// Points of R^{m+4}_1 and its complexification. Plain Eigen vectors; the
// metric lives in the free functions below, never in the storage.
using LorentzVec = Vec;
using CLorentzVec = CVec;

struct Signature {
    int neg = 0;
    int pos = 0;
    int null = 0;
    friend bool operator==(const Signature&, const Signature&) = default;
};

struct FrameTolerances {
    double frame = 1e-10;    // pseudo-orthonormality of produced frames
    double rankRel = 1e-8;   // null threshold relative to the largest |Gram eigenvalue|
};

// Pseudo-orthonormal frame: the first `neg` vectors are timelike units, the
// remaining `pos` are spacelike units.
struct PseudoFrame {
    std::vector<LorentzVec> vectors;
    int neg = 0;
    int pos = 0;

    std::size_t size() const { return vectors.size(); }
    const LorentzVec& operator[](std::size_t i) const { return vectors[i]; }
};

double inner(const LorentzVec& u, const LorentzVec& v);
cplx cinner(const CLorentzVec& u, const CLorentzVec& v);

// Lorentz metric diag(-1, 1, ..., 1) of size n.
Mat minkowski(int n);

// Gram matrix <v_i, v_j>.
Mat gram(std::span<const LorentzVec> vectors);

// Counts of negative / positive / near-null eigenvalues of the Gram matrix.
Signature subspace_signature(std::span<const LorentzVec> vectors, double rankRel = 1e-8);

// Pseudo-orthonormal frame of the orthogonal complement of span(basis).
//
// Without a seed, the canonical basis is projected into the complement and the
// Gram matrix of the projections is diagonalized: its eigenvectors give
// mutually orthogonal combinations, timelike first, ordered by |self-inner|.
// With a seed, the seed vectors are projected in order and run through a
// modified Gram-Schmidt pass against the indefinite form; the result is a
// smooth function of the basis, which is what frame continuation needs.
//
// Throws DegenerateSpan when the Gram matrix of the basis is (near) singular,
// SignatureMismatch when the complement does not have `expected` signature.
PseudoFrame orthonormal_complement(std::span<const LorentzVec> basis, Signature expected,
                                   const PseudoFrame* seed = nullptr,
                                   const FrameTolerances& tol = {});

// Largest deviation of Gram(frame) from diag(-1..,+1..).
double frame_defect(const PseudoFrame& frame);

// Random Lorentz transformation (boost of rapidity up to maxRapidity composed
// with spatial rotations), generated from a caller-owned engine.
template <class Rng>
Mat random_lorentz(int n, Rng& rng, double maxRapidity = 0.5);

}  // namespace wintgen

#include "wintgen/detail/random_lorentz.ipp"
