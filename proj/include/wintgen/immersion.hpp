#pragma once

// Extrinsic geometry of an immersion into S^{N-1} ⊂ R^N or R^N from its
// second-order jet.

#include <vector>

#include "wintgen/fd.hpp"
#include "wintgen/lorentz.hpp"

namespace wintgen {

enum class Target { Sphere, Flat };

// first.col(i) = d_i x, second[i].col(j) = d_i d_j x.
struct ImmersionJet {
    Vec position;
    Mat first;
    std::vector<Mat> second;

    int dim() const { return static_cast<int>(first.cols()); }
    static ImmersionJet from_fd(const FdJet& jet);
};

struct ExtrinsicData {
    Mat metric;             // I, m x m
    Mat cholesky;           // lower L with I = L L^T
    Mat tangentFrame;       // N x m, I-orthonormal: first * L^{-T}
    std::vector<Vec> normals;
    std::vector<Mat> h;     // h^r in the I-orthonormal frame
    Vec meanCurvature;      // H^r = tr(h^r) / m

    int dim() const { return static_cast<int>(metric.rows()); }
    int codim() const { return static_cast<int>(normals.size()); }
    Vec mean_curvature_vector() const;
    // Converts a coordinate gradient (k x m, columns d/du_i) to the I-orthonormal frame.
    Mat to_frame(const Mat& coordGradient) const;
};

// Normals span the complement of {x_i} (and of x for the sphere target). With
// seedNormals the seeds are projected and orthonormalized in order, which
// keeps the normal frame smooth across nearby jets; otherwise the canonical
// basis is used. Throws RankDeficient on a singular first derivative.
ExtrinsicData fundamental_forms(const ImmersionJet& jet, Target target,
                                const std::vector<Vec>* seedNormals = nullptr, double rankTol = 1e-8);

std::vector<Mat> shape_operators(const ExtrinsicData& data);

// Smallest singular value of the first derivative relative to the largest.
double relative_rank_gap(const Mat& first);
int numerical_rank(const Mat& first, double relTol = 1e-8);

struct HarmonicityReport {
    double harmonicity = 0.0;   // |x_uu + x_vv| / sqrt(|x_u|^2 + |x_v|^2)
    double conformality = 0.0;  // (| |x_u|^2 - |x_v|^2 | + |<x_u,x_v>|) / (|x_u|^2 + |x_v|^2)
};

// From a surface jet in (u, v).
HarmonicityReport harmonicity_residual(const ImmersionJet& surface);
// From a sampled surface; needs two cells of clearance (fd_jet).
HarmonicityReport harmonicity_residual(const GridField& surface, const std::vector<int>& index);

}  // namespace wintgen
