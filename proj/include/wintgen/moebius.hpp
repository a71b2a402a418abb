#pragma once

// Moebius invariants of a submanifold: canonical lift, mean curvature
// spheres, Moebius second fundamental form B and Moebius form C.

#include <vector>

#include "wintgen/immersion.hpp"

namespace wintgen {

inline constexpr double kUmbilicRel = 1e-6;

// ((1 + |x|^2) / 2, (1 - |x|^2) / 2, x)
LorentzVec flat_light_cone(const Vec& x);

// |II - (1/m) tr(II) I|^2 summed over the normal frame.
double traceless_norm_sq(const ExtrinsicData& data);

struct CanonicalLift {
    double rho = 0.0;
    LorentzVec Y;
};

// rho^2 = m/(m-1) |II - H I|^2; Y = rho (1, x) on the sphere, rho L(x) in the
// flat model. Throws UmbilicError when |II - H I| <= umbilicRel * |II|.
CanonicalLift canonical_lift(const ExtrinsicData& data, const ImmersionJet& jet, Target target,
                             double umbilicRel = kUmbilicRel);

// xi_r = (H^r, n_r + H^r x) on the sphere, L(x) H^r + (x.n_r, -x.n_r, n_r) in the flat model.
std::vector<LorentzVec> mean_curvature_spheres(const ExtrinsicData& data, const ImmersionJet& jet, Target target);

struct MoebiusB {
    std::vector<Mat> B;          // rho^{-1} (h^r - H^r I)
    double traceResidual = 0.0;  // max_r |sum_j B^r_jj|
    double normResidual = 0.0;   // |sum (B^r_ij)^2 - (m-1)/m|
};

MoebiusB moebius_B(const ExtrinsicData& data, double rho);

// C^r_i = -rho^{-2} [H^r_{,i} + sum_j (h^r_ij - H^r delta_ij) e_j(ln rho)], p x m.
// dHvec: coordinate derivatives of the mean curvature vector sum_r H^r n_r
// (N x m); dLogRho: coordinate gradient of ln rho. H^r_{,i} is the normal
// component of the frame derivative, so no normal connection is needed.
Mat moebius_C(const ExtrinsicData& data, double rho, const Mat& dHvec, const Vec& dLogRho);

struct MoebiusData {
    double rho = 0.0;
    LorentzVec Y;
    Mat g;                       // rho^2 I in coordinates
    std::vector<LorentzVec> xi;  // xi_1, xi_2
    std::vector<Mat> B;
    Mat C;                       // empty until derivative data is supplied
    double traceResidual = 0.0;
    double normResidual = 0.0;
};

MoebiusData moebius_data(const ExtrinsicData& data, const ImmersionJet& jet, Target target,
                         double umbilicRel = kUmbilicRel);

// max |<xi_r, xi_s> - delta_rs|, |<xi_r, Y>| / rho.
double sphere_frame_defect(const MoebiusData& md);

}  // namespace wintgen
