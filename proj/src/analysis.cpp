#include "wintgen/analysis.hpp"

#include <cmath>

#include "wintgen/errors.hpp"

namespace wintgen {

namespace {

CVec complex_sphere(const std::vector<LorentzVec>& xi) {
    return xi[0].cast<cplx>() - cplx(0, 1) * xi[1].cast<cplx>();
}

}  // namespace

CVec envelope_sphere(EnvelopeChart& chart, double u, double v, const Vec& c, double s,
                     const std::vector<Vec>* seedNormals) {
    const ImmersionJet jet = chart.jet(u, v, c, s);
    const ExtrinsicData ext = fundamental_forms(jet, Target::Sphere, seedNormals);
    return complex_sphere(mean_curvature_spheres(ext, jet, Target::Sphere));
}

SampleReport analyze_sample(EnvelopeChart& chart, const PolyCurve& xi, double u, double v, const Vec& c,
                            const AnalysisOptions& opt) {
    const int m = chart.m();
    const int n = m + 3;
    const double s = opt.fdStep / 2;
    const double outer = opt.outerFactor * s;

    SampleReport rep;
    rep.u = u;
    rep.v = v;
    rep.fiber = c;

    const ImmersionJet jet0 = chart.jet(u, v, c, s);
    rep.rank = numerical_rank(jet0.first);
    if (rep.rank != m) throw RankDeficient("envelope is not immersed at this sample");
    const ExtrinsicData ext0 = fundamental_forms(jet0, Target::Sphere);
    const MoebiusData md0 = moebius_data(ext0, jet0, Target::Sphere, opt.umbilicRel);
    rep.rho = md0.rho;
    rep.traceResidual = md0.traceResidual;
    rep.normResidual = md0.normResidual;
    rep.sphereFrameDefect = sphere_frame_defect(md0);

    const TracelessPair tp = traceless_pair(ext0.h[0], ext0.h[1]);
    rep.H1 = tp.H1;
    rep.H2 = tp.H2;
    rep.wintgen = wintgen_defect(tp.A1, tp.A2);

    const CVec xiOut = complex_sphere(md0.xi);
    rep.sphereDistance = sphere_distance(xiOut, xi.eval({u, v}));

    // Derived fields on a star of spacing `outer`: H-vector, ln rho, xi_1, xi_2.
    const int dim = n + 1 + 2 * (n + 1);
    GridField derived(std::vector<int>(m, 5), std::vector<double>(m, outer), dim);
    auto pack = [&](const ExtrinsicData& ext, const MoebiusData& md) {
        Vec val(dim);
        val.head(n) = ext.mean_curvature_vector();
        val[n] = std::log(md.rho);
        val.segment(n + 1, n + 1) = md.xi[0];
        val.segment(2 * n + 2, n + 1) = md.xi[1];
        return val;
    };
    std::vector<int> center(m, 2), axes(m);
    derived.at(center) = pack(ext0, md0);
    for (int a = 0; a < m; ++a) {
        axes[a] = a;
        for (int k : {-2, -1, 1, 2}) {
            double uu = u, vv = v;
            Vec cc = c;
            if (a == 0) uu += k * outer;
            else if (a == 1) vv += k * outer;
            else cc[a - 2] += k * outer;
            const ImmersionJet jk = chart.jet(uu, vv, cc, s);
            const ExtrinsicData ek = fundamental_forms(jk, Target::Sphere, &ext0.normals);
            const MoebiusData mk = moebius_data(ek, jk, Target::Sphere, opt.umbilicRel);
            std::vector<int> idx = center;
            idx[a] += k;
            derived.at(idx) = pack(ek, mk);
        }
    }
    const FdJet dj = fd_jet(derived, center, axes, false);
    const Mat dH = dj.gradient.topRows(n);
    const Vec dLogRho = dj.gradient.row(n).transpose();
    const Mat dXi1 = dj.gradient.middleRows(n + 1, n + 1);
    const Mat dXi2 = dj.gradient.middleRows(2 * n + 2, n + 1);

    rep.C = moebius_C(ext0, md0.rho, dH, dLogRho);
    rep.Cadapted = to_adapted(rep.wintgen, rep.C);
    const Mat& ca = rep.Cadapted;
    rep.cAntisym = std::abs(ca(0, 0) + ca(1, 1));
    rep.cSym = std::abs(ca(0, 1) - ca(1, 0));
    for (int a = 2; a < m; ++a) {
        rep.cFiber1 = std::max(rep.cFiber1, std::abs(ca(0, a)));
        rep.cFiber2 = std::max(rep.cFiber2, std::abs(ca(1, a)));
    }
    rep.cScale = ca.cwiseAbs().maxCoeff();

    const Mat e = rep.wintgen.adaptedTangentFrame;
    const Mat re = ext0.to_frame(dXi1) * e;
    const Mat im = ext0.to_frame(dXi2) * e;
    GaussCheckInput gin;
    gin.m = m;
    gin.xi = xiOut;
    gin.rho = md0.rho;
    for (int i = 0; i < m; ++i) gin.dxiAdapted.push_back(re.col(i).cast<cplx>() - cplx(0, 1) * im.col(i).cast<cplx>());
    rep.gauss = forward_gauss_check(gin);
    return rep;
}

HarmonicityReport envelope_center_residual(EnvelopeChart& chart, const PolePair& poles, double u, double v,
                                           const Vec& c, double fdStep, double outer) {
    const double s = fdStep / 2;
    GridField surface({5, 5}, {outer, outer}, poles.ambient_dim() - 2);
    for (int i = 0; i < 5; ++i)
        for (int j = 0; j < 5; ++j) {
            if (std::abs(i - 2) != std::abs(j - 2) && i != 2 && j != 2) continue;
            const CVec sphere = envelope_sphere(chart, u + (i - 2) * outer, v + (j - 2) * outer, c, s);
            const auto [x1, x2] = sphere_pair(sphere);
            surface.at({i, j}) = sphere_center(x1, x2, poles).euclideanCenter;
        }
    return harmonicity_residual(surface, {2, 2});
}

}  // namespace wintgen
