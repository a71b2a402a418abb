#pragma once

// The envelope of the sphere congruence carried by a holomorphic 1-isotropic
// curve in Q_+: an immersion of U x S^{m-2} into S^{m+2}.

#include <functional>
#include <map>
#include <optional>
#include <utility>

#include <nlohmann/json.hpp>

#include "wintgen/immersion.hpp"
#include "wintgen/poly.hpp"

namespace wintgen {

// {xi_1, xi_2, eta_1, eta_2} is an orthonormal basis of the spacelike
// 4-space V = span{xi, conj xi, xi_z, conj xi_z}; `complement` spans V^perp
// with e_0 timelike and future pointing.
struct CongruenceFrame {
    cplx z;
    LorentzVec xi1, xi2, eta1, eta2;
    PseudoFrame complement;

    int m() const { return static_cast<int>(complement.size()); }
};

// xi_1 = Re xi, xi_2 = -Im xi, normalized; eta_1 + i eta_2 is the normalized
// horizontal part of xi_z. Its phase follows `previous` when given, otherwise
// the largest component is made real and positive. The complement frame is
// seeded by `previous`. Throws RegularityError when V is not spacelike of
// rank 4.
CongruenceFrame congruence_frame(const CurveJet& jet, const CongruenceFrame* previous = nullptr,
                                 const FrameTolerances& tol = {});

struct EnvelopeSample {
    cplx z;
    Vec theta;
    LorentzVec Y;
    Vec x;
};

// Y = e_0 + sum theta_j e_j, x = Y[1:] / Y^0. Throws ChartError when Y^0 <= tol |Y|.
EnvelopeSample envelope_point(const CongruenceFrame& frame, const Vec& theta, double tol = 1e-9);

// Charts of the fiber S^{m-2} around a base point theta0. For m = 3 the
// coordinate is an angle offset; for m > 3 it is orthographic,
// theta = sqrt(1 - |c|^2) theta0 + sum c_k b_k.
class FiberChart {
public:
    FiberChart(Vec theta0);
    int dim() const { return static_cast<int>(basis_.cols()); }
    const Vec& base() const { return theta0_; }
    Vec theta(const Vec& coords) const;
    // theta0 = (cos t, sin t, 0, ...)
    static FiberChart from_angle(int m, double t);

private:
    Vec theta0_;
    Mat basis_;
};

// Perturbation hook: returns the displaced point for (u, v, theta, x). The
// result is renormalized to the unit sphere by the chart.
using Perturbation = std::function<Vec(double, double, const Vec&, const Vec&)>;

// x + eps sin(3u + 2 theta_1) cos(2v + theta_2) d for a fixed unit direction d
// of R^{m+3}; a smooth, generic deformation used as a detector control.
Perturbation smooth_bump(double eps, int m);

// Evaluates the envelope near one base point. Frames at nearby z are all
// seeded by the base frame, so the map (u, v, fiber coords) -> x is smooth.
// Frames are cached by exact (u, v).
class EnvelopeChart {
public:
    EnvelopeChart(const PolyCurve& xi, const CongruenceFrame& base, FiberChart fiber);

    const CongruenceFrame& frame(double u, double v);
    Vec point(double u, double v, const Vec& fiberCoords);
    int m() const { return base_.m(); }
    const FiberChart& fiber() const { return fiber_; }
    void set_fiber(FiberChart fiber);
    void set_perturbation(Perturbation p) { perturb_ = std::move(p); }

    // Second-order jet in (u, v, fiber coords) around (u0, v0, c0) on a
    // 5^m lattice with spacing s (Richardson with s and 2s).
    ImmersionJet jet(double u0, double v0, const Vec& c0, double s);

private:
    const PolyCurve* xi_;
    CongruenceFrame base_;
    FiberChart fiber_;
    Perturbation perturb_;
    std::map<std::pair<double, double>, CongruenceFrame> cache_;
};

struct ZGrid {
    double u0 = 0.2, u1 = 0.6;
    double v0 = 0.1, v1 = 0.5;
    int nu = 9, nv = 9;
    double u(int i) const { return nu == 1 ? u0 : u0 + (u1 - u0) * i / (nu - 1); }
    double v(int j) const { return nv == 1 ? v0 : v0 + (v1 - v0) * j / (nv - 1); }
};

// Frames at every z-grid node, continued in row-major order from the origin
// (each node is seeded by its left neighbour, or the node below at the start
// of a row). Nodes where the congruence is not regular are left empty and do
// not seed their neighbours.
std::vector<std::optional<CongruenceFrame>> continued_frames(const PolyCurve& xi, const ZGrid& grid,
                                                             const FrameTolerances& tol = {});

struct EnvelopeNode {
    int iu = 0, iv = 0, fiber = 0;
    double u = 0, v = 0, t = 0;
    bool regular = false;
    int rank = 0;
    std::string reason;
    EnvelopeSample sample;
    ImmersionJet jet;
};

struct EnvelopeField {
    int m = 3;
    ZGrid grid;
    int fiberSamples = 8;
    double fdStep = 1e-3;
    std::vector<EnvelopeNode> nodes;  // row-major (iu, iv, fiber)

    std::size_t regular_count() const;
    void write_csv(std::ostream& os) const;
    void write_obj(std::ostream& os) const;
    nlohmann::json regular_mask() const;
};

// Samples the envelope at every (z node, fiber angle 2 pi k / fiberSamples)
// with second-order jets of lattice spacing fdStep / 2. Irregular points are
// flagged, not fatal. A perturbation, when given, is applied to every point.
EnvelopeField envelope_immersion(const PolyCurve& xi, int m, const ZGrid& grid, int fiberSamples, double fdStep,
                                 const Perturbation& perturb = {});

}  // namespace wintgen
