#pragma once

// Per-sample verification of an envelope: Moebius invariants, Wintgen
// defect, Moebius form in the adapted frame, forward Gauss-map check and the
// center surface seen from the envelope side.

#include <string>

#include "wintgen/centers.hpp"
#include "wintgen/envelope.hpp"
#include "wintgen/moebius.hpp"
#include "wintgen/quadric.hpp"
#include "wintgen/wintgen_check.hpp"

namespace wintgen {

struct AnalysisOptions {
    double fdStep = 1e-3;   // inner lattice spacing is fdStep / 2
    int outerFactor = 4;    // spacing of the derived-field lattice, in inner spacings
    double umbilicRel = kUmbilicRel;
};

struct SampleReport {
    double u = 0, v = 0;
    Vec fiber;
    int rank = 0;
    double rho = 0.0;
    double H1 = 0.0, H2 = 0.0;
    WintgenReport wintgen;
    double traceResidual = 0.0;
    double normResidual = 0.0;
    double sphereFrameDefect = 0.0;
    double sphereDistance = 0.0;  // mean curvature sphere vs the input curve
    Mat C, Cadapted;
    double cAntisym = 0.0;        // |C^1_1 + C^2_2|
    double cSym = 0.0;            // |C^1_2 - C^2_1|
    double cFiber2 = 0.0;         // max_a |C^2_a|
    double cFiber1 = 0.0;         // max_a |C^1_a|
    double cScale = 0.0;          // max |C| entry
    GaussCheckReport gauss;
};

// Runs the full chain at (u, v, fiber coords c) of the chart. The input lift
// xi(z) is only used for the sphere distance.
SampleReport analyze_sample(EnvelopeChart& chart, const PolyCurve& xi, double u, double v, const Vec& c,
                            const AnalysisOptions& opt = {});

// Mean curvature sphere (xi_1 - i xi_2) of the envelope at one point, computed
// from its second-order jet.
CVec envelope_sphere(EnvelopeChart& chart, double u, double v, const Vec& c, double s,
                     const std::vector<Vec>* seedNormals = nullptr);

// Harmonicity and conformality of the center surface obtained from the
// envelope's mean curvature spheres on a 5 x 5 (u, v) lattice of spacing
// `outer` around (u, v); each sphere comes from jets of spacing fdStep / 2.
HarmonicityReport envelope_center_residual(EnvelopeChart& chart, const PolePair& poles, double u, double v,
                                           const Vec& c, double fdStep, double outer);

}  // namespace wintgen
