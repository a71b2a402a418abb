#pragma once

// Distance of a pair of shape operators to the Wintgen ideal normal form
//   A_1 = l_1 I + mu [[0,1],[1,0]] (+) 0,   A_2 = l_2 I + mu diag(1,-1) (+) 0
// and extraction of the frames that realize it.

#include <utility>
#include <vector>

#include "wintgen/lorentz.hpp"

namespace wintgen {

struct TracelessPair {
    Mat A1, A2;
    double H1 = 0.0, H2 = 0.0;
};

TracelessPair traceless_pair(const Mat& A1, const Mat& A2);

struct WintgenReport {
    double defect = 0.0;
    double r1 = 0.0, r2 = 0.0, r3 = 0.0, r4 = 0.0;
    // Columns are E_1..E_m in the input orthonormal frame; E_1, E_2 span D.
    Mat adaptedTangentFrame;
    // The adapted normals are (c n_1 + s n_2, -s n_1 + c n_2) with this angle.
    double adaptedNormalAngle = 0.0;
    Mat D;  // m x 2, = first two columns of adaptedTangentFrame
    double mu0 = 0.0;
};

// Traceless symmetric inputs, not both zero.
WintgenReport wintgen_defect(const Mat& At1, const Mat& At2);

// Rotates a p x m tensor (rows: normals, columns: tangent directions) into the
// adapted frames of a report.
Mat to_adapted(const WintgenReport& report, const Mat& tensor);

// Rebuilds (A_1, A_2) from the report, mu0 and the removed mean curvatures.
std::pair<Mat, Mat> reconstruct(const WintgenReport& report, double H1, double H2);

// Canonical pair (mu [[0,1],[1,0]] (+) 0, mu diag(1,-1) (+) 0).
std::pair<Mat, Mat> canonical_pair(int m, double mu);

struct DefectStatistics {
    std::size_t count = 0;
    double max = 0.0;
    double median = 0.0;
};

DefectStatistics summarize(std::vector<double> values);

}  // namespace wintgen
