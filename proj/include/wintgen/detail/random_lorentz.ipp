#pragma once

#include <cmath>
#include <random>

namespace wintgen {

template <class Rng>
Mat random_lorentz(int n, Rng& rng, double maxRapidity) {
    std::normal_distribution<double> normal(0.0, 1.0);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);

    auto spatialRotation = [&]() {
        Mat g(n - 1, n - 1);
        for (int i = 0; i < n - 1; ++i)
            for (int j = 0; j < n - 1; ++j) g(i, j) = normal(rng);
        Eigen::HouseholderQR<Mat> qr(g);
        Mat q = qr.householderQ();
        if (q.determinant() < 0) q.col(0) = -q.col(0);
        Mat r = Mat::Identity(n, n);
        r.block(1, 1, n - 1, n - 1) = q;
        return r;
    };

    const double rapidity = maxRapidity * unit(rng);
    Mat boost = Mat::Identity(n, n);
    boost(0, 0) = std::cosh(rapidity);
    boost(0, 1) = std::sinh(rapidity);
    boost(1, 0) = std::sinh(rapidity);
    boost(1, 1) = std::cosh(rapidity);
    return spatialRotation() * boost * spatialRotation();
}

}  // namespace wintgen
