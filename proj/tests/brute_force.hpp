#pragma once

// Exhaustive check of the Wintgen ideal normal form for m = 3: minimizes
//   |A_1 - mu (c C_1 - s C_2)|^2 + |A_2 - mu (s C_1 + c C_2)|^2
// over tangent rotations R (ZYZ Euler angles on a regular grid) applied to the
// traceless pair, with the normal angle and mu solved in closed form:
// for fixed R the minimum is |A|^2 - (p^2 + q^2) / 4 where
//   p = <A_1, R C_1 R^T> + <A_2, R C_2 R^T>,  q = <A_2, R C_1 R^T> - <A_1, R C_2 R^T>.

#include <array>
#include <cmath>
#include <numbers>
#include <vector>

#include <Eigen/Dense>

namespace testing {

class RotationGridOracle {
public:
    explicit RotationGridOracle(double stepDegrees) {
        const double step = stepDegrees * std::numbers::pi / 180;
        const int na = static_cast<int>(std::lround(360 / stepDegrees));
        const int nb = static_cast<int>(std::lround(180 / stepDegrees)) + 1;
        Eigen::Matrix3d c1 = Eigen::Matrix3d::Zero(), c2 = Eigen::Matrix3d::Zero();
        c1(0, 1) = c1(1, 0) = 1;
        c2(0, 0) = 1;
        c2(1, 1) = -1;
        for (int i = 0; i < na; ++i)
            for (int j = 0; j < nb; ++j)
                for (int k = 0; k < na; ++k) {
                    const Eigen::Matrix3d r = (Eigen::AngleAxisd(i * step, Eigen::Vector3d::UnitZ()) *
                                               Eigen::AngleAxisd(j * step, Eigen::Vector3d::UnitY()) *
                                               Eigen::AngleAxisd(k * step, Eigen::Vector3d::UnitZ()))
                                                  .toRotationMatrix();
                    rotated_.push_back(pack(r * c1 * r.transpose()));
                    rotated_.push_back(pack(r * c2 * r.transpose()));
                }
    }

    std::size_t size() const { return rotated_.size() / 2; }

    // Smallest residual over the grid, relative to |A|^2.
    double relative_residual(const Eigen::Matrix3d& a1, const Eigen::Matrix3d& a2) const {
        const Sym s1 = pack(a1), s2 = pack(a2);
        const double norm = dot(s1, s1) + dot(s2, s2);
        double best = 0;
        for (std::size_t r = 0; r < rotated_.size(); r += 2) {
            const Sym& m1 = rotated_[r];
            const Sym& m2 = rotated_[r + 1];
            const double p = dot(s1, m1) + dot(s2, m2);
            const double q = dot(s2, m1) - dot(s1, m2);
            best = std::max(best, p * p + q * q);
        }
        return 1 - best / (4 * norm);
    }

private:
    // xx, yy, zz, xy, xz, yz with off-diagonal weight folded into dot().
    using Sym = std::array<double, 6>;
    static Sym pack(const Eigen::Matrix3d& m) { return {m(0, 0), m(1, 1), m(2, 2), m(0, 1), m(0, 2), m(1, 2)}; }
    static double dot(const Sym& a, const Sym& b) {
        return a[0] * b[0] + a[1] * b[1] + a[2] * b[2] + 2 * (a[3] * b[3] + a[4] * b[4] + a[5] * b[5]);
    }

    std::vector<Sym> rotated_;
};

}  // namespace testing
