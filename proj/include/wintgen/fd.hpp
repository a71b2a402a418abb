#pragma once

// Sampled real vector fields on rectangular lattices and finite-difference
// jets with Richardson extrapolation.

#include <iosfwd>
#include <vector>

#include "wintgen/lorentz.hpp"

namespace wintgen {

// Real vectors of fixed length sampled on a uniform lattice. Storage is
// row-major over the lattice (last axis fastest), one contiguous vector per
// lattice point.
class GridField {
public:
    GridField() = default;
    GridField(std::vector<int> shape, std::vector<double> steps, int valueDim);

    int axes() const { return static_cast<int>(shape_.size()); }
    const std::vector<int>& shape() const { return shape_; }
    const std::vector<double>& steps() const { return steps_; }
    int value_dim() const { return valueDim_; }
    std::size_t points() const;

    std::size_t flat_index(const std::vector<int>& index) const;
    std::vector<int> lattice_index(std::size_t flat) const;

    Eigen::Map<Vec> at(const std::vector<int>& index);
    Eigen::Map<const Vec> at(const std::vector<int>& index) const;
    Eigen::Map<Vec> at_flat(std::size_t flat);
    Eigen::Map<const Vec> at_flat(std::size_t flat) const;

    // CSV: one row per lattice point, lattice indices then the vector entries.
    void write_csv(std::ostream& os) const;
    static GridField read_csv(std::istream& is, std::vector<int> shape, std::vector<double> steps);

private:
    std::vector<int> shape_;
    std::vector<double> steps_;
    int valueDim_ = 0;
    std::vector<double> data_;
};

// Value, gradient and Hessian of a sampled field at one lattice point along a
// subset of axes. gradient.col(a) is d/d(axes[a]); hessian[a].col(b) is the
// mixed second derivative. The *_err members are per-entry error estimates.
struct FdJet {
    Vec value;
    Mat gradient;
    Mat gradientErr;
    std::vector<Mat> hessian;
    std::vector<Mat> hessianErr;
};

// Central differences with lattice steps s and 2s, combined by Richardson
// extrapolation (4 D_s - D_2s) / 3. Requires two cells of clearance from the
// boundary along every requested axis; throws BoundaryViolation otherwise.
FdJet fd_jet(const GridField& field, const std::vector<int>& index, const std::vector<int>& axes,
             bool secondOrder = true);

}  // namespace wintgen
