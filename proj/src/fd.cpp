#include "wintgen/fd.hpp"

#include <cmath>
#include <istream>
#include <limits>
#include <numeric>
#include <ostream>
#include <sstream>
#include <string>

#include "wintgen/errors.hpp"

namespace wintgen {

GridField::GridField(std::vector<int> shape, std::vector<double> steps, int valueDim)
    : shape_(std::move(shape)), steps_(std::move(steps)), valueDim_(valueDim) {
    if (shape_.size() != steps_.size()) throw DimensionMismatch(shape_.size(), steps_.size());
    for (int s : shape_)
        if (s <= 0) throw Error("grid shape entries must be positive");
    data_.assign(points() * static_cast<std::size_t>(valueDim_), 0.0);
}

std::size_t GridField::points() const {
    return std::accumulate(shape_.begin(), shape_.end(), std::size_t{1},
                           [](std::size_t a, int b) { return a * static_cast<std::size_t>(b); });
}

std::size_t GridField::flat_index(const std::vector<int>& index) const {
    if (index.size() != shape_.size()) throw DimensionMismatch(index.size(), shape_.size());
    std::size_t flat = 0;
    for (std::size_t a = 0; a < shape_.size(); ++a) {
        if (index[a] < 0 || index[a] >= shape_[a]) throw BoundaryViolation("lattice index out of range");
        flat = flat * static_cast<std::size_t>(shape_[a]) + static_cast<std::size_t>(index[a]);
    }
    return flat;
}

std::vector<int> GridField::lattice_index(std::size_t flat) const {
    std::vector<int> idx(shape_.size());
    for (std::size_t a = shape_.size(); a-- > 0;) {
        idx[a] = static_cast<int>(flat % static_cast<std::size_t>(shape_[a]));
        flat /= static_cast<std::size_t>(shape_[a]);
    }
    return idx;
}

Eigen::Map<Vec> GridField::at(const std::vector<int>& index) { return at_flat(flat_index(index)); }
Eigen::Map<const Vec> GridField::at(const std::vector<int>& index) const { return at_flat(flat_index(index)); }
Eigen::Map<Vec> GridField::at_flat(std::size_t flat) {
    return Eigen::Map<Vec>(data_.data() + flat * static_cast<std::size_t>(valueDim_), valueDim_);
}
Eigen::Map<const Vec> GridField::at_flat(std::size_t flat) const {
    return Eigen::Map<const Vec>(data_.data() + flat * static_cast<std::size_t>(valueDim_), valueDim_);
}

void GridField::write_csv(std::ostream& os) const {
    os.precision(17);
    for (std::size_t f = 0; f < points(); ++f) {
        const auto idx = lattice_index(f);
        for (std::size_t a = 0; a < idx.size(); ++a) os << idx[a] << ',';
        const auto v = at_flat(f);
        for (int k = 0; k < valueDim_; ++k) os << v[k] << (k + 1 < valueDim_ ? ',' : '\n');
    }
}

GridField GridField::read_csv(std::istream& is, std::vector<int> shape, std::vector<double> steps) {
    const auto nAxes = shape.size();
    std::string line;
    std::vector<std::pair<std::vector<int>, std::vector<double>>> rows;
    int valueDim = -1;
    int lineNo = 0;
    while (std::getline(is, line)) {
        ++lineNo;
        if (line.empty()) continue;
        std::stringstream ss(line);
        std::string cell;
        std::vector<int> idx;
        std::vector<double> vals;
        while (std::getline(ss, cell, ',')) {
            try {
                if (idx.size() < nAxes)
                    idx.push_back(std::stoi(cell));
                else
                    vals.push_back(std::stod(cell));
            } catch (const std::exception&) {
                throw ConfigError("grid CSV line " + std::to_string(lineNo) + ": bad number '" + cell + "'");
            }
        }
        if (idx.size() != nAxes) throw ConfigError("grid CSV line " + std::to_string(lineNo) + ": too few fields");
        if (valueDim < 0) valueDim = static_cast<int>(vals.size());
        if (static_cast<int>(vals.size()) != valueDim)
            throw ConfigError("grid CSV line " + std::to_string(lineNo) + ": inconsistent vector length");
        rows.emplace_back(std::move(idx), std::move(vals));
    }
    GridField field(std::move(shape), std::move(steps), std::max(valueDim, 0));
    if (rows.size() != field.points()) throw ConfigError("grid CSV: missing samples");
    std::vector<bool> seen(field.points(), false);
    for (auto& [idx, vals] : rows) {
        const auto f = field.flat_index(idx);
        if (seen[f]) throw ConfigError("grid CSV: duplicate lattice point");
        seen[f] = true;
        field.at_flat(f) = Eigen::Map<const Vec>(vals.data(), static_cast<Eigen::Index>(vals.size()));
    }
    return field;
}

FdJet fd_jet(const GridField& field, const std::vector<int>& index, const std::vector<int>& axes,
             bool secondOrder) {
    constexpr double eps = std::numeric_limits<double>::epsilon();
    const auto& shape = field.shape();
    for (int a : axes) {
        if (a < 0 || a >= field.axes()) throw BoundaryViolation("axis out of range");
        if (index[a] < 2 || index[a] > shape[a] - 3)
            throw BoundaryViolation("fd_jet needs two cells of clearance along axis " + std::to_string(a));
    }
    const int k = static_cast<int>(axes.size());
    const int d = field.value_dim();

    auto sample = [&](int a, int da, int b = 0, int db = 0) {
        std::vector<int> idx = index;
        idx[axes[a]] += da;
        if (db != 0) idx[axes[b]] += db;
        return Vec(field.at(idx));
    };

    FdJet jet;
    jet.value = field.at(index);
    const double scale = jet.value.cwiseAbs().maxCoeff() + 1e-300;
    jet.gradient.resize(d, k);
    jet.gradientErr.resize(d, k);

    for (int a = 0; a < k; ++a) {
        const double s = field.steps()[axes[a]];
        const Vec d1 = (sample(a, 1) - sample(a, -1)) / (2 * s);
        const Vec d2 = (sample(a, 2) - sample(a, -2)) / (4 * s);
        jet.gradient.col(a) = (4 * d1 - d2) / 3;
        // truncation estimate plus a rounding floor
        jet.gradientErr.col(a) = ((d1 - d2).cwiseAbs() / 3).array() + 4 * eps * scale / s;
    }
    if (!secondOrder) return jet;

    jet.hessian.assign(k, Mat(d, k));
    jet.hessianErr.assign(k, Mat(d, k));
    for (int a = 0; a < k; ++a) {
        const double sa = field.steps()[axes[a]];
        for (int b = a; b < k; ++b) {
            const double sb = field.steps()[axes[b]];
            Vec d1, d2;
            if (a == b) {
                d1 = (sample(a, 1) - 2 * jet.value + sample(a, -1)) / (sa * sa);
                d2 = (sample(a, 2) - 2 * jet.value + sample(a, -2)) / (4 * sa * sa);
            } else {
                d1 = (sample(a, 1, b, 1) - sample(a, 1, b, -1) - sample(a, -1, b, 1) + sample(a, -1, b, -1)) /
                     (4 * sa * sb);
                d2 = (sample(a, 2, b, 2) - sample(a, 2, b, -2) - sample(a, -2, b, 2) + sample(a, -2, b, -2)) /
                     (16 * sa * sb);
            }
            const Vec r = (4 * d1 - d2) / 3;
            const Vec e = ((d1 - d2).cwiseAbs() / 3).array() + 16 * eps * scale / (sa * sb);
            jet.hessian[a].col(b) = r;
            jet.hessian[b].col(a) = r;
            jet.hessianErr[a].col(b) = e;
            jet.hessianErr[b].col(a) = e;
        }
    }
    return jet;
}

}  // namespace wintgen
