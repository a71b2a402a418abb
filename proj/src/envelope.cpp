#include "wintgen/envelope.hpp"

#include <cmath>
#include <numbers>
#include <ostream>

#include "wintgen/errors.hpp"
#include "wintgen/quadric.hpp"

namespace wintgen {

namespace {

LorentzVec lorentz_normalized(const LorentzVec& v) { return v / std::sqrt(inner(v, v)); }

}  // namespace

CongruenceFrame congruence_frame(const CurveJet& jet, const CongruenceFrame* previous, const FrameTolerances& tol) {
    const int n = static_cast<int>(jet.value.size());
    if (n < 6) throw DimensionMismatch(n, 6);
    if (jet.dz.size() != n) throw DimensionMismatch(jet.dz.size(), n);

    const std::vector<LorentzVec> v = {jet.value.real(), -jet.value.imag(), jet.dz.real(), jet.dz.imag()};
    const Signature sig = subspace_signature(v, tol.rankRel);
    if (sig != Signature{0, 4, 0}) throw RegularityError(sig.neg, sig.pos, sig.null);

    CongruenceFrame f;
    f.z = jet.z;
    f.xi1 = lorentz_normalized(v[0]);
    f.xi2 = v[1] - inner(v[1], f.xi1) * f.xi1;
    f.xi2 = lorentz_normalized(f.xi2);

    CVec w = horizontal(jet.dz, jet.value);
    if (previous != nullptr) {
        const CVec target = previous->eta1.cast<cplx>() + cplx(0, 1) * previous->eta2.cast<cplx>();
        const cplx c = w.dot(target);  // conj(w) . target
        if (std::abs(c) > 0) w *= c / std::abs(c);
    } else {
        Eigen::Index k = 0;
        w.cwiseAbs().maxCoeff(&k);
        w *= std::conj(w[k]) / std::abs(w[k]);
    }
    auto clean = [&](LorentzVec e, std::initializer_list<const LorentzVec*> against) {
        for (int pass = 0; pass < 2; ++pass)
            for (const auto* a : against) e -= inner(e, *a) * *a;
        return lorentz_normalized(e);
    };
    f.eta1 = clean(w.real(), {&f.xi1, &f.xi2});
    f.eta2 = clean(w.imag(), {&f.xi1, &f.xi2, &f.eta1});

    const std::vector<LorentzVec> basis = {f.xi1, f.xi2, f.eta1, f.eta2};
    const PseudoFrame* seed = previous != nullptr ? &previous->complement : nullptr;
    f.complement = orthonormal_complement(basis, Signature{1, n - 5, 0}, seed, tol);
    if (seed == nullptr && f.complement.vectors[0][0] < 0) f.complement.vectors[0] = -f.complement.vectors[0];
    return f;
}

EnvelopeSample envelope_point(const CongruenceFrame& frame, const Vec& theta, double tol) {
    const int m = frame.m();
    if (theta.size() != m - 1) throw DimensionMismatch(theta.size(), m - 1);
    if (std::abs(theta.norm() - 1.0) > 1e-12) throw Error("fiber point must be a unit vector");
    EnvelopeSample s;
    s.z = frame.z;
    s.theta = theta;
    s.Y = frame.complement.vectors[0];
    for (int j = 0; j < m - 1; ++j) s.Y += theta[j] * frame.complement.vectors[j + 1];
    if (s.Y[0] <= tol * s.Y.norm()) throw ChartError("envelope point at infinity of the sphere chart (Y^0 <= 0)");
    s.x = s.Y.tail(s.Y.size() - 1) / s.Y[0];
    return s;
}

FiberChart::FiberChart(Vec theta0) : theta0_(std::move(theta0)) {
    const auto k = theta0_.size();
    if (k < 2) throw DimensionMismatch(k, 2);
    theta0_.normalize();
    if (k == 2) {
        basis_ = Mat::Zero(2, 1);
        return;
    }
    basis_.resize(k, k - 1);
    int filled = 0;
    for (Eigen::Index c = 0; c < k && filled < k - 1; ++c) {
        Vec e = Vec::Unit(k, c);
        for (int pass = 0; pass < 2; ++pass) {
            e -= theta0_.dot(e) * theta0_;
            for (int j = 0; j < filled; ++j) e -= basis_.col(j).dot(e) * basis_.col(j);
        }
        if (e.norm() < 1e-6) continue;
        basis_.col(filled++) = e.normalized();
    }
}

Vec FiberChart::theta(const Vec& coords) const {
    if (coords.size() != dim()) throw DimensionMismatch(coords.size(), dim());
    if (theta0_.size() == 2) {
        const double c = std::cos(coords[0]), s = std::sin(coords[0]);
        return Vec{{c * theta0_[0] - s * theta0_[1], s * theta0_[0] + c * theta0_[1]}};
    }
    const double r2 = coords.squaredNorm();
    if (r2 >= 1.0) throw ChartError("orthographic fiber chart leaves the unit ball");
    return std::sqrt(1.0 - r2) * theta0_ + basis_ * coords;
}

FiberChart FiberChart::from_angle(int m, double t) {
    Vec th = Vec::Zero(m - 1);
    th[0] = std::cos(t);
    th[1] = std::sin(t);
    return FiberChart(th);
}

Perturbation smooth_bump(double eps, int m) {
    Vec dir(m + 3);
    const double pattern[] = {1, -2, 3, 1, 2, -1};
    for (int k = 0; k < m + 3; ++k) dir[k] = pattern[k % 6] + 0.25 * (k / 6);
    dir.normalize();
    return [eps, dir](double u, double v, const Vec& th, const Vec& x) {
        return Vec(x + eps * std::sin(3 * u + 2 * th[0]) * std::cos(2 * v + th[1]) * dir);
    };
}

EnvelopeChart::EnvelopeChart(const PolyCurve& xi, const CongruenceFrame& base, FiberChart fiber)
    : xi_(&xi), base_(base), fiber_(std::move(fiber)) {
    if (fiber_.base().size() != base_.m() - 1) throw DimensionMismatch(fiber_.base().size(), base_.m() - 1);
}

void EnvelopeChart::set_fiber(FiberChart fiber) {
    if (fiber.base().size() != base_.m() - 1) throw DimensionMismatch(fiber.base().size(), base_.m() - 1);
    fiber_ = std::move(fiber);
}

const CongruenceFrame& EnvelopeChart::frame(double u, double v) {
    const auto key = std::make_pair(u, v);
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
    const auto jet = xi_->jet({u, v}, 1);
    return cache_.emplace(key, congruence_frame(jet, &base_)).first->second;
}

Vec EnvelopeChart::point(double u, double v, const Vec& fiberCoords) {
    const auto& f = frame(u, v);
    const Vec th = fiber_.theta(fiberCoords);
    Vec x = envelope_point(f, th).x;
    if (perturb_) x = perturb_(u, v, th, x).normalized();
    return x;
}

ImmersionJet EnvelopeChart::jet(double u0, double v0, const Vec& c0, double s) {
    const int m = this->m();
    if (c0.size() != m - 2) throw DimensionMismatch(c0.size(), m - 2);
    GridField field(std::vector<int>(m, 5), std::vector<double>(m, s), m + 3);
    std::vector<int> axes(m);
    for (int a = 0; a < m; ++a) axes[a] = a;
    for (std::size_t f = 0; f < field.points(); ++f) {
        const auto idx = field.lattice_index(f);
        // only the points the Richardson stencils read
        int nonzero = 0, mag = -1;
        bool used = true;
        for (int a = 0; a < m; ++a) {
            const int off = std::abs(idx[a] - 2);
            if (off == 0) continue;
            ++nonzero;
            if (mag >= 0 && off != mag) used = false;
            mag = off;
        }
        if (!used || nonzero > 2) continue;
        Vec c = c0;
        for (int a = 2; a < m; ++a) c[a - 2] += (idx[a] - 2) * s;
        field.at_flat(f) = point(u0 + (idx[0] - 2) * s, v0 + (idx[1] - 2) * s, c);
    }
    return ImmersionJet::from_fd(fd_jet(field, std::vector<int>(m, 2), axes));
}

std::vector<std::optional<CongruenceFrame>> continued_frames(const PolyCurve& xi, const ZGrid& grid,
                                                             const FrameTolerances& tol) {
    std::vector<std::optional<CongruenceFrame>> frames(static_cast<std::size_t>(grid.nu * grid.nv));
    auto at = [&](int i, int j) -> std::optional<CongruenceFrame>& { return frames[i * grid.nv + j]; };
    for (int i = 0; i < grid.nu; ++i)
        for (int j = 0; j < grid.nv; ++j) {
            const CongruenceFrame* seed = nullptr;
            if (j > 0 && at(i, j - 1)) seed = &*at(i, j - 1);
            else if (i > 0 && at(i - 1, j)) seed = &*at(i - 1, j);
            try {
                at(i, j) = congruence_frame(xi.jet({grid.u(i), grid.v(j)}, 1), seed, tol);
            } catch (const Error&) {
                at(i, j).reset();
            }
        }
    return frames;
}

std::size_t EnvelopeField::regular_count() const {
    std::size_t c = 0;
    for (const auto& n : nodes) c += n.regular ? 1 : 0;
    return c;
}

void EnvelopeField::write_csv(std::ostream& os) const {
    os.precision(17);
    os << "u,v,t";
    for (int k = 0; k < m + 3; ++k) os << ",x" << k;
    os << '\n';
    for (const auto& n : nodes) {
        if (!n.regular) continue;
        os << n.u << ',' << n.v << ',' << n.t;
        for (int k = 0; k < n.sample.x.size(); ++k) os << ',' << n.sample.x[k];
        os << '\n';
    }
}

void EnvelopeField::write_obj(std::ostream& os) const {
    os.precision(12);
    os << "# envelope samples, first three coordinates\n";
    for (const auto& n : nodes)
        if (n.regular) os << "v " << n.sample.x[0] << ' ' << n.sample.x[1] << ' ' << n.sample.x[2] << '\n';
}

nlohmann::json EnvelopeField::regular_mask() const {
    nlohmann::json mask = nlohmann::json::array();
    nlohmann::json reasons = nlohmann::json::object();
    for (const auto& n : nodes) {
        mask.push_back(n.regular ? 1 : 0);
        if (!n.regular) {
            const std::string key = std::to_string(n.iu) + "," + std::to_string(n.iv) + "," + std::to_string(n.fiber);
            reasons[key] = n.reason;
        }
    }
    return {{"shape", {grid.nu, grid.nv, fiberSamples}}, {"regular", mask}, {"reasons", reasons}};
}

EnvelopeField envelope_immersion(const PolyCurve& xi, int m, const ZGrid& grid, int fiberSamples, double fdStep,
                                 const Perturbation& perturb) {
    if (xi.dimension() != m + 4) throw DimensionMismatch(xi.dimension(), m + 4);
    EnvelopeField field;
    field.m = m;
    field.grid = grid;
    field.fiberSamples = fiberSamples;
    field.fdStep = fdStep;
    const auto frames = continued_frames(xi, grid);
    for (int i = 0; i < grid.nu; ++i)
        for (int j = 0; j < grid.nv; ++j) {
            const auto& fr = frames[i * grid.nv + j];
            std::optional<EnvelopeChart> chart;
            if (fr) {
                chart.emplace(xi, *fr, FiberChart::from_angle(m, 0.0));
                if (perturb) chart->set_perturbation(perturb);
            }
            for (int k = 0; k < fiberSamples; ++k) {
                EnvelopeNode node;
                node.iu = i;
                node.iv = j;
                node.fiber = k;
                node.u = grid.u(i);
                node.v = grid.v(j);
                node.t = 2 * std::numbers::pi * k / fiberSamples;
                if (!fr) {
                    node.reason = "congruence not regular";
                    field.nodes.push_back(std::move(node));
                    continue;
                }
                try {
                    const auto fiber = FiberChart::from_angle(m, node.t);
                    node.sample = envelope_point(*fr, fiber.base());
                    if (perturb) node.sample.x = perturb(node.u, node.v, fiber.base(), node.sample.x).normalized();
                    chart->set_fiber(fiber);
                    node.jet = chart->jet(node.u, node.v, Vec::Zero(m - 2), fdStep / 2);
                    node.rank = numerical_rank(node.jet.first);
                    node.regular = node.rank == m;
                    if (!node.regular) node.reason = "rank " + std::to_string(node.rank);
                } catch (const Error& e) {
                    node.reason = e.what();
                }
                field.nodes.push_back(std::move(node));
            }
        }
    return field;
}

}  // namespace wintgen
