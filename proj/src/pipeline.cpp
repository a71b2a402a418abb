#include "wintgen/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <set>
#include <sstream>

#include "wintgen/analysis.hpp"
#include "wintgen/errors.hpp"

namespace wintgen {

using nlohmann::json;

std::map<std::string, double> default_tolerances() {
    return {
        {"curveIsotropy", 1e-12},   {"roundtrip", 1e-12},      {"wintgenDefect", 1e-4},
        {"sphereDistance", 1e-4},   {"gaussFiber", 1e-4},      {"gaussIsotropy", 1e-4},
        {"submersion", 1e-3},       {"moebiusAlgebraic", 1e-10}, {"moebiusForm", 1e-3},
        {"harmonicityAnalytic", 1e-10}, {"harmonicityFd", 1e-4}, {"pathAgreement", 1e-10},
        {"centerIsotropy", 1e-10},  {"frame", 1e-10},          {"lightlike", 1e-12},
        {"sphericity", 1e-10},      {"sphereRadius", 1e-6},
    };
}

namespace {

const std::set<std::string> kOutputs = {"curve.json",   "lift.json",    "envelope.csv", "envelope.obj",
                                        "mask.json",    "defects.json", "moebius.json", "gauss.json",
                                        "centers.csv",  "centers.obj",  "centers.json", "roundtrip.json"};

const std::set<std::string> kKeys = {"m",          "fixture", "weierstrass", "zDomain", "fiberSamples",
                                     "fdStep",     "outerFactor", "centerStep", "perturbation", "seed",
                                     "trials",     "poles",   "tolerances",  "outputs"};

double number(const json& doc, const std::string& key) {
    if (!doc.is_number()) throw ConfigError("field '" + key + "': expected a number");
    return doc.get<double>();
}

int integer(const json& doc, const std::string& key) {
    if (!doc.is_number_integer()) throw ConfigError("field '" + key + "': expected an integer");
    return doc.get<int>();
}

std::pair<double, double> range(const json& doc, const std::string& key) {
    if (!doc.is_array() || doc.size() != 2 || !doc[0].is_number() || !doc[1].is_number())
        throw ConfigError("field '" + key + "': expected [lo, hi]");
    return {doc[0].get<double>(), doc[1].get<double>()};
}

Vec vector_field(const json& doc, const std::string& key) {
    if (!doc.is_array() || doc.empty()) throw ConfigError("field '" + key + "': expected an array of numbers");
    Vec v(doc.size());
    for (std::size_t i = 0; i < doc.size(); ++i) v[i] = number(doc[i], key + "[" + std::to_string(i) + "]");
    return v;
}

json vec_json(const Vec& v) {
    json a = json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v[i]);
    return a;
}

json mat_json(const Mat& m) {
    json a = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) a.push_back(vec_json(m.row(i).transpose()));
    return a;
}

double max_of(const std::vector<double>& v) { return v.empty() ? 0.0 : *std::max_element(v.begin(), v.end()); }

}  // namespace

PipelineConfig PipelineConfig::from_json(const json& doc) {
    if (!doc.is_object()) throw ConfigError("configuration must be a JSON object");
    for (const auto& [key, _] : doc.items())
        if (!kKeys.count(key)) throw ConfigError("unknown field '" + key + "'");

    PipelineConfig c;
    if (doc.contains("fixture")) {
        if (!doc["fixture"].is_string()) throw ConfigError("field 'fixture': expected a string");
        c.fixture = doc["fixture"].get<std::string>();
    }
    if (doc.contains("weierstrass")) {
        const json& w = doc["weierstrass"];
        if (w.is_string()) c.fixture = w.get<std::string>();
        else c.weierstrass = weierstrass_from_json(w);
    }
    c.m = doc.contains("m") ? integer(doc["m"], "m") : c.data().m;
    if (doc.contains("zDomain")) {
        const json& z = doc["zDomain"];
        if (!z.is_object()) throw ConfigError("field 'zDomain': expected an object");
        for (const auto& [key, _] : z.items())
            if (key != "uRange" && key != "vRange" && key != "nu" && key != "nv")
                throw ConfigError("unknown field 'zDomain." + key + "'");
        if (z.contains("uRange")) std::tie(c.grid.u0, c.grid.u1) = range(z["uRange"], "zDomain.uRange");
        if (z.contains("vRange")) std::tie(c.grid.v0, c.grid.v1) = range(z["vRange"], "zDomain.vRange");
        if (z.contains("nu")) c.grid.nu = integer(z["nu"], "zDomain.nu");
        if (z.contains("nv")) c.grid.nv = integer(z["nv"], "zDomain.nv");
    }
    if (doc.contains("fiberSamples")) c.fiberSamples = integer(doc["fiberSamples"], "fiberSamples");
    if (doc.contains("fdStep")) c.fdStep = number(doc["fdStep"], "fdStep");
    if (doc.contains("outerFactor")) c.outerFactor = integer(doc["outerFactor"], "outerFactor");
    if (doc.contains("centerStep")) c.centerStep = number(doc["centerStep"], "centerStep");
    if (doc.contains("perturbation")) c.perturbation = number(doc["perturbation"], "perturbation");
    if (doc.contains("seed")) {
        if (!doc["seed"].is_number_unsigned()) throw ConfigError("field 'seed': expected a non-negative integer");
        c.seed = doc["seed"].get<std::uint64_t>();
    }
    if (doc.contains("trials")) c.trials = integer(doc["trials"], "trials");
    if (doc.contains("poles")) {
        const json& p = doc["poles"];
        if (!p.is_object() || !p.contains("p") || !p.contains("pStar"))
            throw ConfigError("field 'poles': expected {\"p\": [...], \"pStar\": [...]}");
        c.poles = std::make_pair(vector_field(p["p"], "poles.p"), vector_field(p["pStar"], "poles.pStar"));
    }
    if (doc.contains("tolerances")) {
        const json& t = doc["tolerances"];
        if (!t.is_object()) throw ConfigError("field 'tolerances': expected an object");
        for (const auto& [key, value] : t.items()) {
            if (!c.tolerances.count(key)) throw ConfigError("unknown tolerance 'tolerances." + key + "'");
            c.tolerances[key] = number(value, "tolerances." + key);
        }
    }
    if (doc.contains("outputs")) {
        const json& o = doc["outputs"];
        if (!o.is_array()) throw ConfigError("field 'outputs': expected an array of file names");
        for (const auto& e : o) {
            if (!e.is_string() || !kOutputs.count(e.get<std::string>()))
                throw ConfigError("field 'outputs': unknown export " + e.dump());
            c.outputs.push_back(e.get<std::string>());
        }
    }
    c.validate();
    return c;
}

PipelineConfig PipelineConfig::from_text(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        std::size_t line = 1, col = 1;
        for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
            if (text[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        throw ConfigError("config parse error at line " + std::to_string(line) + ", column " + std::to_string(col) +
                          ": " + e.what());
    }
    return from_json(doc);
}

json PipelineConfig::to_json() const {
    json doc;
    doc["m"] = m;
    if (weierstrass) doc["weierstrass"] = weierstrass_to_json(*weierstrass);
    else doc["fixture"] = fixture;
    doc["zDomain"] = {{"uRange", {grid.u0, grid.u1}}, {"vRange", {grid.v0, grid.v1}}, {"nu", grid.nu}, {"nv", grid.nv}};
    doc["fiberSamples"] = fiberSamples;
    doc["fdStep"] = fdStep;
    doc["outerFactor"] = outerFactor;
    doc["centerStep"] = centerStep;
    doc["perturbation"] = perturbation;
    doc["seed"] = seed;
    doc["trials"] = trials;
    if (poles) doc["poles"] = {{"p", vec_json(poles->first)}, {"pStar", vec_json(poles->second)}};
    doc["tolerances"] = tolerances;
    doc["outputs"] = outputs;
    return doc;
}

void PipelineConfig::validate() const {
    if (m < 2) throw ConfigError("field 'm': must be >= 2");
    if (data().m != m)
        throw ConfigError("field 'm': " + std::to_string(m) + " does not match the Weierstrass data (m = " +
                          std::to_string(data().m) + ")");
    if (grid.nu < 5 || grid.nv < 5) throw ConfigError("field 'zDomain': nu and nv must be >= 5");
    if (!(grid.u1 > grid.u0) || !(grid.v1 > grid.v0)) throw ConfigError("field 'zDomain': empty range");
    if (fiberSamples < 4) throw ConfigError("field 'fiberSamples': must be >= 4");
    if (!(fdStep > 0)) throw ConfigError("field 'fdStep': must be > 0");
    if (outerFactor < 1) throw ConfigError("field 'outerFactor': must be >= 1");
    if (!(centerStep > 0)) throw ConfigError("field 'centerStep': must be > 0");
    if (perturbation < 0) throw ConfigError("field 'perturbation': must be >= 0");
    if (trials < 1) throw ConfigError("field 'trials': must be >= 1");
    for (const auto& [name, value] : tolerances)
        if (!(value > 0)) throw ConfigError("tolerance '" + name + "' must be > 0");
    if (poles) {
        if (poles->first.size() != m + 4 || poles->second.size() != m + 4)
            throw ConfigError("field 'poles': vectors must have m + 4 components");
        pole_pair();
    }
}

WeierstrassData PipelineConfig::data() const {
    if (weierstrass) return *weierstrass;
    try {
        return wintgen::fixture(fixture);
    } catch (const ConfigError& e) {
        throw ConfigError(std::string("field 'fixture': ") + e.what());
    }
}

PolePair PipelineConfig::pole_pair() const {
    if (!poles) return PolePair::standard(m + 4);
    try {
        return PolePair::from(poles->first, poles->second);
    } catch (const PoleNormalization& e) {
        throw ConfigError(std::string("field 'poles': ") + e.what());
    }
}

double PipelineConfig::tol(const std::string& name) const {
    const auto it = tolerances.find(name);
    if (it == tolerances.end()) throw ConfigError("unknown tolerance '" + name + "'");
    return it->second;
}

bool PipelineConfig::wants(const std::string& output) const {
    return outputs.empty() || std::find(outputs.begin(), outputs.end(), output) != outputs.end();
}

namespace {

struct NodeAnalysis {
    int iu = 0, iv = 0, fiber = 0;
    std::optional<SampleReport> report;
    std::string reason;
};

class Runner {
public:
    explicit Runner(const PipelineConfig& cfg)
        : cfg_(cfg), data_(cfg.data()), curve_(weierstrass_isotropic(data_)), poles_(cfg.pole_pair()),
          xi_(lift_to_quadric(curve_.x, poles_)) {}

    void generate();
    void lift();
    void construct();
    void check_wintgen();
    void gauss_check();
    void centers();
    void roundtrip();

    RunResult finish(const std::string& command) {
        RunResult r;
        r.pass = pass_;
        r.report = {{"version", WINTGEN_VERSION}, {"command", command}, {"config", cfg_.to_json()},
                    {"sections", sections_},     {"checks", checks_},   {"pass", pass_}};
        r.files = files_;
        return r;
    }

private:
    void check(const std::string& name, double value, const std::string& tolName) {
        const double t = cfg_.tol(tolName);
        const bool ok = std::isfinite(value) && value < t;
        checks_.push_back({{"name", name}, {"value", value}, {"tolerance", tolName}, {"bound", t}, {"pass", ok}});
        pass_ = pass_ && ok;
    }
    void check_exact(const std::string& name, bool holds) {
        checks_.push_back({{"name", name}, {"value", holds ? 0 : 1}, {"tolerance", "exact"}, {"bound", 0}, {"pass", holds}});
        pass_ = pass_ && holds;
    }
    void check_count(const std::string& name, std::size_t count, std::size_t atLeast) {
        const bool ok = count >= atLeast;
        checks_.push_back({{"name", name}, {"value", count}, {"tolerance", "minimum"}, {"bound", atLeast}, {"pass", ok}});
        pass_ = pass_ && ok;
    }
    void check_none(const std::string& name, std::size_t count) {
        checks_.push_back({{"name", name}, {"value", count}, {"tolerance", "none"}, {"bound", 0}, {"pass", count == 0}});
        pass_ = pass_ && count == 0;
    }
    void emit(const std::string& name, const std::string& contents) {
        if (cfg_.wants(name)) files_[name] = contents;
    }

    Perturbation perturbation() const {
        return cfg_.perturbation > 0 ? smooth_bump(cfg_.perturbation, cfg_.m) : Perturbation{};
    }
    const std::vector<std::optional<CongruenceFrame>>& frames() {
        if (!frames_) frames_ = continued_frames(xi_, cfg_.grid);
        return *frames_;
    }
    const std::vector<NodeAnalysis>& analysis();

    const PipelineConfig& cfg_;
    WeierstrassData data_;
    IsotropicCurve curve_;
    PolePair poles_;
    PolyCurve xi_;
    std::optional<std::vector<std::optional<CongruenceFrame>>> frames_;
    std::optional<std::vector<NodeAnalysis>> analysis_;
    json sections_ = json::object();
    json checks_ = json::array();
    bool pass_ = true;
    std::map<std::string, std::string> files_;
};

void Runner::generate() {
    const Poly sum = euclid_cinner(curve_.phi, curve_.phi);
    check_exact("generate.phiIsotropy", sum.is_zero());
    json doc = {{"weierstrass", weierstrass_to_json(data_)},
                {"phi", curve_to_json(curve_.phi)},
                {"x", curve_to_json(curve_.x)}};
    sections_["generate"] = {{"m", cfg_.m}, {"degree", curve_.x.degree()}, {"phiIsotropyExact", sum.is_zero()}};
    emit("curve.json", doc.dump(2) + "\n");
}

void Runner::lift() {
    const PolyCurve dxi = xi_.derivative();
    const bool iso = lorentz_cinner(xi_, xi_).is_zero();
    const bool isoZ = lorentz_cinner(dxi, dxi).is_zero();
    check_exact("lift.xiIsotropy", iso);
    check_exact("lift.xiZIsotropy", isoZ);

    const ZGrid& g = cfg_.grid;
    std::vector<CurveJet> jets;
    for (int i = 0; i < g.nu; ++i)
        for (int j = 0; j < g.nv; ++j) jets.push_back(xi_.jet({g.u(i), g.v(j)}, 2));
    json points = json::array();
    std::vector<double> isoRes, holoRes;
    std::size_t qplus = 0;
    for (const auto& jet : jets) {
        try {
            const IsotropyReport r = certify_point(jet);
            points.push_back({{"z", {r.z.real(), r.z.imag()}},
                              {"holo", r.holoResidual},
                              {"iso", r.isoResidual},
                              {"herm", r.hermitianNormSq},
                              {"classify", to_string(r.cls)}});
            isoRes.push_back(r.isoResidual);
            holoRes.push_back(r.holoResidual);
            if (r.cls == QuadricClass::QPlusPoint) ++qplus;
        } catch (const Error& e) {
            points.push_back({{"z", {jet.z.real(), jet.z.imag()}}, {"error", e.what()}});
        }
    }
    check("lift.isotropyResidual", max_of(isoRes), "curveIsotropy");
    check("lift.holomorphyResidual", max_of(holoRes), "curveIsotropy");
    check_count("lift.quadricPoints", qplus, jets.size());
    sections_["lift"] = {{"xiIsotropyExact", iso}, {"xiZIsotropyExact", isoZ}, {"points", jets.size()},
                         {"qPlusPoints", qplus}, {"maxIsotropyResidual", max_of(isoRes)}};
    emit("lift.json", json({{"xi", curve_to_json(xi_)}, {"points", points}}).dump(2) + "\n");
}

void Runner::construct() {
    const EnvelopeField field =
        envelope_immersion(xi_, cfg_.m, cfg_.grid, cfg_.fiberSamples, cfg_.fdStep, perturbation());
    const auto& fr = frames();
    std::vector<double> defects, lightlike, spherical;
    json perPoint = json::array();
    for (const auto& node : field.nodes) {
        if (!node.regular) continue;
        const auto& frame = fr[node.iu * cfg_.grid.nv + node.iv];
        const LorentzVec& Y = node.sample.Y;
        lightlike.push_back(std::abs(inner(Y, Y)) / Y.squaredNorm());
        LorentzVec y(Y.size());
        y[0] = 1;
        y.tail(Y.size() - 1) = node.sample.x;
        double sph = 0;
        for (const LorentzVec* v : {&frame->xi1, &frame->xi2, &frame->eta1, &frame->eta2})
            sph = std::max(sph, std::abs(inner(y, *v)) / (y.norm() * v->norm()));
        spherical.push_back(sph);

        json rec = {{"u", node.u}, {"v", node.v}, {"t", node.t}, {"rank", node.rank}};
        try {
            const ExtrinsicData ext = fundamental_forms(node.jet, Target::Sphere);
            const TracelessPair tp = traceless_pair(ext.h[0], ext.h[1]);
            const WintgenReport w = wintgen_defect(tp.A1, tp.A2);
            defects.push_back(w.defect);
            rec["defect"] = w.defect;
        } catch (const Error& e) {
            rec["defect"] = nullptr;
            rec["error"] = e.what();
            defects.push_back(std::numeric_limits<double>::infinity());
        }
        perPoint.push_back(rec);
    }
    const DefectStatistics stats = summarize(defects);
    check_count("construct.regularPoints", field.regular_count(), 1);
    check("construct.wintgenDefect", stats.max, "wintgenDefect");
    check("construct.lightlike", max_of(lightlike), "lightlike");
    check("construct.fiberSphericity", max_of(spherical), "sphericity");
    sections_["construct"] = {{"samples", field.nodes.size()},     {"regular", field.regular_count()},
                              {"maxDefect", stats.max},            {"medianDefect", stats.median},
                              {"perturbation", cfg_.perturbation}, {"maxLightlike", max_of(lightlike)},
                              {"maxSphericity", max_of(spherical)}};

    std::ostringstream csv, obj;
    field.write_csv(csv);
    field.write_obj(obj);
    emit("envelope.csv", csv.str());
    emit("envelope.obj", obj.str());
    emit("mask.json", field.regular_mask().dump(2) + "\n");
    emit("defects.json",
         json({{"count", stats.count}, {"max", stats.max}, {"median", stats.median}, {"points", perPoint}}).dump(2) +
             "\n");
}

const std::vector<NodeAnalysis>& Runner::analysis() {
    if (analysis_) return *analysis_;
    analysis_.emplace();
    AnalysisOptions opt;
    opt.fdStep = cfg_.fdStep;
    opt.outerFactor = cfg_.outerFactor;
    const Perturbation bump = perturbation();
    const auto& fr = frames();
    const Vec c0 = Vec::Zero(cfg_.m - 2);
    for (int i = 0; i < cfg_.grid.nu; ++i)
        for (int j = 0; j < cfg_.grid.nv; ++j) {
            const auto& frame = fr[i * cfg_.grid.nv + j];
            std::optional<EnvelopeChart> chart;
            if (frame) {
                chart.emplace(xi_, *frame, FiberChart::from_angle(cfg_.m, 0.0));
                if (bump) chart->set_perturbation(bump);
            }
            for (int k = 0; k < cfg_.fiberSamples; ++k) {
                NodeAnalysis na{i, j, k, std::nullopt, ""};
                if (!chart) {
                    na.reason = "congruence not regular";
                } else {
                    try {
                        chart->set_fiber(FiberChart::from_angle(cfg_.m, 2 * std::numbers::pi * k / cfg_.fiberSamples));
                        na.report = analyze_sample(*chart, xi_, cfg_.grid.u(i), cfg_.grid.v(j), c0, opt);
                    } catch (const Error& e) {
                        na.reason = e.what();
                    }
                }
                analysis_->push_back(std::move(na));
            }
        }
    return *analysis_;
}

void Runner::check_wintgen() {
    const auto& all = analysis();
    std::vector<double> defect, trace, norm, frame, dist, anti, sym, fib;
    std::size_t failed = 0;
    json points = json::array();
    for (const auto& na : all) {
        if (!na.report) {
            if (frames()[na.iu * cfg_.grid.nv + na.iv]) ++failed;
            continue;
        }
        const SampleReport& r = *na.report;
        defect.push_back(r.wintgen.defect);
        trace.push_back(r.traceResidual);
        norm.push_back(r.normResidual);
        frame.push_back(r.sphereFrameDefect);
        dist.push_back(r.sphereDistance);
        anti.push_back(r.cAntisym);
        sym.push_back(r.cSym);
        fib.push_back(r.cFiber2);
        points.push_back({{"u", r.u},
                          {"v", r.v},
                          {"fiber", na.fiber},
                          {"rho", r.rho},
                          {"defect", r.wintgen.defect},
                          {"traceResidual", r.traceResidual},
                          {"normResidual", r.normResidual},
                          {"sphereDistance", r.sphereDistance},
                          {"Cadapted", mat_json(r.Cadapted)}});
    }
    check_count("check-wintgen.analyzedPoints", defect.size(), 1);
    check_none("check-wintgen.failedRegularPoints", failed);
    check("check-wintgen.wintgenDefect", max_of(defect), "wintgenDefect");
    check("check-wintgen.sphereDistance", max_of(dist), "sphereDistance");
    check("check-wintgen.moebiusTrace", max_of(trace), "moebiusAlgebraic");
    check("check-wintgen.moebiusNorm", max_of(norm), "moebiusAlgebraic");
    check("check-wintgen.sphereFrame", max_of(frame), "frame");
    check("check-wintgen.moebiusFormAntisymmetry", max_of(anti), "moebiusForm");
    check("check-wintgen.moebiusFormSymmetry", max_of(sym), "moebiusForm");
    check("check-wintgen.moebiusFormFiber", max_of(fib), "moebiusForm");
    sections_["check-wintgen"] = {{"analyzed", defect.size()},
                                  {"failedRegular", failed},
                                  {"maxDefect", max_of(defect)},
                                  {"medianDefect", summarize(defect).median},
                                  {"maxSphereDistance", max_of(dist)},
                                  {"maxMoebiusTrace", max_of(trace)},
                                  {"maxMoebiusNorm", max_of(norm)},
                                  {"maxC11PlusC22", max_of(anti)},
                                  {"maxC12MinusC21", max_of(sym)},
                                  {"maxC2a", max_of(fib)}};
    emit("moebius.json", json({{"points", points}}).dump(2) + "\n");
}

void Runner::gauss_check() {
    const ZGrid& g = cfg_.grid;
    std::vector<CurveJet> jets;
    for (int i = 0; i < g.nu; ++i)
        for (int j = 0; j < g.nv; ++j) jets.push_back(xi_.jet({g.u(i), g.v(j)}, 2));
    std::vector<double> analyticIso;
    std::size_t uncertified = 0;
    for (const auto& jet : jets) {
        try {
            analyticIso.push_back(certify_point(jet).isoResidual);
        } catch (const Error&) {
            ++uncertified;
        }
    }
    check_none("gauss-check.uncertifiedPoints", uncertified);

    std::vector<double> fiber, iso, holo, sub;
    json points = json::array();
    for (const auto& na : analysis()) {
        if (!na.report) continue;
        const GaussCheckReport& gr = na.report->gauss;
        fiber.push_back(gr.fiberResidual);
        iso.push_back(gr.isotropyResidual);
        holo.push_back(gr.holomorphyResidual);
        sub.push_back(gr.submersionResidual);
        points.push_back({{"u", na.report->u},
                          {"v", na.report->v},
                          {"fiber", na.fiber},
                          {"fiberResidual", gr.fiberResidual},
                          {"isotropyResidual", gr.isotropyResidual},
                          {"holomorphyResidual", gr.holomorphyResidual},
                          {"submersionResidual", gr.submersionResidual},
                          {"submersionRatio", gr.submersionRatio}});
    }
    check("gauss-check.analyticIsotropy", max_of(analyticIso), "curveIsotropy");
    check_count("gauss-check.analyzedPoints", fiber.size(), 1);
    check("gauss-check.fiberConstancy", max_of(fiber), "gaussFiber");
    check("gauss-check.isotropy", max_of(iso), "gaussIsotropy");
    check("gauss-check.holomorphy", max_of(holo), "gaussIsotropy");
    check("gauss-check.submersion", max_of(sub), "submersion");
    sections_["gauss-check"] = {{"muSquared", mu_squared(cfg_.m)},
                                {"maxAnalyticIsotropy", max_of(analyticIso)},
                                {"maxFiberResidual", max_of(fiber)},
                                {"maxIsotropyResidual", max_of(iso)},
                                {"maxHolomorphyResidual", max_of(holo)},
                                {"maxSubmersionResidual", max_of(sub)}};
    emit("gauss.json", json({{"points", points}}).dump(2) + "\n");
}

void Runner::centers() {
    const ZGrid& g = cfg_.grid;
    const auto& fr = frames();
    const Vec c0 = Vec::Zero(cfg_.m - 2);

    struct PoleRun {
        std::vector<double> holo, iso, harm, conf, path, dpath, fdHarm, fdConf, radius;
        std::size_t failures = 0;
    };
    auto run = [&](const PolePair& poles, bool record, json* points) {
        PoleRun pr;
        for (int i = 0; i < g.nu; ++i)
            for (int j = 0; j < g.nv; ++j) {
                const cplx z{g.u(i), g.v(j)};
                json rec = {{"u", z.real()}, {"v", z.imag()}};
                try {
                    const CenterReport r = verify_center_point(xi_, z, poles);
                    pr.holo.push_back(r.holomorphy);
                    pr.iso.push_back(r.isotropy);
                    pr.harm.push_back(r.harmonicity);
                    pr.conf.push_back(r.conformality);
                    pr.path.push_back(r.pathAgreement);
                    pr.dpath.push_back(r.derivativeAgreement);
                    rec["analytic"] = {{"holomorphy", r.holomorphy},   {"isotropy", r.isotropy},
                                       {"harmonicity", r.harmonicity}, {"conformality", r.conformality},
                                       {"pathAgreement", r.pathAgreement},
                                       {"derivativeAgreement", r.derivativeAgreement}};
                    const auto [x1, x2] = sphere_pair(xi_.eval(z));
                    const SphereGeometry sg = sphere_center(x1, x2, poles);
                    rec["center"] = vec_json(sg.euclideanCenter);
                    rec["radius"] = sg.radius;
                    if (const auto& frame = fr[i * g.nv + j]) {
                        double worst = 0;
                        for (int k = 0; k < cfg_.fiberSamples; ++k) {
                            const double t = 2 * std::numbers::pi * k / cfg_.fiberSamples;
                            const Vec y = flat_point(envelope_point(*frame, FiberChart::from_angle(cfg_.m, t).base()).Y, poles);
                            worst = std::max(worst, std::abs((y - sg.euclideanCenter).norm() - sg.radius) / sg.radius);
                        }
                        pr.radius.push_back(worst);
                        rec["fiberRadiusResidual"] = worst;

                        EnvelopeChart chart(xi_, *frame, FiberChart::from_angle(cfg_.m, 0.0));
                        const HarmonicityReport h =
                            envelope_center_residual(chart, poles, z.real(), z.imag(), c0, cfg_.fdStep, cfg_.centerStep);
                        pr.fdHarm.push_back(h.harmonicity);
                        pr.fdConf.push_back(h.conformality);
                        rec["fd"] = {{"harmonicity", h.harmonicity}, {"conformality", h.conformality}};
                    }
                } catch (const Error& e) {
                    ++pr.failures;
                    rec["error"] = e.what();
                }
                if (record) points->push_back(rec);
            }
        return pr;
    };
    auto checks = [&](const std::string& prefix, const PoleRun& pr) {
        check_none(prefix + "failedPoints", pr.failures);
        check_count(prefix + "fdPoints", pr.fdHarm.size(), 1);
        check(prefix + "holomorphy", max_of(pr.holo), "centerIsotropy");
        check(prefix + "isotropy", max_of(pr.iso), "centerIsotropy");
        check(prefix + "harmonicityAnalytic", max_of(pr.harm), "harmonicityAnalytic");
        check(prefix + "conformalityAnalytic", max_of(pr.conf), "harmonicityAnalytic");
        check(prefix + "pathAgreement", max_of(pr.path), "pathAgreement");
        check(prefix + "derivativeAgreement", max_of(pr.dpath), "pathAgreement");
        check(prefix + "harmonicityFd", max_of(pr.fdHarm), "harmonicityFd");
        check(prefix + "conformalityFd", max_of(pr.fdConf), "harmonicityFd");
        check(prefix + "fiberRadius", max_of(pr.radius), "sphereRadius");
        return json{{"failures", pr.failures},
                    {"maxHarmonicityAnalytic", max_of(pr.harm)},
                    {"maxConformalityAnalytic", max_of(pr.conf)},
                    {"maxIsotropy", max_of(pr.iso)},
                    {"maxPathAgreement", max_of(pr.path)},
                    {"maxDerivativeAgreement", max_of(pr.dpath)},
                    {"maxHarmonicityFd", max_of(pr.fdHarm)},
                    {"maxConformalityFd", max_of(pr.fdConf)},
                    {"maxFiberRadius", max_of(pr.radius)}};
    };

    json points = json::array();
    const json main = checks("centers.", run(poles_, true, &points));

    // Random Lorentz images of the pole, redrawn while the pole comes closer
    // than kClearance to a sphere over the grid (the centers run off to infinity there).
    constexpr double kClearance = 0.25;
    constexpr int kDraws = 64;
    std::vector<cplx> zs;
    for (int i = 0; i < g.nu; ++i)
        for (int j = 0; j < g.nv; ++j) zs.emplace_back(g.u(i), g.v(j));
    std::mt19937_64 rng(cfg_.seed);
    std::optional<PolePair> rotated;
    double clearance = 0;
    int draws = 0;
    while (draws < kDraws) {
        ++draws;
        PolePair candidate = poles_.transformed(random_lorentz(cfg_.m + 4, rng));
        clearance = pole_clearance(xi_, zs, candidate);
        if (clearance >= kClearance) {
            rotated = std::move(candidate);
            break;
        }
    }
    check_count("centers.rotatedPole.found", rotated ? 1 : 0, 1);
    if (!rotated) rotated = poles_;
    const json robust = checks("centers.rotatedPole.", run(*rotated, false, nullptr));

    sections_["centers"] = {{"standardPole", main},
                            {"rotatedPole", robust},
                            {"rotatedP", vec_json(rotated->p())},
                            {"rotatedPStar", vec_json(rotated->p_star())},
                            {"rotatedPoleDraws", draws},
                            {"rotatedPoleClearance", clearance},
                            {"poleClearance", pole_clearance(xi_, zs, poles_)},
                            {"centerStep", cfg_.centerStep}};

    std::ostringstream csv, obj;
    csv.precision(17);
    obj.precision(12);
    csv << "u,v";
    for (int k = 0; k < cfg_.m + 2; ++k) csv << ",X" << k + 1;
    csv << '\n';
    obj << "# center surface, first three coordinates\n";
    for (int i = 0; i < g.nu; ++i)
        for (int j = 0; j < g.nv; ++j) {
            const Vec x = center_jet(xi_, {g.u(i), g.v(j)}, poles_).Xt;
            csv << g.u(i) << ',' << g.v(j);
            for (Eigen::Index k = 0; k < x.size(); ++k) csv << ',' << x[k];
            csv << '\n';
            obj << "v " << x[0] << ' ' << x[1] << ' ' << x[2] << '\n';
        }
    for (int i = 0; i + 1 < g.nu; ++i)
        for (int j = 0; j + 1 < g.nv; ++j) {
            const int a = i * g.nv + j + 1;
            obj << "f " << a << ' ' << a + g.nv << ' ' << a + g.nv + 1 << ' ' << a + 1 << '\n';
        }
    emit("centers.csv", csv.str());
    emit("centers.obj", obj.str());
    emit("centers.json", json({{"points", points}}).dump(2) + "\n");
}

void Runner::roundtrip() {
    std::mt19937_64 rng(cfg_.seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    const int n = cfg_.m + 4;
    std::vector<double> forward, reverse, classical;
    for (int t = 0; t < cfg_.trials; ++t) {
        CVec x(n - 2);
        for (int k = 0; k < n - 2; ++k) x[k] = {normal(rng), normal(rng)};
        const CVec xi = lift_complex(poles_.embed(x), poles_);
        forward.push_back((poles_.flatten(project_complex(xi, poles_)) - x).norm());

        const cplx c{normal(rng), normal(rng)};
        const CVec back = lift_complex(project_complex(c * xi, poles_), poles_);
        reverse.push_back((back - xi).norm() / xi.norm());

        Vec s(n - 1);
        for (int k = 0; k < n - 1; ++k) s[k] = normal(rng);
        s.normalize();
        classical.push_back((unproject_classical(project_classical(s)) - s).norm());
    }
    check("roundtrip.complexForward", max_of(forward), "roundtrip");
    check("roundtrip.complexReverse", max_of(reverse), "roundtrip");
    check("roundtrip.classical", max_of(classical), "roundtrip");
    const json stats = {{"trials", cfg_.trials},
                        {"seed", cfg_.seed},
                        {"maxComplexForward", max_of(forward)},
                        {"maxComplexReverse", max_of(reverse)},
                        {"maxClassical", max_of(classical)}};
    sections_["roundtrip"] = stats;
    emit("roundtrip.json", stats.dump(2) + "\n");
}

}  // namespace

RunResult run_pipeline(const std::string& command, const PipelineConfig& cfg) {
    const auto& cmds = pipeline_commands();
    if (std::find(cmds.begin(), cmds.end(), command) == cmds.end())
        throw ConfigError("unknown command '" + command + "'");
    cfg.validate();
    Runner r(cfg);
    const bool all = command == "all";
    if (all || command == "generate") r.generate();
    if (all || command == "lift") r.lift();
    if (all || command == "construct") r.construct();
    if (all || command == "check-wintgen") r.check_wintgen();
    if (all || command == "gauss-check") r.gauss_check();
    if (all || command == "centers") r.centers();
    if (all || command == "roundtrip") r.roundtrip();
    return r.finish(command);
}

}  // namespace wintgen
