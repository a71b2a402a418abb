// wintgen: batch driver for the envelope / Wintgen ideal / minimal surface
// pipelines. Exit status 0 when every check passes, 1 when a residual exceeds
// its tolerance, 2 on usage or input errors.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "wintgen/errors.hpp"
#include "wintgen/pipeline.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw wintgen::ConfigError("cannot read '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const fs::path& path, const std::string& contents) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw wintgen::ConfigError("cannot write '" + path.string() + "'");
    out << contents;
}

json parse_config(const std::string& path) {
    if (path.empty()) return json::object();
    const std::string text = slurp(path);
    // Parse through the config type first so syntax errors carry line and column.
    wintgen::PipelineConfig::from_text(text);
    return json::parse(text);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Wintgen ideal submanifolds from holomorphic 1-isotropic curves"};
    app.set_version_flag("--version", WINTGEN_VERSION);
    app.require_subcommand(1, 1);

    std::string configPath, fixtureName, outDir, weierstrassPath;
    std::uint64_t seed = 0;
    int trials = 0, m = 0, fiberSamples = 0;
    double fdStep = 0, perturbation = -1;
    std::vector<double> poleP, polePStar;
    bool quiet = false;

    for (const auto& name : wintgen::pipeline_commands()) {
        CLI::App* sub = app.add_subcommand(name);
        sub->add_option("--config", configPath, "JSON configuration file")->check(CLI::ExistingFile);
        sub->add_option("--fixture", fixtureName, "built-in Weierstrass data (enneper5, null-line, twisted5, enneper6)");
        sub->add_option("--weierstrass", weierstrassPath, "JSON file with Weierstrass data")->check(CLI::ExistingFile);
        sub->add_option("--out", outDir, "directory for the report and exports");
        sub->add_option("--seed", seed, "seed of every randomized test");
        sub->add_option("--trials", trials, "round trips per direction")->check(CLI::PositiveNumber);
        sub->add_option("--m", m, "dimension of the envelope");
        sub->add_option("--fiber-samples", fiberSamples, "fiber points per z node");
        sub->add_option("--fd-step", fdStep, "finite difference step")->check(CLI::PositiveNumber);
        sub->add_option("--perturbation", perturbation, "bump amplitude applied to the envelope");
        sub->add_option("--pole", poleP, "pole p (m + 4 numbers)")->delimiter(',');
        sub->add_option("--pole-star", polePStar, "pole p* (m + 4 numbers)")->delimiter(',');
        sub->add_flag("--quiet", quiet, "only print the verdict");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }
    const std::string command = app.get_subcommands().front()->get_name();

    try {
        json doc = parse_config(configPath);
        if (!weierstrassPath.empty()) {
            doc["weierstrass"] = json::parse(slurp(weierstrassPath));
            doc.erase("fixture");
            if (m == 0) doc.erase("m");
        }
        if (!fixtureName.empty()) {
            doc["fixture"] = fixtureName;
            doc.erase("weierstrass");
            if (m == 0) doc.erase("m");
        }
        if (m != 0) doc["m"] = m;
        if (app.get_subcommands().front()->count("--seed")) doc["seed"] = seed;
        if (trials != 0) doc["trials"] = trials;
        if (fiberSamples != 0) doc["fiberSamples"] = fiberSamples;
        if (fdStep != 0) doc["fdStep"] = fdStep;
        if (perturbation >= 0) doc["perturbation"] = perturbation;
        if (!poleP.empty() || !polePStar.empty()) {
            if (poleP.empty() || polePStar.empty())
                throw wintgen::ConfigError("--pole and --pole-star must be given together");
            doc["poles"] = {{"p", poleP}, {"pStar", polePStar}};
        }

        const wintgen::PipelineConfig cfg = wintgen::PipelineConfig::from_json(doc);
        const wintgen::RunResult result = wintgen::run_pipeline(command, cfg);

        if (!outDir.empty()) {
            fs::create_directories(outDir);
            write_file(fs::path(outDir) / "report.json", result.report.dump(2) + "\n");
            for (const auto& [name, contents] : result.files) write_file(fs::path(outDir) / name, contents);
        }
        if (!quiet) {
            for (const auto& c : result.report["checks"]) {
                std::printf("%s %-48s %.3e  (%s %.1e)\n", c["pass"].get<bool>() ? "ok  " : "FAIL",
                            c["name"].get<std::string>().c_str(), c["value"].get<double>(),
                            c["tolerance"].get<std::string>().c_str(), c["bound"].get<double>());
            }
        }
        std::printf("%s: %s\n", command.c_str(), result.pass ? "PASS" : "FAIL");
        return result.pass ? 0 : 1;
    } catch (const json::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const wintgen::Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const fs::filesystem_error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
}
