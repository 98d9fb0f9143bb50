// uzsweep: representation builds, algebra verification, spectrum/EP sweeps,
// and quantum-dot comparisons, emitting plot-ready CSV/JSON.
//
// Exit codes: 0 success, 1 verification failure, 2 config error,
// 3 numerical failure.

#include <cstdio>
#include <exception>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "uzsl2/serialize.hpp"
#include "uzsl2/sweep.hpp"

namespace {

uzsl2::json load_config(const std::string& path, const std::vector<std::string>& overrides) {
    uzsl2::json doc = uzsl2::json::object();
    if (!path.empty()) {
        std::ifstream f(path);
        if (!f) throw uzsl2::ConfigError("cannot read config file " + path);
        try {
            f >> doc;
        } catch (const uzsl2::json::exception& e) {
            throw uzsl2::ConfigError(std::string("config parse: ") + e.what());
        }
    }
    for (const auto& ov : overrides) uzsl2::sweep_detail::apply_override(doc, ov);
    return doc;
}

int run_task(uzsl2::json doc, const std::string& task, const std::string& out_flag,
             const std::string& format_flag, std::size_t workers_flag) {
    doc["task"] = task;
    if (!out_flag.empty()) doc["output"]["path"] = out_flag;
    if (!format_flag.empty()) doc["output"]["format"] = format_flag;
    if (workers_flag > 0) doc["workers"] = workers_flag;
    const uzsl2::SweepConfig cfg = uzsl2::parse_config(doc);

    using uzsl2::SweepTask;
    if (cfg.task == SweepTask::Repgen) {
        const uzsl2::GeneratorTriple t = uzsl2::build_deformed_generators(cfg.rep);
        const std::string body = uzsl2::triple_to_json(t).dump(2) + "\n";
        uzsl2::sweep_detail::atomic_write(cfg.out_path, body);
        std::printf("repgen dim=%zu beta=%g z=%g -> %s\n", cfg.rep.dim, cfg.rep.beta, cfg.rep.z,
                    cfg.out_path.c_str());
        return 0;
    }
    if (cfg.task == SweepTask::Verify) {
        const uzsl2::VerifyOutcome v = uzsl2::run_verify(cfg);
        for (const auto& [name, rep] : v.reports)
            for (const auto& c : rep.checks)
                std::printf("%s  %-12s  %-45s  residual=%.3e  tol=%.1e\n",
                            c.passed ? "PASS" : "FAIL", name.c_str(), c.name.c_str(), c.residual,
                            c.tol);
        if (!v.passed) {
            for (const auto& [name, rep] : v.reports)
                for (const auto& c : rep.checks)
                    if (!c.passed)
                        std::printf("verify: FAILED at %s / %s\n", name.c_str(), c.name.c_str());
            return 1;
        }
        std::printf("verify: all checks passed (dim=%zu beta=%g)\n", cfg.rep.dim, cfg.rep.beta);
        return 0;
    }
    if (cfg.task == SweepTask::QdotSweep) {
        const uzsl2::QdotSweepOutput out = uzsl2::run_qdot_sweep(cfg);
        for (const auto& n : out.notes) std::printf("%s\n", n.c_str());
        uzsl2::sweep_detail::atomic_write(
            cfg.out_path,
            cfg.format == "csv" ? uzsl2::render_qdot_csv(out) : uzsl2::render_qdot_json(out));
        std::printf("qdot-sweep rows=%zu -> %s\n", out.rows.size(), cfg.out_path.c_str());
        return 0;
    }
    uzsl2::SweepOutput out;
    const char* name = "";
    if (cfg.task == SweepTask::FamilySweep) {
        out = uzsl2::run_family_sweep(cfg, false);
        name = "family-sweep";
    } else if (cfg.task == SweepTask::EpScan) {
        out = uzsl2::run_family_sweep(cfg, true);
        name = "ep-scan";
    } else {
        out = uzsl2::run_poly_sweep(cfg);
        name = "poly-sweep";
    }
    for (const auto& n : out.notes) std::printf("%s\n", n.c_str());
    uzsl2::sweep_detail::atomic_write(
        cfg.out_path, cfg.format == "csv" ? uzsl2::render_csv(out) : uzsl2::render_json(out));
    std::size_t grid_points = 1;
    for (const auto& ax : cfg.grid) grid_points *= ax.count;
    std::printf("%s grid=%zu rows=%zu -> %s\n", name, grid_points, out.records.size(),
                cfg.out_path.c_str());
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"U_z(sl(2,R)) PT-symmetric spectrum toolkit"};
    app.require_subcommand(1);

    std::string config_path, out_path, format;
    std::vector<std::string> overrides;
    std::size_t workers = 0;
    app.add_option("--config", config_path, "JSON config file");
    app.add_option("--set", overrides, "override a config leaf, dotted path: key.sub=value");
    app.add_option("--out", out_path, "output file path");
    app.add_option("--format", format, "output format: csv|json")
        ->check(CLI::IsMember({"csv", "json", ""}));
    app.add_option("--workers", workers, "worker thread count for grid evaluation");

    static const std::vector<std::string> tasks = {"repgen",  "verify",     "family-sweep",
                                                   "ep-scan", "poly-sweep", "qdot-sweep"};
    for (const auto& t : tasks) app.add_subcommand(t);

    CLI11_PARSE(app, argc, argv);
    const std::string task = app.get_subcommands().front()->get_name();

    try {
        const uzsl2::json doc = load_config(config_path, overrides);
        return run_task(doc, task, out_path, format, workers);
    } catch (const uzsl2::ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "numerical failure: %s\n", e.what());
        return 3;
    }
}
