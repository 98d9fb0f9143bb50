#pragma once

#include <atomic>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "uzsl2/adjoint_identities.hpp"
#include "uzsl2/hopf.hpp"
#include "uzsl2/phase_scan.hpp"
#include "uzsl2/qdot.hpp"
#include "uzsl2/serialize.hpp"
#include "uzsl2/spectra.hpp"

namespace uzsl2 {

enum class SweepTask { Repgen, Verify, FamilySweep, EpScan, PolySweep, QdotSweep };

struct GridAxis {
    std::string symbol;  // nu, z, eps, lambda
    double start = 0.0;
    double stop = 0.0;
    std::size_t count = 1;

    double at(std::size_t i) const {
        if (count == 1) return start;
        return start + (stop - start) * static_cast<double>(i) / static_cast<double>(count - 1);
    }
};

/// Validated sweep configuration. Built from a JSON document; flags override
/// leaves through dotted paths before validation.
struct SweepConfig {
    SweepTask task = SweepTask::FamilySweep;
    RepSpec rep{0.0, -4.0, 5};
    FamilyParams family{};
    struct Poly {
        double mu_minus = 1.0;
        std::string kind = "sin";  // sin | cos | coeffs
        double lambda = 1.0;
        std::vector<double> coeffs;
    } poly;
    QdotParams qdot{};
    std::vector<GridAxis> grid;  // 1 or 2 axes
    std::string out_path = "sweep.csv";
    std::string format = "csv";  // csv | json
    std::size_t workers = 1;
    Tolerances tols{};
    std::vector<double> verify_z{0.5, 2.5};
    double verify_alpha = 0.3;
    double verify_tol = 1e-10;
};

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

namespace sweep_detail {

inline SweepTask parse_task(const std::string& s) {
    if (s == "repgen") return SweepTask::Repgen;
    if (s == "verify") return SweepTask::Verify;
    if (s == "family-sweep") return SweepTask::FamilySweep;
    if (s == "ep-scan") return SweepTask::EpScan;
    if (s == "poly-sweep") return SweepTask::PolySweep;
    if (s == "qdot-sweep") return SweepTask::QdotSweep;
    throw ConfigError("task: unknown task '" + s + "'");
}

inline std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

/// Apply one dotted-path override ("family.mu_plus=-1") onto a JSON tree.
inline void apply_override(json& doc, const std::string& spec) {
    const auto eq = spec.find('=');
    if (eq == std::string::npos)
        throw ConfigError("--set expects key=value, got '" + spec + "'");
    const std::string path = spec.substr(0, eq);
    const std::string value = spec.substr(eq + 1);
    json* node = &doc;
    std::size_t pos = 0;
    while (true) {
        const auto dot = path.find('.', pos);
        const std::string key = path.substr(pos, dot == std::string::npos ? dot : dot - pos);
        if (key.empty()) throw ConfigError("--set: empty path segment in '" + path + "'");
        if (dot == std::string::npos) {
            json parsed = json::parse(value, nullptr, false);
            (*node)[key] = parsed.is_discarded() ? json(value) : parsed;
            return;
        }
        node = &(*node)[key];
        pos = dot + 1;
    }
}

inline GridAxis parse_axis(const std::string& symbol, const json& j) {
    GridAxis a;
    a.symbol = symbol;
    if (j.is_array()) {
        if (j.size() != 3) throw ConfigError("grid." + symbol + ": expected [start, stop, count]");
        a.start = j.at(0).get<double>();
        a.stop = j.at(1).get<double>();
        a.count = j.at(2).get<std::size_t>();
    } else if (j.is_object()) {
        a.start = j.at("start").get<double>();
        a.stop = j.at("stop").get<double>();
        a.count = j.at("count").get<std::size_t>();
    } else {
        throw ConfigError("grid." + symbol + ": expected array or object");
    }
    if (a.count < 1) throw ConfigError("grid." + symbol + ": count must be >= 1");
    return a;
}

}  // namespace sweep_detail

inline SweepConfig parse_config(const json& doc) {
    SweepConfig cfg;
    try {
        if (!doc.contains("task")) throw ConfigError("task: required field missing");
        cfg.task = sweep_detail::parse_task(doc.at("task").get<std::string>());
        if (doc.contains("rep")) {
            const auto& r = doc.at("rep");
            if (r.contains("z")) cfg.rep.z = r.at("z").get<double>();
            if (r.contains("beta")) cfg.rep.beta = r.at("beta").get<double>();
            if (r.contains("dim")) cfg.rep.dim = r.at("dim").get<std::size_t>();
            if (cfg.rep.dim < 1) throw ConfigError("rep.dim: must be >= 1");
        }
        if (doc.contains("family")) {
            const auto& f = doc.at("family");
            if (f.contains("mu_plus")) cfg.family.mu_plus = f.at("mu_plus").get<double>();
            if (f.contains("mu_minus")) cfg.family.mu_minus = f.at("mu_minus").get<double>();
            if (f.contains("mu_0")) cfg.family.mu_0 = f.at("mu_0").get<double>();
            if (f.contains("g")) cfg.family.g = f.at("g").get<std::vector<double>>();
        }
        if (doc.contains("poly")) {
            const auto& q = doc.at("poly");
            if (q.contains("mu_minus")) cfg.poly.mu_minus = q.at("mu_minus").get<double>();
            if (q.contains("kind")) cfg.poly.kind = q.at("kind").get<std::string>();
            if (q.contains("lambda")) cfg.poly.lambda = q.at("lambda").get<double>();
            if (q.contains("coeffs")) cfg.poly.coeffs = q.at("coeffs").get<std::vector<double>>();
            if (cfg.poly.kind != "sin" && cfg.poly.kind != "cos" && cfg.poly.kind != "coeffs")
                throw ConfigError("poly.kind: expected sin|cos|coeffs");
        }
        if (doc.contains("qdot")) {
            const auto& q = doc.at("qdot");
            if (q.contains("deltaL")) cfg.qdot.deltaL = q.at("deltaL").get<double>();
            if (q.contains("deltaR")) cfg.qdot.deltaR = q.at("deltaR").get<double>();
            if (q.contains("t1")) cfg.qdot.t1 = q.at("t1").get<double>();
            if (q.contains("t2")) cfg.qdot.t2 = q.at("t2").get<double>();
            if (q.contains("t3")) cfg.qdot.t3 = q.at("t3").get<double>();
            if (q.contains("t4")) cfg.qdot.t4 = q.at("t4").get<double>();
        }
        if (doc.contains("grid")) {
            const auto& g = doc.at("grid");
            if (!g.is_object()) throw ConfigError("grid: expected object of axes");
            // deterministic axis order: nu, z, eps, lambda, then lexicographic
            std::vector<std::string> keys;
            for (auto it = g.begin(); it != g.end(); ++it) keys.push_back(it.key());
            auto rank = [](const std::string& s) {
                if (s == "nu") return 0;
                if (s == "z") return 1;
                if (s == "eps") return 2;
                if (s == "lambda") return 3;
                return 4;
            };
            std::sort(keys.begin(), keys.end(), [&](const std::string& x, const std::string& y) {
                if (rank(x) != rank(y)) return rank(x) < rank(y);
                return x < y;
            });
            for (const auto& k : keys) cfg.grid.push_back(sweep_detail::parse_axis(k, g.at(k)));
        }
        if (doc.contains("output")) {
            const auto& o = doc.at("output");
            if (o.contains("path")) cfg.out_path = o.at("path").get<std::string>();
            if (o.contains("format")) cfg.format = o.at("format").get<std::string>();
            if (cfg.format != "csv" && cfg.format != "json")
                throw ConfigError("output.format: expected csv|json");
        }
        if (doc.contains("workers")) cfg.workers = doc.at("workers").get<std::size_t>();
        if (cfg.workers < 1) cfg.workers = 1;
        if (doc.contains("tolerances")) {
            const auto& t = doc.at("tolerances");
            if (t.contains("eig_residual")) cfg.tols.eig_residual = t.at("eig_residual").get<double>();
            if (t.contains("ep")) cfg.tols.ep = t.at("ep").get<double>();
            if (t.contains("cluster_radius"))
                cfg.tols.cluster_radius = t.at("cluster_radius").get<double>();
            if (t.contains("rank_cutoff")) cfg.tols.rank_cutoff = t.at("rank_cutoff").get<double>();
            if (t.contains("herm")) cfg.tols.herm = t.at("herm").get<double>();
            if (t.contains("pair_conj")) cfg.tols.pair_conj = t.at("pair_conj").get<double>();
        }
        if (doc.contains("verify")) {
            const auto& v = doc.at("verify");
            if (v.contains("z")) cfg.verify_z = v.at("z").get<std::vector<double>>();
            if (v.contains("alpha")) cfg.verify_alpha = v.at("alpha").get<double>();
            if (v.contains("tol")) cfg.verify_tol = v.at("tol").get<double>();
        }
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
    const bool needs_grid = cfg.task == SweepTask::FamilySweep || cfg.task == SweepTask::EpScan ||
                            cfg.task == SweepTask::PolySweep || cfg.task == SweepTask::QdotSweep;
    if (needs_grid && cfg.grid.empty())
        throw ConfigError("grid: at least one axis required for sweep tasks");
    if (cfg.grid.size() > 2) throw ConfigError("grid: at most two swept symbols supported");
    return cfg;
}

/// One output record: swept values, eigenvalue index, eigenvalue, phase,
/// discriminant where the family defines one.
struct OutputRecord {
    std::vector<double> params;
    std::size_t index = 0;
    double re = 0.0, im = 0.0;
    PtPhase phase = PtPhase::Exact;
    std::optional<double> discriminant;
};

struct SweepOutput {
    std::vector<std::string> param_names;
    bool with_discriminant = false;
    std::vector<OutputRecord> records;
    std::vector<std::string> notes;  // EP locus lines etc., printed by the CLI
};

namespace sweep_detail {

template <typename Fn>
void parallel_for(std::size_t count, std::size_t workers, Fn&& fn) {
    if (workers <= 1 || count <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    const std::size_t nthreads = std::min(workers, count);
    std::exception_ptr error;
    std::mutex error_mutex;
    for (std::size_t w = 0; w < nthreads; ++w)
        pool.emplace_back([&] {
            while (true) {
                const std::size_t i = next.fetch_add(1);
                if (i >= count) return;
                try {
                    fn(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(error_mutex);
                    if (!error) error = std::current_exception();
                    return;
                }
            }
        });
    for (auto& th : pool) th.join();
    if (error) std::rethrow_exception(error);
}

}  // namespace sweep_detail

/// family-sweep / ep-scan. Axes: nu (mu_0 = nu * |mu_minus|) and/or z.
/// Eigenvalues come from the closed-form family spectrum; the EP scan
/// additionally bisects discriminant sign changes along the nu axis and
/// confirms coalescence.
inline SweepOutput run_family_sweep(const SweepConfig& cfg, bool ep_scan) {
    SweepOutput out;
    out.with_discriminant = true;
    for (const auto& ax : cfg.grid) {
        if (ax.symbol != "nu" && ax.symbol != "z")
            throw ConfigError("family-sweep: swept symbol must be nu or z, got '" + ax.symbol + "'");
        out.param_names.push_back(ax.symbol);
    }
    const GridAxis& ax0 = cfg.grid.front();
    const GridAxis* ax1 = cfg.grid.size() > 1 ? &cfg.grid[1] : nullptr;
    const std::size_t n0 = ax0.count, n1 = ax1 ? ax1->count : 1;
    const std::size_t total = n0 * n1;
    std::vector<std::vector<OutputRecord>> slots(total);

    auto point_params = [&](std::size_t i0, std::size_t i1, double& zval) {
        FamilyParams p = cfg.family;
        zval = cfg.rep.z;
        auto apply = [&](const GridAxis& ax, std::size_t idx) {
            const double v = ax.at(idx);
            if (ax.symbol == "nu")
                p.mu_0 = v * std::abs(cfg.family.mu_minus);
            else
                zval = v;
        };
        apply(ax0, i0);
        if (ax1) apply(*ax1, i1);
        return p;
    };

    sweep_detail::parallel_for(total, cfg.workers, [&](std::size_t flat) {
        const std::size_t i0 = flat / n1, i1 = flat % n1;
        double zval = cfg.rep.z;
        const FamilyParams p = point_params(i0, i1, zval);
        const SpectrumResult spec = analytic_spectrum_family(p, cfg.rep.dim, zval, cfg.tols);
        std::vector<OutputRecord>& rows = slots[flat];
        for (std::size_t k = 0; k < spec.eigenvalues.size(); ++k) {
            OutputRecord r;
            r.params.push_back(ax0.at(i0));
            if (ax1) r.params.push_back(ax1->at(i1));
            r.index = k;
            r.re = spec.eigenvalues[k].real();
            r.im = spec.eigenvalues[k].imag();
            r.phase = spec.phase;
            r.discriminant = spec.discriminant;
            rows.push_back(std::move(r));
        }
    });
    for (auto& rows : slots)
        for (auto& r : rows) out.records.push_back(std::move(r));

    if (ep_scan) {
        // EP locus along the nu axis (per z value when z is also swept)
        if (ax0.symbol != "nu") throw ConfigError("ep-scan: first swept symbol must be nu");
        for (std::size_t i1 = 0; i1 < n1; ++i1) {
            double zval = cfg.rep.z;
            std::vector<FamilyParams> line;
            for (std::size_t i0 = 0; i0 < n0; ++i0) line.push_back(point_params(i0, i1, zval));
            const GeneratorTriple t =
                build_deformed_generators({zval, 1.0 - static_cast<double>(cfg.rep.dim), cfg.rep.dim});
            const PhaseScanResult scan = classify_phase_and_scan(line, t, cfg.tols);
            for (const auto& ep : scan.eps) {
                const double nu = ep.params.mu_0 / std::max(std::abs(cfg.family.mu_minus), 1e-300);
                std::ostringstream line_out;
                line_out << "ep nu=" << sweep_detail::format_double(nu) << " z="
                         << sweep_detail::format_double(zval)
                         << " confirmed=" << (ep.confirmed ? "yes" : "no")
                         << " family_defective=" << (ep.family_defective ? "yes" : "no")
                         << " clusters=";
                for (std::size_t c = 0; c < ep.clusters.size(); ++c) {
                    if (c) line_out << ";";
                    line_out << ep.clusters[c].size << "/defect" << ep.clusters[c].rank_defect;
                }
                out.notes.push_back(line_out.str());
            }
        }
    }
    return out;
}

/// poly-sweep. Axes: z and/or lambda; spectrum from the closed form.
inline SweepOutput run_poly_sweep(const SweepConfig& cfg) {
    SweepOutput out;
    out.with_discriminant = false;
    for (const auto& ax : cfg.grid) {
        if (ax.symbol != "z" && ax.symbol != "lambda")
            throw ConfigError("poly-sweep: swept symbol must be z or lambda, got '" + ax.symbol +
                              "'");
        out.param_names.push_back(ax.symbol);
    }
    const GridAxis& ax0 = cfg.grid.front();
    const GridAxis* ax1 = cfg.grid.size() > 1 ? &cfg.grid[1] : nullptr;
    const std::size_t n0 = ax0.count, n1 = ax1 ? ax1->count : 1;
    const std::size_t total = n0 * n1;
    std::vector<std::vector<OutputRecord>> slots(total);
    const double beta = 1.0 - static_cast<double>(cfg.rep.dim);
    const double x_max = std::max(std::abs(beta), std::abs(2.0 * (cfg.rep.dim - 1.0) + beta));

    sweep_detail::parallel_for(total, cfg.workers, [&](std::size_t flat) {
        const std::size_t i0 = flat / n1, i1 = flat % n1;
        double zval = cfg.rep.z, lambda = cfg.poly.lambda;
        auto apply = [&](const GridAxis& ax, std::size_t idx) {
            const double v = ax.at(idx);
            if (ax.symbol == "z") zval = v; else lambda = v;
        };
        apply(ax0, i0);
        if (ax1) apply(*ax1, i1);
        PolyHamiltonianSpec spec;
        if (cfg.poly.kind == "sin")
            spec = PolyHamiltonianSpec::sine(cfg.poly.mu_minus, lambda, x_max);
        else if (cfg.poly.kind == "cos")
            spec = PolyHamiltonianSpec::cosine(cfg.poly.mu_minus, lambda, x_max);
        else {
            spec.mu_minus = cfg.poly.mu_minus;
            spec.a.assign(1, 0.0);
            spec.a.insert(spec.a.end(), cfg.poly.coeffs.begin(), cfg.poly.coeffs.end());
        }
        const SpectrumResult sr = analytic_spectrum_polynomial(spec, cfg.rep.dim, zval, cfg.tols);
        std::vector<OutputRecord>& rows = slots[flat];
        for (std::size_t k = 0; k < sr.eigenvalues.size(); ++k) {
            OutputRecord r;
            r.params.push_back(ax0.at(i0));
            if (ax1) r.params.push_back(ax1->at(i1));
            r.index = k;
            r.re = sr.eigenvalues[k].real();
            r.im = sr.eigenvalues[k].imag();
            r.phase = sr.phase;
            rows.push_back(std::move(r));
        }
    });
    for (auto& rows : slots)
        for (auto& r : rows) out.records.push_back(std::move(r));
    return out;
}

struct QdotSweepOutput {
    std::vector<QdotSweepRow> rows;
    std::vector<std::string> notes;
};

inline QdotSweepOutput run_qdot_sweep(const SweepConfig& cfg) {
    if (cfg.grid.size() != 1 || cfg.grid.front().symbol != "eps")
        throw ConfigError("qdot-sweep: exactly one swept symbol 'eps' required");
    const GridAxis& ax = cfg.grid.front();
    std::vector<double> eps;
    bool skipped_zero = false;
    for (std::size_t i = 0; i < ax.count; ++i) {
        const double v = ax.at(i);
        if (v == 0.0) { skipped_zero = true; continue; }
        eps.push_back(v);
    }
    QdotSweepOutput out;
    out.rows = sweep_compare(cfg.qdot, eps, cfg.tols);
    if (skipped_zero)
        out.notes.push_back("note eps=0 grid point skipped (1/eps couplings undefined)");
    return out;
}

namespace sweep_detail {

inline void atomic_write(const std::string& path, const std::string& contents) {
    namespace fs = std::filesystem;
    const fs::path target(path);
    if (target.has_parent_path()) fs::create_directories(target.parent_path());
    const fs::path tmp = target.string() + ".tmp";
    {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        if (!f) throw std::runtime_error("cannot open output file " + tmp.string());
        f << contents;
    }
    fs::rename(tmp, target);
}

}  // namespace sweep_detail

/// CSV schema: param1[,param2],index,re,im,phase[,discriminant].
inline std::string render_csv(const SweepOutput& out) {
    std::ostringstream s;
    for (const auto& p : out.param_names) s << p << ',';
    s << "index,re,im,phase";
    if (out.with_discriminant) s << ",discriminant";
    s << '\n';
    for (const auto& r : out.records) {
        for (double p : r.params) s << sweep_detail::format_double(p) << ',';
        s << r.index << ',' << sweep_detail::format_double(r.re) << ','
          << sweep_detail::format_double(r.im) << ',' << to_string(r.phase);
        if (out.with_discriminant)
            s << ',' << sweep_detail::format_double(r.discriminant.value_or(0.0));
        s << '\n';
    }
    return s.str();
}

inline std::string render_json(const SweepOutput& out) {
    json arr = json::array();
    for (const auto& r : out.records) {
        json rec;
        for (std::size_t i = 0; i < out.param_names.size(); ++i)
            rec[out.param_names[i]] = r.params[i];
        rec["index"] = r.index;
        rec["re"] = r.re;
        rec["im"] = r.im;
        rec["phase"] = to_string(r.phase);
        if (out.with_discriminant) rec["discriminant"] = r.discriminant.value_or(0.0);
        arr.push_back(std::move(rec));
    }
    return arr.dump(2) + "\n";
}

inline std::string render_qdot_csv(const QdotSweepOutput& out) {
    std::ostringstream s;
    s << "eps,level,exact,approx,deviation\n";
    for (const auto& r : out.rows)
        s << sweep_detail::format_double(r.epsilon) << ',' << r.level << ','
          << sweep_detail::format_double(r.exact) << ',' << sweep_detail::format_double(r.approx)
          << ',' << sweep_detail::format_double(r.deviation) << '\n';
    return s.str();
}

inline std::string render_qdot_json(const QdotSweepOutput& out) {
    json arr = json::array();
    for (const auto& r : out.rows)
        arr.push_back(json{{"eps", r.epsilon},
                           {"level", r.level},
                           {"exact", r.exact},
                           {"approx", r.approx},
                           {"deviation", r.deviation}});
    return arr.dump(2) + "\n";
}

/// Verification suite behind the `verify` subcommand: commutation relations,
/// Hopf axioms, coproduct homomorphism, PT checks, adjoint identities, and
/// the Casimir identity, per configured z value. Reports are printed by the
/// caller; all checks must pass for exit 0.
struct VerifyOutcome {
    std::vector<std::pair<std::string, VerificationReport>> reports;
    bool passed = true;
};

inline VerifyOutcome run_verify(const SweepConfig& cfg) {
    VerifyOutcome out;
    const double tol = cfg.verify_tol;
    std::vector<double> zs = cfg.verify_z;
    if (cfg.rep.z != 0.0) zs.push_back(cfg.rep.z);
    zs.insert(zs.begin(), 0.0);
    for (double z : zs) {
        const GeneratorTriple t = build_deformed_generators({z, cfg.rep.beta, cfg.rep.dim});
        const std::string tag = "z=" + sweep_detail::format_double(z);

        VerificationReport comm = verify_commutation(t, tol);
        out.reports.emplace_back("commutation " + tag, comm);

        VerificationReport pt;
        pt.add("PT(J0) = J0", distance_max(pt_transform(t.J0), t.J0), tol);
        pt.add("PT(J+) = J+", distance_max(pt_transform(t.Jplus), t.Jplus), tol);
        pt.add("PT(J-) = J-", distance_max(pt_transform(t.Jminus), t.Jminus), tol);
        pt.add("PT^2 = id", distance_max(pt_transform(pt_transform(t.Jminus)), t.Jminus), tol);
        out.reports.emplace_back("pt " + tag, pt);

        if (t.spec.irreducible()) {
            VerificationReport cas;
            const ComplexMatrix c = casimir_matrix(t);
            const double target = casimir_eigenvalue(t.spec.beta);
            ComplexMatrix expected = ComplexMatrix::identity(t.dim()) * Complex{target, 0.0};
            cas.add("C_z = beta(beta/2-1) I", detail::rel_residual(c, expected), tol);
            cas.add("[C_z, J0] = 0",
                    commutator(c, t.J0).frobenius_norm() /
                        std::max(1.0, c.frobenius_norm() * t.J0.frobenius_norm()),
                    tol);
            out.reports.emplace_back("casimir " + tag, cas);

            out.reports.emplace_back("hopf " + tag, verify_hopf_axioms(t, tol));
            out.reports.emplace_back("coproduct " + tag, verify_coproduct_homomorphism(t, tol));
        }
        out.reports.emplace_back(
            "adjoint " + tag, verify_adjoint_identities(t, cfg.verify_alpha, tol, cfg.tols));
    }
    for (const auto& [name, rep] : out.reports)
        if (!rep.all_passed()) out.passed = false;
    return out;
}

}  // namespace uzsl2
