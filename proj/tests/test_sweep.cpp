#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "test_helpers.hpp"
#include "uzsl2/serialize.hpp"
#include "uzsl2/sweep.hpp"

using namespace uzsl2;
namespace fs = std::filesystem;

namespace {

json base_family_doc() {
    return json{{"task", "family-sweep"},
                {"rep", {{"z", 0.0}, {"beta", -4.0}, {"dim", 5}}},
                {"family", {{"mu_plus", -1.0}, {"mu_minus", 1.0}, {"mu_0", 0.0}}},
                {"grid", {{"nu", {-3.0, 3.0, 601}}}},
                {"output", {{"path", "out.csv"}, {"format", "csv"}}}};
}

std::string slurp(const fs::path& p) {
    std::ifstream f(p, std::ios::binary);
    std::ostringstream s;
    s << f.rdbuf();
    return s.str();
}

}  // namespace

TEST_CASE("config parsing and validation") {
    SECTION("valid document") {
        const SweepConfig cfg = parse_config(base_family_doc());
        CHECK(cfg.task == SweepTask::FamilySweep);
        CHECK(cfg.rep.dim == 5);
        CHECK(cfg.grid.size() == 1);
        CHECK(cfg.grid[0].symbol == "nu");
        CHECK(cfg.grid[0].count == 601);
    }
    SECTION("missing task rejected") {
        json doc = base_family_doc();
        doc.erase("task");
        CHECK_THROWS_AS(parse_config(doc), ConfigError);
    }
    SECTION("unknown task rejected") {
        json doc = base_family_doc();
        doc["task"] = "frobnicate";
        CHECK_THROWS_AS(parse_config(doc), ConfigError);
    }
    SECTION("empty grid rejected for sweeps") {
        json doc = base_family_doc();
        doc.erase("grid");
        CHECK_THROWS_AS(parse_config(doc), ConfigError);
    }
    SECTION("zero-count axis rejected") {
        json doc = base_family_doc();
        doc["grid"]["nu"] = {0.0, 1.0, 0};
        CHECK_THROWS_AS(parse_config(doc), ConfigError);
    }
    SECTION("bad format rejected") {
        json doc = base_family_doc();
        doc["output"]["format"] = "xml";
        CHECK_THROWS_AS(parse_config(doc), ConfigError);
    }
    SECTION("dotted overrides reach leaves") {
        json doc = base_family_doc();
        sweep_detail::apply_override(doc, "family.mu_plus=2.5");
        sweep_detail::apply_override(doc, "rep.dim=7");
        sweep_detail::apply_override(doc, "output.format=json");
        const SweepConfig cfg = parse_config(doc);
        CHECK(cfg.family.mu_plus == 2.5);
        CHECK(cfg.rep.dim == 7);
        CHECK(cfg.format == "json");
    }
    SECTION("tolerance override block") {
        json doc = base_family_doc();
        doc["tolerances"] = {{"ep", 1e-6}};
        CHECK(parse_config(doc).tols.ep == 1e-6);
    }
}

TEST_CASE("family sweep output") {
    const SweepConfig cfg = parse_config(base_family_doc());
    const SweepOutput out = run_family_sweep(cfg, false);
    SECTION("row count and ordering") {
        REQUIRE(out.records.size() == 601 * 5);
        for (std::size_t i = 0; i + 1 < out.records.size(); ++i) {
            const auto& a = out.records[i];
            const auto& b = out.records[i + 1];
            const bool ordered =
                a.params[0] < b.params[0] || (a.params[0] == b.params[0] && a.index < b.index);
            CHECK(ordered);
        }
    }
    SECTION("Im columns nonzero exactly for |nu| < sqrt(2)") {
        for (std::size_t g = 0; g < 601; ++g) {
            const double nu = -3.0 + 6.0 * double(g) / 600.0;
            double max_im = 0.0;
            for (std::size_t k = 0; k < 5; ++k)
                max_im = std::max(max_im, std::abs(out.records[g * 5 + k].im));
            if (nu * nu < 2.0 - 1e-9)
                CHECK(max_im > 1e-9);
            else
                CHECK(max_im == 0.0);
        }
    }
    SECTION("CSV header schema") {
        const std::string csv = render_csv(out);
        CHECK(csv.rfind("nu,index,re,im,phase,discriminant\n", 0) == 0);
    }
    SECTION("byte-identical across runs and worker counts") {
        SweepConfig cfg4 = cfg;
        cfg4.workers = 4;
        CHECK(render_csv(run_family_sweep(cfg, false)) ==
              render_csv(run_family_sweep(cfg4, false)));
    }
    SECTION("two-axis sweep has param1,param2 schema") {
        json doc = base_family_doc();
        doc["grid"]["z"] = {0.0, 3.0, 4};
        doc["grid"]["nu"] = {-3.0, 3.0, 11};
        const SweepOutput out2 = run_family_sweep(parse_config(doc), false);
        CHECK(out2.records.size() == 11 * 4 * 5);
        CHECK(render_csv(out2).rfind("nu,z,index,re,im,phase,discriminant\n", 0) == 0);
    }
    SECTION("json mirror") {
        json doc = base_family_doc();
        doc["grid"]["nu"] = {0.0, 1.0, 2};
        const SweepOutput small = run_family_sweep(parse_config(doc), false);
        const json arr = json::parse(render_json(small));
        REQUIRE(arr.is_array());
        REQUIRE(arr.size() == 10);
        CHECK(arr[0].contains("nu"));
        CHECK(arr[0].contains("phase"));
        CHECK(arr[0].contains("discriminant"));
    }
}

TEST_CASE("ep-scan notes") {
    json doc = base_family_doc();
    doc["task"] = "ep-scan";
    const SweepOutput out = run_family_sweep(parse_config(doc), true);
    REQUIRE(out.notes.size() == 2);
    for (const auto& n : out.notes) {
        CHECK(n.find("confirmed=yes") != std::string::npos);
        CHECK(n.find("family_defective=yes") != std::string::npos);
        CHECK((n.find("1.414213") != std::string::npos));
    }
}

TEST_CASE("poly sweep output") {
    json doc{{"task", "poly-sweep"},
             {"rep", {{"dim", 6}, {"beta", -5.0}}},
             {"poly", {{"mu_minus", 1.0}, {"kind", "sin"}, {"lambda", 1.0}}},
             {"grid", {{"z", {0.0, 3.0, 31}}}},
             {"output", {{"path", "poly.csv"}, {"format", "csv"}}}};
    const SweepOutput out = run_poly_sweep(parse_config(doc));
    REQUIRE(out.records.size() == 31 * 6);
    CHECK(render_csv(out).rfind("z,index,re,im,phase\n", 0) == 0);
    // bands: eigenvalue traces pair up with gaps 2 sin(1), 2 sin(3), 2 sin(5)
    for (std::size_t g = 0; g < 31; ++g) {
        std::vector<double> col;
        for (std::size_t k = 0; k < 6; ++k) col.push_back(out.records[g * 6 + k].re);
        std::sort(col.begin(), col.end());
        const double z = 3.0 * double(g) / 30.0;
        std::vector<double> gaps{2 * std::sin(1.0), 2 * std::sin(3.0), 2 * std::sin(5.0)};
        std::vector<double> centers{z / 2, 9 * z / 2, 25 * z / 2};
        // match each expected band (center, gap) against the sorted column
        std::vector<double> rem = col;
        for (std::size_t b = 0; b < 3; ++b) {
            const double lo = centers[b] - std::abs(gaps[b]) / 2.0;
            const double hi = centers[b] + std::abs(gaps[b]) / 2.0;
            for (double v : {lo, hi}) {
                auto it = std::min_element(rem.begin(), rem.end(), [&](double x, double y) {
                    return std::abs(x - v) < std::abs(y - v);
                });
                REQUIRE(it != rem.end());
                CHECK(std::abs(*it - v) < 1e-9);
                rem.erase(it);
            }
        }
    }
}

TEST_CASE("qdot sweep output") {
    json doc{{"task", "qdot-sweep"},
             {"grid", {{"eps", {1.0, 120.0, 120}}}},
             {"output", {{"path", "qd.csv"}, {"format", "csv"}}}};
    const QdotSweepOutput out = run_qdot_sweep(parse_config(doc));
    CHECK(out.rows.size() == 480);
    const std::string csv = render_qdot_csv(out);
    CHECK(csv.rfind("eps,level,exact,approx,deviation\n", 0) == 0);
    // determinism
    CHECK(render_qdot_csv(run_qdot_sweep(parse_config(doc))) == csv);
}

TEST_CASE("verify suite") {
    SECTION("irreducible representations pass") {
        json doc{{"task", "verify"}, {"rep", {{"dim", 4}, {"beta", -3.0}}}};
        const VerifyOutcome v = run_verify(parse_config(doc));
        for (const auto& [name, rep] : v.reports)
            for (const auto& c : rep.checks) {
                INFO(name << " / " << c.name << " residual " << c.residual);
                CHECK(c.passed);
            }
        CHECK(v.passed);
    }
    SECTION("non-irreducible beta fails with boundary residuals") {
        json doc{{"task", "verify"}, {"rep", {{"dim", 4}, {"beta", -1.5}}}};
        const VerifyOutcome v = run_verify(parse_config(doc));
        CHECK_FALSE(v.passed);
    }
}

TEST_CASE("CLI end to end") {
    const fs::path dir = fs::temp_directory_path() / "uzsl2_cli_test";
    fs::create_directories(dir);
    const fs::path cfg_path = dir / "cfg.json";
    {
        std::ofstream f(cfg_path);
        f << base_family_doc().dump(2);
    }
    auto run = [&](const std::string& args) {
        return std::system((std::string(UZSWEEP_PATH) + " " + args + " > " +
                            (dir / "stdout.txt").string() + " 2>" + (dir / "stderr.txt").string())
                               .c_str());
    };
    SECTION("family-sweep writes deterministic CSV, exit 0") {
        const fs::path out1 = dir / "a.csv", out2 = dir / "b.csv";
        const int rc1 = run("family-sweep --config " + cfg_path.string() + " --out " +
                            out1.string());
        const int rc2 = run("family-sweep --config " + cfg_path.string() + " --out " +
                            out2.string() + " --workers 3");
        REQUIRE(rc1 == 0);
        REQUIRE(rc2 == 0);
        CHECK(slurp(out1) == slurp(out2));
        CHECK(slurp(out1).rfind("nu,index,re,im,phase,discriminant\n", 0) == 0);
    }
    SECTION("config error gives exit 2 with field message") {
        const int rc = run("family-sweep --config " + cfg_path.string() +
                           " --set grid.nu.count=0");
        CHECK(WEXITSTATUS(rc) == 2);
        CHECK(slurp(dir / "stderr.txt").find("grid.nu") != std::string::npos);
    }
    SECTION("verify on an irrep exits 0; non-irrep exits 1") {
        const int ok = run("verify --set rep.dim=3 --set rep.beta=-2");
        CHECK(WEXITSTATUS(ok) == 0);
        const int bad = run("verify --set rep.dim=3 --set rep.beta=-1.25");
        CHECK(WEXITSTATUS(bad) == 1);
        CHECK(slurp(dir / "stdout.txt").find("FAIL") != std::string::npos);
    }
    SECTION("repgen emits the JSON triple document") {
        const fs::path out = dir / "rep.json";
        const int rc = run("repgen --set rep.dim=2 --set rep.beta=-1 --set rep.z=1.5 --out " +
                           out.string());
        REQUIRE(rc == 0);
        const json doc = json::parse(slurp(out));
        CHECK(doc.at("dim") == 2);
        const GeneratorTriple t = triple_from_json(doc);
        CHECK(t.Jplus(1, 0) == Complex{0.0, -1.0});
        CHECK(std::abs(t.Jminus(1, 0) - Complex{0.0, 1.5 * 1.5 / 4.0}) < 1e-15);
    }
    SECTION("qdot-sweep CLI") {
        const fs::path out = dir / "qd.csv";
        const int rc = run("qdot-sweep --set grid.eps=[1,120,120] --out " + out.string());
        REQUIRE(rc == 0);
        const std::string body = slurp(out);
        CHECK(std::count(body.begin(), body.end(), '\n') == 481);  // header + 480 rows
    }
    fs::remove_all(dir);
}
