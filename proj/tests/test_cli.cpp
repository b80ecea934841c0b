#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "conspec/driver.hpp"

using namespace conspec;
namespace fs = std::filesystem;

namespace {

fs::path temp_dir(const std::string& tag) {
    fs::path p = fs::temp_directory_path() / ("conspec_test_" + tag);
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

RunConfig fast_sl2z() {
    RunConfig cfg;
    cfg.scenario = "sl2z_model";
    cfg.quad_T = 7.0;
    cfg.quad_N = 24;
    cfg.quad_panels = 2;
    cfg.tolerance = 1e-5;
    return cfg;
}

} // namespace

TEST_CASE("config file parsing: happy path") {
    auto dir = temp_dir("cfg");
    auto path = dir / "run.ini";
    {
        std::ofstream f(path);
        f << "# comment line\n"
          << "[scenario]\n"
          << "name = b2_model\n"
          << "[symbol]\n"
          << "coeffs = 1.0 0.0 0.25   ; trailing comment\n"
          << "width = 2.0\n"
          << "[quadrature]\n"
          << "T = auto\n"
          << "N = 16\n"
          << "panels = 2\n"
          << "[derivatives]\n"
          << "step = 2e-4\n"
          << "[run]\n"
          << "tolerance = 1e-4\n"
          << "out = somewhere\n"
          << "emit_integrand = true\n";
    }
    auto cfg = parse_config_file(path.string());
    CHECK(cfg.scenario == "b2_model");
    CHECK(cfg.coeffs == std::vector<double>{1.0, 0.0, 0.25});
    CHECK(cfg.width == 2.0);
    CHECK(cfg.quad_T == -1.0);
    CHECK(cfg.quad_N == 16);
    CHECK(cfg.quad_panels == 2);
    CHECK(cfg.fd_step == 2e-4);
    CHECK(cfg.tolerance == 1e-4);
    CHECK(cfg.out_dir == "somewhere");
    CHECK(cfg.emit_integrand);
}

TEST_CASE("config file parsing: diagnostics carry line and field") {
    auto dir = temp_dir("cfg_bad");
    auto path = dir / "bad.ini";
    {
        std::ofstream f(path);
        f << "[symbol]\n"
          << "width = not_a_number\n";
    }
    try {
        parse_config_file(path.string());
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        std::string msg = e.what();
        CHECK(msg.find(":2") != std::string::npos);
        CHECK(msg.find("symbol.width") != std::string::npos);
    }

    {
        std::ofstream f(path);
        f << "[nonsense]\n";
    }
    CHECK_THROWS_AS(parse_config_file(path.string()), ConfigError);
    {
        std::ofstream f(path);
        f << "[symbol]\nmystery = 1\n";
    }
    CHECK_THROWS_AS(parse_config_file(path.string()), ConfigError);
    CHECK_THROWS_AS(parse_config_file((dir / "missing.ini").string()), ConfigError);
}

TEST_CASE("invalid width is rejected with a field diagnostic and exit 2") {
    RunConfig cfg = fast_sl2z();
    cfg.width = -1.0;
    auto errors = cfg.validate();
    REQUIRE_FALSE(errors.empty());
    CHECK(errors[0].find("width") != std::string::npos);

    std::ostringstream out, err;
    CHECK(run(cfg, out, err) == 2);
    CHECK(err.str().find("width") != std::string::npos);
}

TEST_CASE("sl2z run: term table, CSV files, exit status") {
    RunConfig cfg = fast_sl2z();
    auto dir = temp_dir("sl2z");
    cfg.out_dir = (dir / "out").string();
    std::ostringstream out, err;
    int status = run(cfg, out, err);
    CHECK(status == 0);
    CHECK(err.str().empty());

    auto terms = [&] {
        std::ifstream f(fs::path(cfg.out_dir) / "terms.csv");
        return read_terms_csv(f);
    }();
    REQUIRE(terms.size() == 2);
    CHECK(terms[0].tag == CaseTag::R1_ID);
    CHECK(terms[1].tag == CaseTag::R1_REFL);
    CHECK(terms[1].constant == -0.25);

    std::string totals = slurp(fs::path(cfg.out_dir) / "totals.csv");
    CHECK(totals.find("class,total_re,total_im") != std::string::npos);
    CHECK(totals.find("TOTAL,") != std::string::npos);
    CHECK(totals.find("C,") != std::string::npos);
}

TEST_CASE("a2 run census") {
    RunConfig cfg;
    cfg.scenario = "a2_model";
    cfg.quad_T = 6.0;
    cfg.quad_N = 16;
    cfg.quad_panels = 2;
    cfg.tolerance = 1e-3;
    auto dir = temp_dir("a2");
    cfg.out_dir = (dir / "out").string();
    std::ostringstream out, err;
    int status = run(cfg, out, err);
    CHECK(status == 0);
    std::ifstream f(fs::path(cfg.out_dir) / "terms.csv");
    auto terms = read_terms_csv(f);
    REQUIRE(terms.size() == 8);
    int r0 = 0, r1 = 0, r2 = 0, maxi = 0;
    for (const auto& t : terms) {
        r0 += t.tag == CaseTag::MIN_R0;
        r1 += t.tag == CaseTag::MIN_R1_I;
        r2 += t.tag == CaseTag::MIN_R2;
        maxi += t.tag == CaseTag::MAX_I;
    }
    CHECK(r0 == 1);
    CHECK(r1 == 3);
    CHECK(r2 == 2);
    CHECK(maxi == 2);
}

TEST_CASE("CSV round-trip is bit-for-bit in the 17-digit rendering") {
    RunConfig cfg = fast_sl2z();
    auto dir = temp_dir("roundtrip");
    cfg.out_dir = (dir / "out").string();
    std::ostringstream out, err;
    REQUIRE(run(cfg, out, err) == 0);

    std::string first = slurp(fs::path(cfg.out_dir) / "terms.csv");
    std::istringstream in(first);
    auto terms = read_terms_csv(in);
    std::ostringstream second;
    write_terms_csv(second, terms);
    CHECK(first == second.str());
}

TEST_CASE("exit status is nonzero when a term misses the tolerance") {
    RunConfig cfg = fast_sl2z();
    cfg.tolerance = 1e-300;
    auto dir = temp_dir("tol");
    cfg.out_dir = (dir / "out").string();
    std::ostringstream out, err;
    CHECK(run(cfg, out, err) == 1);
}

TEST_CASE("integrand dumps: one file per integral term") {
    RunConfig cfg = fast_sl2z();
    cfg.emit_integrand = true;
    auto dir = temp_dir("dump");
    cfg.out_dir = (dir / "out").string();
    std::ostringstream out, err;
    REQUIRE(run(cfg, out, err) == 0);
    // Term 1 is the line integral; term 2 is a point term and has no dump.
    CHECK(fs::exists(fs::path(cfg.out_dir) / "integrand_1.csv"));
    CHECK_FALSE(fs::exists(fs::path(cfg.out_dir) / "integrand_2.csv"));
    std::string body = slurp(fs::path(cfg.out_dir) / "integrand_1.csv");
    CHECK(body.find("t,integrand_re,integrand_im") != std::string::npos);
    int lines = 0;
    for (char ch : body) lines += ch == '\n';
    CHECK(lines == 513); // header + 512 samples
}

TEST_CASE("constants ledger") {
    RunConfig cfg;
    cfg.scenario = "a2_model";
    cfg.constants_only = true;
    std::ostringstream out, err;
    CHECK(run(cfg, out, err) == 0);
    std::string table = out.str();
    CHECK(table.find("identity summand = 0") != std::string::npos);
    CHECK(table.find("MIN_R2") != std::string::npos);
    CHECK(table.find("MAX_I") != std::string::npos);
    // The three reflection rows carry the angle factors {-sqrt3, 2 sqrt3, -sqrt3}.
    CHECK(table.find("-1.73205") != std::string::npos);
    CHECK(table.find("3.4641") != std::string::npos);

    // A1xA1: cot factor 0 for both reflections.
    RunConfig cfg2;
    cfg2.scenario = "a1xa1_model";
    cfg2.constants_only = true;
    std::ostringstream out2;
    CHECK(run(cfg2, out2, err) == 0);
    CHECK(out2.str().find("vanishes") != std::string::npos);

    // print_constants over a rank-1 scenario.
    RunConfig cfg3;
    cfg3.scenario = "sl2z_model";
    cfg3.constants_only = true;
    std::ostringstream out3;
    CHECK(run(cfg3, out3, err) == 0);
    CHECK(out3.str().find("R1_REFL") != std::string::npos);
}

TEST_CASE("config file as scenario argument") {
    auto dir = temp_dir("cfgrun");
    auto path = dir / "run.ini";
    {
        std::ofstream f(path);
        f << "[scenario]\nname = sl2z_model\n[quadrature]\nN = 16\npanels = 2\nT = 7\n"
          << "[run]\ntolerance = 1e-4\n";
    }
    RunConfig cfg;
    cfg.scenario = path.string();
    cfg.out_dir = (dir / "out").string();
    std::ostringstream out, err;
    CHECK(run(cfg, out, err) == 0);
    CHECK(fs::exists(fs::path(cfg.out_dir) / "terms.csv"));

    RunConfig bad;
    bad.scenario = (dir / "nope.ini").string();
    std::ostringstream out2, err2;
    CHECK(run(bad, out2, err2) == 2);
}
