#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "poho/config.hpp"
#include "poho/suite.hpp"

using namespace poho;

namespace {

namespace fs = std::filesystem;

int run_cli(const std::string& args) {
    const std::string cmd = std::string(POHO_CLI_PATH) + " " + args + " > /dev/null 2>&1";
    const int rc = std::system(cmd.c_str());
    return WEXITSTATUS(rc);
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

fs::path tmp_file(const std::string& name) {
    return fs::temp_directory_path() / ("poho_test_" + name);
}

std::size_t count_occurrences(const std::string& hay, const std::string& needle) {
    std::size_t count = 0;
    for (std::size_t pos = hay.find(needle); pos != std::string::npos;
         pos = hay.find(needle, pos + needle.size()))
        ++count;
    return count;
}

}  // namespace

TEST_CASE("complex number parsing") {
    CHECK(parse_complex("0.5") == cplx(0.5, 0.0));
    CHECK(parse_complex("-0.2") == cplx(-0.2, 0.0));
    CHECK(parse_complex("0.5+0.2i") == cplx(0.5, 0.2));
    CHECK(parse_complex("0.5-0.2i") == cplx(0.5, -0.2));
    CHECK(parse_complex("0.3i") == cplx(0.0, 0.3));
    CHECK(parse_complex("-i") == cplx(0.0, -1.0));
    CHECK(parse_complex("1e-2+2e-3i") == cplx(0.01, 0.002));
    CHECK_THROWS_AS(parse_complex("squid"), ConfigError);
    CHECK_THROWS_AS(parse_complex("1.2.3"), ConfigError);
}

TEST_CASE("map id registry") {
    CHECK(make_circle_map("blaschke:0.5", 64).sphere_valued());
    CHECK(make_circle_map("blaschke:0.3,-0.2@0.4", 64).dim() == 2);
    CHECK(make_circle_map("negctrl:1", 64).dim() == 2);
    CHECK(make_planar_map("holo:z2").dim == 2);
    CHECK(make_planar_map("sphere:z").dim == 3);
    CHECK(make_planar_map("harm:rez2").dim == 1);
    CHECK_THROWS_AS(make_circle_map("blaschke:", 64), ConfigError);
    CHECK_THROWS_AS(make_circle_map("negctrl:7", 64), ConfigError);
    CHECK_THROWS_AS(make_planar_map("holo:z9"), ConfigError);
}

TEST_CASE("config text parsing") {
    const std::string text =
        "# comment\n"
        "[verify]\n"
        "maps = blaschke:0.5, blaschke:0.3,-0.2, negctrl:1\n"
        "grid = 512\n"
        "tol.stationarity = 1e-9\n"
        "t_grid = 0.5, 1\n"
        "n_max = 6\n"
        "mobius = 0.5@0, 0.3+0.1i@0.3\n"
        "\n"
        "[flow]\n"
        "map = blaschke:0\n"
        "max_steps = 50\n";
    const ConfigFile cfg = parse_config_text(text);
    const SuiteConfig sc = suite_config_from(cfg);
    REQUIRE(sc.maps.size() == 3);
    CHECK(sc.maps[1] == "blaschke:0.3,-0.2");
    CHECK(sc.grid == 512);
    CHECK(sc.tol_for("stationarity") == 1e-9);
    CHECK(sc.tol_for("poho_s1") == 1e-8);
    CHECK(sc.t_grid == std::vector<double>{0.5, 1.0});
    CHECK(sc.n_max == 6);
    REQUIRE(sc.mobius.size() == 2);
    CHECK(sc.mobius[1].a == cplx(0.3, 0.1));
    CHECK(sc.mobius[1].alpha == 0.3);
    const FlowConfig fc = flow_config_from(cfg);
    CHECK(fc.map == "blaschke:0");
    CHECK(fc.max_steps == 50);

    CHECK_THROWS_AS(suite_config_from(parse_config_text("[verify]\nbogus_key = 1\n")),
                    ConfigError);
    CHECK_THROWS_AS(parse_config_text("[verify]\ngrid 512\n"), ConfigError);
    CHECK_THROWS_AS(parse_config_text("[verify\n"), ConfigError);
    CHECK_THROWS_AS(suite_config_from(parse_config_text("[verify]\ngrid = twelve\n")),
                    ConfigError);
}

TEST_CASE("suite runs a reduced configuration") {
    SuiteConfig sc;
    sc.maps = {"blaschke:0.5", "negctrl:1"};
    sc.grid = 256;
    sc.n_max = 4;
    sc.t_grid = {1.0};
    sc.mobius = {MobiusDisk(0.0, cplx(0.3, 0.0))};
    const SuiteResult res = run_verify_suite(sc);
    CHECK(res.unexpected == 0);
    CHECK(res.reports.size() >= 20);
    // sorted deterministically
    for (std::size_t i = 1; i < res.reports.size(); ++i) {
        const auto &a = res.reports[i - 1], &b = res.reports[i];
        CHECK((a.identity_name < b.identity_name ||
               (a.identity_name == b.identity_name && a.params_string() <= b.params_string())));
    }
    // every report carries its expectation
    for (const auto& r : res.reports) CHECK(!report_param(r, "expected").empty());
}

TEST_CASE("cli: default suite exits 0 and reports enough instances") {
    const fs::path out = tmp_file("default.json");
    CHECK(run_cli("verify --out " + out.string()) == 0);
    const std::string json = slurp(out);
    CHECK(count_occurrences(json, "\"identity_name\"") >= 40);
}

TEST_CASE("cli: determinism of the default suite") {
    const fs::path out1 = tmp_file("det1.json"), out2 = tmp_file("det2.json");
    REQUIRE(run_cli("verify --out " + out1.string()) == 0);
    REQUIRE(run_cli("verify --jobs 3 --out " + out2.string()) == 0);
    CHECK(slurp(out1) == slurp(out2));
}

TEST_CASE("cli: configuration errors exit 2") {
    const fs::path cfg = tmp_file("bad.cfg");
    {
        std::ofstream f(cfg);
        f << "[verify]\nmaps = blaschke:0.5, unknown:map\n";
    }
    CHECK(run_cli("verify --config " + cfg.string()) == 2);
    {
        std::ofstream f(cfg);
        f << "[verify]\nnot_a_key = 3\n";
    }
    CHECK(run_cli("verify --config " + cfg.string()) == 2);
    CHECK(run_cli("verify --config /nonexistent/path.cfg") == 2);
}

TEST_CASE("cli: unreachable tolerance exits 1 with gaps reported") {
    const fs::path out = tmp_file("strict.json");
    CHECK(run_cli("verify --tol 1e-30 --grid 256 --out " + out.string()) == 1);
    const std::string json = slurp(out);
    CHECK(count_occurrences(json, "\"pass\": false") > 0);
}

TEST_CASE("cli: flow subcommand writes trace and certification") {
    const fs::path cfg = tmp_file("flow.cfg");
    const fs::path trace = tmp_file("trace.csv");
    const fs::path cert = tmp_file("cert.json");
    {
        std::ofstream f(cfg);
        f << "[flow]\nmap = blaschke:0\ngrid = 64\namplitude = 0.05\nseed = 7\n"
          << "max_steps = 40\ntol = 1e-9\ntrace = " << trace.string() << "\n";
    }
    CHECK(run_cli("flow --config " + cfg.string() + " --out " + cert.string()) == 0);
    const std::string csv = slurp(trace);
    CHECK(csv.rfind("step,energy,el_residual\n", 0) == 0);
    CHECK(slurp(cert).find("flow_stationarity") != std::string::npos);
}

TEST_CASE("cli: fourier subcommand emits coefficient and relation blocks") {
    const fs::path out = tmp_file("fourier.csv");
    const fs::path spec = tmp_file("spectrum.csv");
    CHECK(run_cli("fourier negctrl:1 4 --grid 256 --out " + out.string() + " --spectrum " +
                  spec.string()) == 0);
    const std::string csv = slurp(out);
    CHECK(csv.rfind("k,a0,a1,b0,b1\n", 0) == 0);
    CHECK(csv.find("\nn,S_n,T_n,scale_n\n") != std::string::npos);
    // b1 = (0, 1/2) in the coefficient block
    CHECK(csv.find("1,0,0,0,0.5\n") != std::string::npos);
    const std::string spectrum = slurp(spec);
    CHECK(spectrum.rfind("n,re0,im0,re1,im1\n", 0) == 0);
}

TEST_CASE("spectrum CSV round trips through 17 significant digits") {
    const GridMap1D u = make_circle_map("blaschke:0.5+0.2i", 64);
    const Spectrum s = analyze(u);
    const std::string csv = spectrum_csv(s);
    std::istringstream in(csv);
    std::string line;
    std::getline(in, line);  // header
    long k = -32;
    while (std::getline(in, line)) {
        std::istringstream row(line);
        std::string tok;
        std::getline(row, tok, ',');
        CHECK(std::stol(tok) == k);
        for (std::size_t c = 0; c < 2; ++c) {
            std::getline(row, tok, ',');
            CHECK(std::stod(tok) == s.at(k, c).real());
            std::getline(row, tok, ',');
            CHECK(std::stod(tok) == s.at(k, c).imag());
        }
        ++k;
    }
    CHECK(k == 33);
}
