#include <doctest.h>

#include "vorwave/config.hpp"
#include "vorwave/errors.hpp"

#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

using namespace vorwave;

namespace {

std::string tmp_dir() {
    const char* t = std::getenv("VORWAVE_TMP");
    return t ? t : "test_out";
}

std::string cli_bin() {
    const char* b = std::getenv("VORWAVE_BIN");
    return b ? b : "";
}

int run_cli(const std::string& args) {
    std::string cmd = cli_bin() + " " + args + " > /dev/null 2> /dev/null";
    int rc = std::system(cmd.c_str());
    return WEXITSTATUS(rc);
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace

TEST_SUITE("cli") {

TEST_CASE("config defaulting and validation") {
    RunConfig c = config_from_json(nlohmann::json{{"gamma", nlohmann::json::array()},
                                                  {"g", 9.81},
                                                  {"p0", -1.0}});
    CHECK(c.nq == 128);
    CHECK(c.np == 64);
    CHECK(c.a_max == doctest::Approx(0.01));
    CHECK(c.tol == doctest::Approx(1e-10));
    CHECK(c.out == "out");

    CHECK_THROWS_WITH_AS(config_from_json(nlohmann::json{{"p0", 0.5}}),
                         "p0 must be negative", ConfigError);
    CHECK_THROWS_WITH_AS(config_from_json(nlohmann::json{{"frequency", 2.0}}),
                         "unknown config key 'frequency'", ConfigError);
    CHECK_THROWS_AS(config_from_json(nlohmann::json{{"Nq", 13}}), ConfigError);
    CHECK_THROWS_AS(config_from_json(nlohmann::json{{"gamma", "zero"}}), ConfigError);
    CHECK_THROWS_AS(config_from_json(nlohmann::json{{"kernels", "cuda"}}), ConfigError);
    CHECK_THROWS_AS(
        config_from_json(nlohmann::json{{"trace", {{{"x0", 0.0}, {"speed", 1.0}}}}}),
        ConfigError);
}

TEST_CASE("overrides parse as JSON with raw-string fallback") {
    RunConfig c = parse_config("", {"gamma=[-0.3]", "a_max=0.02", "out=runs", "Np=32"});
    REQUIRE(c.gamma.size() == 1);
    CHECK(c.gamma[0] == doctest::Approx(-0.3));
    CHECK(c.a_max == doctest::Approx(0.02));
    CHECK(c.out == "runs");
    CHECK(c.np == 32);
    CHECK_THROWS_AS(parse_config("", {"gamma"}), ConfigError);
}

TEST_CASE("config echo round-trips") {
    RunConfig c = parse_config("", {"gamma=[-0.1]", "Np=32"});
    RunConfig back = config_from_json(c.to_json());
    CHECK(back.to_json() == c.to_json());
}

TEST_CASE("cli: bifurcate emits the dispersion anchor") {
    if (cli_bin().empty()) return;
    std::string out = tmp_dir() + "/cli_bif";
    REQUIRE(run_cli("bifurcate --out " + out) == 0);
    nlohmann::json j = nlohmann::json::parse(slurp(out + "/bifurcation.json"));
    double lambda = j["lambda"].get<double>();
    CHECK(std::fabs(9.81 * lambda * lambda * std::tanh(lambda) - 1.0) < 1e-8);
    CHECK(j["c"].get<double>() == doctest::Approx(1.0 / lambda).epsilon(1e-10));
    CHECK(j["d"].get<double>() == doctest::Approx(lambda).epsilon(1e-10));
}

TEST_CASE("cli: exit codes for config and solver failures") {
    if (cli_bin().empty()) return;
    std::string out = tmp_dir() + "/cli_err";
    CHECK(run_cli("solve --set p0=0.5 --out " + out) == 2);
    CHECK(run_cli("solve --set nonsense=1 --out " + out) == 2);
    // no dispersion root inside [2, 3] for gamma = 0, g = 9.81
    CHECK(run_cli("bifurcate --set lambda_min=2 --set lambda_max=3 --out " + out) == 3);
}

TEST_CASE("cli: verify exit status tracks the report verdict") {
    if (cli_bin().empty()) return;
    std::string out = tmp_dir() + "/cli_verify";
    REQUIRE(run_cli("verify --set Nq=64 --set Np=32 --out " + out) == 0);
    nlohmann::json j = nlohmann::json::parse(slurp(out + "/report.json"));
    CHECK(j["overall"] == "pass");
    CHECK(j["solutions"].size() >= 2);
}

TEST_CASE("cli: rerunning from the effective config echo is byte-identical") {
    if (cli_bin().empty()) return;
    std::string o1 = tmp_dir() + "/cli_rep1";
    std::string o2 = tmp_dir() + "/cli_rep2";
    REQUIRE(run_cli("solve --set Nq=64 --set Np=32 --set a_max=0.005 --out " + o1) == 0);
    REQUIRE(run_cli("solve --config " + o1 + "/effective_config.json --out " + o2) == 0);
    CHECK(slurp(o1 + "/branch.json") == slurp(o2 + "/branch.json"));
    CHECK(slurp(o1 + "/sol_001/h.csv") == slurp(o2 + "/sol_001/h.csv"));
    CHECK(slurp(o1 + "/sol_001/fields.csv") == slurp(o2 + "/sol_001/fields.csv"));
    CHECK(!slurp(o1 + "/sol_001/h.csv").empty());
}

TEST_CASE("cli: plot emits parsable velocity arrows with v > 0 left of the crest") {
    if (cli_bin().empty()) return;
    std::string out = tmp_dir() + "/cli_plot";
    REQUIRE(run_cli("plot --set Nq=64 --set Np=32 --out " + out) == 0);
    std::string svg = slurp(out + "/figure_streamlines.svg");
    REQUIRE(!svg.empty());
    // every arrow inside x in (0, pi) must report positive vertical velocity
    size_t pos = 0;
    int checked = 0;
    while ((pos = svg.find("class=\"vel\"", pos)) != std::string::npos) {
        auto grab = [&](const char* key) {
            size_t k = svg.find(key, pos);
            REQUIRE(k != std::string::npos);
            k += std::string(key).size();
            size_t e = svg.find('"', k);
            return std::stod(svg.substr(k, e - k));
        };
        double x = grab("data-x=\"");
        double v = grab("data-v=\"");
        if (x > 0.05 && x < 3.0) {
            CHECK(v > 0.0);
            ++checked;
        }
        ++pos;
    }
    CHECK(checked >= 10);
    // the SVG surface polyline peaks at the crest x = 0
    CHECK(svg.find("class=\"surface\"") != std::string::npos);
}

TEST_CASE("cli: csv artifacts use headers and dot decimals") {
    if (cli_bin().empty()) return;
    std::string out = tmp_dir() + "/cli_csv";
    REQUIRE(run_cli("laminar --set gamma=[-0.3] --set Np=16 --out " + out) == 0);
    std::string csv = slurp(out + "/laminar_profile.csv");
    REQUIRE(!csv.empty());
    CHECK(csv.rfind("p,H,Hp,u\n", 0) == 0);
    CHECK(csv.find(',') != std::string::npos);
    CHECK(csv.find(';') == std::string::npos);
    CHECK(csv.back() == '\n');
}

} // TEST_SUITE
