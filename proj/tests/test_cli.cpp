// End-to-end CLI checks: subcommand outputs parse and carry the right
// values, identical invocations produce byte-identical files, NaN is
// refused, and the exit-code contract (0 / 1 / 2) holds.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

using nlohmann::json;

namespace {

struct RunResult {
    int exit_code;
    std::string output;
};

RunResult run_cli(const std::string& args) {
    std::string cmd = std::string(SPECGEO_CLI_PATH) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string out;
    char buf[4096];
    while (std::size_t n = fread(buf, 1, sizeof(buf), pipe)) out.append(buf, n);
    int rc = pclose(pipe);
    return {WEXITSTATUS(rc), out};
}

std::string write_temp(const std::string& name, const std::string& content) {
    std::string path = std::string("/tmp/specgeo_test_") + name;
    std::ofstream f(path);
    f << content;
    return path;
}

} // namespace

TEST_CASE("zeta subcommand: Epstein value and pole report") {
    auto r = run_cli("zeta --epstein --n 2 --s 0");
    REQUIRE(r.exit_code == 0);
    json j = json::parse(r.output);
    CHECK(j["result"]["finite_part"]["re"].get<double>() == doctest::Approx(-1.0).epsilon(1e-9));
    CHECK(j["result"]["pole_order"].get<int>() == 0);

    auto pole = run_cli("zeta --epstein --n 2 --s 2");
    json jp = json::parse(pole.output);
    CHECK(jp["result"]["pole_order"].get<int>() == 1);
    CHECK(jp["result"]["residue"]["re"].get<double>() ==
          doctest::Approx(6.283185307179586).epsilon(1e-9));

    auto tw = run_cli("zeta --twisted 0.5 --s 2");
    json jt = json::parse(tw.output);
    CHECK(jt["result"]["finite_part"]["re"].get<double>() ==
          doctest::Approx(-1.6449340668482264).epsilon(1e-9));
}

TEST_CASE("shells subcommand emits the CSV spectrum") {
    auto r = run_cli("--format csv shells --dim 2 --max 2");
    REQUIRE(r.exit_code == 0);
    CHECK(r.output.find("norm_sq,count") != std::string::npos);
    CHECK(r.output.find("0,1") != std::string::npos);
    CHECK(r.output.find("1,4") != std::string::npos);
    CHECK(r.output.find("2,4") != std::string::npos);
}

TEST_CASE("deterministic emission: identical runs, identical bytes") {
    auto a = run_cli("--format csv shells --dim 3 --max 11");
    auto b = run_cli("--format csv shells --dim 3 --max 11");
    CHECK(a.output == b.output);
    auto za = run_cli("zeta --epstein --n 3 --s 1.5,0.25");
    auto zb = run_cli("zeta --epstein --n 3 --s 1.5,0.25");
    CHECK(za.output == zb.output);
}

TEST_CASE("usage errors exit with 1") {
    CHECK(run_cli("zeta").exit_code == 1);                     // missing mode
    CHECK(run_cli("shells --dim 9 --max 4").exit_code == 1);   // dimension range
    CHECK(run_cli("nosuchcommand").exit_code == 1);
    CHECK(run_cli("dioph").exit_code == 1);
}

TEST_CASE("dioph subcommand: exact decimal parsing and exponent") {
    auto r = run_cli("dioph --value 1.6180339887498948482 --depth 25");
    REQUIRE(r.exit_code == 0);
    json j = json::parse(r.output);
    CHECK(j["result"]["partial_quotients"][0].get<std::string>() == "1");
    CHECK(j["result"]["partial_quotients"][5].get<std::string>() == "1");
    CHECK(j["result"]["approx_exponent"].get<double>() == doctest::Approx(1.0).epsilon(0.06));

    auto rat = run_cli("dioph --value 22/7 --depth 10");
    json jr = json::parse(rat.output);
    CHECK(jr["result"]["exact_termination"].get<bool>());

    std::string path = write_temp("theta.json", R"({"theta": [0, 10.16640738463051,
        -10.16640738463051, 0]})");   // 2 pi phi
    auto m = run_cli("dioph --matrix " + path + " --depth 3");
    json jm = json::parse(m.output);
    CHECK(jm["result"]["verdict"].get<std::string>() == "YES");
}

TEST_CASE("dixmier subcommand: estimators and the tolerance exit code") {
    auto r = run_cli("dixmier --dim 2 --N 100000");
    REQUIRE(r.exit_code == 0);
    json j = json::parse(r.output);
    CHECK(j["result"]["zeta_residue"].get<double>() ==
          doctest::Approx(3.14159265358979).epsilon(1e-9));

    // known log-slow convergence: 1% tolerance at N = 1000 must flag exit 2
    auto tight = run_cli("dixmier --dim 2 --N 1000 --tol 0.01");
    CHECK(tight.exit_code == 2);
}

TEST_CASE("nctorus subcommands: ym, check, action") {
    const double phi = 1.6180339887498949;
    const double tp = 6.283185307179586;
    std::ostringstream oss;
    oss << R"({"n": 4, "theta": [)";
    double th[16] = {0, tp * phi, 0, 0, -tp * phi, 0, 0, 0,
                     0, 0, 0, tp * phi, 0, 0, -tp * phi, 0};
    for (int i = 0; i < 16; ++i) oss << (i ? "," : "") << th[i];
    // A_1 = i(U_l + U_{-l}) with l = (1,0,0,0): anti-hermitian
    oss << R"(], "components": [
        {"alpha": 1, "l": [1,0,0,0], "re": 0, "im": 1},
        {"alpha": 1, "l": [-1,0,0,0], "re": 0, "im": 1},
        {"alpha": 2, "l": [0,1,0,0], "re": 0, "im": 0.5},
        {"alpha": 2, "l": [0,-1,0,0], "re": 0, "im": 0.5}
    ]})";
    std::string path = write_temp("oneform.json", oss.str());

    auto ym = run_cli("nctorus ym --input " + path);
    REQUIRE(ym.exit_code == 0);
    json jy = json::parse(ym.output);
    CHECK(std::isfinite(jy["result"]["yang_mills_density"].get<double>()));

    auto chk = run_cli("nctorus check --input " + path);
    CHECK(chk.exit_code == 0);   // two-path identity holds
    json jc = json::parse(chk.output);
    CHECK(jc["result"]["two_path_residual"].get<double>() <=
          jc["result"]["tolerance"].get<double>());

    auto act = run_cli("nctorus action --input " + path + " --lambda 5");
    json ja = json::parse(act.output);
    CHECK(ja["result"]["nc_integral_top"].get<double>() ==
          doctest::Approx(8.0 * 9.869604401089358).epsilon(1e-10));
}

TEST_CASE("moyal subcommands") {
    std::string path = write_temp(
        "coeffs.json", R"({"N": 1, "entries": [{"m": [0], "n": [0], "re": 1, "im": 0}]})");
    auto dix = run_cli("moyal dixmier --theta 2 --cutoff 4 --input " + path);
    REQUIRE(dix.exit_code == 0);
    json jd = json::parse(dix.output);
    CHECK(jd["result"]["paper_value"].get<double>() == doctest::Approx(2.0).epsilon(1e-10));
    CHECK(jd["result"]["limit_estimate"].get<double>() == doctest::Approx(2.0).epsilon(1e-4));

    auto norms = run_cli("moyal norms --theta 2 --cutoff 4 --input " + path);
    json jn = json::parse(norms.output);
    CHECK(jn["result"]["op_norm_estimate"].get<double>() == doctest::Approx(1.0));
    CHECK(jn["result"]["bound"].get<double>() == doctest::Approx(1.0));

    auto star = run_cli("moyal star --theta 2 --cutoff 4 --input " + path);
    json js = json::parse(star.output);
    REQUIRE(js["result"]["entries"].size() == 1);   // projector squares to itself
    CHECK(js["result"]["entries"][0]["re"].get<double>() == doctest::Approx(1.0));
}

TEST_CASE("heat and wres and action subcommands") {
    // fit a pure pi/t trace
    std::ostringstream csv;
    csv.precision(17);
    csv << "t,trace\n";
    for (int i = 0; i < 6; ++i) {
        double t = 0.004 + 0.003 * i;
        csv << t << "," << 3.14159265358979324 / t << "\n";
    }
    std::string path = write_temp("samples.csv", csv.str());
    auto fit = run_cli("heat --fit " + path + " --dim 2 --kmax 4");
    REQUIRE(fit.exit_code == 0);
    json jf = json::parse(fit.output);
    CHECK(jf["result"]["a0"].get<double>() == doctest::Approx(3.14159265).epsilon(1e-8));

    auto w = run_cli("wres --symbol laplacian --dim 2");
    json jw = json::parse(w.output);
    CHECK(jw["result"]["wres"]["re"].get<double>() ==
          doctest::Approx(6.283185307179586).epsilon(1e-8));

    auto mono = run_cli("wres --symbol monomial --dim 2 --p 2,0");
    json jm = json::parse(mono.output);
    CHECK(jm["result"]["wres"]["re"].get<double>() ==
          doctest::Approx(3.141592653589793).epsilon(1e-8));

    auto act = run_cli("--format csv action --dim 2 --cutoff exp --lambda-ladder 5,10");
    REQUIRE(act.exit_code == 0);
    CHECK(act.output.find("Lambda,direct,expansion") != std::string::npos);
}

TEST_CASE("json round-trip: emitted documents re-parse") {
    for (const std::string& args :
         {std::string("zeta --epstein --n 2 --s 1.25"),
          std::string("dioph --value 0.4142135623730951 --depth 15"),
          std::string("wres --symbol laplacian --dim 3")}) {
        auto r = run_cli(args);
        REQUIRE(r.exit_code == 0);
        json j = json::parse(r.output);   // throws on malformed output
        CHECK(j.contains("meta"));
        CHECK(j.contains("result"));
        CHECK(j["meta"].contains("tool"));
    }
}

TEST_CASE("output to file matches stdout emission") {
    std::string path = "/tmp/specgeo_test_out.json";
    std::remove(path.c_str());
    auto r = run_cli("--output " + path + " zeta --epstein --n 1 --s 3");
    REQUIRE(r.exit_code == 0);
    std::ifstream f(path);
    std::stringstream ss;
    ss << f.rdbuf();
    auto direct = run_cli("zeta --epstein --n 1 --s 3");
    // the meta block echoes the full flag list, so compare the payloads
    CHECK(json::parse(ss.str())["result"] == json::parse(direct.output)["result"]);
}
