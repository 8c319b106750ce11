#include <doctest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "rz/charfn.hpp"
#include "rz/report.hpp"
#include "support.hpp"

using rz::testing::phi;
using rz::testing::pi;

namespace {

struct Run {
    int code;
    std::string out;
};

Run rzcert(const std::string& args) {
    const std::string cmd = std::string(RZCERT_PATH) + " " + args + " 2>&1";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string out;
    std::array<char, 4096> buf{};
    while (auto n = std::fread(buf.data(), 1, buf.size(), pipe)) out.append(buf.data(), n);
    const int status = pclose(pipe);
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::filesystem::path scratch(const std::string& name) {
    const auto dir = std::filesystem::temp_directory_path() / "rzcert-tests";
    std::filesystem::create_directories(dir);
    return dir / name;
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

void spit(const std::filesystem::path& p, const std::string& text) { std::ofstream(p, std::ios::binary) << text; }

}  // namespace

TEST_CASE("eval prints 17 significant digits") {
    const auto mu = scratch("mu.json");
    spit(mu, R"({"dim": 2, "atoms": [[0, 1], [1, 0], [1, 1]], "weights": ["1/3", "1/3", "1/3"]})");

    auto r = rzcert("eval --dist " + mu.string() + " --point 0,0");
    CHECK(r.code == 0);
    CHECK(r.out == "1 + 0i\n");

    r = rzcert("eval --dist " + mu.string() + " --point pi,-pi");
    CHECK(r.code == 0);
    CHECK(r.out.rfind("-0.33333333333333331 ", 0) == 0);

    // -1/3 + 2/3 i.
    r = rzcert("eval --builtin paper-mu --point pi/2,pi/2");
    CHECK(r.code == 0);
    double re = 0, im = 0;
    char sign = 0;
    REQUIRE(std::sscanf(r.out.c_str(), "%lf %c %lfi", &re, &sign, &im) == 3);
    CHECK(std::abs(re + 1.0 / 3) < 1e-15);
    CHECK(sign == '+');
    CHECK(std::abs(im - 2.0 / 3) < 1e-15);
}

TEST_CASE("usage and parse errors exit with 2") {
    CHECK(rzcert("").code == 2);
    CHECK(rzcert("eval").code == 2);
    CHECK(rzcert("eval --point 1").code == 2);
    CHECK(rzcert("eval --point x,1").code == 2);
    CHECK(rzcert("eval --builtin nope --point 0,0").code == 2);
    CHECK(rzcert("miranda --map 0,0,1,1,2,2").code == 2);
    CHECK(rzcert("zeros --box 1,0,0,1").code == 2);
    CHECK(rzcert("verify-paper --max-depth -1").code == 2);

    const auto bad = scratch("bad.json");
    spit(bad, "{\n  \"dim\": 2,\n  \"atoms\": [[0, 1], [1, 0]],\n  \"weights\": [0.5, 0.6]\n}\n");
    const auto r = rzcert("eval --dist " + bad.string() + " --point 0,0");
    CHECK(r.code == 2);
    CHECK(r.out.find("line 4") != std::string::npos);
    CHECK(r.out.find("WeightsDoNotSumToOne") != std::string::npos);
    CHECK(rzcert("check " + scratch("missing.json").string()).code == 2);
}

TEST_CASE("zeros") {
    auto r = rzcert("zeros --box -pi,pi,-pi,pi --tol 1e-6");
    CHECK(r.code == 0);
    CHECK(r.out.rfind("2 cluster(s)", 0) == 0);
    CHECK(rzcert("zeros --builtin delta0").out == "no zeros\n");
    CHECK(rzcert("zeros --box -0.5,0.5,-0.5,0.5").out == "no zeros\n");
}

TEST_CASE("grid values agree with eval_point to the printed digit") {
    const auto grid = scratch("grid.csv");
    REQUIRE(rzcert("zeros --grid 21 --box -pi,pi,-1,2 --out " + grid.string()).code == 0);
    std::istringstream in(slurp(grid));
    std::string line;
    std::getline(in, line);
    CHECK(line == "x,y,re,im,abs");
    int rows = 0;
    while (std::getline(in, line)) {
        double x, y, re, im, ab;
        REQUIRE(std::sscanf(line.c_str(), "%lf,%lf,%lf,%lf,%lf", &x, &y, &re, &im, &ab) == 5);
        const auto z = rz::eval_point(phi(), Eigen::Vector2d(x, y));
        CHECK(rz::decimal17(z.real()) == rz::decimal17(re));
        CHECK(rz::decimal17(z.imag()) == rz::decimal17(im));
        CHECK(rz::decimal17(std::abs(z)) == rz::decimal17(ab));
        ++rows;
    }
    CHECK(rows == 21 * 21);
}

TEST_CASE("miranda summaries and exit codes") {
    const auto cert = scratch("miranda.json");
    auto r = rzcert("miranda --builtin paper-mu --builtin-map paper-psi --eps 0.025 --out " + cert.string());
    CHECK(r.code == 0);
    CHECK(r.out.rfind("PASS margin 0.025", 0) == 0);
    CHECK(r.out.find("orientation re -/+ across y, im -/+ across x") != std::string::npos);

    auto c = rzcert("check " + cert.string());
    CHECK(c.code == 0);

    r = rzcert("miranda --builtin-map paper-psi --eps 0.06");
    CHECK(r.code == 1);
    CHECK(r.out.rfind("INCONCLUSIVE", 0) == 0);

    r = rzcert("miranda --builtin-map identity --eps 0.01");
    CHECK(r.code == 1);
    CHECK(r.out.rfind("INCONCLUSIVE", 0) == 0);

    // Tampered margin.
    std::string text = slurp(cert);
    const std::string from = "\"margin\": \"0x1.999999999999ap-6\"";
    const auto at = text.find(from);
    REQUIRE(at != std::string::npos);
    text.replace(at, from.size(), "\"margin\": \"0x1p-3\"");
    const auto tampered = scratch("tampered.json");
    spit(tampered, text);
    CHECK(rzcert("check " + tampered.string()).code == 1);
}

TEST_CASE("winding") {
    auto r = rzcert("winding --box -0.5,0.5,-0.5,0.5");
    CHECK(r.code == 0);
    CHECK(r.out.rfind("PASS winding 0 ", 0) == 0);
    r = rzcert("winding --builtin-map paper-psi");
    CHECK(r.code == 0);
    CHECK(r.out.rfind("PASS winding -1 ", 0) == 0);
}

TEST_CASE("verify-paper exit codes and determinism") {
    const auto a = scratch("verify-a.json");
    const auto b = scratch("verify-b.json");
    auto r = rzcert("verify-paper --out " + a.string());
    CHECK(r.code == 0);
    CHECK(r.out.find("OVERALL PASS") != std::string::npos);
    REQUIRE(rzcert("verify-paper --out " + b.string()).code == 0);
    CHECK(slurp(a) == slurp(b));
    CHECK(rzcert("check " + a.string()).code == 0);

    r = rzcert("verify-paper --weights 0.34,0.33,0.33");
    CHECK(r.code == 1);
    CHECK(r.out.find("FAIL 1   boundary-identity") != std::string::npos);

    r = rzcert("verify-paper --max-depth 0");
    CHECK(r.code == 1);
    CHECK(r.out.find("FAIL 3   miranda-0.025") != std::string::npos);
}
