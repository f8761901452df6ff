#include "cfpde/cli.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"

using namespace cfpde;

namespace {

const std::string kDir = CFPDE_PROBLEM_DIR;

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args) {
    args.insert(args.begin(), "cfpde");
    std::ostringstream out;
    std::ostringstream err;
    const int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
}

}  // namespace

TEST_CASE("terms") {
    const Run r = run({"terms", "--problem", kDir + "/gas.fpde", "--method", "cadm", "--order", "3"});
    CHECK(r.code == kExitOk);
    // e^(-x^b/b) t^(3a) / (3! a^3) with a = 3/4, b = 1/2
    CHECK(r.out.find("u3 = 32/81*exp(-2*x^(1/2))*t^(9/4)\n") != std::string::npos);
    CHECK(r.out.find("U0") == std::string::npos);

    const Run c = run({"terms", "--problem", "advection", "--method", "crdtm", "--order", "1"});
    CHECK(c.out == "U0 = -1/2 + x^(1/2)\nU1 = -1/2 - x^(1/2)\n");

    const Run ov = run({"terms", "--problem", "diffusion", "--method", "cadm", "--order", "1", "--alpha", "1", "--beta", "1"});
    CHECK(ov.out == "u0 = sin(x)\nu1 = -sin(x)*t\n");
}

TEST_CASE("adomian") {
    const Run r = run({"adomian", "--nonlinearity", "u*Db(u)+u^2", "--order", "0"});
    CHECK(r.code == kExitOk);
    CHECK(r.out == "A0 = u0^2 + u0*Db(u0)\n");
    const Run a = run({"adomian", "--nonlinearity", "u*Da(u)", "--order", "3"});
    CHECK(a.out.find("A3 = u0*Da(u3) + u1*Da(u2) + u2*Da(u1) + u3*Da(u0)\n") != std::string::npos);
    CHECK(run({"adomian", "--nonlinearity", "u^"}).code == kExitParse);
}

TEST_CASE("check") {
    const Run r = run({"check", "--problem", kDir + "/diffusion.fpde", "--order", "0"});
    CHECK(r.code == kExitOk);
    CHECK(r.out.find("cadm: ok") != std::string::npos);
    for (const char* name : {"diffusion", "gas", "advection"}) CHECK(run({"check", "--problem", name}).code == kExitOk);
}

TEST_CASE("compare and solve write CSV") {
    const Run r = run({"compare", "--problem", "gas", "--grid", "x=0.5:1:2,t=0:0.5:2", "--check-equivalence"});
    CHECK(r.code == kExitOk);
    std::istringstream in(r.out);
    std::string header;
    std::getline(in, header);
    CHECK(header == "x,t,cadm,crdtm,exact,err_cadm,err_crdtm,bound");
    CHECK(r.err.find("max |cadm - exact|") != std::string::npos);

    const Run s = run({"solve", "--problem", "gas", "--method", "cadm", "--grid", "x=1:1:1,t=0:0:1"});
    CHECK(s.code == kExitOk);
    CHECK(s.out.find("\n1,0,0.1353352832366127,,,,,0\n") != std::string::npos);
}

TEST_CASE("compare output is reproducible") {
    const auto dir = std::filesystem::temp_directory_path();
    const auto a = dir / "cfpde_test_cli_a.csv";
    const auto b = dir / "cfpde_test_cli_b.csv";
    const std::vector<std::string> args{"compare", "--problem", "advection", "--grid", "x=0.5:2:9,t=0:0.8:9"};
    auto with_out = [&](const std::filesystem::path& p) {
        auto v = args;
        v.push_back("--out");
        v.push_back(p.string());
        return v;
    };
    REQUIRE(run(with_out(a)).code == kExitOk);
    REQUIRE(run(with_out(b)).code == kExitOk);
    CHECK(slurp(a) == slurp(b));
    CHECK(slurp(a) == run(args).out);
    std::filesystem::remove(a);
    std::filesystem::remove(b);
}

TEST_CASE("exit codes") {
    CHECK(run({}).code == kExitUsage);
    CHECK(run({"frobnicate"}).code == kExitUsage);
    CHECK(run({"terms"}).code == kExitUsage);
    CHECK(run({"terms", "--problem", "gas", "--method", "euler"}).code == kExitUsage);
    CHECK(run({"terms", "--problem", "gas", "--alpha", "one"}).code == kExitUsage);
    CHECK(run({"solve", "--problem", "gas", "--grid", "x=0:1:3"}).code == kExitUsage);
    CHECK(run({"terms", "--problem", "gas", "--format", "json"}).code == kExitUsage);
    CHECK(run({"terms", "--problem", "missing.fpde"}).code == kExitParse);
    CHECK(run({"terms", "--problem", "gas", "--alpha", "3/2"}).code == kExitParse);

    const auto bad = std::filesystem::temp_directory_path() / "cfpde_test_bad.fpde";
    std::ofstream(bad) << "alpha = \"1\"\nic = \"x +\"\n";
    const Run p = run({"terms", "--problem", bad.string()});
    CHECK(p.code == kExitParse);
    CHECK(p.err.find(bad.string() + ":2:") != std::string::npos);

    const auto two = std::filesystem::temp_directory_path() / "cfpde_test_two.fpde";
    std::ofstream(two) << "alpha = \"1\"\ntime_order = \"2\"\nic = \"x\"\n";
    const Run s = run({"terms", "--problem", two.string()});
    CHECK(s.code == kExitSolver);
    CHECK(s.err.find(two.string()) != std::string::npos);

    // Problems without a closed form still solve.
    const auto neg = std::filesystem::temp_directory_path() / "cfpde_test_neg.fpde";
    std::ofstream(neg) << "alpha = \"1\"\nic = \"x^(1/2)\"\n";
    CHECK(run({"solve", "--problem", neg.string(), "--grid", "x=0.5:1:2"}).code == kExitOk);

    std::filesystem::remove(bad);
    std::filesystem::remove(two);
    std::filesystem::remove(neg);
}

TEST_CASE("help") {
    const Run r = run({"--help"});
    CHECK(r.code == kExitOk);
    CHECK(r.out.find("compare") != std::string::npos);
}
