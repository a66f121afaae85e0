#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "haarpencil/cli.hpp"

using namespace haarpencil;

namespace {

struct CliRun {
    int code;
    std::string out;
    std::string err;
    json payload;  // parsed stdout when it is JSON
};

CliRun run(std::vector<std::string> args) {
    args.insert(args.begin(), "haarpencil");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    int code = cli::run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
    CliRun r{code, out.str(), err.str(), json()};
    if (!r.out.empty() && (r.out[0] == '{' || r.out[0] == '[')) r.payload = json::parse(r.out);
    return r;
}

}  // namespace

TEST_CASE("exact-scalar emits the exact rational") {
    auto r = run({"exact-scalar", "--d", "2", "--g", "2", "--x", "0.3,0.4", "--y", "0.3,0.4",
                  "--exact"});
    REQUIRE(r.code == 0);
    CHECK(r.payload["command"] == "exact-scalar");
    CHECK(r.payload["output"]["exact"] == "12981/10000");
    CHECK(r.payload["output"]["float"].get<double>() == doctest::Approx(1.2981));
    CHECK(r.payload["output"]["d"] == 2);
}

TEST_CASE("limit prints 12-significant-digit floats") {
    auto r = run({"limit", "--x", "0.3,0.4", "--y", "0.3,0.4"});
    REQUIRE(r.code == 0);
    CHECK(r.payload["output"]["float"].get<double>() == doctest::Approx(4.0 / 3.0).epsilon(1e-11));
    // round-trip: the payload re-parses to the same values
    auto again = json::parse(r.payload.dump());
    CHECK(again == r.payload);
}

TEST_CASE("exact-moment with k=1 matches exact-scalar") {
    auto a = run({"exact-moment", "--d", "4", "--k", "1", "--x", "0.3,0.4", "--exact"});
    auto b = run({"exact-scalar", "--d", "4", "--x", "0.3,0.4", "--y", "0.3,0.4", "--exact"});
    REQUIRE(a.code == 0);
    REQUIRE(b.code == 0);
    CHECK(a.payload["output"]["exact"] == b.payload["output"]["exact"]);
}

TEST_CASE("exit codes: parse and domain errors") {
    CHECK(run({"exact-scalar", "--d", "2", "--x", "0.3,0.4", "--bogus-flag"}).code == 3);
    CHECK(run({"exact-scalar", "--d", "2", "--x", "0.3,oops"}).code == 3);
    CHECK(run({"limit", "--x", "0.9,0.9"}).code == 2);
    CHECK(run({"no-such-subcommand"}).code == 3);
    CHECK(run({"mc", "--d", "2", "--x", "0.3", "--samples", "1000"}).code == 3);  // --seed required
}

TEST_CASE("mc is reproducible for a fixed seed and chunking") {
    std::vector<std::string> cmd{"mc",        "--d",    "2",   "--g",     "2",
                                 "--x",       "0.3,0.4", "--samples", "2000", "--seed",
                                 "7",         "--chunk", "256"};
    auto a = run(cmd);
    auto b = run(cmd);
    REQUIRE(a.code == 0);
    CHECK(a.payload["output"] == b.payload["output"]);
    // different worker counts leave results untouched
    auto cmd1 = cmd;
    cmd1.push_back("--threads");
    cmd1.push_back("1");
    auto cmd4 = cmd;
    cmd4.push_back("--threads");
    cmd4.push_back("4");
    CHECK(run(cmd1).payload["output"] == run(cmd4).payload["output"]);
}

TEST_CASE("verify-bounds csv emits ok rows") {
    auto r = run({"verify-bounds", "--n", "4", "--k", "2", "--d", "3", "--csv"});
    REQUIRE(r.code == 0);
    std::istringstream lines(r.out);
    std::string line;
    std::getline(lines, line);
    CHECK(line == "lambda;mu;nu;d;ratio_num;ratio_den;bound;ok");
    int rows = 0;
    while (std::getline(lines, line)) {
        if (line.empty()) continue;
        ++rows;
        CHECK(line.substr(line.size() - 4) == "true");
    }
    CHECK(rows > 0);
}

TEST_CASE("max-ratio reproduces the worked example family") {
    auto r = run({"max-ratio", "--lambda", "4,4,3", "--d", "3"});
    REQUIRE(r.code == 0);
    CHECK(r.payload["output"]["special_form"] == true);
    CHECK(r.payload["output"]["ok"] == true);
}

TEST_CASE("orthogonality subcommand reports the large-d limit") {
    auto r = run({"orthogonality", "--sigma", "(1 2)", "--alpha", "2,0", "--d", "8",
                  "--samples", "2000", "--seed", "3"});
    REQUIRE(r.code == 0);
    CHECK(r.payload["output"]["large_d_limit"] == 2.0);
}

TEST_CASE("diagonal-limit") {
    auto r = run({"diagonal-limit", "--xs", "0.3,0.4;0.1,0.2"});
    REQUIRE(r.code == 0);
    double got = r.payload["output"]["float"].get<double>();
    std::vector<ScalarTuple> rows{{{0.3, 0.0}, {0.4, 0.0}}, {{0.1, 0.0}, {0.2, 0.0}}};
    CHECK(got == doctest::Approx(diagonal_limit(rows, rows).real()).epsilon(1e-10));
}

TEST_CASE("limit with a matrices file") {
    const char* path = "cli_test_matrices.json";
    {
        std::vector<ScalarTuple> xr{{{0.3, 0.0}, {0.4, 0.0}}, {{0.1, 0.0}, {0.0, 0.2}}};
        MatrixTuple X = MatrixTuple::diagonal(xr);
        json j{{"X", matrix_tuple_to_json(X)}, {"Y", matrix_tuple_to_json(X)}};
        std::ofstream f(path);
        f << j.dump();
    }
    auto r = run({"limit", "--matrices", path});
    std::remove(path);
    REQUIRE(r.code == 0);
    std::vector<ScalarTuple> xr{{{0.3, 0.0}, {0.4, 0.0}}, {{0.1, 0.0}, {0.0, 0.2}}};
    CHECK(r.payload["output"]["float"].get<double>() ==
          doctest::Approx(diagonal_limit(xr, xr).real()).epsilon(1e-10));

    auto bad = run({"limit", "--matrices", "no_such_file.json"});
    CHECK(bad.code == 3);
}

TEST_CASE("conic sweep approaches k^2 c1") {
    auto r = run({"conic", "--x0", "1", "--x", "0.5", "--k", "1", "--d-min", "40", "--d-max",
                  "40"});
    REQUIRE(r.code == 0);
    auto row = r.payload["output"]["rows"][0];
    CHECK(row["log_moment_minus_dk_c0"].get<double>() ==
          doctest::Approx(std::log(4.0 / 3.0)).epsilon(1e-6));
}

TEST_CASE("matrix tuple JSON round trip") {
    std::vector<ScalarTuple> xr{{{0.25, -0.1}, {0.4, 0.3}}};
    MatrixTuple X = MatrixTuple::diagonal(xr);
    json j = matrix_tuple_to_json(X);
    MatrixTuple back = matrix_tuple_from_json(j);
    REQUIRE(back.g() == X.g());
    REQUIRE(back.k() == X.k());
    for (int q = 0; q < X.g(); ++q)
        CHECK((back.mats[static_cast<std::size_t>(q)] - X.mats[static_cast<std::size_t>(q)])
                  .cwiseAbs()
                  .maxCoeff() < 1e-15);
}
