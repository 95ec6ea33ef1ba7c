#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "nonext/cli.hpp"

namespace {

struct RunResult {
    int exit_code;
    std::string out;
    std::string err;
};

RunResult run_cli(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int code = nonext::cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::string write_temp(const std::string& name, const std::string& content) {
    const std::string path = "/tmp/nonext_cli_test_" + name;
    std::ofstream f(path, std::ios::trunc);
    f << content;
    return path;
}

nlohmann::json parse_out(const RunResult& r) { return nlohmann::json::parse(r.out); }

}  // namespace

TEST_CASE("eval prints a single entropy value") {
    const std::string path = write_temp("u2.json", R"({"p": [0.5, 0.5]})");
    const RunResult r =
        run_cli({"eval", "--dist", path, "--q", "2", "--phi", "tsallis"});
    REQUIRE(r.exit_code == 0);
    const auto j = parse_out(r);
    CHECK(j["entropy"].get<double>() == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("eval reads CSV rows and emits CSV when asked") {
    const std::string path = write_temp("u2.csv", "0.5\n0.5\n");
    const RunResult r = run_cli(
        {"eval", "--dist", path, "--q", "2", "--phi", "tsallis", "--format", "csv"});
    REQUIRE(r.exit_code == 0);
    CHECK(r.out.substr(0, 8) == "entropy\n");
    CHECK(std::stod(r.out.substr(8)) == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("eval reads stdin when the path is a dash") {
    std::istringstream fake_stdin(R"({"p": [0.25, 0.75]})");
    std::streambuf* saved = std::cin.rdbuf(fake_stdin.rdbuf());
    const RunResult r = run_cli({"eval", "--dist", "-", "--q", "2"});
    std::cin.rdbuf(saved);
    REQUIRE(r.exit_code == 0);
    const auto j = parse_out(r);
    CHECK(j["entropy"].get<double>() == doctest::Approx(0.375).epsilon(1e-12));
}

TEST_CASE("eval accepts refinement and product inputs by flattening them") {
    const std::string ref = write_temp("ref.json", R"({"blocks": [[0.25, 0.25], [0.5]]})");
    const RunResult r1 = run_cli({"eval", "--dist", ref, "--q", "2"});
    REQUIRE(r1.exit_code == 0);

    const std::string prod =
        write_temp("prod.json", R"({"a": [0.5, 0.5], "b": [0.25, 0.75]})");
    const RunResult r2 = run_cli({"eval", "--dist", prod, "--q", "2"});
    REQUIRE(r2.exit_code == 0);
    const auto j = parse_out(r2);
    // joint of (1/2,1/2) x (1/4,3/4): 1 - (1/64 + 9/64) * 2 * ... = 11/16
    CHECK(j["entropy"].get<double>() == doctest::Approx(11.0 / 16.0).epsilon(1e-12));
}

TEST_CASE("sweep covers the inclusive range and stays finite across q = 1") {
    const std::string path = write_temp("u4.json", R"({"p": [0.25, 0.25, 0.25, 0.25]})");
    const RunResult r = run_cli(
        {"sweep", "--dist", path, "--q-range", "0.5:1.5:0.05", "--phi", "cubic"});
    REQUIRE(r.exit_code == 0);
    const auto j = parse_out(r);
    CHECK(j["command"] == "sweep");
    CHECK(j["passed"].get<bool>());
    REQUIRE(j["results"].size() == 21);
    CHECK(j["results"][0]["q"].get<double>() == doctest::Approx(0.5));
    CHECK(j["results"][20]["q"].get<double>() == doctest::Approx(1.5));
    double prev_q = 0.0;
    std::vector<double> qs, vals;
    for (const auto& row : j["results"]) {
        CHECK(row["q"].get<double>() > prev_q);
        prev_q = row["q"].get<double>();
        CHECK(std::isfinite(row["entropy"].get<double>()));
        qs.push_back(row["q"].get<double>());
        vals.push_back(row["entropy"].get<double>());
    }
    // Continuity surrogate: the step over the q = 1 crossing may not exceed
    // twice the steepest neighboring difference elsewhere in the sweep.
    const double step = 0.05;
    double steepest = 0.0, crossing = 0.0;
    for (std::size_t i = 1; i < qs.size(); ++i) {
        const double jump = std::abs(vals[i] - vals[i - 1]);
        if (qs[i - 1] < 1.0 && qs[i] >= 1.0 - 1e-12) {
            crossing = jump;
        } else {
            steepest = std::max(steepest, jump / step);
        }
    }
    CHECK(crossing <= steepest * 2.0 * step);
}

TEST_CASE("sweep emits CSV rows") {
    const std::string path = write_temp("u2b.json", R"({"p": [0.5, 0.5]})");
    const RunResult r = run_cli({"sweep", "--dist", path, "--q-range", "1:2:0.5",
                                 "--format", "csv"});
    REQUIRE(r.exit_code == 0);
    std::istringstream lines(r.out);
    std::string line;
    std::getline(lines, line);
    CHECK(line == "q,entropy");
    int rows = 0;
    while (std::getline(lines, line)) {
        if (!line.empty()) ++rows;
    }
    CHECK(rows == 3);
}

TEST_CASE("verify runs the full suite and passes on clean input") {
    const std::string path = write_temp("u4b.json", R"({"p": [0.25, 0.25, 0.25, 0.25]})");
    const RunResult r = run_cli(
        {"verify", "--dist", path, "--q", "1.0", "--phi", "tsallis", "--seed", "42"});
    REQUIRE(r.exit_code == 0);
    const auto j = parse_out(r);
    CHECK(j["command"] == "verify");
    CHECK(j["passed"].get<bool>());
    REQUIRE(j["results"].size() == 6);
    for (const auto& rep : j["results"]) {
        CHECK(rep["status"] != "failed");
        CHECK(rep["residual"].get<double>() <= rep["tol"].get<double>());
    }
}

TEST_CASE("verify respects suite selection") {
    const std::string path = write_temp("u3.json", R"({"p": [0.5, 0.3, 0.2]})");
    const RunResult r = run_cli({"verify", "--dist", path, "--q", "2", "--suite", "symmetry"});
    REQUIRE(r.exit_code == 0);
    const auto j = parse_out(r);
    REQUIRE(j["results"].size() == 1);
    CHECK(j["results"][0]["name"] == "symmetry");
}

TEST_CASE("verify accepts refinement and product inputs directly") {
    const std::string ref = write_temp("ref2.json",
                                       R"({"blocks": [[0.2, 0.1], [0.3, 0.4]]})");
    const RunResult r1 = run_cli({"verify", "--dist", ref, "--q", "2"});
    CHECK(r1.exit_code == 0);

    const std::string prod = write_temp("prod2.json",
                                        R"({"a": [0.5, 0.5], "b": [0.3, 0.7]})");
    const RunResult r2 = run_cli({"verify", "--dist", prod, "--q", "0.5"});
    CHECK(r2.exit_code == 0);
}

TEST_CASE("verify reports are byte-identical across runs with one seed") {
    const std::string path = write_temp("u5.json", R"({"p": [0.1, 0.2, 0.3, 0.25, 0.15]})");
    const std::vector<std::string> args = {"verify", "--dist", path, "--q", "1.3",
                                           "--phi",  "cubic",  "--seed", "99"};
    const RunResult a = run_cli(args);
    const RunResult b = run_cli(args);
    CHECK(a.exit_code == 0);
    CHECK(a.out == b.out);
    CHECK(a.err == b.err);
}

TEST_CASE("seed precedence: flag beats environment beats default") {
    const std::string path = write_temp("u2c.json", R"({"p": [0.5, 0.5]})");

    setenv("NONEXT_SEED", "123", 1);
    const RunResult env_run = run_cli({"verify", "--dist", path, "--suite", "symmetry"});
    CHECK(parse_out(env_run)["config"]["seed"].get<std::uint64_t>() == 123);

    const RunResult flag_run =
        run_cli({"verify", "--dist", path, "--suite", "symmetry", "--seed", "7"});
    CHECK(parse_out(flag_run)["config"]["seed"].get<std::uint64_t>() == 7);

    const RunResult bad_env = [&] {
        setenv("NONEXT_SEED", "not-a-number", 1);
        const RunResult r = run_cli({"verify", "--dist", path, "--suite", "symmetry"});
        return r;
    }();
    CHECK(bad_env.exit_code == 2);
    unsetenv("NONEXT_SEED");

    const RunResult default_run = run_cli({"verify", "--dist", path, "--suite", "symmetry"});
    CHECK(parse_out(default_run)["config"]["seed"].get<std::uint64_t>() == 42);
}

TEST_CASE("phi-validate separates admissible from inadmissible families") {
    const RunResult ok = run_cli({"phi-validate", "--phi", "tsallis"});
    CHECK(ok.exit_code == 0);
    CHECK(parse_out(ok)["passed"].get<bool>());

    const RunResult hc = run_cli({"phi-validate", "--phi", "havrda_charvat"});
    CHECK(hc.exit_code == 1);
    const auto j = parse_out(hc);
    CHECK_FALSE(j["passed"].get<bool>());
    for (const auto& cond : j["results"]) {
        if (cond["name"] == "condition_iii") {
            CHECK_FALSE(cond["passed"].get<bool>());
            CHECK(cond["measured"].get<double>() ==
                  doctest::Approx(0.6931471805599453).epsilon(1e-4));
        } else {
            CHECK(cond["passed"].get<bool>());
        }
    }

    const RunResult poly = run_cli({"phi-validate", "--phi-poly", "1.5,-0.5"});
    CHECK(poly.exit_code == 1);
    const auto pj = parse_out(poly);
    for (const auto& cond : pj["results"]) {
        if (cond["name"] == "condition_i") CHECK_FALSE(cond["passed"].get<bool>());
    }
}

TEST_CASE("phi-validate supports CSV output") {
    const RunResult r = run_cli({"phi-validate", "--phi", "cubic", "--format", "csv"});
    CHECK(r.exit_code == 0);
    CHECK(r.out.substr(0, 36) == "name,passed,witness_q,measured,note\n");
}

TEST_CASE("reconstruct command checks the rebuild against the kernel") {
    const std::string path = write_temp("u3b.json", R"({"p": [0.5, 0.25, 0.25]})");
    const RunResult r = run_cli({"reconstruct", "--dist", path, "--q", "2",
                                 "--denominator", "100"});
    REQUIRE(r.exit_code == 0);
    const auto j = parse_out(r);
    CHECK(j["command"] == "reconstruct");
    CHECK(j["passed"].get<bool>());
    REQUIRE(j["results"].size() == 1);
    CHECK(j["results"][0]["name"] == "uniqueness");
}

TEST_CASE("configuration errors exit with status two") {
    CHECK(run_cli({"eval", "--dist", "/tmp/nonext_no_such_file.json"}).exit_code == 2);
    const std::string bad_json = write_temp("bad.json", "{\"p\": [0.5, ");
    CHECK(run_cli({"eval", "--dist", bad_json}).exit_code == 2);
    const std::string bad_csv = write_temp("bad.csv", "0.5\nhello\n");
    CHECK(run_cli({"eval", "--dist", bad_csv}).exit_code == 2);
    const std::string not_normalized = write_temp("halves.json", R"({"p": [0.5, 0.6]})");
    CHECK(run_cli({"eval", "--dist", not_normalized}).exit_code == 2);
    const std::string u2 = write_temp("u2d.json", R"({"p": [0.5, 0.5]})");
    CHECK(run_cli({"eval", "--dist", u2, "--phi", "no_such_family"}).exit_code == 2);
    CHECK(run_cli({"eval", "--dist", u2, "--q=-1"}).exit_code == 2);
    CHECK(run_cli({"verify", "--dist", u2, "--suite", "bogus"}).exit_code == 2);
    CHECK(run_cli({"sweep", "--dist", u2}).exit_code == 2);
    CHECK(run_cli({"sweep", "--dist", u2, "--q-range", "2:1:0.5"}).exit_code == 2);
    CHECK(run_cli({"sweep", "--dist", u2, "--q-range", "1:2"}).exit_code == 2);
    CHECK(run_cli({"eval", "--dist", u2, "--phi-poly", "1.0,oops"}).exit_code == 2);
    CHECK(run_cli({"no-such-command"}).exit_code == 2);
    CHECK(run_cli({}).exit_code == 2);
}

TEST_CASE("failed checks exit with status one") {
    const RunResult failing = run_cli({"phi-validate", "--phi", "havrda_charvat"});
    CHECK(failing.exit_code == 1);
    const RunResult poly_fail = run_cli({"phi-validate", "--phi-poly", "1.5,-0.5"});
    CHECK(poly_fail.exit_code == 1);
}

TEST_CASE("help requests succeed") {
    const RunResult top = run_cli({"--help"});
    CHECK(top.exit_code == 0);
    CHECK(top.out.find("eval") != std::string::npos);
    const RunResult sub = run_cli({"verify", "--help"});
    CHECK(sub.exit_code == 0);
}

TEST_CASE("maximality with an inadmissible scaling reports inapplicable, not failed") {
    const std::string u3 = write_temp("u3c.json", R"({"p": [0.5, 0.3, 0.2]})");
    const RunResult r = run_cli({"verify", "--dist", u3, "--q", "2", "--suite",
                                 "maximality", "--phi-poly=-1"});
    REQUIRE(r.exit_code == 0);
    const auto j = parse_out(r);
    CHECK(j["results"][0]["status"] == "inapplicable");
    CHECK(j["passed"].get<bool>());
}
