#include <catch2/catch_amalgamated.hpp>

#include <json.hpp>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <string>

#include "nilmoore/report.hpp"

namespace {

struct RunResult {
    int exit_code;
    std::string output;
};

std::string cli_path() {
    const char* p = std::getenv("NILMOORE_CLI");
    REQUIRE(p != nullptr);
    return p;
}

std::string fixture(const std::string& name) {
    const char* p = std::getenv("NILMOORE_FIXTURES");
    REQUIRE(p != nullptr);
    return std::string(p) + "/" + name;
}

RunResult run(const std::string& args) {
    std::string cmd = cli_path() + " " + args + " 2>&1";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string out;
    std::array<char, 4096> buf;
    while (std::size_t got = fread(buf.data(), 1, buf.size(), pipe)) out.append(buf.data(), got);
    int status = pclose(pipe);
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

}  // namespace

TEST_CASE("validate accepts the shipped fixtures") {
    for (const char* name : {"abelian2.problem", "heisenberg.problem", "filiform4.problem"}) {
        RunResult r = run("validate " + fixture(name));
        INFO(r.output);
        CHECK(r.exit_code == 0);
        CHECK(r.output.find("valid problem") != std::string::npos);
    }
}

TEST_CASE("validate rejects jacobi violations with the triple named") {
    RunResult r = run("validate " + fixture("jacobi-violation.problem"));
    INFO(r.output);
    CHECK(r.exit_code == 1);
    CHECK(r.output.find("Jacobi") != std::string::npos);
    CHECK(r.output.find("X1") != std::string::npos);
    CHECK(r.output.find("X3") != std::string::npos);
}

TEST_CASE("validate rejects non-closed lattices") {
    RunResult r = run("validate " + fixture("not-closed.problem"));
    INFO(r.output);
    CHECK(r.exit_code == 1);
    CHECK(r.output.find("not closed") != std::string::npos);
}

TEST_CASE("validate reports parse errors with positions") {
    RunResult r = run("validate " + fixture("no-such-file.problem"));
    CHECK(r.exit_code == 2);

    FILE* tmp = fopen("bad_fixture.problem", "w");
    REQUIRE(tmp != nullptr);
    fputs("dimension 2\nbad-key 1\n", tmp);
    fclose(tmp);
    r = run("validate bad_fixture.problem");
    CHECK(r.exit_code == 2);
    CHECK(r.output.find("bad_fixture.problem:2") != std::string::npos);
    std::remove("bad_fixture.problem");
}

TEST_CASE("mult on the Heisenberg fixture") {
    RunResult r = run("mult " + fixture("heisenberg.problem") + " --functional l2");
    INFO(r.output);
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("holds") != std::string::npos);

    RunResult js = run("mult " + fixture("heisenberg.problem") + " --functional l2 --format structured");
    REQUIRE(js.exit_code == 0);
    nilmoore::Report report = nilmoore::report_from_json(nlohmann::json::parse(js.output));
    REQUIRE(report.rows.size() == 1);
    CHECK(report.rows[0].mult == 2);
    CHECK(report.rows[0].count == nilmoore::Int(4));
    CHECK(report.rows[0].moore_holds == true);

    // half-integral functional: multiplicity 0, exit code stays 0
    RunResult half = run("mult " + fixture("heisenberg.problem") + " --functional half --format structured");
    REQUIRE(half.exit_code == 0);
    nilmoore::Report hr = nilmoore::report_from_json(nlohmann::json::parse(half.output));
    REQUIRE(hr.rows.size() == 1);
    CHECK(hr.rows[0].mult == 0);
    CHECK_FALSE(hr.rows[0].in_dual);
}

TEST_CASE("mult on the filiform fixture uses the shipped orbit classes") {
    RunResult r = run("mult " + fixture("filiform4.problem") + " --functional l --format structured");
    INFO(r.output);
    REQUIRE(r.exit_code == 0);
    nilmoore::Report report = nilmoore::report_from_json(nlohmann::json::parse(r.output));
    REQUIRE(report.rows.size() == 1);
    CHECK(report.rows[0].mult == 3);
    CHECK(report.rows[0].count == nilmoore::Int(18));
    CHECK(report.rows[0].moore_holds == false);
    CHECK(report.rows[0].moore_inequality == true);
    CHECK(report.step == 3);
}

TEST_CASE("unknown functionals are reported") {
    RunResult r = run("mult " + fixture("heisenberg.problem") + " --functional nope");
    CHECK(r.exit_code == 1);
    CHECK(r.output.find("nope") != std::string::npos);
}

TEST_CASE("spectrum on the abelian fixture: nine singleton orbits at bound 1") {
    RunResult r = run("spectrum " + fixture("abelian2.problem") + " --bound 1 --format structured");
    REQUIRE(r.exit_code == 0);
    nilmoore::Report report = nilmoore::report_from_json(nlohmann::json::parse(r.output));
    CHECK(report.rows.size() == 9);
    for (const auto& row : report.rows) {
        CHECK(row.mult == 1);
        CHECK(row.count == nilmoore::Int(1));
        CHECK(row.moore_holds == true);
    }
}

TEST_CASE("spectrum on the Heisenberg fixture finds the 2k ladder") {
    RunResult r = run("spectrum " + fixture("heisenberg.problem") + " --bound 4 --format structured");
    REQUIRE(r.exit_code == 0);
    nilmoore::Report report = nilmoore::report_from_json(nlohmann::json::parse(r.output));
    int ladder = 0, flat = 0;
    for (const auto& row : report.rows) {
        REQUIRE(row.moore_holds.has_value());
        CHECK(*row.moore_holds);
        if (row.full_stabilizer) {
            CHECK(row.mult == 1);
            ++flat;
        } else {
            // l = 2k X3* up to orbit translation: mult 2|k|, count 4k^2
            nilmoore::Rat k = abs(row.functional[2] / 2);
            CHECK(row.mult == 2 * k);
            CHECK(nilmoore::Rat(*row.count) == 4 * k * k);
            ++ladder;
        }
    }
    CHECK(ladder == 8);       // k = -4..-1, 1..4 give |2k| ladders... sign folds: 8 distinct central values
    CHECK(flat == 81);        // 9 x 9 flat orbits at c = 0
    CHECK(report.rows.size() == 89);
}

TEST_CASE("spectrum is gated to step 2 with a pointer to the fixture path") {
    RunResult r = run("spectrum " + fixture("filiform4.problem"));
    CHECK(r.exit_code == 3);
    CHECK(r.output.find("counterexample") != std::string::npos);
}

TEST_CASE("counterexample reproduces the published failure") {
    RunResult r = run("counterexample");
    INFO(r.output);
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("18") != std::string::npos);
    CHECK(r.output.find("FAILS") != std::string::npos);

    RunResult js = run("counterexample --format structured");
    REQUIRE(js.exit_code == 0);
    nilmoore::CounterexampleReport report =
        nilmoore::counterexample_from_json(nlohmann::json::parse(js.output));
    CHECK(report.count == nilmoore::Int(18));
    CHECK(report.mult == 3);
    CHECK(report.mult_squared == 9);
    CHECK_FALSE(report.moore_holds);
    CHECK(report.moore_inequality);
    CHECK(report.det_a == nilmoore::Int(36));
    CHECK(report.pfaffian_abs == nilmoore::Int(6));
    CHECK(report.representatives.size() == 18);

    // structured output round-trips
    CHECK(nilmoore::counterexample_from_json(nlohmann::json::parse(to_json(report).dump())) == report);
}

TEST_CASE("counterexample --verify-action reports the spot checks") {
    RunResult r = run("counterexample --verify-action --checks 25");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("25 passed") != std::string::npos);
}

TEST_CASE("moore-check emits verdicts for every functional") {
    RunResult r = run("moore-check " + fixture("heisenberg.problem") + " --format structured");
    REQUIRE(r.exit_code == 0);
    nilmoore::Report report = nilmoore::report_from_json(nlohmann::json::parse(r.output));
    CHECK(report.command == "moore-check");
    bool saw_holds = false;
    for (const auto& row : report.rows)
        if (row.moore_holds && *row.moore_holds) saw_holds = true;
    CHECK(saw_holds);
}

TEST_CASE("problem files are accepted on stdin") {
    std::string cmd = "cat " + fixture("abelian2.problem") + " | " + cli_path() + " validate - 2>&1";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string out;
    std::array<char, 4096> buf;
    while (std::size_t got = fread(buf.data(), 1, buf.size(), pipe)) out.append(buf.data(), got);
    int status = pclose(pipe);
    CHECK(WEXITSTATUS(status) == 0);
    CHECK(out.find("valid problem") != std::string::npos);
}
