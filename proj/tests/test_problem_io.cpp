#include <catch2/catch_amalgamated.hpp>

#include <sstream>

#include "nilmoore/problem.hpp"
#include "nilmoore/report.hpp"

using namespace nilmoore;

namespace {

ProblemFile parse_text(const std::string& text) {
    std::istringstream in(text);
    return parse_problem(in, "<test>");
}

const char* kHeisenberg = R"(# test fixture
format 1
dimension 3
names X1 X2 X3
bracket 1 2 3 1
lattice-column 1 0 0
lattice-column 0 1 0
lattice-column 0 0 1/2
functional l 0 0 2
functional flat 1 1 0
)";

}  // namespace

TEST_CASE("a complete problem file parses") {
    ProblemFile pf = parse_text(kHeisenberg);
    CHECK(pf.dimension == 3);
    CHECK(pf.names == std::vector<std::string>{"X1", "X2", "X3"});
    REQUIRE(pf.brackets.size() == 1);
    CHECK(pf.brackets[0].i == 0);
    CHECK(pf.brackets[0].j == 1);
    CHECK(pf.brackets[0].k == 2);
    CHECK(pf.brackets[0].c == 1);
    CHECK(pf.lattice(2, 2) == Rat(1, 2));
    REQUIRE(pf.functionals.size() == 2);
    CHECK(pf.functionals[0].first == "l");
    CHECK(pf.functionals[0].second.coords == Vec{0, 0, 2});
    CHECK(pf.find_functional("flat") != nullptr);
    CHECK(pf.find_functional("nope") == nullptr);

    LieAlgebra g = build_algebra(pf);
    CHECK(g.step() == 2);
    LatticeSubgroup gamma = build_lattice_subgroup(g, pf);
    CHECK(in_dual_lattice(gamma, pf.functionals[0].second));
}

TEST_CASE("bracket order is normalized by antisymmetry") {
    ProblemFile pf = parse_text(
        "dimension 3\nbracket 2 1 3 5/3\n"
        "lattice-column 1 0 0\nlattice-column 0 1 0\nlattice-column 0 0 1\n");
    REQUIRE(pf.brackets.size() == 1);
    CHECK(pf.brackets[0].i == 0);
    CHECK(pf.brackets[0].j == 1);
    CHECK(pf.brackets[0].c == Rat(-5, 3));
}

TEST_CASE("parse errors carry the line number") {
    auto expect_error_line = [](const std::string& text, int line) {
        try {
            parse_text(text);
            FAIL("expected ParseError");
        } catch (const ParseError& e) {
            CHECK(e.line == line);
        }
    };
    expect_error_line("names X1\n", 1);                                       // dimension must come first
    expect_error_line("dimension 2\nnames X1\n", 2);                          // wrong name count
    expect_error_line("dimension 2\nbracket 1 5 1 1\n", 2);                   // index out of range
    expect_error_line("dimension 2\nbracket 1 1 2 1\n", 2);                   // i == j
    expect_error_line("dimension 2\nbracket 1 2 1 1/0\n", 2);                 // zero denominator
    expect_error_line("dimension 2\nlattice-column 1 x\n", 2);                // bad rational
    expect_error_line("dimension 2\nfunctional f 1\n", 2);                    // wrong coordinate count
    expect_error_line("dimension 2\nfunctional f 1 0\nfunctional f 1 0\n", 3);  // duplicate name
    expect_error_line("dimension 2\nwhatever 1\n", 2);                        // unknown key
    expect_error_line("dimension 2\nlattice-column 1 0\n", 3);                // missing columns (end of file)
    expect_error_line("dimension 2\nlattice-column 1 0\nlattice-column 0 1\norbit-class f 1 0\n", 5);  // unknown functional
    expect_error_line("format 2\n", 1);                                       // unsupported version
}

TEST_CASE("orbit classes attach to their functional") {
    ProblemFile pf = parse_text(
        "dimension 2\nlattice-column 1 0\nlattice-column 0 1\n"
        "functional f 1 0\norbit-class f 1 0\norbit-class f 0 1\n");
    REQUIRE(pf.orbit_classes.count("f") == 1);
    CHECK(pf.orbit_classes.at("f").size() == 2);
}

TEST_CASE("functional report JSON round-trips exactly") {
    FunctionalReport row;
    row.name = "l";
    row.functional = Vec{Rat(-5, 3), Rat(0), Rat(7)};
    row.in_dual = true;
    row.in_spectrum = true;
    row.mult = Rat(22, 7);
    row.count = Int("123456789123456789");
    row.det_a = Int(36);
    row.pfaffian_abs = Int(6);
    row.c_omega = Rat(1, 6);
    row.moore_holds = false;
    row.moore_inequality = true;
    row.note = "test";

    Report report;
    report.command = "mult";
    report.problem = "x.problem";
    report.dimension = 3;
    report.step = 2;
    report.rows.push_back(row);

    FunctionalReport plain;
    plain.name = "flat";
    plain.functional = Vec{Rat(1), Rat(1), Rat(0)};
    plain.mult = 0;
    report.rows.push_back(plain);

    nlohmann::json j = to_json(report);
    Report back = report_from_json(nlohmann::json::parse(j.dump()));
    CHECK(back == report);
}

TEST_CASE("counterexample report JSON round-trips exactly") {
    CounterexampleReport r;
    r.count = 18;
    r.mult = 3;
    r.mult_squared = 9;
    r.moore_holds = false;
    r.moore_inequality = true;
    r.det_a = 36;
    r.pfaffian_abs = 6;
    r.representatives = {Vec{Rat(1), Rat(0), Rat(0), Rat(1, 6)}, Vec{Rat(1), Rat(2), Rat(2), Rat(5, 6)}};
    r.class_weights = {Rat(1, 6), Rat(1, 6)};
    r.action_checks = 50;
    CounterexampleReport back = counterexample_from_json(nlohmann::json::parse(to_json(r).dump()));
    CHECK(back == r);
}

TEST_CASE("rational strings are canonical") {
    CHECK(rat_str(Rat(-10, 4)) == "-5/2");
    CHECK(rat_str(Rat(8, 4)) == "2");
    CHECK(parse_rat("-5/2") == Rat(-5, 2));
    CHECK(parse_rat("7") == 7);
    CHECK_THROWS_AS(parse_rat("1/0"), Error);
    CHECK_THROWS_AS(parse_rat("x"), Error);
}

TEST_CASE("table rendering lists every functional") {
    Report report;
    report.command = "mult";
    report.problem = "p";
    report.dimension = 2;
    report.step = 1;
    FunctionalReport row;
    row.name = "a";
    row.functional = Vec{Rat(1), Rat(0)};
    row.mult = 1;
    row.count = Int(1);
    row.moore_holds = true;
    report.rows.push_back(row);
    std::string table = render_table(report);
    CHECK(table.find("functional") != std::string::npos);
    CHECK(table.find("holds") != std::string::npos);
    CHECK(table.find("(1, 0)") != std::string::npos);
}
