#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <string>

#include <meanlab/expr.hpp>
#include <meanlab/families.hpp>
#include <meanlab/invariance.hpp>
#include <meanlab/means.hpp>

using namespace meanlab;

TEST_CASE("input digests") {
    // reference vectors for the 64-bit FNV-1a
    CHECK(fnv1aHex("") == "cbf29ce484222325");
    CHECK(fnv1aHex("a") == "af63dc4c8601ec8c");
    CHECK(fnv1aHex("hello") == fnv1aHex("hello"));
    CHECK(fnv1aHex("hello") != fnv1aHex("hellp"));
}

TEST_CASE("report serialization is byte-stable") {
    InvarianceReport r;
    r.kind = ReportKind::Triple;
    r.gridSize = 20;
    r.maxResidual = 0.5;
    r.meanResidual = 0.25;
    r.worstPoint = {1.5, 2.5};
    r.pass = false;
    r.tolerance = 0.125;
    r.inputDigest = "cbf29ce484222325";
    r.label = "not serialized";

    CHECK(toJson(r) ==
          "{\"kind\":\"TRIPLE\",\"grid\":20,\"max_residual\":0.5,"
          "\"mean_residual\":0.25,\"worst_point\":[1.5,2.5],\"pass\":false,"
          "\"tolerance\":0.125,\"input_digest\":\"cbf29ce484222325\"}");

    r.kind = ReportKind::ArithmeticSum;
    r.pass = true;
    CHECK(toJson(r).find("\"kind\":\"ARITHMETIC_SUM\"") != std::string::npos);
    CHECK(toJson(r).find("\"pass\":true") != std::string::npos);
    CHECK(toJson(r).find("not serialized") == std::string::npos);

    // seventeen significant digits survive the round trip
    r.maxResidual = 1.0 / 3.0;
    CHECK(toJson(r).find("0.33333333333333331") != std::string::npos);

    std::vector<InvarianceReport> reports{r, r};
    std::string joined = toJson(reports);
    CHECK(joined.front() == '[');
    CHECK(joined.back() == ']');
    CHECK(joined.find(",\n") != std::string::npos);
    CHECK(toJson(std::vector<InvarianceReport>{}) == "[]");
}

TEST_CASE("arithmetic pairing sweeps") {
    SUBCASE("a built family passes") {
        FamilySpec spec{1.0, Expr::parse("exp(x)"), Interval{0.5, 2.0}};
        auto fam = build(spec);
        auto rep = checkArithmeticInvariance(fam.first, fam.second,
                                             WeightPair{2.0, 1.0}, 12, 1e-9);
        CHECK(rep.pass);
        CHECK(rep.kind == ReportKind::ArithmeticSum);
        CHECK(rep.gridSize == 12);
        CHECK(rep.maxResidual <= 1e-9);
        CHECK(rep.meanResidual <= rep.maxResidual);
        CHECK(rep.tolerance == 1e-9);
        CHECK(rep.inputDigest.size() == 16);
        CHECK(rep.worstPoint[0] > 0.5);
        CHECK(rep.worstPoint[0] < 2.0);
    }

    SUBCASE("an unrelated pair fails loudly") {
        FunctionPair ee{Expr::parse("exp(2*x)"), Expr::parse("exp(x)"),
                        Interval{1e-6, 1.0}};
        auto rep = checkArithmeticInvariance(ee, ee, WeightPair{2.0, 1.0}, 20,
                                             1e-3);
        CHECK_FALSE(rep.pass);
        CHECK(rep.maxResidual > 1e-3);
    }

    SUBCASE("interval mismatch is an error") {
        FunctionPair a{Expr::parse("sinh(x)"), Expr::parse("cosh(x)"),
                       Interval{0.5, 2.0}};
        FunctionPair b{Expr::parse("sinh(x)"), Expr::parse("cosh(x)"),
                       Interval{0.5, 3.0}};
        CHECK_THROWS_AS(
            checkArithmeticInvariance(a, b, WeightPair{1.0, 2.0}, 10, 1e-9),
            DomainError);
    }

    SUBCASE("grid and tolerance validation") {
        FunctionPair a{Expr::parse("sinh(x)"), Expr::parse("cosh(x)"),
                       Interval{0.5, 2.0}};
        CHECK_THROWS_AS(
            checkArithmeticInvariance(a, a, WeightPair{1.0, 2.0}, 1, 1e-9),
            DomainError);
        CHECK_THROWS_AS(
            checkArithmeticInvariance(a, a, WeightPair{1.0, 2.0}, 10, 0.0),
            DomainError);
    }

    SUBCASE("digest tracks the inputs") {
        FamilySpec spec{1.0, Expr::parse("exp(x)"), Interval{0.5, 2.0}};
        auto fam = build(spec);
        auto r1 = checkArithmeticInvariance(fam.first, fam.second,
                                            WeightPair{2.0, 1.0}, 10, 1e-9);
        auto r2 = checkArithmeticInvariance(fam.first, fam.second,
                                            WeightPair{2.0, 1.0}, 10, 1e-9);
        auto r3 = checkArithmeticInvariance(fam.first, fam.second,
                                            WeightPair{2.0, 1.0}, 11, 1e-9);
        CHECK(r1.inputDigest == r2.inputDigest);
        CHECK(r1.inputDigest != r3.inputDigest);
    }
}

TEST_CASE("triple composition sweeps") {
    Interval dom{0.5, 4.0};
    auto arith = [](double x, double y) { return 0.5 * (x + y); };
    auto geo = [](double x, double y) { return holder(0.0, x, y); };
    auto har = [](double x, double y) { return holder(-1.0, x, y); };

    SUBCASE("geometric over arithmetic and harmonic") {
        auto rep = checkTripleInvariance(geo, arith, har, dom, 20, 1e-10,
                                         "g(a,h)");
        CHECK(rep.pass);
        CHECK(rep.kind == ReportKind::Triple);
        CHECK(rep.label == "g(a,h)");
    }

    SUBCASE("gauss iteration over arithmetic and geometric") {
        auto agm = [](double x, double y) { return gaussAGM(x, y); };
        auto rep = checkTripleInvariance(agm, arith, geo, dom, 20, 1e-10,
                                         "agm(a,g)");
        CHECK(rep.pass);
        CHECK(rep.maxResidual <= 1e-12);
    }

    SUBCASE("inner values escaping the interval are an error") {
        auto escape = [](double x, double y) { return x + y; };
        CHECK_THROWS_AS(checkTripleInvariance(arith, escape, geo, dom, 10,
                                              1e-9, "escape"),
                        DomainError);
    }
}

TEST_CASE("fixed catalog classifications are stable across grids") {
    const char* expectPass[] = {
        "holder chain 0|2|-2",      "exponential shift pair",
        "two-function exponential pair", "gini ladder 2,0",
        "gini ladder 1,-1",         "stolarsky ladder 1,-1",
    };
    const char* expectFail[] = {
        "detuned holder chain", "detuned gini ladder", "detuned stolarsky ladder",
    };

    for (int grid : {10, 20, 40}) {
        auto reports = regressionSuite(grid, 1e-9);
        REQUIRE(reports.size() == 9);
        int i = 0;
        for (const char* label : expectPass) {
            CHECK(reports[i].label == label);
            CHECK(reports[i].pass);
            CHECK(reports[i].maxResidual <= 1e-9);
            ++i;
        }
        for (const char* label : expectFail) {
            CHECK(reports[i].label == label);
            CHECK_FALSE(reports[i].pass);
            CHECK(reports[i].maxResidual > 1e-4);
            ++i;
        }
    }
}
