#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <string>
#include <vector>

#include <meanlab/expr.hpp>

using namespace meanlab;

TEST_CASE("parsing basics") {
    CHECK(Expr::parse("1+2*3").eval(0.0) == 7.0);
    CHECK(Expr::parse("(1+2)*3").eval(0.0) == 9.0);
    CHECK(Expr::parse("2^3^2").eval(0.0) == 512.0);
    CHECK(Expr::parse("-2^2").eval(0.0) == -4.0);
    CHECK(Expr::parse("2*-3").eval(0.0) == -6.0);
    CHECK(Expr::parse("10-3-4").eval(0.0) == 3.0);
    CHECK(Expr::parse("16/4/2").eval(0.0) == 2.0);
    CHECK(Expr::parse("x^2+1").eval(3.0) == 10.0);
    CHECK(Expr::parse("1.5e2").eval(0.0) == 150.0);
    CHECK(Expr::parse("  x  ").eval(2.5) == 2.5);
    CHECK(Expr::parse("exp(log(5))").eval(0.0) == doctest::Approx(5.0));
    CHECK(Expr::parse("sin(x)^2+cos(x)^2").eval(0.7) == doctest::Approx(1.0));
    CHECK(Expr::parse("atan(tan(0.3))").eval(0.0) == doctest::Approx(0.3));
    CHECK(Expr::parse("abs(-x)").eval(4.0) == 4.0);
}

TEST_CASE("parse errors carry offsets") {
    CHECK_THROWS_AS(Expr::parse(""), ParseError);
    CHECK_THROWS_AS(Expr::parse("1+"), ParseError);
    CHECK_THROWS_AS(Expr::parse("(1+2"), ParseError);
    CHECK_THROWS_AS(Expr::parse("foo(3)"), ParseError);
    CHECK_THROWS_AS(Expr::parse("1 2"), ParseError);
    CHECK_THROWS_AS(Expr::parse("1.e"), ParseError);
    CHECK_THROWS_AS(Expr::parse("sin 3"), ParseError);

    try {
        Expr::parse("2*%3");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.offset() == 2);
    }
    try {
        Expr::parse("1+bogus(x)");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.offset() == 2);
    }
}

TEST_CASE("eval domain errors name the subexpression") {
    CHECK_THROWS_AS(Expr::parse("1/(x-1)").eval(1.0), EvalError);
    CHECK_THROWS_AS(Expr::parse("log(x)").eval(0.0), EvalError);
    CHECK_THROWS_AS(Expr::parse("log(x)").eval(-2.0), EvalError);
    CHECK_THROWS_AS(Expr::parse("sqrt(x)").eval(-1.0), EvalError);
    CHECK_THROWS_AS(Expr::parse("x^0.5").eval(-1.0), EvalError);
    CHECK_THROWS_AS(Expr::parse("0^(-1)").eval(0.0), EvalError);

    try {
        Expr::parse("1+log(x-2)").eval(1.0);
        FAIL("expected EvalError");
    } catch (const EvalError& e) {
        CHECK(std::string(e.what()).find("log(x-2)") != std::string::npos);
    }
}

TEST_CASE("derivative catalog") {
    CHECK(Expr::parse("exp(2*x)").derivative(4).eval(0.0) == 16.0);
    CHECK(Expr::parse("x^3").derivative(2).eval(2.0) == 12.0);
    CHECK(Expr::parse("sin(x)").derivative().eval(0.0) == 1.0);
    CHECK(Expr::parse("cos(x)").derivative(2).eval(0.0) == -1.0);
    CHECK(Expr::parse("sinh(x)").derivative().eval(0.0) == 1.0);
    CHECK(Expr::parse("log(x)").derivative().eval(2.0) == 0.5);
    CHECK(Expr::parse("sqrt(x)").derivative().eval(4.0) == doctest::Approx(0.25));
    CHECK(Expr::parse("atan(x)").derivative().eval(1.0) == doctest::Approx(0.5));
    CHECK(Expr::parse("tan(x)").derivative().eval(0.0) == doctest::Approx(1.0));
    CHECK(Expr::parse("tanh(x)").derivative().eval(0.0) == doctest::Approx(1.0));
    CHECK(Expr::parse("x^x").derivative().eval(1.0) == doctest::Approx(1.0));
    CHECK(Expr::parse("7").derivative().isConstant());
    CHECK(Expr::parse("7").derivative().constantValue() == 0.0);
    CHECK(Expr::parse("x").derivative(0).eval(3.0) == 3.0);

    CHECK_THROWS_AS(Expr::parse("abs(x)").derivative(), DerivativeError);
    CHECK_THROWS_AS(Expr::parse("x").derivative(9), DerivativeError);
    CHECK_THROWS_AS(Expr::parse("x").derivative(-1), DerivativeError);
}

namespace {

// Random trees over the differentiable subset. Division, log and sqrt get
// arguments of the form u^2 + c with c >= 0.5 so every draw stays inside
// the natural domain on (-1, 1).
Expr randomTree(std::mt19937& rng, int depth) {
    std::uniform_int_distribution<int> pick(0, depth <= 0 ? 2 : 10);
    std::uniform_real_distribution<double> coef(-2.0, 2.0);
    std::uniform_real_distribution<double> shift(0.5, 2.0);
    switch (pick(rng)) {
    case 0: return Expr::constant(coef(rng));
    case 1:
    case 2: return Expr::variable();
    case 3: return randomTree(rng, depth - 1) + randomTree(rng, depth - 1);
    case 4: return randomTree(rng, depth - 1) - randomTree(rng, depth - 1);
    case 5: return randomTree(rng, depth - 1) * randomTree(rng, depth - 1);
    case 6: {
        Expr d = randomTree(rng, depth - 1);
        return randomTree(rng, depth - 1) /
               (d * d + Expr::constant(shift(rng)));
    }
    case 7: {
        std::uniform_int_distribution<int> e(2, 3);
        return pow(randomTree(rng, depth - 1), Expr::constant(e(rng)));
    }
    case 8: {
        Expr a = randomTree(rng, depth - 1);
        return log(a * a + Expr::constant(shift(rng)));
    }
    case 9: {
        std::uniform_int_distribution<int> f(0, 3);
        Func fs[] = {Func::Sin, Func::Cos, Func::Tanh, Func::Atan};
        return Expr::apply(fs[f(rng)], randomTree(rng, depth - 1));
    }
    default: {
        Expr a = randomTree(rng, depth - 1);
        return sqrt(a * a + Expr::constant(shift(rng)));
    }
    }
}

} // namespace

TEST_CASE("derivative agrees with central differences") {
    std::mt19937 rng(42);
    std::uniform_real_distribution<double> xs(-0.9, 0.9);
    int done = 0;
    while (done < 1000) {
        Expr e = randomTree(rng, 4);
        double x = xs(rng);
        double v, d;
        try {
            v = e.eval(x);
            d = e.derivative().eval(x);
        } catch (const Error&) {
            continue;
        }
        if (!std::isfinite(v) || !std::isfinite(d) || std::fabs(v) > 1e3 ||
            std::fabs(d) > 1e3)
            continue;
        double h = 1e-6;
        double fd = (e.eval(x + h) - e.eval(x - h)) / (2.0 * h);
        CHECK(std::fabs(d - fd) <= 1e-6 * (1.0 + std::fabs(d)));
        ++done;
    }
}

TEST_CASE("derivative is linear") {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> xs(-0.9, 0.9);
    std::uniform_real_distribution<double> cs(-3.0, 3.0);
    int done = 0;
    while (done < 200) {
        Expr a = randomTree(rng, 3);
        Expr b = randomTree(rng, 3);
        double c = cs(rng);
        double x = xs(rng);
        double lhs, rhs;
        try {
            lhs = (a * Expr::constant(c) + b).derivative().eval(x);
            rhs = c * a.derivative().eval(x) + b.derivative().eval(x);
        } catch (const Error&) {
            continue;
        }
        if (!std::isfinite(lhs) || !std::isfinite(rhs) || std::fabs(rhs) > 1e3)
            continue;
        CHECK(std::fabs(lhs - rhs) <= 1e-12 * (1.0 + std::fabs(rhs)));
        ++done;
    }
}

TEST_CASE("printing round-trips") {
    const char* samples[] = {
        "x", "-x", "1+2*x", "(1+x)*2", "x^2^3", "(x^2)^3", "-(x+1)",
        "2-(3-x)", "1/(x*2)", "sin(cos(x))", "x^(1+x)", "2*-x", "abs(x-1)",
        "exp(-x^2)", "x/2/3", "x-(-2)",
    };
    for (const char* s : samples) {
        Expr e = Expr::parse(s);
        Expr back = Expr::parse(e.str());
        CHECK(back.str() == e.str());
    }

    std::mt19937 rng(11);
    std::uniform_real_distribution<double> xs(-0.9, 0.9);
    int done = 0;
    while (done < 100) {
        Expr e = randomTree(rng, 4);
        std::string text = e.str();
        Expr back = Expr::parse(text);
        CHECK(back.str() == text);
        double x = xs(rng);
        double v0, v1;
        try {
            v0 = e.eval(x);
            v1 = back.eval(x);
        } catch (const Error&) {
            continue;
        }
        CHECK(v0 == v1);
        ++done;
    }
}

TEST_CASE("simplification keeps folding sound") {
    CHECK(Expr::parse("x+0").str() == "x");
    CHECK(Expr::parse("x*1").str() == "x");
    CHECK(Expr::parse("x*0").isConstant());
    CHECK(Expr::parse("x^1").str() == "x");
    CHECK(Expr::parse("2+3").constantValue() == 5.0);
    CHECK_FALSE(Expr::parse("x+1").isConstant());
    CHECK_THROWS_AS(Expr::parse("x+1").constantValue(), Error);
    // folding must not swallow a domain error
    CHECK_THROWS_AS(Expr::parse("log(x-10)+0*x").eval(0.0), EvalError);
}
