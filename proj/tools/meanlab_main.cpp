// meanlab: weighted two-generator means, their diagonal derivatives, the
// necessity conditions for complementary pairs, and invariance sweeps with
// JSON reports.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <meanlab/expr.hpp>
#include <meanlab/families.hpp>
#include <meanlab/invariance.hpp>
#include <meanlab/means.hpp>
#include <meanlab/necessity.hpp>
#include <meanlab/partials.hpp>
#include <meanlab/wronskian.hpp>

using namespace meanlab;

namespace {

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

Interval toInterval(const std::vector<double>& d) { return {d[0], d[1]}; }

// "holder:P" | "gini:P,Q" | "stolarsky:P,Q" | "arith" | "agm" |
// "qa:EXPR" | "gqa:EXPR;EXPR"
MeanFn parseMeanSpec(const std::string& spec, const Interval& domain) {
    auto colon = spec.find(':');
    std::string head = spec.substr(0, colon);
    std::string tail = colon == std::string::npos ? "" : spec.substr(colon + 1);

    auto number = [&](const std::string& text) {
        std::size_t used = 0;
        double v = std::stod(text, &used);
        if (used != text.size())
            throw DomainError("bad number '" + text + "' in mean spec");
        return v;
    };

    if (head == "arith" && tail.empty())
        return [](double x, double y) { return 0.5 * (x + y); };
    if (head == "agm" && tail.empty())
        return [](double x, double y) { return gaussAGM(x, y); };
    if (head == "holder")
        return [p = number(tail)](double x, double y) { return holder(p, x, y); };
    if (head == "gini" || head == "stolarsky") {
        auto comma = tail.find(',');
        if (comma == std::string::npos)
            throw DomainError(head + " takes two parameters, e.g. " + head + ":1,-1");
        double p = number(tail.substr(0, comma));
        double q = number(tail.substr(comma + 1));
        if (head == "gini")
            return [p, q](double x, double y) { return gini(p, q, x, y); };
        return [p, q](double x, double y) { return stolarsky(p, q, x, y); };
    }
    if (head == "qa")
        return [f = Expr::parse(tail)](double x, double y) {
            return quasiArithmetic(f, x, y);
        };
    if (head == "gqa") {
        auto semi = tail.find(';');
        if (semi == std::string::npos)
            throw DomainError("gqa takes two expressions, e.g. gqa:exp(x);exp(x)");
        Expr f1 = Expr::parse(tail.substr(0, semi));
        Expr f2 = Expr::parse(tail.substr(semi + 1));
        return [f1, f2, domain](double x, double y) {
            return genQuasiArithmetic(f1, f2, domain, x, y);
        };
    }
    throw DomainError("unknown mean spec '" + spec +
                      "' (try holder:P, gini:P,Q, stolarsky:P,Q, arith, agm, "
                      "qa:EXPR, gqa:EXPR;EXPR)");
}

void emit(const std::string& json, const std::string& path) {
    if (path.empty()) {
        std::cout << json << "\n";
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw Error("cannot open '" + path + "' for writing");
    out << json << "\n";
    std::cout << "wrote " << path << "\n";
}

struct EvalArgs {
    std::string f, g;
    std::vector<double> domain;
    double x = 0.0, y = 0.0, t = 1.0, s = 1.0, tol = 1e-13;
};

struct WronskianArgs {
    std::string f, g;
    std::vector<double> domain;
    double x = 0.0;
    int maxClass = 4;
};

struct PartialsArgs {
    std::string f, g;
    std::vector<double> domain;
    double x = 0.0, t = 1.0, s = 1.0;
    int order = 0; // 0 = all
    bool check = false;
};

struct NecessityArgs {
    std::string f, g, h, k;
    std::vector<double> domain;
    double t = 2.0, s = 1.0;
};

struct FamilyArgs {
    double p = 0.0;
    std::string phi = "1";
    std::vector<double> domain;
    std::vector<double> changeA, changeB;
    double x = 0.0, y = 0.0, t = 1.0, s = 1.0;
};

struct InvarianceArgs {
    std::string f, g, h, k;
    std::string K, M, N;
    std::vector<double> domain;
    double t = 2.0, s = 1.0, tol = 1e-9;
    int grid = 20;
    std::string jsonPath, label;
};

struct RegressArgs {
    int grid = 20;
    double tol = 1e-9;
    std::string jsonPath;
};

int runEval(const EvalArgs& a) {
    FunctionPair pair{Expr::parse(a.f), Expr::parse(a.g), toInterval(a.domain)};
    double z = bajraktarevicEval(pair, a.x, a.y, WeightPair{a.t, a.s}, a.tol);
    std::cout << fmt(z) << "\n";
    return 0;
}

int runWronskian(const WronskianArgs& a) {
    FunctionPair pair{Expr::parse(a.f), Expr::parse(a.g), toInterval(a.domain),
                      a.maxClass};
    WronskianProfile prof{pair};
    std::cout << "class " << pair.certifiedClass() << "\n";
    std::cout << "w10  " << fmt(prof.w(1, 0, a.x)) << "\n";
    std::cout << "phi  " << fmt(prof.phi(a.x)) << "\n";
    std::cout << "psi  " << fmt(prof.psi(a.x)) << "\n";
    if (pair.certifiedClass() >= 3) {
        auto hr = higherRatios(pair, a.x);
        std::cout << "phi' " << fmt(prof.phiPrime(a.x)) << "\n";
        std::cout << "psi' " << fmt(prof.psiPrime(a.x)) << "\n";
        std::cout << "w30/w10 " << fmt(hr.w30) << "\n";
        std::cout << "w31/w10 " << fmt(hr.w31) << "\n";
        if (hr.w40) {
            std::cout << "phi'' " << fmt(prof.phiSecond(a.x)) << "\n";
            std::cout << "w40/w10 " << fmt(*hr.w40) << "\n";
        }
    }
    return 0;
}

int runPartials(const PartialsArgs& a) {
    FunctionPair pair{Expr::parse(a.f), Expr::parse(a.g), toInterval(a.domain)};
    WeightPair w{a.t, a.s};
    int lo = a.order ? a.order : 1;
    int hi = a.order ? a.order : 4;
    for (int order = lo; order <= hi; ++order) {
        double closed = diagonalPartial(pair, w, a.x, order);
        std::cout << "order " << order << "  " << fmt(closed);
        if (a.check)
            std::cout << "  fd " << fmt(fdOracle(pair, w, a.x, order));
        std::cout << "\n";
    }
    return 0;
}

int runNecessity(const NecessityArgs& a) {
    Interval dom = toInterval(a.domain);
    FunctionPair first{Expr::parse(a.f), Expr::parse(a.g), dom};
    FunctionPair second{Expr::parse(a.h), Expr::parse(a.k), dom};
    auto v = classify(first, second, WeightPair{a.t, a.s});
    std::cout << necessityClassName(v.classification) << "\n";
    std::cout << "c1 residual " << fmt(v.c1Residual) << "\n";
    std::cout << "c2 residual " << fmt(v.c2Residual) << "\n";
    std::cout << "c3 spread   " << fmt(v.c3Spread) << "\n";
    if (v.pEstimate)
        std::cout << "p  " << fmt(*v.pEstimate) << "\n";
    return v.classification == NecessityClass::Pass ? 0 : 1;
}

Matrix2 toMatrix(const std::vector<double>& v) {
    return {v[0], v[1], v[2], v[3]};
}

int runFamily(const FamilyArgs& a) {
    FamilySpec spec{a.p, Expr::parse(a.phi), toInterval(a.domain),
                    a.changeA.empty() ? Matrix2::identity() : toMatrix(a.changeA),
                    a.changeB.empty() ? Matrix2::identity() : toMatrix(a.changeB)};
    auto fam = build(spec);
    std::cout << "first  (" << fam.first.f().str() << ", "
              << fam.first.g().str() << ")\n";
    std::cout << "second (" << fam.second.f().str() << ", "
              << fam.second.g().str() << ")\n";

    std::optional<TrigBranch> branch;
    if (spec.p < -1e-12) {
        branch = resolveBranch(fam.first, spec.p);
        std::cout << "branch alpha " << fmt(branch->alpha) << " k "
                  << branch->k << "\n";
    }
    if (a.x == 0.0 && a.y == 0.0) return 0;

    WeightPair w{a.t, a.s};
    double solved = bajraktarevicEval(fam.first, a.x, a.y, w);
    double closed = closedFormMean(spec, branch, a.x, a.y, w, PairSlot::First);
    double closed2 = closedFormMean(spec, branch, a.x, a.y, w.swapped(),
                                    PairSlot::Second);
    std::cout << "first mean   " << fmt(solved) << "\n";
    std::cout << "closed form  " << fmt(closed) << "\n";
    std::cout << "second mean  " << fmt(closed2) << "\n";
    std::cout << "sum          " << fmt(closed + closed2) << "\n";
    return 0;
}

int runInvariance(const InvarianceArgs& a) {
    Interval dom = toInterval(a.domain);
    InvarianceReport report;
    if (!a.K.empty() || !a.M.empty() || !a.N.empty()) {
        if (a.K.empty() || a.M.empty() || a.N.empty())
            throw DomainError("triple mode needs all of --K, --M, --N");
        report = checkTripleInvariance(parseMeanSpec(a.K, dom),
                                       parseMeanSpec(a.M, dom),
                                       parseMeanSpec(a.N, dom), dom, a.grid,
                                       a.tol, a.label.empty() ? a.K : a.label);
    } else {
        if (a.f.empty() || a.g.empty() || a.h.empty() || a.k.empty())
            throw DomainError("pair mode needs all of --f, --g, --f2, --g2");
        FunctionPair first{Expr::parse(a.f), Expr::parse(a.g), dom};
        FunctionPair second{Expr::parse(a.h), Expr::parse(a.k), dom};
        report = checkArithmeticInvariance(first, second,
                                           WeightPair{a.t, a.s}, a.grid, a.tol);
    }
    emit(toJson(report), a.jsonPath);
    return report.pass ? 0 : 1;
}

int runRegress(const RegressArgs& a) {
    auto reports = regressionSuite(a.grid, a.tol);
    emit(toJson(reports), a.jsonPath);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"weighted two-generator means and their invariants"};
    app.require_subcommand(1);

    EvalArgs evalArgs;
    auto* evalCmd = app.add_subcommand("eval", "evaluate a weighted mean");
    evalCmd->add_option("--f", evalArgs.f, "numerator generator")->required();
    evalCmd->add_option("--g", evalArgs.g, "denominator generator")->required();
    evalCmd->add_option("--domain", evalArgs.domain, "interval LO HI")
        ->expected(2)->required();
    evalCmd->add_option("--x", evalArgs.x)->required();
    evalCmd->add_option("--y", evalArgs.y)->required();
    evalCmd->add_option("--t", evalArgs.t, "weight of x");
    evalCmd->add_option("--s", evalArgs.s, "weight of y");
    evalCmd->add_option("--tol", evalArgs.tol, "residual tolerance");

    WronskianArgs wrArgs;
    auto* wrCmd = app.add_subcommand("wronskian",
                                     "pair coefficients Phi, Psi and ratios");
    wrCmd->add_option("--f", wrArgs.f)->required();
    wrCmd->add_option("--g", wrArgs.g)->required();
    wrCmd->add_option("--domain", wrArgs.domain, "interval LO HI")
        ->expected(2)->required();
    wrCmd->add_option("--x", wrArgs.x, "evaluation point")->required();
    wrCmd->add_option("--class", wrArgs.maxClass, "certification class cap");

    PartialsArgs paArgs;
    auto* paCmd = app.add_subcommand("partials",
                                     "diagonal partial derivatives 1..4");
    paCmd->add_option("--f", paArgs.f)->required();
    paCmd->add_option("--g", paArgs.g)->required();
    paCmd->add_option("--domain", paArgs.domain, "interval LO HI")
        ->expected(2)->required();
    paCmd->add_option("--x", paArgs.x, "diagonal point")->required();
    paCmd->add_option("--t", paArgs.t);
    paCmd->add_option("--s", paArgs.s);
    paCmd->add_option("--order", paArgs.order, "single order, 0 for all");
    paCmd->add_flag("--check", paArgs.check, "also print the finite-difference value");

    NecessityArgs neArgs;
    auto* neCmd = app.add_subcommand("necessity",
                                     "classify a candidate complementary pair");
    neCmd->add_option("--f", neArgs.f)->required();
    neCmd->add_option("--g", neArgs.g)->required();
    neCmd->add_option("--f2", neArgs.h, "companion pair numerator")->required();
    neCmd->add_option("--g2", neArgs.k, "companion pair denominator")->required();
    neCmd->add_option("--domain", neArgs.domain, "interval LO HI")
        ->expected(2)->required();
    neCmd->add_option("--t", neArgs.t);
    neCmd->add_option("--s", neArgs.s);

    FamilyArgs faArgs;
    auto* faCmd = app.add_subcommand("family",
                                     "build a complementary family and "
                                     "evaluate its closed forms");
    faCmd->add_option("--p", faArgs.p, "family parameter")->required();
    faCmd->add_option("--phi", faArgs.phi, "weight expression");
    faCmd->add_option("--domain", faArgs.domain, "interval LO HI")
        ->expected(2)->required();
    faCmd->add_option("--change-a", faArgs.changeA, "basis change A11 A12 A21 A22")
        ->expected(4);
    faCmd->add_option("--change-b", faArgs.changeB, "basis change B11 B12 B21 B22")
        ->expected(4);
    faCmd->add_option("--x", faArgs.x);
    faCmd->add_option("--y", faArgs.y);
    faCmd->add_option("--t", faArgs.t);
    faCmd->add_option("--s", faArgs.s);

    InvarianceArgs invArgs;
    auto* invCmd = app.add_subcommand("invariance",
                                      "sweep an invariance identity over a lattice");
    invCmd->add_option("--f", invArgs.f, "first pair numerator");
    invCmd->add_option("--g", invArgs.g, "first pair denominator");
    invCmd->add_option("--f2", invArgs.h, "second pair numerator");
    invCmd->add_option("--g2", invArgs.k, "second pair denominator");
    invCmd->add_option("--K", invArgs.K, "outer mean spec (triple mode)");
    invCmd->add_option("--M", invArgs.M, "first inner mean spec");
    invCmd->add_option("--N", invArgs.N, "second inner mean spec");
    invCmd->add_option("--domain", invArgs.domain, "interval LO HI")
        ->expected(2)->required();
    invCmd->add_option("--t", invArgs.t);
    invCmd->add_option("--s", invArgs.s);
    invCmd->add_option("--grid", invArgs.grid, "lattice points per axis");
    invCmd->add_option("--tol", invArgs.tol, "pass tolerance");
    invCmd->add_option("--json", invArgs.jsonPath, "write the report here");
    invCmd->add_option("--label", invArgs.label, "label for triple reports");

    RegressArgs reArgs;
    auto* reCmd = app.add_subcommand("regress",
                                     "run the fixed invariance catalog");
    reCmd->add_option("--grid", reArgs.grid);
    reCmd->add_option("--tol", reArgs.tol);
    reCmd->add_option("--json", reArgs.jsonPath, "write the reports here");

    CLI11_PARSE(app, argc, argv);

    try {
        if (evalCmd->parsed()) return runEval(evalArgs);
        if (wrCmd->parsed()) return runWronskian(wrArgs);
        if (paCmd->parsed()) return runPartials(paArgs);
        if (neCmd->parsed()) return runNecessity(neArgs);
        if (faCmd->parsed()) return runFamily(faArgs);
        if (invCmd->parsed()) return runInvariance(invArgs);
        if (reCmd->parsed()) return runRegress(reArgs);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
