#include "meanlab/invariance.hpp"

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <string>
#include <vector>

namespace meanlab {

namespace {

std::string fmtDouble(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::vector<double> marginLattice(const Interval& domain, int gridSize) {
    if (gridSize < 2)
        throw DomainError("grid needs at least two points per axis");
    double margin = 0.05 * domain.width();
    double lo = domain.lo + margin;
    double step = (domain.width() - 2.0 * margin) / (gridSize - 1);
    std::vector<double> pts(gridSize);
    for (int i = 0; i < gridSize; ++i)
        pts[i] = lo + i * step;
    return pts;
}

void checkTolerance(double tolerance) {
    if (!(tolerance > 0.0) || !std::isfinite(tolerance))
        throw DomainError("tolerance must be positive and finite");
}

struct LatticeSweep {
    double maxResidual = 0.0;
    double sumResidual = 0.0;
    std::array<double, 2> worstPoint{0.0, 0.0};
    long count = 0;

    void record(double x, double y, double residual) {
        double r = std::fabs(residual);
        sumResidual += r;
        ++count;
        if (r >= maxResidual) {
            maxResidual = r;
            worstPoint = {x, y};
        }
    }
};

InvarianceReport finishReport(ReportKind kind, int gridSize, double tolerance,
                              const LatticeSweep& sweep, std::string digest,
                              std::string label) {
    InvarianceReport report;
    report.kind = kind;
    report.gridSize = gridSize;
    report.maxResidual = sweep.maxResidual;
    report.meanResidual = sweep.count ? sweep.sumResidual / sweep.count : 0.0;
    report.worstPoint = sweep.worstPoint;
    report.pass = sweep.maxResidual <= tolerance;
    report.tolerance = tolerance;
    report.inputDigest = std::move(digest);
    report.label = std::move(label);
    return report;
}

} // namespace

const char* reportKindName(ReportKind kind) {
    return kind == ReportKind::ArithmeticSum ? "ARITHMETIC_SUM" : "TRIPLE";
}

std::string fnv1aHex(const std::string& text) {
    std::uint64_t hash = 14695981039346656037ull;
    for (unsigned char c : text) {
        hash ^= c;
        hash *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx",
                  static_cast<unsigned long long>(hash));
    return buf;
}

std::string toJson(const InvarianceReport& report) {
    std::string out = "{";
    out += "\"kind\":\"";
    out += reportKindName(report.kind);
    out += "\",\"grid\":";
    out += std::to_string(report.gridSize);
    out += ",\"max_residual\":";
    out += fmtDouble(report.maxResidual);
    out += ",\"mean_residual\":";
    out += fmtDouble(report.meanResidual);
    out += ",\"worst_point\":[";
    out += fmtDouble(report.worstPoint[0]);
    out += ",";
    out += fmtDouble(report.worstPoint[1]);
    out += "],\"pass\":";
    out += report.pass ? "true" : "false";
    out += ",\"tolerance\":";
    out += fmtDouble(report.tolerance);
    out += ",\"input_digest\":\"";
    out += report.inputDigest;
    out += "\"}";
    return out;
}

std::string toJson(const std::vector<InvarianceReport>& reports) {
    std::string out = "[";
    for (std::size_t i = 0; i < reports.size(); ++i) {
        out += i ? ",\n " : "\n ";
        out += toJson(reports[i]);
    }
    out += reports.empty() ? "]" : "\n]";
    return out;
}

InvarianceReport checkArithmeticInvariance(const FunctionPair& a,
                                           const FunctionPair& b,
                                           const WeightPair& w,
                                           int gridSize,
                                           double tolerance) {
    checkTolerance(tolerance);
    if (a.domain().lo != b.domain().lo || a.domain().hi != b.domain().hi)
        throw DomainError("pairs live on different intervals");

    auto pts = marginLattice(a.domain(), gridSize);
    WeightPair swapped = w.swapped();
    LatticeSweep sweep;
    for (double x : pts) {
        for (double y : pts) {
            double residual;
            try {
                residual = bajraktarevicEval(a, x, y, w) +
                           bajraktarevicEval(b, x, y, swapped) - (x + y);
            } catch (const Error& e) {
                throw SolveError("sum sweep failed at (" + fmtDouble(x) +
                                 ", " + fmtDouble(y) + "): " + e.what());
            }
            sweep.record(x, y, residual);
        }
    }

    std::string canon = "ARITHMETIC_SUM|";
    canon += a.f().str() + "|" + a.g().str() + "|";
    canon += b.f().str() + "|" + b.g().str() + "|";
    canon += fmtDouble(a.domain().lo) + "|" + fmtDouble(a.domain().hi) + "|";
    canon += fmtDouble(w.t) + "|" + fmtDouble(w.s) + "|";
    canon += std::to_string(gridSize);
    return finishReport(ReportKind::ArithmeticSum, gridSize, tolerance, sweep,
                        fnv1aHex(canon), "");
}

InvarianceReport checkTripleInvariance(const MeanFn& K,
                                       const MeanFn& M,
                                       const MeanFn& N,
                                       const Interval& domain,
                                       int gridSize,
                                       double tolerance,
                                       const std::string& description) {
    checkTolerance(tolerance);
    auto pts = marginLattice(domain, gridSize);
    LatticeSweep sweep;
    for (double x : pts) {
        for (double y : pts) {
            double m = M(x, y), n = N(x, y);
            if (!domain.contains(m) || !domain.contains(n))
                throw DomainError("inner mean left the interval at (" +
                                  fmtDouble(x) + ", " + fmtDouble(y) + ")" +
                                  (description.empty() ? ""
                                                       : " [" + description + "]"));
            sweep.record(x, y, K(m, n) - K(x, y));
        }
    }

    std::string canon = "TRIPLE|" + description + "|";
    canon += fmtDouble(domain.lo) + "|" + fmtDouble(domain.hi) + "|";
    canon += std::to_string(gridSize);
    return finishReport(ReportKind::Triple, gridSize, tolerance, sweep,
                        fnv1aHex(canon), description);
}

namespace {

MeanFn holderFn(double p) {
    return [p](double x, double y) { return holder(p, x, y); };
}

MeanFn giniFn(double p, double q) {
    return [p, q](double x, double y) { return gini(p, q, x, y); };
}

MeanFn stolarskyFn(double p, double q) {
    return [p, q](double x, double y) { return stolarsky(p, q, x, y); };
}

MeanFn arithFn() {
    return [](double x, double y) { return 0.5 * (x + y); };
}

} // namespace

std::vector<InvarianceReport> regressionSuite(int gridSize, double tolerance) {
    Interval domain{0.5, 4.0};
    // The two-function variant shifts its value by -+ln 2 relative to the
    // one-function mean, so it gets an interval wide enough that the shifted
    // values never escape the 5% lattice margin.
    Interval wide{0.25, 15.25};
    Expr expUp = Expr::parse("exp(x)");
    Expr expDown = Expr::parse("exp(-x)");

    struct Fixture {
        std::string label;
        Interval domain;
        MeanFn K, M, N;
    };

    std::vector<Fixture> fixtures;
    fixtures.push_back({"holder chain 0|2|-2", domain, holderFn(0.0),
                        holderFn(2.0), holderFn(-2.0)});
    fixtures.push_back({"exponential shift pair", domain, arithFn(),
                        [expUp](double x, double y) {
                            return quasiArithmetic(expUp, x, y);
                        },
                        [expDown](double x, double y) {
                            return quasiArithmetic(expDown, x, y);
                        }});
    fixtures.push_back({"two-function exponential pair", wide, arithFn(),
                        [expUp, wide](double x, double y) {
                            return genQuasiArithmetic(expUp, expUp, wide, x, y);
                        },
                        [expDown, wide](double x, double y) {
                            return genQuasiArithmetic(expDown, expDown, wide,
                                                      x, y);
                        }});
    fixtures.push_back({"gini ladder 2,0", domain, giniFn(2.0, 0.0),
                        giniFn(3.0, 1.0), giniFn(1.0, -1.0)});
    fixtures.push_back({"gini ladder 1,-1", domain, giniFn(1.0, -1.0),
                        giniFn(1.0, 2.0), giniFn(-1.0, -2.0)});
    fixtures.push_back({"stolarsky ladder 1,-1", domain, stolarskyFn(1.0, -1.0),
                        stolarskyFn(1.0, 2.0), stolarskyFn(-1.0, -2.0)});
    fixtures.push_back({"detuned holder chain", domain, holderFn(0.1),
                        holderFn(2.0), holderFn(-2.0)});
    fixtures.push_back({"detuned gini ladder", domain, giniFn(2.0, 0.0),
                        giniFn(3.1, 1.0), giniFn(1.0, -1.0)});
    fixtures.push_back({"detuned stolarsky ladder", domain, stolarskyFn(1.0, -1.0),
                        stolarskyFn(1.1, 2.0), stolarskyFn(-1.0, -2.0)});

    std::vector<InvarianceReport> reports;
    reports.reserve(fixtures.size());
    for (const auto& fx : fixtures)
        reports.push_back(checkTripleInvariance(fx.K, fx.M, fx.N, fx.domain,
                                                gridSize, tolerance, fx.label));
    return reports;
}

} // namespace meanlab
