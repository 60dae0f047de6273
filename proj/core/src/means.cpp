#include "meanlab/means.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace meanlab {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kParamZero = 1e-12;

std::string pointMessage(const char* what, double x) {
    return std::string(what) + " at x = " + std::to_string(x);
}

// Bracketed hybrid solver for a monotone function with fn(lo), fn(hi) of
// opposite sign. Secant steps are taken while they land strictly inside the
// bracket and keep shrinking it; otherwise the step bisects. Runs the
// bracket down to a few ulps so callers can differentiate through it.
template <class F>
double solveBracketed(F&& fn, double lo, double hi, const char* what) {
    double flo = fn(lo);
    if (flo == 0.0) return lo;
    double fhi = fn(hi);
    if (fhi == 0.0) return hi;
    if ((flo > 0.0) == (fhi > 0.0)) {
        // Tolerate endpoint noise when the root sits on the bracket edge;
        // anything else means the monotonicity certificate was wrong.
        double alo = std::fabs(flo), ahi = std::fabs(fhi);
        if (std::min(alo, ahi) <= 1e-3 * std::max(alo, ahi))
            return alo <= ahi ? lo : hi;
        throw SolveError(std::string("no sign change over the bracket (") + what + ")");
    }

    bool forceBisect = false;
    for (int iter = 0; iter < 200; ++iter) {
        double widthTol = 2.0 * kEps * std::max(std::fabs(lo), std::fabs(hi)) + 1e-300;
        double width = hi - lo;
        if (width <= widthTol) break;

        double z = 0.5 * (lo + hi);
        if (!forceBisect && fhi != flo) {
            double zs = (lo * fhi - hi * flo) / (fhi - flo);
            if (zs > lo && zs < hi) z = zs;
        }
        double fz = fn(z);
        if (fz == 0.0) return z;
        if ((fz > 0.0) == (fhi > 0.0)) {
            hi = z;
            fhi = fz;
        } else {
            lo = z;
            flo = fz;
        }
        // If the secant step failed to halve the bracket, bisect next time.
        forceBisect = (hi - lo) > 0.5 * width;
    }
    return 0.5 * (lo + hi);
}

void requirePositive(double x, double y, const char* what) {
    if (!(x > 0.0) || !(y > 0.0))
        throw DomainError(std::string(what) + " requires strictly positive arguments");
}

} // namespace

Interval::Interval(double lo_, double hi_) : lo(lo_), hi(hi_) {
    if (!(lo < hi) || !std::isfinite(lo) || !std::isfinite(hi))
        throw DomainError("interval requires finite lo < hi");
}

WeightPair::WeightPair(double t_, double s_) : t(t_), s(s_) {
    if (!(t > 0.0) || !(s > 0.0) || !std::isfinite(t) || !std::isfinite(s))
        throw DomainError("weights must be strictly positive and finite");
}

std::vector<double> sampleGrid(const Interval& domain, int n) {
    std::vector<double> xs;
    xs.reserve(static_cast<std::size_t>(n));
    double w = domain.width();
    for (int i = 0; i < n; ++i)
        xs.push_back(domain.lo + (i + 0.5) * w / n);
    return xs;
}

namespace {

std::vector<double> certificationGrid(const Interval& domain) {
    std::vector<double> xs = sampleGrid(domain, 1024);
    double w = domain.width();
    // Near-endpoint probes; the interval itself is open.
    xs.push_back(domain.lo + 1e-6 * w);
    xs.push_back(domain.lo + 1e-3 * w);
    xs.push_back(domain.hi - 1e-3 * w);
    xs.push_back(domain.hi - 1e-6 * w);
    return xs;
}

} // namespace

FunctionPair::FunctionPair(Expr f, Expr g, Interval domain, int maxClass)
    : f_(std::move(f)), g_(std::move(g)), domain_(domain), class_(0),
      increasing_(true) {
    if (maxClass < 0 || maxClass > 4)
        throw CertifyError("requested class must lie in [0, 4]");

    const std::vector<double> grid = certificationGrid(domain_);

    std::vector<double> gv(grid.size()), fv(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        fv[i] = f_.eval(grid[i]);
        gv[i] = g_.eval(grid[i]);
        if (gv[i] == 0.0 || !std::isfinite(gv[i]) || !std::isfinite(fv[i]))
            throw CertifyError(pointMessage("g vanishes or the pair is not finite", grid[i]));
        if ((gv[i] > 0.0) != (gv[0] > 0.0))
            throw CertifyError(pointMessage("g changes sign", grid[i]));
    }

    // Try the graded certificate first: derivative chains up to maxClass and
    // a one-signed f'g - g'f across the grid.
    bool graded = maxClass >= 1;
    std::vector<Expr> fd{f_}, gd{g_};
    if (graded) {
        try {
            for (int i = 1; i <= maxClass; ++i) {
                fd.push_back(fd.back().derivative());
                gd.push_back(gd.back().derivative());
            }
        } catch (const DerivativeError&) {
            graded = false;
        }
    }
    if (graded) {
        const Expr& f1 = fd[1];
        const Expr& g1 = gd[1];
        for (std::size_t i = 0; i < grid.size(); ++i) {
            double w10 = f1.eval(grid[i]) * gv[i] - g1.eval(grid[i]) * fv[i];
            if (w10 == 0.0 || !std::isfinite(w10)) {
                graded = false;
                break;
            }
            if (i == 0) {
                increasing_ = w10 > 0.0;
            } else if ((w10 > 0.0) != increasing_) {
                graded = false;
                break;
            }
        }
    }
    if (graded) {
        class_ = maxClass;
        fDerivatives_ = std::move(fd);
        gDerivatives_ = std::move(gd);
        return;
    }

    // Fall back to the continuous certificate: sampled ratio strictly ordered.
    double prev = fv[0] / gv[0];
    bool inc = true, dec = true;
    for (std::size_t i = 1; i < 1024 && i < grid.size(); ++i) {
        double r = fv[i] / gv[i];
        if (!(r > prev)) inc = false;
        if (!(r < prev)) dec = false;
        if (!inc && !dec)
            throw CertifyError(pointMessage("ratio f/g is not strictly monotone", grid[i]));
        prev = r;
    }
    class_ = 0;
    increasing_ = inc;
    fDerivatives_ = {f_};
    gDerivatives_ = {g_};
}

const Expr& FunctionPair::fDerivative(int i) const {
    if (i < 0 || i > class_)
        throw DomainError("derivative order " + std::to_string(i) +
                          " exceeds certified class " + std::to_string(class_));
    return fDerivatives_[static_cast<std::size_t>(i)];
}

const Expr& FunctionPair::gDerivative(int i) const {
    if (i < 0 || i > class_)
        throw DomainError("derivative order " + std::to_string(i) +
                          " exceeds certified class " + std::to_string(class_));
    return gDerivatives_[static_cast<std::size_t>(i)];
}

double bajraktarevicEval(const FunctionPair& pair, double x, double y,
                         const WeightPair& w, double residualTol) {
    const Interval& dom = pair.domain();
    if (!dom.contains(x) || !dom.contains(y))
        throw DomainError("arguments lie outside the pair's interval");
    if (x == y) return x;

    const Expr& f = pair.f();
    const Expr& g = pair.g();
    double a = w.t * f.eval(x) + w.s * f.eval(y);
    double b = w.t * g.eval(x) + w.s * g.eval(y);
    double target = a / b;

    double lo = std::min(x, y), hi = std::max(x, y);
    double z = solveBracketed(
        [&](double u) { return f.eval(u) / g.eval(u) - target; }, lo, hi,
        "weighted mean");

    double fz = f.eval(z), gz = g.eval(z);
    double det = a * gz - b * fz;
    double scale = std::fabs(a * gz) + std::fabs(b * fz);
    if (std::fabs(det) > residualTol * scale)
        throw SolveError("mean residual " + std::to_string(std::fabs(det)) +
                         " exceeds tolerance");
    return z;
}

double holder(double p, double x, double y) {
    requirePositive(x, y, "power mean");
    if (std::fabs(p) < kParamZero) return std::sqrt(x * y);
    return std::pow(0.5 * (std::pow(x, p) + std::pow(y, p)), 1.0 / p);
}

double gini(double p, double q, double x, double y) {
    requirePositive(x, y, "Gini mean");
    if (std::fabs(p - q) < kParamZero) {
        double xp = std::pow(x, p), yp = std::pow(y, p);
        return std::exp((xp * std::log(x) + yp * std::log(y)) / (xp + yp));
    }
    return std::pow((std::pow(x, p) + std::pow(y, p)) /
                        (std::pow(x, q) + std::pow(y, q)),
                    1.0 / (p - q));
}

double stolarsky(double p, double q, double x, double y) {
    requirePositive(x, y, "Stolarsky mean");
    if (x == y) return x;
    bool pZero = std::fabs(p) < kParamZero;
    bool qZero = std::fabs(q) < kParamZero;
    if (pZero && qZero) return std::sqrt(x * y);
    if (std::fabs(p - q) < kParamZero) {
        double xp = std::pow(x, p), yp = std::pow(y, p);
        return std::exp(-1.0 / p + (xp * std::log(x) - yp * std::log(y)) / (xp - yp));
    }
    if (qZero)
        return std::pow((std::pow(x, p) - std::pow(y, p)) /
                            (p * (std::log(x) - std::log(y))),
                        1.0 / p);
    if (pZero)
        return std::pow((std::pow(x, q) - std::pow(y, q)) /
                            (q * (std::log(x) - std::log(y))),
                        1.0 / q);
    return std::pow((q * (std::pow(x, p) - std::pow(y, p))) /
                        (p * (std::pow(x, q) - std::pow(y, q))),
                    1.0 / (p - q));
}

double quasiArithmetic(const Expr& f, double x, double y) {
    if (x == y) return x;
    double target = 0.5 * (f.eval(x) + f.eval(y));
    double lo = std::min(x, y), hi = std::max(x, y);
    return solveBracketed([&](double u) { return f.eval(u) - target; }, lo, hi,
                          "quasi-arithmetic mean");
}

double genQuasiArithmetic(const Expr& f1, const Expr& f2, const Interval& domain,
                          double x, double y) {
    if (!domain.contains(x) || !domain.contains(y))
        throw DomainError("arguments lie outside the interval");
    Expr sum = f1 + f2;
    double target = 0.5 * (f1.eval(x) + f2.eval(y));
    auto fn = [&](double u) { return sum.eval(u) - target; };

    // The solution need not sit between x and y; grow the bracket from the
    // midpoint until the sign changes, never leaving the interval.
    double mid = 0.5 * (x + y);
    double step = std::max(0.5 * std::fabs(x - y), 1e-3 * domain.width());
    double margin = 1e-9 * domain.width();
    for (int round = 0; round < 64; ++round) {
        double lo = std::max(mid - step, domain.lo + margin);
        double hi = std::min(mid + step, domain.hi - margin);
        if (lo < hi) {
            double flo = fn(lo), fhi = fn(hi);
            if (flo == 0.0) return lo;
            if (fhi == 0.0) return hi;
            if ((flo > 0.0) != (fhi > 0.0))
                return solveBracketed(fn, lo, hi, "generalized quasi-arithmetic mean");
        }
        bool loClamped = mid - step <= domain.lo + margin;
        bool hiClamped = mid + step >= domain.hi - margin;
        if (loClamped && hiClamped)
            throw SolveError("bracket expansion exhausted the interval without a sign change");
        step *= 2.0;
    }
    throw SolveError("bracket expansion did not converge");
}

double gaussAGM(double x, double y) {
    requirePositive(x, y, "arithmetic-geometric mean");
    double a = x, g = y;
    for (int i = 0; i < 100; ++i) {
        if (std::fabs(a - g) <= 1e-15 * std::fabs(a)) break;
        double an = 0.5 * (a + g);
        g = std::sqrt(a * g);
        a = an;
    }
    return 0.5 * (a + g);
}

} // namespace meanlab
