#include "meanlab/families.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "meanlab/wronskian.hpp"

namespace meanlab {

namespace {

constexpr double kParamZero = 1e-12;
constexpr double kPi = std::numbers::pi;

enum class Regime { Hyperbolic, Linear, Trigonometric };

Regime regimeOf(double p) {
    if (std::fabs(p) < kParamZero) return Regime::Linear;
    return p > 0.0 ? Regime::Hyperbolic : Regime::Trigonometric;
}

} // namespace

double sp(double p, double x) {
    switch (regimeOf(p)) {
    case Regime::Linear: return x;
    case Regime::Hyperbolic: return std::sinh(std::sqrt(p) * x);
    case Regime::Trigonometric: return std::sin(std::sqrt(-p) * x);
    }
    return x;
}

double cp(double p, double x) {
    switch (regimeOf(p)) {
    case Regime::Linear: return 1.0;
    case Regime::Hyperbolic: return std::cosh(std::sqrt(p) * x);
    case Regime::Trigonometric: return std::cos(std::sqrt(-p) * x);
    }
    return 1.0;
}

double ep(double p, double x) {
    if (std::fabs(p) < kParamZero) return x;
    return std::exp(p * x);
}

Expr spExpr(double p) {
    switch (regimeOf(p)) {
    case Regime::Linear: return Expr::variable();
    case Regime::Hyperbolic:
        return Expr::apply(Func::Sinh, Expr::constant(std::sqrt(p)) * Expr::variable());
    case Regime::Trigonometric:
        return Expr::apply(Func::Sin, Expr::constant(std::sqrt(-p)) * Expr::variable());
    }
    return Expr::variable();
}

Expr cpExpr(double p) {
    switch (regimeOf(p)) {
    case Regime::Linear: return Expr::constant(1.0);
    case Regime::Hyperbolic:
        return Expr::apply(Func::Cosh, Expr::constant(std::sqrt(p)) * Expr::variable());
    case Regime::Trigonometric:
        return Expr::apply(Func::Cos, Expr::constant(std::sqrt(-p)) * Expr::variable());
    }
    return Expr::constant(1.0);
}

Expr epExpr(double p) {
    if (std::fabs(p) < kParamZero) return Expr::variable();
    return Expr::apply(Func::Exp, Expr::constant(p) * Expr::variable());
}

BuiltFamily build(const FamilySpec& spec) {
    for (double x : sampleGrid(spec.domain, 1024)) {
        double wv = spec.weight.eval(x);
        if (!(wv > 0.0) || !std::isfinite(wv))
            throw CertifyError("weight is not strictly positive at x = " +
                               std::to_string(x));
    }
    if (std::fabs(spec.changeA.det()) < kParamZero ||
        std::fabs(spec.changeB.det()) < kParamZero)
        throw CertifyError("basis change is singular");
    if (regimeOf(spec.p) == Regime::Trigonometric) {
        double bound = kPi / std::sqrt(-spec.p);
        if (!(spec.domain.width() < bound))
            throw CertifyError("domain of length " + std::to_string(spec.domain.width()) +
                               " reaches the oscillation bound " + std::to_string(bound));
    }

    Expr s = spExpr(spec.p);
    Expr c = cpExpr(spec.p);
    auto combine = [&](double cs, double cc) {
        return Expr::constant(cs) * s + Expr::constant(cc) * c;
    };

    FunctionPair first(combine(spec.changeA.a11, spec.changeA.a12) / spec.weight,
                       combine(spec.changeA.a21, spec.changeA.a22) / spec.weight,
                       spec.domain, 4);
    FunctionPair second(combine(spec.changeB.a11, spec.changeB.a12) * spec.weight,
                        combine(spec.changeB.a21, spec.changeB.a22) * spec.weight,
                        spec.domain, 4);
    return {std::move(first), std::move(second)};
}

TrigBranch resolveBranch(const FunctionPair& pair, double p) {
    if (!(p <= -kParamZero))
        throw DomainError("branch resolution applies to p < 0 only");
    if (pair.certifiedClass() < 1)
        throw DomainError("branch resolution needs certified class >= 1");
    double q = std::sqrt(-p);
    const Interval& dom = pair.domain();

    auto recoveredWeight = [&](double x) {
        double w10 = wij(pair, 1, 0, x);
        return std::sqrt(std::fabs(w10));
    };

    // Least squares of g / weight against (sin(qx), cos(qx)) at four points.
    double sss = 0.0, ssc = 0.0, scc = 0.0, bs = 0.0, bc = 0.0, ymax = 0.0;
    double xs[4], ys[4];
    for (int j = 0; j < 4; ++j) {
        double x = dom.lo + dom.width() * (j + 1) / 5.0;
        double y = pair.g().eval(x) / recoveredWeight(x);
        double sv = std::sin(q * x), cv = std::cos(q * x);
        sss += sv * sv;
        ssc += sv * cv;
        scc += cv * cv;
        bs += sv * y;
        bc += cv * y;
        xs[j] = x;
        ys[j] = y;
        ymax = std::max(ymax, std::fabs(y));
    }
    double det = sss * scc - ssc * ssc;
    if (std::fabs(det) < 1e-12)
        throw SolveError("sin/cos basis is degenerate on the sample points");
    double c = (bs * scc - bc * ssc) / det;
    double d = (sss * bc - ssc * bs) / det;

    for (int j = 0; j < 4; ++j) {
        double fit = c * std::sin(q * xs[j]) + d * std::cos(q * xs[j]);
        if (std::fabs(fit - ys[j]) > 1e-8 * (1.0 + ymax))
            throw SolveError("pair does not lie in the trigonometric family "
                             "(fit residual at x = " + std::to_string(xs[j]) + ")");
    }

    // Truncate fit noise so pure-basis pairs produce exact phases.
    double norm = std::hypot(c, d);
    if (std::fabs(c) <= 1e-12 * norm) c = 0.0;
    if (std::fabs(d) <= 1e-12 * norm) d = 0.0;
    // Normalize the combination positive; ys carries g's sign.
    if (ys[0] < 0.0) {
        c = -c;
        d = -d;
    }

    double alpha = std::atan2(c, d);
    if (alpha == -kPi) alpha = kPi;

    double center = q * 0.5 * (dom.lo + dom.hi) - alpha;
    long k = std::lround(center / (2.0 * kPi));
    double lo = q * dom.lo - alpha - 2.0 * kPi * k;
    double hi = q * dom.hi - alpha - 2.0 * kPi * k;
    if (!(lo >= -0.5 * kPi && hi <= 0.5 * kPi))
        throw SolveError("no integer window contains the domain for this phase");

    TrigBranch branch{alpha, k, q};
    double beta = alpha + 2.0 * kPi * k;
    for (double x : sampleGrid(dom, 1024)) {
        if (!(std::cos(q * x - beta) > 0.0))
            throw SolveError("shifted cosine is not positive at x = " + std::to_string(x));
    }
    return branch;
}

namespace {

void checkSum(double got, double want) {
    if (std::fabs(got - want) > 1e-9 * (1.0 + std::fabs(want)))
        throw SolveError("closed-form sum identity residual " +
                         std::to_string(std::fabs(got - want)));
}

} // namespace

double closedFormMean(const FamilySpec& spec,
                      const std::optional<TrigBranch>& branch, double x,
                      double y, const WeightPair& w, PairSlot slot) {
    if (!spec.domain.contains(x) || !spec.domain.contains(y))
        throw DomainError("arguments lie outside the family domain");

    double wx = spec.weight.eval(x);
    double wy = spec.weight.eval(y);

    // Canonical pairing: the first slot with weights (t, s) complements the
    // second slot with weights (s, t). Both reduce to combinations with
    // T = t w(y) and S = s w(x) after clearing denominators.
    double T, S;
    if (slot == PairSlot::First) {
        T = w.t * wy;
        S = w.s * wx;
    } else {
        T = w.s * wy;
        S = w.t * wx;
    }

    switch (regimeOf(spec.p)) {
    case Regime::Linear: {
        double first = (T * x + S * y) / (T + S);
        double second = (S * x + T * y) / (S + T);
        checkSum(first + second, x + y);
        return slot == PairSlot::First ? first : second;
    }
    case Regime::Hyperbolic: {
        double q = std::sqrt(spec.p);
        double u = q * x, v = q * y;
        double su = std::sinh(u), cu = std::cosh(u);
        double sv = std::sinh(v), cv = std::cosh(v);
        double a = (T * su + S * sv) / (T * cu + S * cv);
        double b = (S * su + T * sv) / (S * cu + T * cv);
        // atanh(a) + atanh(b) collapses through the addition theorem. Past
        // |u + v| ~ 8 both ratios sit within a few ulps of 1 and the check
        // would only measure its own amplification, so it is skipped there.
        if (std::fabs(u + v) <= 8.0)
            checkSum(std::atanh((a + b) / (1.0 + a * b)), u + v);
        return std::atanh(slot == PairSlot::First ? a : b) / q;
    }
    case Regime::Trigonometric: {
        if (!branch)
            throw DomainError("p < 0 needs resolved branch data");
        double q = branch->q;
        double beta = branch->alpha + 2.0 * kPi * branch->k;
        double u = q * x - beta, v = q * y - beta;
        if (!(std::fabs(u) < 0.5 * kPi) || !(std::fabs(v) < 0.5 * kPi))
            throw DomainError("branch data does not cover the arguments");
        double su = std::sin(u), cu = std::cos(u);
        double sv = std::sin(v), cv = std::cos(v);
        double a = (T * su + S * sv) / (T * cu + S * cv);
        double b = (S * su + T * sv) / (S * cu + T * cv);

        // Five-way addition split for atan(a) + atan(b), decided by the
        // subinterval of u + v, never by a floating test of a*b against 1.
        double uv = u + v;
        double razor = std::fabs(std::fabs(uv) - 0.5 * kPi);
        double sum;
        if (razor <= 8.0 * std::numeric_limits<double>::epsilon()) {
            // Within roundoff of the boundary 1 - a*b loses its sign, so the
            // boundary value is taken directly.
            sum = std::copysign(0.5 * kPi, uv);
        } else {
            int sigma = 0;
            if (uv > 0.5 * kPi) sigma = 1;
            else if (uv < -0.5 * kPi) sigma = -1;
            sum = sigma * kPi + std::atan((a + b) / (1.0 - a * b));
        }
        checkSum(sum, uv);

        double r = slot == PairSlot::First ? a : b;
        return (std::atan(r) + beta) / q;
    }
    }
    throw Error("unreachable");
}

} // namespace meanlab
