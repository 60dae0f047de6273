#pragma once

#include <vector>

#include "meanlab/expr.hpp"

namespace meanlab {

/// A pair failed its construction checks (vanishing denominator, broken
/// monotonicity, invalid weight...). The message names the grid point.
class CertifyError : public Error {
public:
    using Error::Error;
};

/// Root bracketing or residual verification failed.
class SolveError : public Error {
public:
    using Error::Error;
};

/// Argument outside the operation's domain (non-positive input to a power
/// mean, point outside a pair's interval, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

/// Open interval (lo, hi), lo < hi.
struct Interval {
    double lo;
    double hi;

    Interval(double lo_, double hi_);
    double width() const noexcept { return hi - lo; }
    bool contains(double x) const noexcept { return x > lo && x < hi; }
};

/// Strictly positive weights (t, s).
struct WeightPair {
    double t;
    double s;

    WeightPair(double t_, double s_);
    WeightPair swapped() const noexcept { return WeightPair(s, t); }
};

/// Sampling grid used by all certification and residual sweeps: n midpoints
/// of equal subintervals, strictly inside the open interval.
std::vector<double> sampleGrid(const Interval& domain, int n);

/// A generator pair (f, g) certified on its interval.
///
/// Construction samples a 1024-point grid plus near-endpoint probes and
/// checks that g keeps one sign, then grades the pair:
///   class >= 1  derivatives up to the class exist and f'g - g'f keeps one
///               sign on the grid (the ratio f/g is strictly monotone with
///               nonvanishing derivative);
///   class 0     only the sampled ratio values are strictly ordered.
/// Pairs that fail both gradings do not construct.
class FunctionPair {
public:
    FunctionPair(Expr f, Expr g, Interval domain, int maxClass = 4);

    const Expr& f() const noexcept { return f_; }
    const Expr& g() const noexcept { return g_; }
    const Interval& domain() const noexcept { return domain_; }
    int certifiedClass() const noexcept { return class_; }

    /// i-th derivative of f (0 <= i <= certifiedClass()).
    const Expr& fDerivative(int i) const;
    const Expr& gDerivative(int i) const;

    /// True if the ratio f/g increases on the interval.
    bool ratioIncreasing() const noexcept { return increasing_; }

private:
    Expr f_;
    Expr g_;
    Interval domain_;
    int class_;
    bool increasing_;
    std::vector<Expr> fDerivatives_; // orders 0..class_
    std::vector<Expr> gDerivatives_;
};

/// Weighted two-variable mean generated by (f, g): the unique z between x
/// and y with (f/g)(z) = (t f(x) + s f(y)) / (t g(x) + s g(y)), found by
/// bracketed bisection/secant. After the solve the 2x2 determinant residual
/// must not exceed residualTol * scale.
double bajraktarevicEval(const FunctionPair& pair, double x, double y,
                         const WeightPair& w, double residualTol = 1e-13);

/// Power mean of order p; p within 1e-12 of zero means the geometric mean.
double holder(double p, double x, double y);

/// Two-parameter power-sum mean; |p - q| < 1e-12 routes to the p = q branch
/// exp((x^p log x + y^p log y) / (x^p + y^p)).
double gini(double p, double q, double x, double y);

/// Two-parameter difference mean with the full six-case dispatch; parameter
/// zero tests use threshold 1e-12, the x = y short-circuit is exact.
double stolarsky(double p, double q, double x, double y);

/// f^{-1}((f(x) + f(y)) / 2) for strictly monotone f; the root is bracketed
/// by [min(x,y), max(x,y)].
double quasiArithmetic(const Expr& f, double x, double y);

/// (f1 + f2)^{-1}((f1(x) + f2(y)) / 2). The root can leave [min(x,y),
/// max(x,y)], so the bracket grows geometrically from the midpoint and is
/// clamped to `domain`; running out of domain is an error.
double genQuasiArithmetic(const Expr& f1, const Expr& f2, const Interval& domain,
                          double x, double y);

/// Arithmetic-geometric mean, iterated until |a_n - g_n| <= 1e-15 * a_n.
double gaussAGM(double x, double y);

} // namespace meanlab
