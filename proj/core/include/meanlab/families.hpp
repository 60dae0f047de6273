#pragma once

#include <optional>

#include "meanlab/means.hpp"

namespace meanlab {

/// Sine-like solution of y'' = p y pinned at the origin: sinh(sqrt(p) x)
/// for p > 0, x for p = 0, sin(sqrt(-p) x) for p < 0. |p| < 1e-12 counts
/// as zero.
double sp(double p, double x);
/// Cosine-like companion: cosh, 1, cos respectively.
double cp(double p, double x);
/// Exponential-family generator exp(p x), or x when p is zero.
double ep(double p, double x);

Expr spExpr(double p);
Expr cpExpr(double p);
Expr epExpr(double p);

struct Matrix2 {
    double a11, a12, a21, a22;

    double det() const noexcept { return a11 * a22 - a12 * a21; }
    static Matrix2 identity() noexcept { return {1.0, 0.0, 0.0, 1.0}; }
};

/// Recipe for a complementary pair of generator pairs whose means sum to
/// x + y: up to the basis changes, (S_p/w, C_p/w) and (S_p w, C_p w).
struct FamilySpec {
    double p;
    Expr weight;
    Interval domain;
    Matrix2 changeA;
    Matrix2 changeB;

    FamilySpec(double p_, Expr weight_, Interval domain_,
               Matrix2 changeA_ = Matrix2::identity(),
               Matrix2 changeB_ = Matrix2::identity())
        : p(p_), weight(std::move(weight_)), domain(domain_),
          changeA(changeA_), changeB(changeB_) {}
};

struct BuiltFamily {
    FunctionPair first;  ///< changeA applied to (S_p/w, C_p/w)
    FunctionPair second; ///< changeB applied to (S_p w, C_p w)
};

/// Materialize the two pairs as certified class-4 pairs. Rejects: weight
/// not strictly positive on the grid, |det| < 1e-12 on either change, and
/// for p < 0 a domain longer than pi/sqrt(-p) (the cosine-positivity bound;
/// shorter domains can still fail certification and are rejected there).
BuiltFamily build(const FamilySpec& spec);

/// Phase data locating a p < 0 pair inside one cosine-positive window:
/// with beta = alpha + 2 pi k, the shifted angle q x - beta stays in
/// (-pi/2, pi/2) across the domain.
struct TrigBranch {
    double alpha; ///< in (-pi, pi]
    long k;
    double q; ///< sqrt(-p)
};

/// Recover the phase of a pair equivalent to (S_p w, C_p w), w > 0, for
/// p < 0: least squares of g over the recovered weight against the
/// (sin, cos) basis at four points gives (c, d) up to positive scale;
/// alpha = atan2(c, d) after normalizing the combination positive, and k is
/// the unique integer window containing q*domain - alpha. Verified by
/// cos(q x - alpha - 2 pi k) > 0 on a 1024-point grid.
TrigBranch resolveBranch(const FunctionPair& pair, double p);

enum class PairSlot { First, Second };

/// Mean of the requested family slot evaluated in closed form, bypassing
/// the root solve:
///   p > 0: artanh of the weighted sinh/cosh combination, over sqrt(p);
///   p = 0: the rational weighted form;
///   p < 0: (atan of the shifted sin/cos combination + alpha + 2 pi k)/q,
///          which needs `branch`.
/// Every call also re-derives the complementary slot's value and checks the
/// two-mean sum identity through the relevant addition theorem (for p < 0
/// the five-case split on u + v, classified by subinterval rather than by
/// comparing the product of tangents against 1).
double closedFormMean(const FamilySpec& spec,
                      const std::optional<TrigBranch>& branch, double x,
                      double y, const WeightPair& w, PairSlot slot);

} // namespace meanlab
