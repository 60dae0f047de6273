#pragma once

#include <optional>
#include <utility>

#include "meanlab/means.hpp"

namespace meanlab {

/// Cached view of a pair's generalized Wronskians
///   W[i,j] = f^(i) g^(j) - g^(i) f^(j)
/// and of the second-order coefficients
///   Phi = W[2,0] / W[1,0],   Psi = -W[2,1] / W[1,0],
/// which make f and g solutions of y'' = Phi y' + Psi y. First and second
/// derivatives of Phi and Psi are built symbolically once and evaluated on
/// demand. Requires certified class >= 2; class >= 3 unlocks phiPrime and
/// psiPrime, class 4 unlocks phiSecond.
class WronskianProfile {
public:
    explicit WronskianProfile(const FunctionPair& pair);

    double w(int i, int j, double x) const;
    double phi(double x) const;
    double psi(double x) const;
    double phiPrime(double x) const;
    double psiPrime(double x) const;
    double phiSecond(double x) const;

    const FunctionPair& pair() const noexcept { return pair_; }

private:
    double w10Checked(double x) const;

    FunctionPair pair_;
    std::optional<Expr> phiExpr_;
    std::optional<Expr> psiExpr_;
    std::optional<Expr> phiPrimeExpr_;
    std::optional<Expr> psiPrimeExpr_;
    std::optional<Expr> phiSecondExpr_;
};

/// W[i,j] at x; antisymmetric in (i, j) exactly, since the swapped call
/// performs the same two products in the other order.
double wij(const FunctionPair& pair, int i, int j, double x);

/// (Phi, Psi) at x, verified against the differential identity
/// y'' = Phi y' + Psi y for both f and g to 1e-9.
std::pair<double, double> phiPsi(const FunctionPair& pair, double x);

struct HigherRatios {
    double w30; ///< W[3,0] / W[1,0]
    double w31; ///< W[3,1] / W[1,0]
    std::optional<double> w40; ///< W[4,0] / W[1,0], class 4 only
};

/// Ratios of order-3/4 Wronskians to W[1,0], computed both from the direct
/// determinants and from the Phi/Psi forms
///   W30/W10 = Phi' + Phi^2 + Psi
///   W31/W10 = -(Phi Psi + Psi')
///   W40/W10 = Phi'' + 3 Phi' Phi + Phi^3 + 2 Phi Psi + 2 Psi'
/// The two routes must agree to 1e-8 relative; the direct values return.
HigherRatios higherRatios(const FunctionPair& pair, double x);

/// (Phi, Psi) of the multiplied pair (phi*f, phi*g) obtained from the
/// transformation rules
///   Phi_new = Phi + 2 phi'/phi
///   Psi_new = Psi - (phi'/phi) Phi + phi''/phi - 2 (phi'/phi)^2,
/// cross-checked against a direct profile of the multiplied pair (1e-9).
/// The weight must be one-signed on the interval.
std::pair<double, double> weightTransform(const FunctionPair& pair,
                                          const Expr& weight, double x);

/// True when both pairs share the same (Phi, Psi) fingerprint on a 256-point
/// grid: |Phi_a - Phi_b| and |Psi_a - Psi_b| <= tol * (1 + local magnitude).
/// This is exactly when the two pairs generate identical means.
bool equivalent(const FunctionPair& a, const FunctionPair& b, double tol = 1e-8);

} // namespace meanlab
