#include "meanlab/wronskian.hpp"

#include <cmath>
#include <string>

namespace meanlab {

namespace {

void requireClass(const FunctionPair& pair, int needed, const char* what) {
    if (pair.certifiedClass() < needed)
        throw DomainError(std::string(what) + " needs certified class >= " +
                          std::to_string(needed) + ", pair has " +
                          std::to_string(pair.certifiedClass()));
}

double relGap(double a, double b) {
    return std::fabs(a - b) / (1.0 + std::fabs(a));
}

} // namespace

WronskianProfile::WronskianProfile(const FunctionPair& pair) : pair_(pair) {
    requireClass(pair_, 2, "Wronskian profile");
    const Expr& f = pair_.fDerivative(0);
    const Expr& g = pair_.gDerivative(0);
    const Expr& f1 = pair_.fDerivative(1);
    const Expr& g1 = pair_.gDerivative(1);
    const Expr& f2 = pair_.fDerivative(2);
    const Expr& g2 = pair_.gDerivative(2);

    Expr w10 = f1 * g - g1 * f;
    Expr w20 = f2 * g - g2 * f;
    Expr w21 = f2 * g1 - g2 * f1;
    phiExpr_ = w20 / w10;
    psiExpr_ = -(w21 / w10);
    if (pair_.certifiedClass() >= 3) {
        phiPrimeExpr_ = phiExpr_->derivative();
        psiPrimeExpr_ = psiExpr_->derivative();
    }
    if (pair_.certifiedClass() >= 4)
        phiSecondExpr_ = phiPrimeExpr_->derivative();
}

double WronskianProfile::w(int i, int j, double x) const {
    double fi = pair_.fDerivative(i).eval(x);
    double gi = pair_.gDerivative(i).eval(x);
    double fj = pair_.fDerivative(j).eval(x);
    double gj = pair_.gDerivative(j).eval(x);
    return fi * gj - gi * fj;
}

double WronskianProfile::w10Checked(double x) const {
    double w10 = w(1, 0, x);
    if (std::fabs(w10) < 1e-300)
        throw SolveError("W[1,0] degenerates at x = " + std::to_string(x));
    return w10;
}

double WronskianProfile::phi(double x) const { return w(2, 0, x) / w10Checked(x); }

double WronskianProfile::psi(double x) const { return -w(2, 1, x) / w10Checked(x); }

double WronskianProfile::phiPrime(double x) const {
    requireClass(pair_, 3, "Phi'");
    return phiPrimeExpr_->eval(x);
}

double WronskianProfile::psiPrime(double x) const {
    requireClass(pair_, 3, "Psi'");
    return psiPrimeExpr_->eval(x);
}

double WronskianProfile::phiSecond(double x) const {
    requireClass(pair_, 4, "Phi''");
    return phiSecondExpr_->eval(x);
}

double wij(const FunctionPair& pair, int i, int j, double x) {
    if (!pair.domain().contains(x))
        throw DomainError("x lies outside the pair's interval");
    double fi = pair.fDerivative(i).eval(x);
    double gi = pair.gDerivative(i).eval(x);
    double fj = pair.fDerivative(j).eval(x);
    double gj = pair.gDerivative(j).eval(x);
    return fi * gj - gi * fj;
}

std::pair<double, double> phiPsi(const FunctionPair& pair, double x) {
    if (!pair.domain().contains(x))
        throw DomainError("x lies outside the pair's interval");
    WronskianProfile prof(pair);
    double phi = prof.phi(x);
    double psi = prof.psi(x);

    // Both generators must solve y'' = phi y' + psi y at x.
    for (int which = 0; which < 2; ++which) {
        const FunctionPair& p = prof.pair();
        double y = (which == 0 ? p.fDerivative(0) : p.gDerivative(0)).eval(x);
        double y1 = (which == 0 ? p.fDerivative(1) : p.gDerivative(1)).eval(x);
        double y2 = (which == 0 ? p.fDerivative(2) : p.gDerivative(2)).eval(x);
        double residual = std::fabs(y2 - phi * y1 - psi * y);
        if (residual > 1e-9 * (std::fabs(y2) + 1.0))
            throw SolveError("differential identity residual " +
                             std::to_string(residual) + " at x = " +
                             std::to_string(x));
    }
    return {phi, psi};
}

HigherRatios higherRatios(const FunctionPair& pair, double x) {
    requireClass(pair, 3, "higher Wronskian ratios");
    if (!pair.domain().contains(x))
        throw DomainError("x lies outside the pair's interval");

    WronskianProfile prof(pair);
    double w10 = wij(pair, 1, 0, x);
    if (std::fabs(w10) < 1e-300)
        throw SolveError("W[1,0] degenerates at x = " + std::to_string(x));

    double phi = prof.phi(x);
    double psi = prof.psi(x);
    double phi1 = prof.phiPrime(x);
    double psi1 = prof.psiPrime(x);

    HigherRatios out{wij(pair, 3, 0, x) / w10, wij(pair, 3, 1, x) / w10, {}};
    double formula30 = phi1 + phi * phi + psi;
    double formula31 = -(phi * psi + psi1);
    if (relGap(out.w30, formula30) > 1e-8 || relGap(out.w31, formula31) > 1e-8)
        throw SolveError("order-3 Wronskian ratios disagree with the Phi/Psi form at x = " +
                         std::to_string(x));

    if (pair.certifiedClass() >= 4) {
        double direct40 = wij(pair, 4, 0, x) / w10;
        double formula40 = prof.phiSecond(x) + 3.0 * phi1 * phi + phi * phi * phi +
                           2.0 * phi * psi + 2.0 * psi1;
        if (relGap(direct40, formula40) > 1e-8)
            throw SolveError("order-4 Wronskian ratio disagrees with the Phi/Psi form at x = " +
                             std::to_string(x));
        out.w40 = direct40;
    }
    return out;
}

std::pair<double, double> weightTransform(const FunctionPair& pair,
                                          const Expr& weight, double x) {
    requireClass(pair, 2, "weight transform");
    if (!pair.domain().contains(x))
        throw DomainError("x lies outside the pair's interval");

    for (double u : sampleGrid(pair.domain(), 256)) {
        double wv = weight.eval(u);
        if (wv == 0.0 || !std::isfinite(wv))
            throw CertifyError("weight vanishes at x = " + std::to_string(u));
    }

    WronskianProfile prof(pair);
    double phi = prof.phi(x);
    double psi = prof.psi(x);
    double wv = weight.eval(x);
    double w1 = weight.derivative().eval(x);
    double w2 = weight.derivative(2).eval(x);
    double lw = w1 / wv;

    double phiNew = phi + 2.0 * lw;
    double psiNew = psi - lw * phi + w2 / wv - 2.0 * lw * lw;

    // Same quantities straight from the multiplied pair.
    FunctionPair scaled(weight * pair.f(), weight * pair.g(), pair.domain(), 2);
    WronskianProfile direct(scaled);
    double phiDirect = direct.phi(x);
    double psiDirect = direct.psi(x);
    if (relGap(phiNew, phiDirect) > 1e-9 || relGap(psiNew, psiDirect) > 1e-9)
        throw SolveError("weight transform disagrees with the multiplied pair at x = " +
                         std::to_string(x));
    return {phiNew, psiNew};
}

bool equivalent(const FunctionPair& a, const FunctionPair& b, double tol) {
    requireClass(a, 2, "equivalence fingerprint");
    requireClass(b, 2, "equivalence fingerprint");
    if (a.domain().lo != b.domain().lo || a.domain().hi != b.domain().hi)
        throw DomainError("equivalence fingerprint needs a shared interval");

    WronskianProfile pa(a), pb(b);
    for (double x : sampleGrid(a.domain(), 256)) {
        double phiA = pa.phi(x), phiB = pb.phi(x);
        double psiA = pa.psi(x), psiB = pb.psi(x);
        if (std::fabs(phiA - phiB) > tol * (1.0 + std::max(std::fabs(phiA), std::fabs(phiB))))
            return false;
        if (std::fabs(psiA - psiB) > tol * (1.0 + std::max(std::fabs(psiA), std::fabs(psiB))))
            return false;
    }
    return true;
}

} // namespace meanlab
