#include "meanlab/partials.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace meanlab {

namespace {

void checkOrder(int order) {
    if (order < 1 || order > 4)
        throw DomainError("partial derivative order must lie in [1, 4]");
}

} // namespace

double diagonalPartial(const WronskianProfile& profile, const WeightPair& w,
                       double x, int order) {
    checkOrder(order);
    const FunctionPair& pair = profile.pair();
    if (!pair.domain().contains(x))
        throw DomainError("x lies outside the pair's interval");
    if (order >= 2 && pair.certifiedClass() < order)
        throw DomainError("order " + std::to_string(order) +
                          " needs certified class >= " + std::to_string(order));

    double t = w.t, s = w.s;
    double sum = t + s;
    switch (order) {
    case 1:
        return t / sum;
    case 2:
        return t * s / (sum * sum) * profile.phi(x);
    case 3: {
        double phi = profile.phi(x);
        double psi = profile.psi(x);
        double phi1 = profile.phiPrime(x);
        return t * s / (sum * sum * sum) *
               ((s - t) * (phi * phi + psi) + (2.0 * t + s) * phi1);
    }
    case 4: {
        double phi = profile.phi(x);
        double psi = profile.psi(x);
        double phi1 = profile.phiPrime(x);
        double psi1 = profile.psiPrime(x);
        double phi2 = profile.phiSecond(x);
        double c2 = s * s + 3.0 * t * s + 3.0 * t * t;
        double c11 = 3.0 * s * s + 5.0 * t * s - 5.0 * t * t;
        double c3 = s * s - 4.0 * t * s + t * t;
        double c1 = s * s + t * s - t * t;
        return t * s / (sum * sum * sum * sum) *
               (c2 * phi2 + c11 * phi1 * phi + c3 * (phi * phi * phi + 2.0 * phi * psi) +
                2.0 * c1 * psi1);
    }
    }
    return 0.0;
}

double diagonalPartial(const FunctionPair& pair, const WeightPair& w, double x,
                       int order) {
    checkOrder(order);
    if (order == 1) {
        if (!pair.domain().contains(x))
            throw DomainError("x lies outside the pair's interval");
        return w.t / (w.t + w.s);
    }
    WronskianProfile profile(pair);
    return diagonalPartial(profile, w, x, order);
}

double fdOracle(const FunctionPair& pair, const WeightPair& w, double x,
                int order) {
    checkOrder(order);
    const Interval& dom = pair.domain();
    if (!dom.contains(x))
        throw DomainError("x lies outside the pair's interval");

    double h = std::pow(std::numeric_limits<double>::epsilon(),
                        1.0 / (order + 2)) *
               std::max(1.0, std::fabs(x));
    if (x - 8.0 * h <= dom.lo || x + 8.0 * h >= dom.hi)
        throw DomainError("stencil would leave the interval; move x at least 8h inside");

    auto mean = [&](double u) {
        return bajraktarevicEval(pair, u, x, w, 1e-14);
    };

    switch (order) {
    case 1:
        return (mean(x + h) - mean(x - h)) / (2.0 * h);
    case 2:
        return (mean(x + h) - 2.0 * mean(x) + mean(x - h)) / (h * h);
    case 3:
        return (mean(x + 2.0 * h) - 2.0 * mean(x + h) + 2.0 * mean(x - h) -
                mean(x - 2.0 * h)) /
               (2.0 * h * h * h);
    case 4:
        return (mean(x + 2.0 * h) - 4.0 * mean(x + h) + 6.0 * mean(x) -
                4.0 * mean(x - h) + mean(x - 2.0 * h)) /
               (h * h * h * h);
    }
    return 0.0;
}

} // namespace meanlab
