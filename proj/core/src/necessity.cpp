#include "meanlab/necessity.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace meanlab {

namespace {

constexpr int kGridSize = 256;
constexpr double kConditionTol = 1e-8; // for C1/C2, scaled by 1 + magnitude
constexpr double kSpreadTol = 1e-7;    // for the C3 constancy spread

void requireSharedDomain(const FunctionPair& a, const FunctionPair& b) {
    if (a.domain().lo != b.domain().lo || a.domain().hi != b.domain().hi)
        throw DomainError("necessity checks need a shared interval");
}

struct GridResidual {
    double maxResidual = 0.0;
    bool withinTol = true; // every |r| <= kConditionTol * (1 + local magnitude)
};

template <class ResidualFn, class MagnitudeFn>
GridResidual sweep(const Interval& domain, ResidualFn&& residual,
                   MagnitudeFn&& magnitude) {
    GridResidual out;
    for (double x : sampleGrid(domain, kGridSize)) {
        double r = std::fabs(residual(x));
        out.maxResidual = std::max(out.maxResidual, r);
        if (r > kConditionTol * (1.0 + magnitude(x)))
            out.withinTol = false;
    }
    return out;
}

GridResidual c1Sweep(const WronskianProfile& pa, const WronskianProfile& pb) {
    return sweep(
        pa.pair().domain(),
        [&](double x) { return pa.phi(x) + pb.phi(x); },
        [&](double x) { return std::max(std::fabs(pa.phi(x)), std::fabs(pb.phi(x))); });
}

GridResidual c2Sweep(const WronskianProfile& pa, const WronskianProfile& pb) {
    return sweep(
        pa.pair().domain(),
        [&](double x) { return pa.phiPrime(x) + pb.psi(x) - pa.psi(x); },
        [&](double x) {
            return std::max({std::fabs(pa.phiPrime(x)), std::fabs(pa.psi(x)),
                             std::fabs(pb.psi(x))});
        });
}

double median(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    std::size_t n = v.size();
    return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

// (p estimate, spread) across both constant-offset formulas.
std::pair<double, double> pSweep(const WronskianProfile& pa,
                                 const WronskianProfile& pb) {
    const std::vector<double> xs = sampleGrid(pa.pair().domain(), kGridSize);
    std::vector<double> values;
    values.reserve(xs.size());
    for (double x : xs) {
        double phi = pa.phi(x);
        values.push_back(pa.psi(x) - 0.5 * pa.phiPrime(x) + 0.25 * phi * phi);
    }
    double p = median(values);
    double spread = 0.0;
    for (double v : values) spread = std::max(spread, std::fabs(v - p));
    for (double x : xs) {
        double phi = pa.phi(x);
        double companion = pb.psi(x) + 0.5 * pa.phiPrime(x) + 0.25 * phi * phi;
        spread = std::max(spread, std::fabs(companion - p));
    }
    return {p, spread};
}

} // namespace

const char* necessityClassName(NecessityClass c) {
    switch (c) {
    case NecessityClass::Pass: return "PASS";
    case NecessityClass::FailC1: return "FAIL_C1";
    case NecessityClass::FailC2: return "FAIL_C2";
    case NecessityClass::FailC3: return "FAIL_C3";
    }
    return "?";
}

double checkC1(const FunctionPair& a, const FunctionPair& b) {
    requireSharedDomain(a, b);
    WronskianProfile pa(a), pb(b);
    return c1Sweep(pa, pb).maxResidual;
}

double checkC2(const FunctionPair& a, const FunctionPair& b) {
    requireSharedDomain(a, b);
    if (a.certifiedClass() < 3)
        throw DomainError("second condition needs certified class >= 3");
    WronskianProfile pa(a), pb(b);
    if (!c1Sweep(pa, pb).withinTol)
        throw DomainError("first condition does not hold; Phi is not defined consistently");
    return c2Sweep(pa, pb).maxResidual;
}

std::pair<double, double> recoverP(const FunctionPair& a, const FunctionPair& b) {
    requireSharedDomain(a, b);
    if (a.certifiedClass() < 3)
        throw DomainError("offset recovery needs certified class >= 3");
    WronskianProfile pa(a), pb(b);
    if (!c1Sweep(pa, pb).withinTol || !c2Sweep(pa, pb).withinTol)
        throw DomainError("offset recovery needs the first two conditions to hold");
    return pSweep(pa, pb);
}

SampledFunction recoverPhi(const FunctionPair& a) {
    WronskianProfile pa(a);
    const Interval& dom = a.domain();
    SampledFunction out;
    out.x = sampleGrid(dom, kGridSize);
    out.value.reserve(out.x.size());
    for (double x : out.x) {
        double w10 = wij(a, 1, 0, x);
        if (std::fabs(w10) < 1e-300)
            throw SolveError("W[1,0] degenerates at x = " + std::to_string(x));
        out.value.push_back(1.0 / std::sqrt(std::fabs(w10)));
    }

    // The sampled weight must satisfy (log w)' = -Phi/2. Five-point central
    // differences keep the stencil error far below the 1e-6 gate.
    double step = dom.width() / kGridSize;
    for (std::size_t i = 2; i + 2 < out.x.size(); ++i) {
        double d = (-std::log(out.value[i + 2]) + 8.0 * std::log(out.value[i + 1]) -
                    8.0 * std::log(out.value[i - 1]) + std::log(out.value[i - 2])) /
                   (12.0 * step);
        double want = -0.5 * pa.phi(out.x[i]);
        if (std::fabs(d - want) > 1e-6 * (1.0 + std::fabs(want)))
            throw SolveError("recovered weight fails its log-derivative check at x = " +
                             std::to_string(out.x[i]));
    }
    return out;
}

NecessityVerdict classify(const FunctionPair& a, const FunctionPair& b,
                          const WeightPair& w) {
    requireSharedDomain(a, b);
    if (w.t == w.s)
        throw DomainError("equal weights carry no information here; use t != s");
    if (a.certifiedClass() < 3 || b.certifiedClass() < 3)
        throw DomainError("classification needs certified class >= 3");

    WronskianProfile pa(a), pb(b);
    NecessityVerdict verdict;

    GridResidual c1 = c1Sweep(pa, pb);
    verdict.c1Residual = c1.maxResidual;
    if (!c1.withinTol) {
        verdict.classification = NecessityClass::FailC1;
        return verdict;
    }

    GridResidual c2 = c2Sweep(pa, pb);
    verdict.c2Residual = c2.maxResidual;
    if (!c2.withinTol) {
        verdict.classification = NecessityClass::FailC2;
        return verdict;
    }

    auto [p, spread] = pSweep(pa, pb);
    verdict.c3Spread = spread;
    if (spread > kSpreadTol) {
        verdict.classification = NecessityClass::FailC3;
        return verdict;
    }

    verdict.classification = NecessityClass::Pass;
    verdict.pEstimate = p;
    verdict.phiSamples = recoverPhi(a);
    return verdict;
}

} // namespace meanlab
