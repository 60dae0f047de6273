#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "meanlab/wronskian.hpp"

namespace meanlab {

/// Function given by samples on a grid.
struct SampledFunction {
    std::vector<double> x;
    std::vector<double> value;
};

enum class NecessityClass { Pass, FailC1, FailC2, FailC3 };

const char* necessityClassName(NecessityClass c);

/// Outcome of classify(). Residuals are raw grid maxima; classification
/// Pass means every local residual stayed within its tolerance, and then
/// pEstimate and phiSamples are filled.
struct NecessityVerdict {
    double c1Residual = 0.0;
    double c2Residual = 0.0;
    double c3Spread = 0.0;
    std::optional<double> pEstimate;
    std::optional<SampledFunction> phiSamples;
    NecessityClass classification = NecessityClass::FailC1;
};

/// Max over a 256-point grid of |Phi_a + Phi_b|. For a pair of means that
/// sum to x + y this must vanish.
double checkC1(const FunctionPair& a, const FunctionPair& b);

/// Max over the grid of |Phi_a' + Psi_b - Psi_a|. Meaningful only once C1
/// holds (Phi := Phi_a = -Phi_b); a violated C1 throws rather than being
/// silently ignored.
double checkC2(const FunctionPair& a, const FunctionPair& b);

/// Recovers the constant p with Psi_a = Phi'/2 - Phi^2/4 + p as the grid
/// median, returning (p, spread) where spread is the largest deviation from
/// the median across the grid, for the companion formula
/// Psi_b = -Phi'/2 - Phi^2/4 + p as well. Requires C1 and C2 to hold.
std::pair<double, double> recoverP(const FunctionPair& a, const FunctionPair& b);

/// Samples |W[1,0]|^(-1/2) on a 256-point grid. Up to one scalar this is
/// the weight function that carries the pair back to the trigonometric /
/// hyperbolic normal form; its log-derivative must match -Phi/2 to 1e-6 at
/// interior nodes, which is verified before returning.
SampledFunction recoverPhi(const FunctionPair& a);

/// Full necessity decision for the pair of pairs (a, b) under weights
/// (t, s), t != s (equal weights are rejected: the second condition carries
/// no information there). Runs C1, C2, C3 in order with early exit; on Pass
/// fills pEstimate and phiSamples.
NecessityVerdict classify(const FunctionPair& a, const FunctionPair& b,
                          const WeightPair& w);

} // namespace meanlab
