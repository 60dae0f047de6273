#pragma once

#include <array>
#include <functional>
#include <string>
#include <vector>

#include "meanlab/means.hpp"

namespace meanlab {

enum class ReportKind { ArithmeticSum, Triple };

const char* reportKindName(ReportKind kind);

/// Outcome of sweeping one candidate identity over an evaluation lattice.
/// `label` is a human-facing tag for suite output and is not serialized;
/// everything else round-trips through toJson in a fixed field order.
struct InvarianceReport {
    ReportKind kind = ReportKind::ArithmeticSum;
    int gridSize = 0;
    double maxResidual = 0.0;
    double meanResidual = 0.0;
    std::array<double, 2> worstPoint{0.0, 0.0};
    bool pass = false;
    double tolerance = 0.0;
    std::string inputDigest;
    std::string label;
};

std::string toJson(const InvarianceReport& report);
std::string toJson(const std::vector<InvarianceReport>& reports);

/// FNV-1a 64-bit digest of a string, rendered as 16 lowercase hex digits.
/// Used to fingerprint the inputs a report was produced from.
std::string fnv1aHex(const std::string& text);

/// Sweeps B_a(x, y; t, s) + B_b(x, y; s, t) - (x + y) over a grid x grid
/// lattice covering the shared domain with a 5% margin on each side.
InvarianceReport checkArithmeticInvariance(const FunctionPair& a,
                                           const FunctionPair& b,
                                           const WeightPair& w,
                                           int gridSize = 20,
                                           double tolerance = 1e-9);

using MeanFn = std::function<double(double, double)>;

/// Sweeps K(M(x, y), N(x, y)) - K(x, y) over the lattice. M and N must map
/// lattice points back into `domain`; a value escaping it is a hard error,
/// not a residual.
InvarianceReport checkTripleInvariance(const MeanFn& K,
                                       const MeanFn& M,
                                       const MeanFn& N,
                                       const Interval& domain,
                                       int gridSize = 20,
                                       double tolerance = 1e-9,
                                       const std::string& description = "");

/// Fixed catalog of triple-invariance cases: six identities that hold and
/// three perturbed variants that must visibly fail. Failures are recorded
/// in the reports, never thrown.
std::vector<InvarianceReport> regressionSuite(int gridSize = 20,
                                              double tolerance = 1e-9);

} // namespace meanlab
