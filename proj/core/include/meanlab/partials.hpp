#pragma once

#include "meanlab/wronskian.hpp"

namespace meanlab {

/// Closed form for the order-th partial derivative in the first argument of
/// the weighted mean, evaluated on the diagonal y = x:
///   order 1:  t/(t+s)
///   order 2:  ts/(t+s)^2 * Phi
///   order 3:  ts/(t+s)^3 * ((s-t)(Phi^2 + Psi) + (2t+s) Phi')
///   order 4:  ts/(t+s)^4 * ((s^2+3ts+3t^2) Phi''
///                           + (3s^2+5ts-5t^2) Phi' Phi
///                           + (s^2-4ts+t^2)(Phi^3 + 2 Phi Psi)
///                           + 2 (s^2+ts-t^2) Psi')
/// Orders 2..4 need certified class >= order.
double diagonalPartial(const FunctionPair& pair, const WeightPair& w, double x,
                       int order);
double diagonalPartial(const WronskianProfile& profile, const WeightPair& w,
                       double x, int order);

/// Independent check of diagonalPartial: central finite differences of
/// u -> mean(u, x) with step h = eps^(1/(order+2)) * max(1, |x|), driving the
/// underlying root solve at a tightened 1e-14 residual. The stencil must fit
/// inside the interval (x at least 8h from both ends).
double fdOracle(const FunctionPair& pair, const WeightPair& w, double x,
                int order);

} // namespace meanlab
