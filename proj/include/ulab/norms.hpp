#pragma once

#include "ulab/function_spec.hpp"
#include "ulab/jacobi.hpp"
#include "ulab/types.hpp"

namespace ulab {

/// Relative agreement between successive order doublings at which the adaptive
/// integrator stops.
inline constexpr double kNormRelTol = 1e-9;

/// (int_I |f|^p (1-x)^a (1+x)^b dx)^{1/p} for 1 <= p < inf.
///
/// The interval is split at declared kinks and, unless p is an even integer, at sign
/// changes of f. Each piece gets one Gauss-Jacobi rule carrying the weight exponent of
/// any endpoint it shares with [-1, 1]; the remaining weight factor is folded into the
/// integrand. Orders double until the integral stabilises. Pieces next to a declared
/// endpoint singularity of f are covered by geometrically graded panels instead.
/// `resolution` is the starting order per piece (0 picks one from the degree hint).
/// `abs_floor` is a norm level below which changes count as converged (rounding noise of
/// a residual, say).
double weighted_lp_norm(const FunctionSpec& f, double p, const WeightExponents& weight,
                        const Interval& interval = {}, int resolution = 0, double abs_floor = 0.0);
double weighted_lp_norm(const BasisPolynomial& f, double p, const WeightExponents& weight,
                        const Interval& interval = {}, int resolution = 0);

/// max |f| over nested Chebyshev-Lobatto samples of the interval plus kinks and endpoints,
/// with a golden-section polish around the best sample of every level. Nondecreasing in
/// `resolution` (the sample count, rounded up to 2^J + 1; 0 picks one from the degree hint).
double sup_norm(const FunctionSpec& f, const Interval& interval = {}, int resolution = 0);
double sup_norm(const BasisPolynomial& f, const Interval& interval = {}, int resolution = 0);

/// ||f||_{L_p(w^{a,b})} with p = inf meaning the plain uniform norm.
double lp_norm(const FunctionSpec& f, double p, const WeightExponents& weight,
               const Interval& interval = {}, double abs_floor = 0.0);
/// Same for a polynomial; uses Parseval when p = 2 on the full interval and the basis
/// matches the weight.
double lp_norm(const BasisPolynomial& f, double p, const WeightExponents& weight,
               const Interval& interval = {});

/// ||f w^{c,d}||_p, the weight multiplying f before the norm is taken:
/// equals weighted_lp_norm(f, p, (cp, dp)) for finite p and sup |f| w^{c,d} for p = inf.
double product_norm(const FunctionSpec& f, double p, double c, double d);

}  // namespace ulab
