#pragma once

#include <memory>
#include <vector>

#include "ulab/types.hpp"

namespace ulab {

/// n-point Gauss rule for the weight (1-x)^a (1+x)^b on [-1, 1].
/// Exact for polynomials of degree <= 2n - 1. Immutable once built.
struct QuadratureRule {
    WeightExponents weight;
    int order = 0;
    std::vector<double> nodes;    // strictly increasing, inside (-1, 1)
    std::vector<double> weights;  // strictly positive
};

/// Entry m is the exact moment of x^m against w^{(a,b)} (Beta-function start plus the
/// moment recurrence (a+b+m+2) I_{m+1} = (b-a) I_m + m I_{m-1}).
std::vector<double> jacobi_moments(const WeightExponents& weight, int max_degree);

/// Golub-Welsch construction: nodes are eigenvalues of the symmetric Jacobi matrix,
/// weights follow from the Christoffel function of the orthonormal recurrence.
QuadratureRule gauss_jacobi_rule(const WeightExponents& weight, int n);

/// Same as gauss_jacobi_rule but shared from a process-wide, lock-protected cache.
std::shared_ptr<const QuadratureRule> cached_gauss_jacobi_rule(const WeightExponents& weight, int n);

inline constexpr int kMaxQuadratureOrder = 1 << 14;

/// Rule on [lo, hi] for the weight (hi - x)^e_hi (x - lo)^e_lo: nodes mapped affinely,
/// weights scaled by ((hi - lo)/2)^{1 + e_hi + e_lo}.
struct MappedRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};
MappedRule mapped_rule(double lo, double hi, double e_hi, double e_lo, int n);

/// Rule for int_lo^hi g(x) (1-x)^a (1+x)^b dx with the weight absorbed into the weights.
/// Endpoints shared with [-1, 1] carry their exponent in a Gauss-Jacobi rule; the other
/// weight factor is smooth on the piece and is multiplied in. With `graded_lo`/`graded_hi`
/// the piece is cut into geometrically shrinking panels toward that end (for g singular
/// there), each panel getting `order` points.
MappedRule weighted_piece_rule(double lo, double hi, const WeightExponents& weight, int order,
                               bool graded_lo = false, bool graded_hi = false);

/// Number of panels used by weighted_piece_rule on a graded piece.
inline constexpr int kGradedLevels = 40;

}  // namespace ulab
