#pragma once

#include <vector>

#include "ulab/function_spec.hpp"
#include "ulab/types.hpp"

namespace ulab::detail {

/// Integration piece on which f is smooth. The flags mark an end at +-1 where f itself is
/// singular, so the quadrature must be graded there.
struct Piece {
    double lo;
    double hi;
    bool singular_lo;
    bool singular_hi;
};

/// Cuts the interval at the declared kinks of f (and at 0 when f is singular at both ends).
std::vector<Piece> split_at_kinks(const FunctionSpec& f, const Interval& interval);

/// Further cuts every piece at the sign changes of f found on a Chebyshev sample.
std::vector<Piece> split_at_sign_changes(const FunctionSpec& f, const std::vector<Piece>& pieces);

}  // namespace ulab::detail
