#pragma once

#include <optional>

#include "ulab/approx.hpp"
#include "ulab/function_spec.hpp"
#include "ulab/jacobi.hpp"
#include "ulab/types.hpp"

namespace ulab {

/// Parameters of one smoothness evaluation: K^r(f, P_r^{(alpha,beta)}, t) in L_p(w^{a,b}),
/// the phi-K-functional and the weighted modulus.
struct SmoothnessQuery {
    FunctionSpec f;
    double r = 1.0;
    double t = 0.1;
    double p = 2.0;
    WeightExponents norm_weight;
    JacobiIndex operator_basis;

    void validate(bool integer_order) const;
};

/// phi(x) = sqrt(1 - x^2), the step weight of the modulus.
inline double phi(double x) { return std::sqrt(std::max(0.0, 1.0 - x * x)); }

/// The modulus' inner interval is [-1 + 4 kappa^2 t^2, 1 - 4 kappa^2 t^2] with kappa = r.
inline double inner_interval_kappa(int r) { return r; }

inline constexpr int kModulusHGrid = 32;

/// ||f - P_{n,f}|| + n^{-r} ||D_r P_{n,f}||, n = floor(1/t), P_{n,f} from near_best,
/// D_r the spectral derivative in the operator basis. Needs 1 < p < inf.
double k_spectral_realized(const SmoothnessQuery& q);
/// Same, reusing the expansion held by `engine` (which fixes f, p and the weight).
double k_spectral_realized(const NearBest& engine, double r, double t, const JacobiIndex& basis);

/// Upper bound for the K-functional infimum over the candidates g = c S_m f (m on a grid of
/// `budget` degrees, c by golden-section line search), g = 0, and g = P_{n,f}.
double k_spectral_direct(const SmoothnessQuery& q, int budget = 24);

struct ModulusParts {
    double main = 0.0;     // sup over h of the weighted r-th difference norm
    double edge_lo = 0.0;  // local best error on [-1, -1 + 4 kappa^2 t^2]
    double edge_hi = 0.0;  // local best error on [1 - 4 kappa^2 t^2, 1]
    double total() const { return main + edge_lo + edge_hi; }
};

/// r-th symmetric difference with step h phi(x); zero where an argument leaves [-1, 1].
FunctionSpec phi_difference(const FunctionSpec& f, int r, double h, const Interval& domain);

/// Ditzian-Totik modulus omega^r_phi(f, t) in L_p(w^{a,b}) (integer r, p in [1, inf]).
/// The h-supremum runs over `h_grid` geometric points t 2^{-j/4}; `x_resolution` is the
/// starting quadrature order (or sample count for p = inf), 0 for automatic.
ModulusParts dt_modulus_parts(const SmoothnessQuery& q, int h_grid = kModulusHGrid, int x_resolution = 0);
double dt_modulus(const SmoothnessQuery& q, int h_grid = kModulusHGrid, int x_resolution = 0);

/// ||phi^r g||_{L_p(w^{a,b})}: for finite p the factor becomes the weight shift (a + pr/2, b + pr/2).
double phi_weighted_norm(const BasisPolynomial& g, int r, double p, const WeightExponents& weight);

/// ||f - P_{n,f}|| + t^r ||phi^r P_{n,f}^{(r)}||, n = floor(1/t).
double k_phi_realized(const SmoothnessQuery& q);
double k_phi_realized(const NearBest& engine, int r, double t);

struct OperatorRatios {
    double phi_derivative = 0.0;   // ||phi^r Q^{(r)}||
    double spectral = 0.0;         // ||P_r Q||
    double spectral_high = 0.0;    // ||P_r (Q - S_{r-1} Q)||
    std::optional<double> first;   // phi_derivative / spectral, empty when spectral = 0
    std::optional<double> second;  // spectral_high / phi_derivative
};

/// Both ratios of the derivative/operator equivalence for a polynomial Q in basis (alpha, beta).
/// Zero denominators leave the ratio empty (degenerate).
OperatorRatios operator_ratio_check(const BasisPolynomial& Q, int r, double p, const WeightExponents& weight);

/// Throws ConfigError unless (a+1)/p - alpha < 1 and (b+1)/p - beta < 1.
void check_expansion_condition(double p, const WeightExponents& weight, const JacobiIndex& basis);

}  // namespace ulab
