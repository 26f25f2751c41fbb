#pragma once

#include "ulab/function_spec.hpp"
#include "ulab/jacobi.hpp"
#include "ulab/spectral.hpp"
#include "ulab/types.hpp"

namespace ulab {

struct ApproxResult {
    BasisPolynomial approximant;  // in the basis matching the weight ((-1/2,-1/2) for sup)
    double error = 0.0;           // achieved ||(f - P) w^{1/p}|| on the interval
    int iterations = 0;
    bool converged = false;
    bool surrogate = false;  // p = 1 served by p = 1.01
};

inline constexpr double kIrlsClamp = 1e-12;
inline constexpr int kIrlsMaxIterations = 200;
inline constexpr int kGridPointsPerDof = 30;
inline constexpr double kP1Surrogate = 1.01;
inline constexpr double kNearBestConstant = 20.0;

/// Orthogonal projection onto Pi_n in L_2(w^{a,b}); error from the coefficient tail.
/// N is the analysis degree (0: max(4n, n + 64), capped by the degree limit).
ApproxResult best_approx_l2(const FunctionSpec& f, int n, const WeightExponents& weight, int N = 0);

/// Iteratively reweighted least squares for min ||(f - P)||_{L_p(w^{a,b}, I)} over Pi_n on a
/// fixed Gauss-Jacobi composite grid with at least 30 (n + 1) points. Weights |r|^{p-2},
/// clamped below at kIrlsClamp times the largest residual; damped steps with backtracking
/// keep the objective nonincreasing. The reported error is the adaptive norm of f - P.
ApproxResult best_approx_lp(const FunctionSpec& f, int n, double p, const WeightExponents& weight,
                            double tol = 1e-10, const Interval& interval = {});

/// Discrete minimax approximation on a Chebyshev-Lobatto grid (at least 30 (n + 1) points plus
/// kinks) by multi-point exchange. Error is the sampled sup norm of f - P on the interval.
ApproxResult best_approx_sup(const FunctionSpec& f, int n, const Interval& interval = {},
                             double tol = 1e-10);

/// E_n(f) in L_p(w^{a,b}) for p in [1, inf] via the matching solver.
ApproxResult best_approx(const FunctionSpec& f, int n, double p, const WeightExponents& weight,
                         const Interval& interval = {});

/// Near-best approximants of one f for many degrees, sharing one expansion.
///
/// p = 2 gives the orthogonal projection S_n in basis (a, b). Otherwise the better (in
/// L_p(w^{a,b})) of S_n and the delayed mean V_m, m = floor((n+1)/2), is returned; V_m has
/// degree <= n and reproduces Pi_m. For p = inf the expansion uses the Chebyshev basis.
class NearBest {
public:
    NearBest(FunctionSpec f, double p, const WeightExponents& weight, int max_degree, int ell = 0);

    struct Result {
        BasisPolynomial poly;
        double error = 0.0;
    };
    Result operator()(int n) const;

    const SpectralCoeffs& coeffs() const { return coeffs_; }
    int cesaro_order() const { return ell_; }
    double p() const { return p_; }
    const WeightExponents& weight() const { return weight_; }
    const FunctionSpec& function() const { return f_; }

private:
    double error_of(const BasisPolynomial& poly) const;

    FunctionSpec f_;
    double p_;
    WeightExponents weight_;
    SpectralCoeffs coeffs_;
    int ell_;
    double f_norm_ = 0.0;  // sets the noise floor of residual norms
};

BasisPolynomial near_best(const FunctionSpec& f, int n, double p, const WeightExponents& weight);

/// inf over P in Pi_degree of ||(f - P) w||_{L_p(interval)}, w = (w^{a,b})^{1/p} (w = 1 for p = inf).
double local_best_error(const FunctionSpec& f, int degree, double p, const WeightExponents& weight,
                        const Interval& interval);

}  // namespace ulab
