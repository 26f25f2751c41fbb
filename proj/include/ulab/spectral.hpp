#pragma once

#include <vector>

#include "ulab/function_spec.hpp"
#include "ulab/jacobi.hpp"

namespace ulab {

/// Fourier-Jacobi coefficients 0..N of a (possibly non-polynomial) f in a fixed basis.
struct SpectralCoeffs {
    JacobiIndex basis;
    std::vector<double> coeffs;
    double truncation_tol = 0.0;

    int size() const { return static_cast<int>(coeffs.size()); }
    BasisPolynomial to_polynomial() const { return {basis, coeffs}; }
    static SpectralCoeffs from_polynomial(const BasisPolynomial& p);
};

/// Relative coefficient stability at which analyze stops doubling the rule order.
inline constexpr double kAnalyzeTol = 1e-10;

/// f_hat_k = int f psi_k w^{(alpha,beta)} for k = 0..N. Kink-aware pieces, each with its own
/// Gauss-Jacobi rule; the order starts at N + 33 and doubles until the coefficients agree to
/// kAnalyzeTol (relative to their 2-norm). Polynomials of known degree get one exact rule.
SpectralCoeffs analyze(const FunctionSpec& f, const JacobiIndex& basis, int N);

double synthesize(const SpectralCoeffs& c, double x);

/// Coefficient 0 kept, coefficient k >= 1 scaled by lambda_k^{-sigma}.
SpectralCoeffs fractional_integral(const SpectralCoeffs& c, double sigma);
/// Coefficient 0 zeroed, coefficient k >= 1 scaled by lambda_k^{sigma}.
SpectralCoeffs fractional_derivative(const SpectralCoeffs& c, double sigma);
BasisPolynomial fractional_derivative(const BasisPolynomial& p, double sigma);

SpectralCoeffs partial_sum(const SpectralCoeffs& c, int n);

/// prod_{j=1}^{ell} (1 - k/(n+j)) for k <= n, zero above.
double cesaro_factor(int k, int n, int ell);
SpectralCoeffs cesaro_mean(const SpectralCoeffs& c, int n, int ell);

/// Delayed-mean factor: 1 for k <= n, 0 for k >= 2n, and 1 - I_y(ell, ell) with
/// y = (k - n)/n in between (I the regularised incomplete beta function). For ell = 1
/// this is 2 sigma_{2n-1} - sigma_{n-1} written with Fejer means sigma_m = C^1_m.
double vallee_poussin_factor(int k, int n, int ell);
SpectralCoeffs vallee_poussin(const SpectralCoeffs& c, int n, int ell);

/// Smallest integer ell above the Cesaro boundedness threshold for C_n^ell on
/// L_p(w^{a,b}) with expansions in basis (alpha, beta). At least 1.
int default_cesaro_order(double p, const WeightExponents& weight, const JacobiIndex& basis);

}  // namespace ulab
