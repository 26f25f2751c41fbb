#pragma once

#include <memory>
#include <span>
#include <vector>

#include "ulab/types.hpp"

namespace ulab {

/// Largest polynomial degree accepted by BasisPolynomial and the spectral transforms.
inline constexpr int kMaxPolynomialDegree = 4096;

/// Total mass of the Jacobi weight: 2^{a+b+1} B(a+1, b+1).
double jacobi_mass(double a, double b);

/// Diagonal coefficient alpha_k of the monic three-term recurrence for weight (1-x)^a (1+x)^b.
double monic_recurrence_alpha(int k, double a, double b);

/// Off-diagonal coefficient beta_k (k >= 1) of the monic recurrence.
/// The alpha+beta -> -1 singularity at k = 1 is removed analytically.
double monic_recurrence_beta(int k, double a, double b);

/// Precomputed recurrence data for the orthonormal system psi_k^{(alpha,beta)}.
///   sqrt(beta_{k+1}) psi_{k+1} = (x - alpha_k) psi_k - sqrt(beta_k) psi_{k-1}
struct RecurrenceTable {
    JacobiIndex basis;
    double psi0 = 0.0;               // 1 / sqrt(mass)
    std::vector<double> alpha;       // alpha_k, k = 0..size-1
    std::vector<double> sqrt_beta;   // sqrt(beta_k), k = 0..size (entry 0 unused)

    int max_degree() const { return static_cast<int>(alpha.size()) - 1; }
};

/// Shared, immutable table covering at least degrees 0..max_degree. Thread-safe.
std::shared_ptr<const RecurrenceTable> recurrence_table(const JacobiIndex& basis, int max_degree);

/// lambda_k = sqrt(k (k + alpha + beta + 1)); exactly 0 at k = 0.
double eigenvalue(int k, const JacobiIndex& basis);

/// psi_k^{(alpha,beta)}(x), orthonormal against w^{(alpha,beta)} with positive leading coefficient.
double eval_orthonormal(int k, const JacobiIndex& basis, double x);

/// Fills out[0..N] with psi_0(x) .. psi_N(x), N = out.size() - 1.
void eval_orthonormal_all(const RecurrenceTable& table, double x, std::span<double> out);

/// Finite expansion sum_k coeffs[k] psi_k^{(alpha,beta)}.
class BasisPolynomial {
public:
    BasisPolynomial() = default;
    BasisPolynomial(JacobiIndex basis, std::vector<double> coeffs);

    /// Unit vector e_k in the given basis.
    static BasisPolynomial unit(const JacobiIndex& basis, int k);

    const JacobiIndex& basis() const { return basis_; }
    std::span<const double> coeffs() const { return coeffs_; }
    /// Index of the last nonzero coefficient; -1 for the zero polynomial.
    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    bool is_zero() const { return coeffs_.empty(); }
    double coeff(int k) const {
        return k >= 0 && k < static_cast<int>(coeffs_.size()) ? coeffs_[k] : 0.0;
    }

    double operator()(double x) const;

    BasisPolynomial scaled(double c) const;
    /// Both operands must share a basis.
    BasisPolynomial operator+(const BasisPolynomial& other) const;
    BasisPolynomial operator-(const BasisPolynomial& other) const;

private:
    JacobiIndex basis_;
    std::vector<double> coeffs_;
};

/// Clenshaw evaluation of sum_k coeffs[k] psi_k^{(alpha,beta)}(x).
double eval_poly(const BasisPolynomial& p, double x);
double eval_series(const RecurrenceTable& table, std::span<const double> coeffs, double x);

/// r-th derivative expressed in basis (alpha + r, beta + r):
///   output[k - r] = prod_{j=0}^{r-1} lambda_{k-j}^{(alpha+j, beta+j)} * coeffs[k].
BasisPolynomial derivative_shift(const BasisPolynomial& p, int r);

/// Exact re-expansion of p in another Jacobi basis (Gauss-Jacobi projection).
BasisPolynomial to_basis(const BasisPolynomial& p, const JacobiIndex& target);

}  // namespace ulab
