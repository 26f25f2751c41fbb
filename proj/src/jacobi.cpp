#include "ulab/jacobi.hpp"

#include <map>
#include <mutex>
#include <utility>

#include "ulab/quadrature.hpp"

namespace ulab {

double jacobi_mass(double a, double b) {
    return std::exp((a + b + 1.0) * std::log(2.0) + std::lgamma(a + 1.0) + std::lgamma(b + 1.0) -
                    std::lgamma(a + b + 2.0));
}

double monic_recurrence_alpha(int k, double a, double b) {
    if (k == 0) return (b - a) / (a + b + 2.0);
    const double s = 2.0 * k + a + b;
    return (b * b - a * a) / (s * (s + 2.0));
}

double monic_recurrence_beta(int k, double a, double b) {
    if (k == 1) {
        const double s = 2.0 + a + b;
        return 4.0 * (1.0 + a) * (1.0 + b) / (s * s * (s + 1.0));
    }
    const double s = 2.0 * k + a + b;
    return 4.0 * k * (k + a) * (k + b) * (k + a + b) / (s * s * (s + 1.0) * (s - 1.0));
}

namespace {

std::shared_ptr<const RecurrenceTable> build_table(const JacobiIndex& basis, int max_degree) {
    auto table = std::make_shared<RecurrenceTable>();
    const double a = basis.alpha();
    const double b = basis.beta();
    table->basis = basis;
    table->psi0 = 1.0 / std::sqrt(jacobi_mass(a, b));
    table->alpha.resize(max_degree + 1);
    table->sqrt_beta.resize(max_degree + 2);
    table->sqrt_beta[0] = std::sqrt(jacobi_mass(a, b));
    for (int k = 0; k <= max_degree; ++k) table->alpha[k] = monic_recurrence_alpha(k, a, b);
    for (int k = 1; k <= max_degree + 1; ++k) {
        table->sqrt_beta[k] = std::sqrt(monic_recurrence_beta(k, a, b));
    }
    return table;
}

}  // namespace

std::shared_ptr<const RecurrenceTable> recurrence_table(const JacobiIndex& basis, int max_degree) {
    static std::mutex mutex;
    static std::map<std::pair<double, double>, std::shared_ptr<const RecurrenceTable>> cache;

    const auto key = std::make_pair(basis.alpha(), basis.beta());
    std::lock_guard lock(mutex);
    auto it = cache.find(key);
    if (it != cache.end() && it->second->max_degree() >= max_degree) return it->second;
    int size = std::max(max_degree, 64);
    if (it != cache.end()) size = std::max(size, 2 * it->second->max_degree());
    auto table = build_table(basis, size);
    cache[key] = table;
    return table;
}

double eigenvalue(int k, const JacobiIndex& basis) {
    if (k < 0) throw ConfigError("eigenvalue index must be >= 0");
    if (k == 0) return 0.0;
    return std::sqrt(k * (k + basis.alpha() + basis.beta() + 1.0));
}

void eval_orthonormal_all(const RecurrenceTable& table, double x, std::span<double> out) {
    const auto n = out.size();
    if (n == 0) return;
    out[0] = table.psi0;
    if (n == 1) return;
    out[1] = (x - table.alpha[0]) * out[0] / table.sqrt_beta[1];
    for (std::size_t k = 1; k + 1 < n; ++k) {
        out[k + 1] = ((x - table.alpha[k]) * out[k] - table.sqrt_beta[k] * out[k - 1]) /
                     table.sqrt_beta[k + 1];
    }
}

double eval_orthonormal(int k, const JacobiIndex& basis, double x) {
    if (k < 0) throw ConfigError("polynomial index must be >= 0");
    const auto table = recurrence_table(basis, k + 1);
    double prev = 0.0;
    double cur = table->psi0;
    for (int j = 0; j < k; ++j) {
        const double next =
            ((x - table->alpha[j]) * cur - table->sqrt_beta[j] * prev) / table->sqrt_beta[j + 1];
        prev = cur;
        cur = next;
    }
    return cur;
}

double eval_series(const RecurrenceTable& table, std::span<const double> coeffs, double x) {
    const int n = static_cast<int>(coeffs.size()) - 1;
    if (n < 0) return 0.0;
    if (table.max_degree() < n + 1) throw ConfigError("recurrence table too short for series");
    // Clenshaw: y_k = c_k + A_k y_{k+1} + B_{k+1} y_{k+2}
    //   A_k = (x - alpha_k)/s_{k+1},  B_k = -s_k/s_{k+1}
    double y1 = 0.0;  // y_{k+1}
    double y2 = 0.0;  // y_{k+2}
    for (int k = n; k >= 0; --k) {
        double y = coeffs[k] + (x - table.alpha[k]) / table.sqrt_beta[k + 1] * y1;
        y -= table.sqrt_beta[k + 1] / table.sqrt_beta[k + 2] * y2;
        y2 = y1;
        y1 = y;
    }
    return table.psi0 * y1;
}

BasisPolynomial::BasisPolynomial(JacobiIndex basis, std::vector<double> coeffs)
    : basis_(basis), coeffs_(std::move(coeffs)) {
    while (!coeffs_.empty() && coeffs_.back() == 0.0) coeffs_.pop_back();
    for (double c : coeffs_) {
        if (!std::isfinite(c)) throw NumericalError("non-finite polynomial coefficient");
    }
    if (degree() > kMaxPolynomialDegree) {
        throw ConfigError("polynomial degree " + std::to_string(degree()) + " exceeds cap " +
                          std::to_string(kMaxPolynomialDegree));
    }
}

BasisPolynomial BasisPolynomial::unit(const JacobiIndex& basis, int k) {
    std::vector<double> c(static_cast<std::size_t>(k) + 1, 0.0);
    c[k] = 1.0;
    return {basis, std::move(c)};
}

double BasisPolynomial::operator()(double x) const { return eval_poly(*this, x); }

BasisPolynomial BasisPolynomial::scaled(double c) const {
    std::vector<double> out(coeffs_.begin(), coeffs_.end());
    for (double& v : out) v *= c;
    return {basis_, std::move(out)};
}

BasisPolynomial BasisPolynomial::operator+(const BasisPolynomial& other) const {
    if (!(basis_ == other.basis_)) throw ConfigError("cannot add polynomials in different bases");
    std::vector<double> out(std::max(coeffs_.size(), other.coeffs_.size()), 0.0);
    for (std::size_t k = 0; k < coeffs_.size(); ++k) out[k] += coeffs_[k];
    for (std::size_t k = 0; k < other.coeffs_.size(); ++k) out[k] += other.coeffs_[k];
    return {basis_, std::move(out)};
}

BasisPolynomial BasisPolynomial::operator-(const BasisPolynomial& other) const {
    return *this + other.scaled(-1.0);
}

double eval_poly(const BasisPolynomial& p, double x) {
    if (p.is_zero()) return 0.0;
    const auto table = recurrence_table(p.basis(), p.degree() + 1);
    return eval_series(*table, p.coeffs(), x);
}

BasisPolynomial derivative_shift(const BasisPolynomial& p, int r) {
    if (r < 1) throw ConfigError("derivative order must be >= 1");
    const JacobiIndex shifted(p.basis().alpha() + r, p.basis().beta() + r);
    if (p.degree() < r) return {shifted, {}};
    std::vector<double> out(static_cast<std::size_t>(p.degree() - r) + 1, 0.0);
    for (int k = r; k <= p.degree(); ++k) {
        double factor = 1.0;
        for (int j = 0; j < r; ++j) {
            factor *= eigenvalue(k - j, JacobiIndex(p.basis().alpha() + j, p.basis().beta() + j));
        }
        out[k - r] = factor * p.coeff(k);
    }
    return {shifted, std::move(out)};
}

BasisPolynomial to_basis(const BasisPolynomial& p, const JacobiIndex& target) {
    if (p.basis() == target || p.is_zero()) return {target, {p.coeffs().begin(), p.coeffs().end()}};
    const int d = p.degree();
    const auto rule = cached_gauss_jacobi_rule(target.weight(), d + 1);
    const auto table = recurrence_table(target, d + 1);
    const auto source = recurrence_table(p.basis(), d + 1);
    std::vector<double> out(static_cast<std::size_t>(d) + 1, 0.0);
    std::vector<double> psi(static_cast<std::size_t>(d) + 1);
    for (std::size_t i = 0; i < rule->nodes.size(); ++i) {
        const double x = rule->nodes[i];
        const double v = rule->weights[i] * eval_series(*source, p.coeffs(), x);
        eval_orthonormal_all(*table, x, psi);
        for (int k = 0; k <= d; ++k) out[k] += v * psi[k];
    }
    return {target, std::move(out)};
}

}  // namespace ulab
