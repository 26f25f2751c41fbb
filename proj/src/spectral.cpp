#include "ulab/spectral.hpp"

#include <algorithm>
#include <cmath>

#include "pieces.hpp"
#include "ulab/quadrature.hpp"

namespace ulab {

SpectralCoeffs SpectralCoeffs::from_polynomial(const BasisPolynomial& p) {
    return {p.basis(), {p.coeffs().begin(), p.coeffs().end()}, 0.0};
}

namespace {

void accumulate(const FunctionSpec& f, const RecurrenceTable& table, const MappedRule& rule,
                std::vector<double>& out, std::vector<double>& psi) {
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        const double x = rule.nodes[i];
        const double v = rule.weights[i] * f(x);
        if (v == 0.0) continue;
        eval_orthonormal_all(table, x, psi);
        for (std::size_t k = 0; k < out.size(); ++k) out[k] += v * psi[k];
    }
}

std::vector<double> project(const FunctionSpec& f, const JacobiIndex& basis, int N,
                            const std::vector<detail::Piece>& pieces, int order) {
    const auto table = recurrence_table(basis, N + 1);
    std::vector<double> out(static_cast<std::size_t>(N) + 1, 0.0);
    std::vector<double> psi(out.size());
    for (const auto& piece : pieces) {
        const MappedRule rule = weighted_piece_rule(piece.lo, piece.hi, basis.weight(), order,
                                                    piece.singular_lo, piece.singular_hi);
        accumulate(f, *table, rule, out, psi);
    }
    return out;
}

double norm2(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
}

void check_sigma(double sigma) {
    if (!(sigma > 0.0) || !std::isfinite(sigma)) {
        throw ConfigError("order sigma must be a finite positive number");
    }
}

}  // namespace

SpectralCoeffs analyze(const FunctionSpec& f, const JacobiIndex& basis, int N) {
    if (N < 0) throw ConfigError("truncation degree N must be >= 0");
    if (N > kMaxPolynomialDegree) {
        throw ConfigError("truncation degree " + std::to_string(N) + " exceeds cap " +
                          std::to_string(kMaxPolynomialDegree));
    }
    const auto pieces = detail::split_at_kinks(f, Interval());
    const bool graded = std::any_of(pieces.begin(), pieces.end(),
                                    [](const auto& pc) { return pc.singular_lo || pc.singular_hi; });

    if (const auto d = f.polynomial_degree(); d && pieces.size() == 1 && !graded) {
        // one Gauss-Jacobi rule in the expansion weight integrates psi_k * f exactly
        const int order = std::max((*d + N + 2) / 2, 1);
        return {basis, project(f, basis, N, pieces, order), 0.0};
    }

    const int cap = graded ? 512 : kMaxQuadratureOrder;
    int order = graded ? 32 : std::min(std::max(N, f.traits().degree_hint) + 33, cap);
    auto prev = project(f, basis, N, pieces, order);
    double change = 0.0;
    while (2 * order <= cap) {
        order *= 2;
        auto cur = project(f, basis, N, pieces, order);
        change = 0.0;
        for (std::size_t k = 0; k < cur.size(); ++k) change = std::max(change, std::abs(cur[k] - prev[k]));
        prev = std::move(cur);
        const double scale = norm2(prev);
        if (change <= kAnalyzeTol * scale || scale == 0.0) break;
    }
    return {basis, std::move(prev), change};
}

double synthesize(const SpectralCoeffs& c, double x) {
    if (c.coeffs.empty()) return 0.0;
    const auto table = recurrence_table(c.basis, c.size());
    return eval_series(*table, c.coeffs, x);
}

SpectralCoeffs fractional_integral(const SpectralCoeffs& c, double sigma) {
    check_sigma(sigma);
    SpectralCoeffs out = c;
    for (int k = 1; k < out.size(); ++k) out.coeffs[k] *= std::pow(eigenvalue(k, c.basis), -sigma);
    return out;
}

SpectralCoeffs fractional_derivative(const SpectralCoeffs& c, double sigma) {
    check_sigma(sigma);
    SpectralCoeffs out = c;
    if (!out.coeffs.empty()) out.coeffs[0] = 0.0;
    for (int k = 1; k < out.size(); ++k) out.coeffs[k] *= std::pow(eigenvalue(k, c.basis), sigma);
    return out;
}

BasisPolynomial fractional_derivative(const BasisPolynomial& p, double sigma) {
    return fractional_derivative(SpectralCoeffs::from_polynomial(p), sigma).to_polynomial();
}

SpectralCoeffs partial_sum(const SpectralCoeffs& c, int n) {
    if (n < 0) throw ConfigError("partial sum index must be >= 0");
    SpectralCoeffs out = c;
    if (out.size() > n + 1) out.coeffs.resize(static_cast<std::size_t>(n) + 1);
    return out;
}

double cesaro_factor(int k, int n, int ell) {
    if (k > n) return 0.0;
    double f = 1.0;
    for (int j = 1; j <= ell; ++j) f *= 1.0 - static_cast<double>(k) / (n + j);
    return f;
}

SpectralCoeffs cesaro_mean(const SpectralCoeffs& c, int n, int ell) {
    if (n < 0) throw ConfigError("Cesaro index n must be >= 0");
    if (ell < 1) throw ConfigError("Cesaro order ell must be >= 1");
    SpectralCoeffs out = partial_sum(c, n);
    for (int k = 0; k < out.size(); ++k) out.coeffs[k] *= cesaro_factor(k, n, ell);
    return out;
}

double vallee_poussin_factor(int k, int n, int ell) {
    if (k <= n) return 1.0;
    if (k >= 2 * n) return 0.0;
    const double y = static_cast<double>(k - n) / n;
    // I_y(ell, ell) = sum_{j=ell}^{2ell-1} C(2ell-1, j) y^j (1-y)^{2ell-1-j}
    const int top = 2 * ell - 1;
    double ibeta = 0.0;
    double binom = 1.0;
    for (int j = 0; j <= top; ++j) {
        if (j >= ell) ibeta += binom * std::pow(y, j) * std::pow(1.0 - y, top - j);
        binom = binom * (top - j) / (j + 1);
    }
    return std::clamp(1.0 - ibeta, 0.0, 1.0);
}

SpectralCoeffs vallee_poussin(const SpectralCoeffs& c, int n, int ell) {
    if (n < 1) throw ConfigError("delayed mean index n must be >= 1");
    if (ell < 1) throw ConfigError("delayed mean order ell must be >= 1");
    SpectralCoeffs out = partial_sum(c, 2 * n);
    for (int k = 0; k < out.size(); ++k) out.coeffs[k] *= vallee_poussin_factor(k, n, ell);
    return out;
}

int default_cesaro_order(double p, const WeightExponents& weight, const JacobiIndex& basis) {
    check_norm_exponent(p);
    const double ip = std::isinf(p) ? 0.0 : 1.0 / p;
    const double a = weight.a();
    const double b = weight.b();
    const double al = basis.alpha();
    const double be = basis.beta();
    const double bound = std::max({std::abs(2.0 * (a + 1.0) * ip - al - 1.0),
                                   std::abs(2.0 * (b + 1.0) * ip - be - 1.0),
                                   std::abs(2.0 * (a + 1.0) * ip - al - 0.5 - ip),
                                   std::abs(2.0 * (b + 1.0) * ip - be - 0.5 - ip),
                                   std::abs(2.0 * ip * (a - b) - (al - be))});
    return std::max(1, static_cast<int>(std::floor(bound)) + 1);
}

}  // namespace ulab
