#include "ulab/quadrature.hpp"

#include <map>
#include <mutex>
#include <cmath>
#include <tuple>

#include <Eigen/Eigenvalues>

#include "ulab/jacobi.hpp"

namespace ulab {

std::vector<double> jacobi_moments(const WeightExponents& weight, int max_degree) {
    if (max_degree < 0) throw ConfigError("max_degree must be >= 0");
    const double a = weight.a();
    const double b = weight.b();
    std::vector<double> m(static_cast<std::size_t>(max_degree) + 1);
    m[0] = jacobi_mass(a, b);
    if (max_degree >= 1) m[1] = (b - a) * m[0] / (a + b + 2.0);
    for (int k = 1; k < max_degree; ++k) {
        m[k + 1] = ((b - a) * m[k] + k * m[k - 1]) / (a + b + k + 2.0);
    }
    return m;
}

QuadratureRule gauss_jacobi_rule(const WeightExponents& weight, int n) {
    if (n < 1) throw ConfigError("quadrature order must be >= 1");
    if (n > kMaxQuadratureOrder) {
        throw ConfigError("quadrature order " + std::to_string(n) + " exceeds cap " +
                          std::to_string(kMaxQuadratureOrder));
    }
    const JacobiIndex basis = basis_of(weight);
    const auto table = recurrence_table(basis, n);

    QuadratureRule rule;
    rule.weight = weight;
    rule.order = n;
    if (n == 1) {
        rule.nodes = {table->alpha[0]};
        rule.weights = {jacobi_mass(weight.a(), weight.b())};
        return rule;
    }

    Eigen::VectorXd diag(n);
    Eigen::VectorXd sub(n - 1);
    for (int k = 0; k < n; ++k) diag[k] = table->alpha[k];
    for (int k = 1; k < n; ++k) sub[k - 1] = table->sqrt_beta[k];
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
    solver.computeFromTridiagonal(diag, sub, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) {
        throw NumericalError("Gauss-Jacobi eigen-solve did not converge (n=" + std::to_string(n) + ")");
    }

    rule.nodes.resize(n);
    rule.weights.resize(n);
    std::vector<double> psi(n);
    for (int i = 0; i < n; ++i) {
        const double x = solver.eigenvalues()[i];
        eval_orthonormal_all(*table, x, psi);
        double christoffel = 0.0;
        for (double v : psi) christoffel += v * v;
        rule.nodes[i] = x;
        rule.weights[i] = 1.0 / christoffel;
    }
    for (int i = 0; i < n; ++i) {
        const bool inside = rule.nodes[i] > -1.0 && rule.nodes[i] < 1.0;
        const bool increasing = i == 0 || rule.nodes[i] > rule.nodes[i - 1];
        if (!inside || !increasing || !(rule.weights[i] > 0.0)) {
            throw NumericalError("Gauss-Jacobi rule lost node ordering or positivity (n=" +
                                 std::to_string(n) + ")");
        }
    }
    return rule;
}

std::shared_ptr<const QuadratureRule> cached_gauss_jacobi_rule(const WeightExponents& weight, int n) {
    using Key = std::tuple<double, double, int>;
    static std::mutex mutex;
    static std::map<Key, std::shared_ptr<const QuadratureRule>> cache;

    const Key key{weight.a(), weight.b(), n};
    {
        std::lock_guard lock(mutex);
        if (auto it = cache.find(key); it != cache.end()) return it->second;
    }
    auto rule = std::make_shared<const QuadratureRule>(gauss_jacobi_rule(weight, n));
    std::lock_guard lock(mutex);
    return cache.emplace(key, std::move(rule)).first->second;
}

MappedRule mapped_rule(double lo, double hi, double e_hi, double e_lo, int n) {
    const auto rule = cached_gauss_jacobi_rule(WeightExponents(e_hi, e_lo), n);
    const double half = 0.5 * (hi - lo);
    const double mid = 0.5 * (hi + lo);
    const double scale = std::pow(half, 1.0 + e_hi + e_lo);
    MappedRule out;
    out.nodes.resize(n);
    out.weights.resize(n);
    for (int i = 0; i < n; ++i) {
        out.nodes[i] = mid + half * rule->nodes[i];
        out.weights[i] = scale * rule->weights[i];
    }
    return out;
}

MappedRule weighted_piece_rule(double lo, double hi, const WeightExponents& weight, int order,
                               bool graded_lo, bool graded_hi) {
    if (graded_lo && graded_hi) throw ConfigError("a piece can be graded toward one end only");
    const double a = weight.a();
    const double b = weight.b();
    MappedRule out;
    const auto append = [&](double plo, double phi) {
        const double e_hi = phi == 1.0 ? a : 0.0;
        const double e_lo = plo == -1.0 ? b : 0.0;
        MappedRule panel = mapped_rule(plo, phi, e_hi, e_lo, order);
        const bool fold_a = a != 0.0 && e_hi == 0.0;
        const bool fold_b = b != 0.0 && e_lo == 0.0;
        for (int i = 0; i < order; ++i) {
            double w = panel.weights[i];
            const double x = panel.nodes[i];
            if (fold_a) w *= std::pow(1.0 - x, a);
            if (fold_b) w *= std::pow(1.0 + x, b);
            out.nodes.push_back(x);
            out.weights.push_back(w);
        }
    };
    if (!graded_lo && !graded_hi) {
        out.nodes.reserve(order);
        out.weights.reserve(order);
        append(lo, hi);
        return out;
    }
    out.nodes.reserve(static_cast<std::size_t>(order) * kGradedLevels);
    out.weights.reserve(static_cast<std::size_t>(order) * kGradedLevels);
    const double length = hi - lo;
    for (int level = 1; level <= kGradedLevels; ++level) {
        const double outer = length * std::ldexp(1.0, -(level - 1));
        const double inner = level == kGradedLevels ? 0.0 : length * std::ldexp(1.0, -level);
        if (graded_hi) {
            append(level == 1 ? lo : hi - outer, hi - inner);
        } else {
            append(lo + inner, level == 1 ? hi : lo + outer);
        }
    }
    return out;
}

}  // namespace ulab
