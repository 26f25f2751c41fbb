#include "ulab/smoothness.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>

#include "ulab/norms.hpp"
#include "ulab/spectral.hpp"

namespace ulab {

namespace {

bool is_integer(double r) { return r == std::floor(r); }

int degree_for(double t) {
    const int n = static_cast<int>(std::floor(1.0 / t));
    if (n < 1) throw ConfigError("t must satisfy floor(1/t) >= 1");
    if (n > kMaxPolynomialDegree) {
        throw ConfigError("t = " + std::to_string(t) + " needs degree above the cap " +
                          std::to_string(kMaxPolynomialDegree));
    }
    return n;
}

double binomial(int r, int i) {
    double c = 1.0;
    for (int j = 1; j <= i; ++j) c = c * (r - i + j) / j;
    return c;
}

/// Spectral seminorm ||D_r P|| in L_p(w^{a,b}) with D_r acting in `basis`.
double spectral_seminorm(const BasisPolynomial& P, double r, double p, const WeightExponents& weight,
                         const JacobiIndex& basis) {
    if (P.is_zero()) return 0.0;
    const BasisPolynomial in_basis = P.basis() == basis ? P : to_basis(P, basis);
    return lp_norm(fractional_derivative(in_basis, r), p, weight);
}

}  // namespace

void SmoothnessQuery::validate(bool integer_order) const {
    if (!(t > 0.0 && t < 1.0)) throw ConfigError("t must lie in (0, 1)");
    if (!(r > 0.0) || !std::isfinite(r)) throw ConfigError("order r must be positive");
    if (integer_order && !is_integer(r)) throw ConfigError("modulus and K_phi need an integer order r");
    check_norm_exponent(p);
}

void check_expansion_condition(double p, const WeightExponents& weight, const JacobiIndex& basis) {
    check_norm_exponent(p);
    const double ip = std::isinf(p) ? 0.0 : 1.0 / p;
    if (!((weight.a() + 1.0) * ip - basis.alpha() < 1.0)) {
        throw ConfigError("expansion condition violated: (a+1)/p - alpha < 1");
    }
    if (!((weight.b() + 1.0) * ip - basis.beta() < 1.0)) {
        throw ConfigError("expansion condition violated: (b+1)/p - beta < 1");
    }
}

double k_spectral_realized(const NearBest& engine, double r, double t, const JacobiIndex& basis) {
    const int n = degree_for(t);
    const auto approx = engine(n);
    return approx.error +
           std::pow(n, -r) * spectral_seminorm(approx.poly, r, engine.p(), engine.weight(), basis);
}

double k_spectral_realized(const SmoothnessQuery& q) {
    q.validate(false);
    if (!(q.p > 1.0) || std::isinf(q.p)) throw ConfigError("the realization needs 1 < p < inf");
    const NearBest engine(q.f, q.p, q.norm_weight, degree_for(q.t));
    return k_spectral_realized(engine, q.r, q.t, q.operator_basis);
}

double k_spectral_direct(const SmoothnessQuery& q, int budget) {
    q.validate(false);
    if (budget < 1) throw ConfigError("candidate budget must be >= 1");
    const int n = degree_for(q.t);
    const double tr = std::pow(q.t, q.r);
    const bool parseval = q.p == 2.0 && basis_of(q.norm_weight) == q.operator_basis;

    const double f_norm = lp_norm(q.f, q.p, q.norm_weight);
    double best = f_norm;  // g = 0

    if (q.p > 1.0 && std::isfinite(q.p)) {
        const NearBest engine(q.f, q.p, q.norm_weight, n);
        const auto approx = engine(n);
        best = std::min(best, approx.error + tr * spectral_seminorm(approx.poly, q.r, q.p, q.norm_weight,
                                                                   q.operator_basis));
    }

    // degrees m: every m up to the budget, then geometric up to 4n
    std::vector<int> degrees;
    const int top = std::min(4 * n + 4, kMaxPolynomialDegree);
    for (int m = 0; m <= std::min(budget, top); ++m) degrees.push_back(m);
    for (double m = budget; m < top;) {
        m *= 1.5;
        degrees.push_back(std::min(static_cast<int>(m), top));
    }
    if (std::find(degrees.begin(), degrees.end(), n) == degrees.end()) degrees.push_back(n);
    std::sort(degrees.begin(), degrees.end());
    degrees.erase(std::unique(degrees.begin(), degrees.end()), degrees.end());

    const int N = parseval ? std::min(std::max(2 * top, top + 64), kMaxPolynomialDegree) : top;
    const auto coeffs = analyze(q.f, q.operator_basis, N);
    double total_sq = 0.0;
    for (double c : coeffs.coeffs) total_sq += c * c;

    for (int m : degrees) {
        const BasisPolynomial S = partial_sum(coeffs, m).to_polynomial();
        const double semi = spectral_seminorm(S, q.r, q.p, q.norm_weight, q.operator_basis);
        std::function<double(double)> cost;
        if (parseval) {
            double head = 0.0;
            for (double c : S.coeffs()) head += c * c;
            const double tail = std::max(total_sq - head, 0.0);
            cost = [=](double c) { return std::sqrt((1.0 - c) * (1.0 - c) * head + tail) + tr * std::abs(c) * semi; };
        } else {
            const FunctionSpec f = q.f;
            const auto fw = q.norm_weight;
            const double p = q.p;
            const double floor = 1e-14 * f_norm;
            cost = [=](double c) { return lp_norm(f.minus(S.scaled(c)), p, fw, {}, floor) + tr * std::abs(c) * semi; };
        }
        // the cost is convex in c; c in [0, 1] covers the shrinkage toward g = 0
        double a = 0.0;
        double b = 1.0;
        best = std::min({best, cost(0.0), cost(1.0)});
        const double g = 0.5 * (std::sqrt(5.0) - 1.0);
        double x1 = b - g * (b - a);
        double x2 = a + g * (b - a);
        double f1 = cost(x1);
        double f2 = cost(x2);
        const int iterations = parseval ? 80 : 30;
        for (int it = 0; it < iterations; ++it) {
            if (f1 < f2) {
                b = x2;
                x2 = x1;
                f2 = f1;
                x1 = b - g * (b - a);
                f1 = cost(x1);
            } else {
                a = x1;
                x1 = x2;
                f1 = f2;
                x2 = a + g * (b - a);
                f2 = cost(x2);
            }
            best = std::min({best, f1, f2});
        }
    }
    return best;
}

FunctionSpec phi_difference(const FunctionSpec& f, int r, double h, const Interval& domain) {
    std::vector<double> weights(r + 1);
    for (int i = 0; i <= r; ++i) weights[i] = (i % 2 == 0 ? 1.0 : -1.0) * binomial(r, i);
    auto eval = [f, r, h, weights](double x) {
        const double step = h * phi(x);
        double s = 0.0;
        for (int i = 0; i <= r; ++i) {
            const double y = x + (0.5 * r - i) * step;
            if (y < -1.0 || y > 1.0) return 0.0;
            s += weights[i] * f(y);
        }
        return s;
    };
    // kinks of the difference: x + s phi(x) = x0, increasing in x on the inner interval
    FunctionSpec::Traits traits;
    traits.degree_hint = f.traits().degree_hint;
    traits.max_derivative_order = 0;
    for (double x0 : f.kinks()) {
        for (int i = 0; i <= r; ++i) {
            const double s = (0.5 * r - i) * h;
            const auto g = [&](double x) { return x + s * phi(x) - x0; };
            double lo = domain.lo();
            double hi = domain.hi();
            if (g(lo) > 0.0 || g(hi) < 0.0) continue;
            for (int it = 0; it < 200 && hi - lo > 1e-16; ++it) {
                const double mid = 0.5 * (lo + hi);
                if (g(mid) < 0.0) {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            traits.kinks.push_back(0.5 * (lo + hi));
        }
    }
    return FunctionSpec("phi_difference", {{"r", r}, {"h", h}}, std::move(eval), traits);
}

ModulusParts dt_modulus_parts(const SmoothnessQuery& q, int h_grid, int x_resolution) {
    q.validate(true);
    if (h_grid < 1) throw ConfigError("h grid needs at least one point");
    const int r = static_cast<int>(q.r);
    const double kappa = inner_interval_kappa(r);
    const double delta = 4.0 * kappa * kappa * q.t * q.t;
    if (!(delta < 1.0)) {
        throw ConfigError("t too large: the inner interval [-1 + 4 r^2 t^2, 1 - 4 r^2 t^2] is empty");
    }
    const Interval inner(-1.0 + delta, 1.0 - delta);

    // differences at rounding level count as zero
    const double noise = 1e-13 * std::exp2(r) * sup_norm(q.f);
    ModulusParts parts;
    for (int j = 0; j < h_grid; ++j) {
        const double h = q.t * std::exp2(-0.25 * j);
        const FunctionSpec diff = phi_difference(q.f, r, h, inner);
        const double value = std::isinf(q.p) ? sup_norm(diff, inner, x_resolution)
                                             : weighted_lp_norm(diff, q.p, q.norm_weight, inner, x_resolution,
                                                                noise);
        parts.main = std::max(parts.main, value);
    }
    parts.edge_lo = local_best_error(q.f, r - 1, q.p, q.norm_weight, Interval(-1.0, -1.0 + delta));
    parts.edge_hi = local_best_error(q.f, r - 1, q.p, q.norm_weight, Interval(1.0 - delta, 1.0));
    // rounding-level values are reported as exact zeros
    const double mass = std::isinf(q.p) ? 1.0 : lp_norm(FunctionSpec::constant(1.0), q.p, q.norm_weight);
    const double zero_level = 10.0 * noise * std::max(mass, 1.0);
    for (double* v : {&parts.main, &parts.edge_lo, &parts.edge_hi}) {
        if (*v <= zero_level) *v = 0.0;
    }
    return parts;
}

double dt_modulus(const SmoothnessQuery& q, int h_grid, int x_resolution) {
    return dt_modulus_parts(q, h_grid, x_resolution).total();
}

double phi_weighted_norm(const BasisPolynomial& g, int r, double p, const WeightExponents& weight) {
    check_norm_exponent(p);
    if (g.is_zero()) return 0.0;
    if (std::isinf(p)) return sup_norm(FunctionSpec::polynomial(g).times_weight(0.5 * r, 0.5 * r));
    const WeightExponents shifted(weight.a() + 0.5 * p * r, weight.b() + 0.5 * p * r);
    return lp_norm(g, p, shifted);
}

double k_phi_realized(const NearBest& engine, int r, double t) {
    if (r < 1) throw ConfigError("K_phi needs an integer order r >= 1");
    const int n = degree_for(t);
    const auto approx = engine(n);
    const BasisPolynomial deriv =
        approx.poly.degree() >= r ? derivative_shift(approx.poly, r) : BasisPolynomial();
    return approx.error + std::pow(t, r) * phi_weighted_norm(deriv, r, engine.p(), engine.weight());
}

double k_phi_realized(const SmoothnessQuery& q) {
    q.validate(true);
    const NearBest engine(q.f, q.p, q.norm_weight, degree_for(q.t));
    return k_phi_realized(engine, static_cast<int>(q.r), q.t);
}

OperatorRatios operator_ratio_check(const BasisPolynomial& Q, int r, double p, const WeightExponents& weight) {
    if (r < 1) throw ConfigError("order r must be a positive integer");
    const JacobiIndex basis = Q.basis();
    check_expansion_condition(p, weight, basis);

    OperatorRatios out;
    if (Q.degree() >= r) out.phi_derivative = phi_weighted_norm(derivative_shift(Q, r), r, p, weight);
    out.spectral = spectral_seminorm(Q, r, p, weight, basis);
    std::vector<double> high(Q.coeffs().begin(), Q.coeffs().end());
    for (int k = 0; k < std::min<int>(r, static_cast<int>(high.size())); ++k) high[k] = 0.0;
    out.spectral_high = spectral_seminorm(BasisPolynomial(basis, high), r, p, weight, basis);
    if (out.spectral > 0.0) out.first = out.phi_derivative / out.spectral;
    if (out.phi_derivative > 0.0) out.second = out.spectral_high / out.phi_derivative;
    return out;
}

}  // namespace ulab
