#include "ulab/norms.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "pieces.hpp"
#include "ulab/quadrature.hpp"

namespace ulab {

namespace {

constexpr int kGradedMaxOrder = 512;

bool is_even_integer(double p) { return p == std::floor(p) && static_cast<long>(p) % 2 == 0; }

bool is_nonneg_integer(double e) { return e >= 0.0 && e == std::floor(e); }

double abs_pow(double v, double p) {
    const double a = std::abs(v);
    if (p == 1.0) return a;
    if (p == 2.0) return a * a;
    return std::pow(a, p);
}

class PieceIntegrator {
public:
    PieceIntegrator(const FunctionSpec& f, double p, const WeightExponents& w, const detail::Piece& piece)
        : f_(f), p_(p), w_(w), piece_(piece) {}

    /// Single-rule order that integrates the piece exactly, if one exists.
    std::optional<int> exact_order() const {
        const auto d = f_.polynomial_degree();
        if (!d || !is_even_integer(p_) || graded()) return std::nullopt;
        double extra = 0.0;
        // a weight factor folded into the weights is only polynomial for integer exponents
        if (piece_.hi < 1.0 && w_.a() != 0.0) {
            if (!is_nonneg_integer(w_.a())) return std::nullopt;
            extra += w_.a();
        }
        if (piece_.lo > -1.0 && w_.b() != 0.0) {
            if (!is_nonneg_integer(w_.b())) return std::nullopt;
            extra += w_.b();
        }
        return static_cast<int>(std::floor((*d * p_ + extra) / 2.0)) + 1;
    }

    bool graded() const { return piece_.singular_lo || piece_.singular_hi; }

    double integrate(int order) const {
        const MappedRule rule =
            weighted_piece_rule(piece_.lo, piece_.hi, w_, order, piece_.singular_lo, piece_.singular_hi);
        double sum = 0.0;
        for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
            const double v = abs_pow(f_(rule.nodes[i]), p_);
            if (v != 0.0) sum += rule.weights[i] * v;
        }
        return sum;
    }

private:
    const FunctionSpec& f_;
    double p_;
    WeightExponents w_;
    detail::Piece piece_;
};

// A degree-n polynomial restricted to [lo, hi] behaves like degree n (acos lo - acos hi) / pi,
// so short pieces between sign changes start from a low order.
int start_order(const FunctionSpec& f, double p, int resolution, const detail::Piece& piece, bool graded) {
    if (resolution > 0) return std::min(resolution, kMaxQuadratureOrder / 2);
    if (graded) return 16;
    const double share = (std::acos(std::clamp(piece.lo, -1.0, 1.0)) - std::acos(std::clamp(piece.hi, -1.0, 1.0))) /
                         std::numbers::pi;
    const double hint = std::ceil(f.traits().degree_hint * std::clamp(share, 0.0, 1.0));
    const double want = 0.5 * (hint + 1) * std::max(p, 1.0) + 16.0;
    const int low = share >= 0.5 ? 32 : 8;
    return std::clamp(static_cast<int>(want), low, kMaxQuadratureOrder / 2);
}

void check_interval(const Interval& interval) {
    if (interval.length() <= 64.0 * std::numeric_limits<double>::epsilon()) {
        throw NumericalError("integration interval collapsed under floating point");
    }
}

}  // namespace

double weighted_lp_norm(const FunctionSpec& f, double p, const WeightExponents& weight,
                        const Interval& interval, int resolution, double abs_floor) {
    check_norm_exponent(p);
    if (std::isinf(p)) throw ConfigError("weighted_lp_norm needs finite p; use sup_norm for p = inf");
    check_interval(interval);

    auto pieces = detail::split_at_kinks(f, interval);
    if (!is_even_integer(p)) pieces = detail::split_at_sign_changes(f, pieces);
    std::vector<PieceIntegrator> integrators;
    integrators.reserve(pieces.size());
    for (const auto& piece : pieces) integrators.emplace_back(f, p, weight, piece);

    std::vector<double> values(pieces.size());
    std::vector<int> orders(pieces.size());
    std::vector<bool> done(pieces.size(), false);
    double total = 0.0;
    for (std::size_t i = 0; i < pieces.size(); ++i) {
        const auto& integ = integrators[i];
        if (auto exact = integ.exact_order(); exact && resolution == 0) {
            if (*exact > kMaxQuadratureOrder) throw ConfigError("polynomial degree too large for exact norm");
            values[i] = integ.integrate(std::max(*exact, 1));
            done[i] = true;
        } else {
            orders[i] = start_order(f, p, resolution, pieces[i], integ.graded());
            values[i] = integ.integrate(orders[i]);
        }
        total += values[i];
    }

    const double floor_integral = abs_floor > 0.0 ? std::pow(abs_floor, p) / pieces.size() : 0.0;
    double refined_total = 0.0;
    for (std::size_t i = 0; i < pieces.size(); ++i) {
        if (!done[i]) {
            const auto& integ = integrators[i];
            const int cap = integ.graded() ? kGradedMaxOrder : kMaxQuadratureOrder;
            double prev = values[i];
            int order = orders[i];
            while (true) {
                if (2 * order > cap) break;
                order *= 2;
                const double cur = integ.integrate(order);
                const double diff = std::abs(cur - prev);
                prev = cur;
                if (diff <= kNormRelTol * std::max(total, std::abs(cur)) || diff <= floor_integral) break;
            }
            values[i] = prev;
        }
        refined_total += values[i];
    }
    if (!std::isfinite(refined_total)) throw NumericalError("norm integral is not finite");
    return std::pow(refined_total, 1.0 / p);
}

double weighted_lp_norm(const BasisPolynomial& f, double p, const WeightExponents& weight,
                        const Interval& interval, int resolution) {
    if (f.is_zero()) return 0.0;
    return weighted_lp_norm(FunctionSpec::polynomial(f), p, weight, interval, resolution);
}

double sup_norm(const FunctionSpec& f, const Interval& interval, int resolution) {
    const double lo = interval.lo();
    const double hi = interval.hi();
    const double mid = 0.5 * (lo + hi);
    const double half = 0.5 * (hi - lo);

    int target = resolution > 0 ? resolution - 1
                                : std::max(1024, 32 * (f.traits().degree_hint + 2));
    int levels = 4;
    while ((1 << levels) < target && levels < 20) ++levels;
    const int n = 1 << levels;

    std::vector<double> xs(n + 1);
    std::vector<double> vals(n + 1);
    for (int j = 0; j <= n; ++j) {
        xs[j] = j == 0 ? hi : (j == n ? lo : mid + half * std::cos(std::numbers::pi * j / n));
        vals[j] = std::abs(f(xs[j]));
    }

    double best = 0.0;
    for (double k : f.kinks()) {
        if (interval.contains(k)) best = std::max(best, std::abs(f(k)));
    }

    const auto polish = [&](double a, double b) {
        // golden-section search for a local maximum of |f| on [a, b]
        const double g = 0.5 * (std::sqrt(5.0) - 1.0);
        double c = b - g * (b - a);
        double d = a + g * (b - a);
        double fc = std::abs(f(c));
        double fd = std::abs(f(d));
        double top = std::max(fc, fd);
        for (int it = 0; it < 48 && b - a > 1e-15 * (1.0 + std::abs(a)); ++it) {
            if (fc > fd) {
                b = d;
                d = c;
                fd = fc;
                c = b - g * (b - a);
                fc = std::abs(f(c));
                top = std::max(top, fc);
            } else {
                a = c;
                c = d;
                fc = fd;
                d = a + g * (b - a);
                fd = std::abs(f(d));
                top = std::max(top, fd);
            }
        }
        return top;
    };

    for (int level = 2; level <= levels; ++level) {
        const int stride = 1 << (levels - level);
        int arg = 0;
        for (int j = 0; j <= n; j += stride) {
            if (vals[j] > vals[arg]) arg = j;
        }
        best = std::max(best, vals[arg]);
        const int left = std::max(arg - stride, 0);
        const int right = std::min(arg + stride, n);
        best = std::max(best, polish(xs[right], xs[left]));
    }
    return best;
}

double sup_norm(const BasisPolynomial& f, const Interval& interval, int resolution) {
    if (f.is_zero()) return 0.0;
    return sup_norm(FunctionSpec::polynomial(f), interval, resolution);
}

double lp_norm(const FunctionSpec& f, double p, const WeightExponents& weight, const Interval& interval,
               double abs_floor) {
    check_norm_exponent(p);
    if (std::isinf(p)) return sup_norm(f, interval);
    return weighted_lp_norm(f, p, weight, interval, 0, abs_floor);
}

double lp_norm(const BasisPolynomial& f, double p, const WeightExponents& weight, const Interval& interval) {
    check_norm_exponent(p);
    if (f.is_zero()) return 0.0;
    if (p == 2.0 && interval.is_full() && basis_of(weight) == f.basis()) {
        double s = 0.0;
        for (double c : f.coeffs()) s += c * c;
        return std::sqrt(s);
    }
    if (std::isinf(p)) return sup_norm(f, interval);
    return weighted_lp_norm(f, p, weight, interval);
}

double product_norm(const FunctionSpec& f, double p, double c, double d) {
    check_norm_exponent(p);
    if (std::isinf(p)) {
        if (c < 0.0 || d < 0.0) {
            throw ConfigError("uniform norm of f w^{c,d} needs c, d >= 0");
        }
        if (c == 0.0 && d == 0.0) return sup_norm(f);
        return sup_norm(f.times_weight(c, d));
    }
    return weighted_lp_norm(f, p, WeightExponents(c * p, d * p));
}

}  // namespace ulab
