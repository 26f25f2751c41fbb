#include "ulab/approx.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <Eigen/Dense>

#include "pieces.hpp"
#include "ulab/norms.hpp"
#include "ulab/quadrature.hpp"

namespace ulab {

namespace {

/// Polynomial in Chebyshev form of the variable mapped from [lo, hi] to [-1, 1].
struct ChebPoly {
    double lo = -1.0;
    double hi = 1.0;
    std::vector<double> coeffs;

    double operator()(double x) const {
        const double t = (2.0 * x - lo - hi) / (hi - lo);
        double b1 = 0.0;
        double b2 = 0.0;
        for (int k = static_cast<int>(coeffs.size()) - 1; k >= 1; --k) {
            const double b = coeffs[k] + 2.0 * t * b1 - b2;
            b2 = b1;
            b1 = b;
        }
        return coeffs.empty() ? 0.0 : coeffs[0] + t * b1 - b2;
    }
};

void chebyshev_row(double t, int n, double* row) {
    row[0] = 1.0;
    if (n >= 1) row[1] = t;
    for (int j = 2; j <= n; ++j) row[j] = 2.0 * t * row[j - 1] - row[j - 2];
}

/// Residual f - P as a FunctionSpec carrying f's kinks and singularity flags.
FunctionSpec residual_spec(const FunctionSpec& f, const ChebPoly& poly) {
    FunctionSpec::Traits traits = f.traits();
    traits.polynomial_degree.reset();
    traits.degree_hint = std::max(traits.degree_hint, static_cast<int>(poly.coeffs.size()) - 1);
    traits.max_derivative_order = 0;
    return FunctionSpec("residual", {}, [f, poly](double x) { return f(x) - poly(x); }, traits);
}

/// Re-expands a Chebyshev-form polynomial in the Jacobi basis (exact projection).
BasisPolynomial to_jacobi(const ChebPoly& poly, const JacobiIndex& basis) {
    const int n = static_cast<int>(poly.coeffs.size()) - 1;
    if (n < 0) return {basis, {}};
    const auto rule = cached_gauss_jacobi_rule(basis.weight(), n + 1);
    const auto table = recurrence_table(basis, n + 1);
    std::vector<double> out(static_cast<std::size_t>(n) + 1, 0.0);
    std::vector<double> psi(out.size());
    for (std::size_t i = 0; i < rule->nodes.size(); ++i) {
        const double x = rule->nodes[i];
        const double v = rule->weights[i] * poly(x);
        eval_orthonormal_all(*table, x, psi);
        for (int k = 0; k <= n; ++k) out[k] += v * psi[k];
    }
    return {basis, std::move(out)};
}

struct Grid {
    std::vector<double> nodes;
    std::vector<double> weights;
};

Grid lp_grid(const FunctionSpec& f, const Interval& interval, const WeightExponents& weight, int n) {
    const auto pieces = detail::split_at_kinks(f, interval);
    const int total = kGridPointsPerDof * (n + 1);
    Grid grid;
    for (const auto& piece : pieces) {
        const double share = (piece.hi - piece.lo) / interval.length();
        const bool graded = piece.singular_lo || piece.singular_hi;
        int order = std::max(static_cast<int>(std::ceil(total * share)), 2 * (n + 1) + 8);
        if (graded) order = std::max(8, order / kGradedLevels + n + 1);
        const MappedRule rule =
            weighted_piece_rule(piece.lo, piece.hi, weight, order, piece.singular_lo, piece.singular_hi);
        grid.nodes.insert(grid.nodes.end(), rule.nodes.begin(), rule.nodes.end());
        grid.weights.insert(grid.weights.end(), rule.weights.begin(), rule.weights.end());
    }
    return grid;
}

void check_degree(int n) {
    if (n < 0) throw ConfigError("approximation degree must be >= 0");
    if (n > kMaxPolynomialDegree) throw ConfigError("approximation degree exceeds the cap");
}

}  // namespace

ApproxResult best_approx_l2(const FunctionSpec& f, int n, const WeightExponents& weight, int N) {
    check_degree(n);
    if (N <= 0) {
        const auto d = f.polynomial_degree();
        N = d ? std::max(*d, n) : std::max(4 * n, n + 64);
    }
    N = std::min(std::max(N, n), kMaxPolynomialDegree);
    const auto c = analyze(f, basis_of(weight), N);
    double tail = 0.0;
    for (int k = n + 1; k < c.size(); ++k) tail += c.coeffs[k] * c.coeffs[k];
    ApproxResult out;
    out.approximant = partial_sum(c, n).to_polynomial();
    out.error = std::sqrt(tail);
    out.iterations = 1;
    out.converged = true;
    return out;
}

ApproxResult best_approx_lp(const FunctionSpec& f, int n, double p, const WeightExponents& weight,
                            double tol, const Interval& interval) {
    check_degree(n);
    check_norm_exponent(p);
    if (std::isinf(p)) throw ConfigError("best_approx_lp needs finite p; use best_approx_sup");
    if (!(tol > 0.0)) throw ConfigError("tolerance must be positive");
    const bool surrogate = p == 1.0;
    const double q = surrogate ? kP1Surrogate : p;

    const Grid grid = lp_grid(f, interval, weight, n);
    const int m = static_cast<int>(grid.nodes.size());
    const int dof = n + 1;
    Eigen::MatrixXd A(m, dof);
    Eigen::VectorXd fv(m);
    Eigen::VectorXd qw(m);
    const double lo = interval.lo();
    const double hi = interval.hi();
    std::vector<double> row(dof);
    for (int i = 0; i < m; ++i) {
        const double x = grid.nodes[i];
        chebyshev_row((2.0 * x - lo - hi) / (hi - lo), n, row.data());
        for (int j = 0; j < dof; ++j) A(i, j) = row[j];
        fv[i] = f(x);
        qw[i] = grid.weights[i];
    }

    const auto objective = [&](const Eigen::VectorXd& c) {
        const Eigen::VectorXd r = fv - A * c;
        double s = 0.0;
        for (int i = 0; i < m; ++i) s += qw[i] * std::pow(std::abs(r[i]), q);
        return s;
    };
    const auto weighted_solve = [&](const Eigen::VectorXd& omega) {
        Eigen::VectorXd s = (qw.array() * omega.array()).sqrt();
        Eigen::MatrixXd As = s.asDiagonal() * A;
        Eigen::VectorXd fs = s.asDiagonal() * fv;
        return Eigen::VectorXd(As.colPivHouseholderQr().solve(fs));
    };

    Eigen::VectorXd c = weighted_solve(Eigen::VectorXd::Ones(m));
    double J = objective(c);
    const double step = q > 2.0 ? 1.0 / (q - 1.0) : 1.0;
    ApproxResult out;
    out.surrogate = surrogate;
    out.iterations = 1;
    for (int it = 1; it < kIrlsMaxIterations; ++it) {
        const Eigen::VectorXd r = fv - A * c;
        const double rmax = r.cwiseAbs().maxCoeff();
        if (rmax == 0.0 || J == 0.0) {
            out.converged = true;
            break;
        }
        Eigen::VectorXd omega(m);
        const double floor_r = kIrlsClamp * rmax;
        for (int i = 0; i < m; ++i) omega[i] = std::pow(std::max(std::abs(r[i]), floor_r), q - 2.0);
        const Eigen::VectorXd direction = weighted_solve(omega) - c;
        double theta = step;
        Eigen::VectorXd trial = c + theta * direction;
        double J_trial = objective(trial);
        for (int half = 0; half < 30 && J_trial > J; ++half) {
            theta *= 0.5;
            trial = c + theta * direction;
            J_trial = objective(trial);
        }
        out.iterations = it + 1;
        if (J_trial > J) {
            out.converged = true;  // no descent left at grid precision
            break;
        }
        const double rel = (J - J_trial) / J;
        c = trial;
        J = J_trial;
        if (std::pow(1.0 - rel, 1.0 / q) > 1.0 - tol) {
            out.converged = true;
            break;
        }
    }

    ChebPoly poly{lo, hi, std::vector<double>(c.data(), c.data() + dof)};
    out.approximant = to_jacobi(poly, basis_of(weight));
    const double mass = qw.sum();
    const double floor = 1e-13 * fv.cwiseAbs().maxCoeff() * std::pow(mass, 1.0 / p);
    out.error = weighted_lp_norm(residual_spec(f, poly), p, weight, interval, 0, floor);
    return out;
}

ApproxResult best_approx_sup(const FunctionSpec& f, int n, const Interval& interval, double tol) {
    check_degree(n);
    if (!(tol > 0.0)) throw ConfigError("tolerance must be positive");
    const double lo = interval.lo();
    const double hi = interval.hi();
    const double mid = 0.5 * (lo + hi);
    const double half = 0.5 * (hi - lo);

    const int count = std::max(kGridPointsPerDof * (n + 1), 200);
    std::vector<double> xs;
    xs.reserve(count + 1 + f.kinks().size());
    for (int j = 0; j <= count; ++j) xs.push_back(mid - half * std::cos(std::numbers::pi * j / count));
    xs.front() = lo;
    xs.back() = hi;
    for (double k : f.kinks()) {
        if (k > lo && k < hi) xs.push_back(k);
    }
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
    const int m = static_cast<int>(xs.size());
    const int dof = n + 1;

    std::vector<double> fv(m);
    Eigen::MatrixXd T(m, dof);
    std::vector<double> row(dof);
    double fmax = 0.0;
    for (int i = 0; i < m; ++i) {
        fv[i] = f(xs[i]);
        fmax = std::max(fmax, std::abs(fv[i]));
        chebyshev_row((xs[i] - mid) / half, n, row.data());
        for (int j = 0; j < dof; ++j) T(i, j) = row[j];
    }

    // initial reference: extrema of T_{n+1}, snapped to the grid
    std::vector<int> ref;
    for (int i = 0; i <= n + 1; ++i) {
        const double x = mid - half * std::cos(std::numbers::pi * i / (n + 1));
        int idx = static_cast<int>(std::lower_bound(xs.begin(), xs.end(), x) - xs.begin());
        idx = std::clamp(idx, 0, m - 1);
        if (idx > 0 && std::abs(xs[idx - 1] - x) < std::abs(xs[idx] - x)) --idx;
        if (!ref.empty() && idx <= ref.back()) idx = ref.back() + 1;
        ref.push_back(idx);
    }
    for (int i = n + 1; i >= 0; --i) {
        // undo any overflow from the forward pass
        const int limit = m - 1 - (n + 1 - i);
        if (ref[i] > limit) ref[i] = limit;
        if (i < n + 1 && ref[i] >= ref[i + 1]) ref[i] = ref[i + 1] - 1;
    }

    Eigen::VectorXd c = Eigen::VectorXd::Zero(dof);
    double E = 0.0;
    std::vector<double> r(m);
    ApproxResult out;
    for (int it = 0; it < kIrlsMaxIterations; ++it) {
        out.iterations = it + 1;
        Eigen::MatrixXd M(dof + 1, dof + 1);
        Eigen::VectorXd rhs(dof + 1);
        for (int i = 0; i <= dof; ++i) {
            for (int j = 0; j < dof; ++j) M(i, j) = T(ref[i], j);
            M(i, dof) = i % 2 == 0 ? 1.0 : -1.0;
            rhs[i] = fv[ref[i]];
        }
        const Eigen::VectorXd sol = M.partialPivLu().solve(rhs);
        c = sol.head(dof);
        E = sol[dof];
        const Eigen::VectorXd pv = T * c;
        int arg = 0;
        for (int i = 0; i < m; ++i) {
            r[i] = fv[i] - pv[i];
            if (std::abs(r[i]) > std::abs(r[arg])) arg = i;
        }
        const double rmax = std::abs(r[arg]);
        if (rmax <= (1.0 + tol) * std::abs(E) || rmax <= 1e-15 * fmax) {
            out.converged = true;
            break;
        }

        // one extremum per run of constant residual sign
        std::vector<int> ext;
        for (int i = 0; i < m; ++i) {
            if (r[i] == 0.0) continue;
            if (!ext.empty() && (r[ext.back()] > 0.0) == (r[i] > 0.0)) {
                if (std::abs(r[i]) > std::abs(r[ext.back()])) ext.back() = i;
            } else {
                ext.push_back(i);
            }
        }
        std::vector<int> next;
        if (static_cast<int>(ext.size()) >= dof + 1) {
            while (static_cast<int>(ext.size()) > dof + 1) {
                const int excess = static_cast<int>(ext.size()) - (dof + 1);
                if (excess == 1) {
                    if (std::abs(r[ext.front()]) < std::abs(r[ext.back()])) {
                        ext.erase(ext.begin());
                    } else {
                        ext.pop_back();
                    }
                    continue;
                }
                std::size_t small = 0;
                for (std::size_t i = 1; i < ext.size(); ++i) {
                    if (std::abs(r[ext[i]]) < std::abs(r[ext[small]])) small = i;
                }
                if (small == 0 || small + 1 == ext.size()) {
                    ext.erase(ext.begin() + static_cast<long>(small));
                } else {
                    const std::size_t other =
                        std::abs(r[ext[small - 1]]) < std::abs(r[ext[small + 1]]) ? small - 1 : small + 1;
                    ext.erase(ext.begin() + static_cast<long>(std::max(small, other)));
                    ext.erase(ext.begin() + static_cast<long>(std::min(small, other)));
                }
            }
            next = ext;
        } else {
            // single-point exchange of the global maximum
            next = ref;
            const bool pos = r[arg] > 0.0;
            const auto same = [&](int idx) { return (r[idx] > 0.0) == pos; };
            if (arg < next.front()) {
                if (same(next.front())) {
                    next.front() = arg;
                } else {
                    next.pop_back();
                    next.insert(next.begin(), arg);
                }
            } else if (arg > next.back()) {
                if (same(next.back())) {
                    next.back() = arg;
                } else {
                    next.erase(next.begin());
                    next.push_back(arg);
                }
            } else {
                const auto it_hi = std::upper_bound(next.begin(), next.end(), arg);
                auto it_lo = it_hi - 1;
                if (*it_lo != arg) {
                    if (same(*it_lo)) {
                        *it_lo = arg;
                    } else {
                        *it_hi = arg;
                    }
                }
            }
        }
        if (next == ref) break;  // stagnation
        ref = std::move(next);
    }

    ChebPoly poly{lo, hi, std::vector<double>(c.data(), c.data() + dof)};
    double grid_max = 0.0;
    for (double v : r) grid_max = std::max(grid_max, std::abs(v));
    if (!out.converged) out.converged = grid_max <= (1.0 + tol) * std::abs(E);
    out.error = std::max(grid_max, sup_norm(residual_spec(f, poly), interval));

    // continuous stage: move the reference to the local extrema of the residual between
    // neighbouring grid points and re-solve; keep whichever polynomial has the smaller sup
    if (out.error > 1e-15 * fmax) {
        std::vector<double> rx(dof + 1);
        for (int i = 0; i <= dof; ++i) rx[i] = xs[ref[i]];
        for (int pass = 0; pass < 6; ++pass) {
            ChebPoly current = poly;
            for (int i = 0; i <= dof; ++i) {
                const double sign = (f(rx[i]) - current(rx[i])) >= 0.0 ? 1.0 : -1.0;
                const auto g = [&](double x) { return sign * (f(x) - current(x)); };
                const int idx = static_cast<int>(std::lower_bound(xs.begin(), xs.end(), rx[i]) - xs.begin());
                double a = xs[std::max(idx - 1, 0)];
                double b = xs[std::min(idx + 1, m - 1)];
                if (i > 0) a = std::max(a, rx[i - 1]);
                if (i < dof) b = std::min(b, rx[i + 1]);
                const double ratio = 0.5 * (std::sqrt(5.0) - 1.0);
                double x1 = b - ratio * (b - a);
                double x2 = a + ratio * (b - a);
                double g1 = g(x1);
                double g2 = g(x2);
                double best_x = rx[i];
                double best_g = g(rx[i]);
                for (int it = 0; it < 60 && b - a > 1e-15 * (1.0 + std::abs(a)); ++it) {
                    if (g1 > g2) {
                        b = x2;
                        x2 = x1;
                        g2 = g1;
                        x1 = b - ratio * (b - a);
                        g1 = g(x1);
                    } else {
                        a = x1;
                        x1 = x2;
                        g1 = g2;
                        x2 = a + ratio * (b - a);
                        g2 = g(x2);
                    }
                    if (g1 > best_g) {
                        best_g = g1;
                        best_x = x1;
                    }
                    if (g2 > best_g) {
                        best_g = g2;
                        best_x = x2;
                    }
                }
                rx[i] = best_x;
            }
            Eigen::MatrixXd M(dof + 1, dof + 1);
            Eigen::VectorXd rhs(dof + 1);
            for (int i = 0; i <= dof; ++i) {
                chebyshev_row((rx[i] - mid) / half, n, row.data());
                for (int j = 0; j < dof; ++j) M(i, j) = row[j];
                M(i, dof) = i % 2 == 0 ? 1.0 : -1.0;
                rhs[i] = f(rx[i]);
            }
            const Eigen::VectorXd sol = M.partialPivLu().solve(rhs);
            ChebPoly trial{lo, hi, std::vector<double>(sol.data(), sol.data() + dof)};
            const double err = sup_norm(residual_spec(f, trial), interval);
            if (!(err < out.error)) break;
            const bool done = err <= (1.0 + tol) * std::abs(sol[dof]);
            poly = std::move(trial);
            out.error = err;
            if (done) break;
        }
    }
    out.approximant = to_jacobi(poly, JacobiIndex(-0.5, -0.5));
    return out;
}

ApproxResult best_approx(const FunctionSpec& f, int n, double p, const WeightExponents& weight,
                         const Interval& interval) {
    check_norm_exponent(p);
    if (std::isinf(p)) return best_approx_sup(f, n, interval);
    if (p == 2.0 && interval.is_full()) return best_approx_l2(f, n, weight);
    return best_approx_lp(f, n, p, weight, 1e-10, interval);
}

NearBest::NearBest(FunctionSpec f, double p, const WeightExponents& weight, int max_degree, int ell)
    : f_(std::move(f)), p_(p), weight_(weight) {
    check_norm_exponent(p);
    check_degree(max_degree);
    const JacobiIndex basis = std::isinf(p) ? JacobiIndex(-0.5, -0.5) : basis_of(weight);
    int N = max_degree;
    if (p == 2.0) N = std::min(std::max(4 * max_degree, max_degree + 64), kMaxPolynomialDegree);
    if (const auto d = f_.polynomial_degree()) N = std::min(N, std::max(*d, max_degree));
    coeffs_ = analyze(f_, basis, N);
    ell_ = ell > 0 ? ell : default_cesaro_order(p, weight, basis);
    if (p != 2.0) f_norm_ = lp_norm(f_, p, weight);
}

double NearBest::error_of(const BasisPolynomial& poly) const {
    return lp_norm(f_.minus(poly), p_, weight_, {}, 1e-12 * f_norm_);
}

NearBest::Result NearBest::operator()(int n) const {
    if (n < 0) throw ConfigError("approximant degree must be >= 0");
    const SpectralCoeffs s = partial_sum(coeffs_, n);
    if (p_ == 2.0) {
        double tail = 0.0;
        for (int k = n + 1; k < coeffs_.size(); ++k) tail += coeffs_.coeffs[k] * coeffs_.coeffs[k];
        return {s.to_polynomial(), std::sqrt(tail)};
    }
    if (const auto d = f_.polynomial_degree(); d && *d <= n) {
        return {s.to_polynomial(), error_of(s.to_polynomial())};
    }
    Result best{s.to_polynomial(), error_of(s.to_polynomial())};
    const int m = (n + 1) / 2;
    if (m >= 1) {
        const BasisPolynomial v = vallee_poussin(coeffs_, m, ell_).to_polynomial();
        const double e = error_of(v);
        if (e < best.error) best = {v, e};
    }
    return best;
}

BasisPolynomial near_best(const FunctionSpec& f, int n, double p, const WeightExponents& weight) {
    if (n < 1) throw ConfigError("near_best needs n >= 1");
    return NearBest(f, p, weight, n)(n).poly;
}

double local_best_error(const FunctionSpec& f, int degree, double p, const WeightExponents& weight,
                        const Interval& interval) {
    check_norm_exponent(p);
    const double error = std::isinf(p) ? best_approx_sup(f, degree, interval).error
                                        : best_approx_lp(f, degree, p, weight, 1e-10, interval).error;
    // rounding-level errors are reported as exact zeros
    const double scale = sup_norm(f, interval) *
                         (std::isinf(p) ? 1.0 : lp_norm(FunctionSpec::constant(1.0), p, weight, interval));
    return error <= 1e-13 * scale ? 0.0 : error;
}

}  // namespace ulab
