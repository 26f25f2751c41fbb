#include "ulab/ineq_lab.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <random>
#include <sstream>

#include "ulab/approx.hpp"
#include "ulab/norms.hpp"
#include "ulab/parallel.hpp"
#include "ulab/smoothness.hpp"
#include "ulab/spectral.hpp"

namespace ulab {

namespace {

double inv(double p) { return std::isinf(p) ? 0.0 : 1.0 / p; }

bool is_positive_integer(double v) { return v > 0.0 && v == std::floor(v); }

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(6);
    os << v;
    return os.str();
}

nlohmann::json num(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    return v;
}

void add(std::vector<HypothesisCheck>& checks, std::string condition, bool holds) {
    checks.push_back({std::move(condition), holds});
}

FunctionSpec derivative_of(const FunctionSpec& f, int order) {
    if (!f.has_derivative(order)) {
        throw ConfigError("function '" + f.family() + "' has no exact derivative of order " + std::to_string(order));
    }
    return f.derivative_function(order);
}

Verdict bound_verdict(const std::string& name, double value, double bound) {
    return {name, value <= bound, fmt(value) + " <= " + fmt(bound)};
}

Verdict slope_verdict(const std::string& name, const SlopeFit& fit, double target, double rel) {
    const double tol = std::max(rel * std::abs(target), 2.0 * fit.stderr_slope);
    return {name, std::abs(fit.slope - target) <= tol,
            "fitted " + fmt(fit.slope) + " vs target " + fmt(target) + " (tol " + fmt(tol) + ")"};
}

nlohmann::json fit_json(const SlopeFit& fit) {
    return {{"slope", fit.slope}, {"stderr", fit.stderr_slope}, {"intercept", fit.intercept}, {"points", fit.points}};
}

std::vector<double> sorted_grid(std::vector<double> grid, const char* name) {
    if (grid.empty()) throw ConfigError(std::string(name) + " must not be empty");
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
    return grid;
}

void check_n_grid(const std::vector<int>& n_grid) {
    if (n_grid.empty()) throw ConfigError("n_grid must not be empty");
    for (int n : n_grid) {
        if (n < 0) throw ConfigError("n_grid entries must be >= 0");
    }
}

/// Geometric cells [lo, hi] of the u-integral: 2^{-1/P} spacing anchored at t_max down to u_min.
struct UCells {
    std::vector<double> lo;
    std::vector<double> hi;
    std::vector<double> mid;

    UCells(double t_max, const UGrid& grid) {
        if (!(grid.u_min > 0.0) || !(grid.u_min < t_max)) throw ConfigError("u_min must lie in (0, min t)");
        if (grid.points_per_dyad < 1) throw ConfigError("points_per_dyad must be >= 1");
        const double step = std::exp2(-1.0 / grid.points_per_dyad);
        double top = t_max;
        while (top > grid.u_min * (1.0 + 1e-12)) {
            const double bottom = std::max(top * step, grid.u_min);
            hi.push_back(top);
            lo.push_back(bottom);
            mid.push_back(std::sqrt(top * bottom));
            top = bottom;
        }
    }

    std::size_t size() const { return mid.size(); }

    /// Length in log u of the part of cell j below t.
    double log_length(std::size_t j, double t) const {
        const double top = std::min(hi[j], t);
        return top > lo[j] ? std::log(top / lo[j]) : 0.0;
    }
};

/// (sum_j integrand_j^q1 dlog_j)^{1/q1} over cells below t, plus the share of the lowest dyad.
std::pair<double, double> u_integral(const UCells& cells, const std::vector<double>& integrand, double q1, double t,
                                     double u_min) {
    double total = 0.0;
    double tail = 0.0;
    for (std::size_t j = 0; j < cells.size(); ++j) {
        const double len = cells.log_length(j, t);
        if (len <= 0.0) continue;
        const double part = std::pow(integrand[j], q1) * len;
        total += part;
        if (cells.mid[j] < 2.0 * u_min) tail += part;
    }
    return {std::pow(total, 1.0 / q1), total > 0.0 ? tail / total : 0.0};
}

std::vector<BasisPolynomial> random_polynomials(const JacobiIndex& basis, int degree, int count,
                                                std::mt19937_64& rng) {
    std::normal_distribution<double> normal(0.0, 1.0);
    std::vector<BasisPolynomial> out;
    for (int i = 0; i < count; ++i) {
        std::vector<double> c(degree + 1);
        for (double& v : c) v = normal(rng);
        out.emplace_back(basis, std::move(c));
    }
    return out;
}

// psi_k items are shared by every row with n >= k
struct SweepItem {
    std::size_t row;
    BasisPolynomial poly;
    std::string label;
    int psi_k = -1;

    bool in_row(std::size_t i, const std::vector<int>& n_grid) const {
        return psi_k >= 0 ? psi_k <= n_grid[i] : row == i;
    }
};

void add_basis_functions(std::vector<SweepItem>& items, const JacobiIndex& basis, const std::vector<int>& n_grid) {
    const int top = *std::max_element(n_grid.begin(), n_grid.end());
    for (int k = 0; k <= top; ++k) items.push_back({0, BasisPolynomial::unit(basis, k), "psi_" + std::to_string(k), k});
}

/// Kernel sum_{k<=n} c_k psi_k(y) psi_k with Cesaro factors c_k = prod_{j<=order} (1 - k/(n+j)).
/// Order 0 is the reproducing kernel, extremal for point evaluation at y; orders above 2a+1 localize
/// it enough to be extremal in L_1 as well.
BasisPolynomial endpoint_kernel(const JacobiIndex& basis, int n, double y, int order = 0) {
    std::vector<double> c(n + 1);
    for (int k = 0; k <= n; ++k) {
        double damp = 1.0;
        for (int j = 1; j <= order; ++j) damp *= 1.0 - static_cast<double>(k) / (n + j);
        c[k] = damp * BasisPolynomial::unit(basis, k)(y);
    }
    return BasisPolynomial(basis, std::move(c));
}

int localizing_order(const WeightExponents& w) {
    return static_cast<int>(std::floor(2.0 * std::max({w.a(), w.b(), -0.5}) + 2.0)) + 1;
}

void add_kernels(std::vector<SweepItem>& items, std::size_t row, const JacobiIndex& basis, int n,
                 const WeightExponents& weight) {
    const int order = localizing_order(weight);
    items.push_back({row, endpoint_kernel(basis, n, 1.0), "kernel_plus"});
    items.push_back({row, endpoint_kernel(basis, n, -1.0), "kernel_minus"});
    items.push_back({row, endpoint_kernel(basis, n, 1.0, order), "cesaro_kernel_plus"});
    items.push_back({row, endpoint_kernel(basis, n, -1.0, order), "cesaro_kernel_minus"});
}

/// Degree of the truncated expansion used for f: resolves kinks near the endpoints, where the
/// Jacobi system's resolution is of order k^{-2}.
int expansion_degree(const FunctionSpec& f) {
    if (auto d = f.polynomial_degree()) return std::max(*d, 1);
    double dist = 1.0;
    for (double x : f.kinks()) dist = std::min(dist, 1.0 - std::abs(x));
    int N = 64 + 4 * f.traits().degree_hint;
    if (!f.kinks().empty()) N = std::max(N, 64 + static_cast<int>(std::ceil(32.0 / std::sqrt(std::max(dist, 1e-8)))));
    return std::min(N, kMaxPolynomialDegree);
}

}  // namespace

SlopeFit fit_loglog(const std::vector<double>& x, const std::vector<double>& y, double window) {
    if (x.size() != y.size()) throw ConfigError("slope fit needs matching x and y");
    double x_max = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i] > 0.0 && y[i] > 0.0) x_max = std::max(x_max, x[i]);
    }
    std::vector<double> lx;
    std::vector<double> ly;
    const auto collect = [&](double cutoff) {
        lx.clear();
        ly.clear();
        for (std::size_t i = 0; i < x.size(); ++i) {
            if (x[i] > 0.0 && y[i] > 0.0 && x[i] >= cutoff) {
                lx.push_back(std::log(x[i]));
                ly.push_back(std::log(y[i]));
            }
        }
    };
    collect(window > 0.0 ? x_max / window * (1.0 - 1e-12) : 0.0);
    if (lx.size() < 3) collect(0.0);
    SlopeFit fit;
    fit.points = static_cast<int>(lx.size());
    if (lx.size() < 2) return fit;
    const double n = static_cast<double>(lx.size());
    const double mx = std::accumulate(lx.begin(), lx.end(), 0.0) / n;
    const double my = std::accumulate(ly.begin(), ly.end(), 0.0) / n;
    double sxx = 0.0;
    double sxy = 0.0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        sxx += (lx[i] - mx) * (lx[i] - mx);
        sxy += (lx[i] - mx) * (ly[i] - my);
    }
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    if (lx.size() > 2) {
        double sse = 0.0;
        for (std::size_t i = 0; i < lx.size(); ++i) {
            const double e = ly[i] - fit.intercept - fit.slope * lx[i];
            sse += e * e;
        }
        fit.stderr_slope = std::sqrt(sse / (n - 2.0) / sxx);
    }
    return fit;
}

double last_dyad_growth(const std::vector<ReportRow>& rows) {
    double p_max = -kInf;
    for (const auto& row : rows) {
        if (!row.degenerate) p_max = std::max(p_max, row.parameter);
    }
    double head = 0.0;
    double all = 0.0;
    for (const auto& row : rows) {
        if (row.degenerate) continue;
        all = std::max(all, row.ratio);
        if (row.parameter <= 0.5 * p_max) head = std::max(head, row.ratio);
    }
    if (head == 0.0) return all == 0.0 ? 1.0 : kInf;
    return all / head;
}

bool InequalityReport::passed() const {
    return std::all_of(verdicts.begin(), verdicts.end(), [](const Verdict& v) { return v.passed; });
}

void InequalityReport::finalize() {
    std::stable_sort(rows.begin(), rows.end(),
                     [](const ReportRow& x, const ReportRow& y) { return x.parameter < y.parameter; });
    max_ratio = 0.0;
    for (const auto& row : rows) {
        if (!row.degenerate) max_ratio = std::max(max_ratio, row.ratio);
    }
}

nlohmann::json InequalityReport::to_json() const {
    nlohmann::json out;
    out["experiment"] = experiment;
    auto& jrows = out["rows"] = nlohmann::json::array();
    for (const auto& row : rows) {
        nlohmann::json j = {{"parameter", num(row.parameter)}, {"lhs", num(row.lhs)}, {"rhs", num(row.rhs)},
                            {"ratio", num(row.ratio)}, {"degenerate", row.degenerate}};
        if (!row.extra.empty()) j["extra"] = row.extra;
        jrows.push_back(std::move(j));
    }
    nlohmann::json summary = {{"max_ratio", num(max_ratio)}};
    if (fit) {
        summary["fitted_slope"] = fit->slope;
        summary["slope_stderr"] = fit->stderr_slope;
        summary["fit_points"] = fit->points;
    } else {
        summary["fitted_slope"] = nullptr;
        summary["slope_stderr"] = nullptr;
    }
    summary["target_slope"] = target_slope ? nlohmann::json(*target_slope) : nlohmann::json(nullptr);
    out["summary"] = summary;
    auto& jh = out["hypotheses"] = nlohmann::json::array();
    for (const auto& h : hypotheses) jh.push_back({{"condition", h.condition}, {"holds", h.holds}});
    auto& jv = out["verdicts"] = nlohmann::json::array();
    for (const auto& v : verdicts) jv.push_back({{"name", v.name}, {"passed", v.passed}, {"detail", v.detail}});
    out["passed"] = passed();
    out["metadata"] = metadata;
    if (!extra.empty()) out["extra"] = extra;
    return out;
}

void require_all(const std::vector<HypothesisCheck>& checks) {
    for (const auto& c : checks) {
        if (!c.holds) throw ConfigError("hypothesis violated: " + c.condition);
    }
}

ReportRow make_row(double parameter, double lhs, double rhs) {
    ReportRow row;
    row.parameter = parameter;
    row.lhs = lhs;
    row.rhs = rhs;
    if (rhs > 0.0) {
        row.ratio = lhs / rhs;
    } else if (lhs == 0.0) {
        row.degenerate = true;
    } else {
        row.ratio = kInf;
    }
    return row;
}

// ---- Landau ----

double LandauParams::h() const { return k - (inv(p) - inv(q)); }

nlohmann::json LandauParams::to_json() const {
    return {{"p", num(p)}, {"q", num(q)}, {"a", a}, {"b", b}, {"c", c}, {"d", d}, {"r", r}, {"k", k}, {"h", h()}};
}

std::vector<HypothesisCheck> landau_hypotheses(const LandauParams& lp) {
    std::vector<HypothesisCheck> checks;
    add(checks, "1 <= p", lp.p >= 1.0);
    add(checks, "p <= q", lp.p <= lp.q);
    add(checks, "(p, q) != (inf, inf)", !(std::isinf(lp.p) && std::isinf(lp.q)));
    add(checks, "a > -1/q", lp.a > -inv(lp.q));
    add(checks, "b > -1/q", lp.b > -inv(lp.q));
    add(checks, "c > -1/p", lp.c > -inv(lp.p));
    add(checks, "d > -1/p", lp.d > -inv(lp.p));
    add(checks, "r >= 0", lp.r >= 0);
    add(checks, "k >= 1", lp.k >= 1);
    return checks;
}

namespace {

struct LandauNorms {
    double low = 0.0;   // ||f^{(r)} w^{a,b}||_q
    double base = 0.0;  // ||f w^{c,d}||_p
    double high = 0.0;  // ||f^{(r+k)} w^{a+h+eps, b+h}||_p
};

LandauNorms landau_norms(const LandauParams& lp, const FunctionSpec& f, double eps) {
    LandauNorms out;
    out.low = product_norm(derivative_of(f, lp.r), lp.q, lp.a, lp.b);
    out.base = product_norm(f, lp.p, lp.c, lp.d);
    out.high = product_norm(derivative_of(f, lp.r + lp.k), lp.p, lp.a + lp.h() + eps, lp.b + lp.h());
    return out;
}

}  // namespace

InequalityReport landau_experiment(const LandauParams& lp, const std::vector<std::pair<double, FunctionSpec>>& family,
                                   double ratio_bound) {
    InequalityReport report;
    report.experiment = "landau";
    report.hypotheses = landau_hypotheses(lp);
    require_all(report.hypotheses);
    if (family.empty()) throw ConfigError("landau needs a non-empty function family");
    report.metadata = lp.to_json();

    report.rows.resize(family.size());
    parallel_for(family.size(), [&](std::size_t i) {
        const auto norms = landau_norms(lp, family[i].second, 0.0);
        auto row = make_row(family[i].first, norms.low, norms.base + norms.high);
        row.extra = {{"function", family[i].second.describe()}, {"base_norm", norms.base}, {"high_norm", norms.high}};
        report.rows[i] = std::move(row);
    });
    report.finalize();
    report.verdicts.push_back(bound_verdict("max_ratio bounded", report.max_ratio, ratio_bound));
    return report;
}

InequalityReport landau_family_experiment(const LandauParams& lp, int m, const std::vector<int>& n_grid,
                                          double ratio_bound, double fit_window) {
    InequalityReport report;
    report.experiment = "landau";
    report.hypotheses = landau_hypotheses(lp);
    add(report.hypotheses, "m > r + k", m > lp.r + lp.k);
    require_all(report.hypotheses);
    check_n_grid(n_grid);
    report.metadata = lp.to_json();
    report.metadata["m"] = m;
    report.metadata["n_grid"] = n_grid;

    std::vector<LandauNorms> norms(n_grid.size());
    parallel_for(n_grid.size(), [&](std::size_t i) {
        norms[i] = landau_norms(lp, FunctionSpec::sharpness(m, n_grid[i]), 0.0);
    });
    std::vector<double> ns;
    std::vector<double> low;
    std::vector<double> base;
    std::vector<double> high;
    for (std::size_t i = 0; i < n_grid.size(); ++i) {
        auto row = make_row(n_grid[i], norms[i].low, norms[i].base + norms[i].high);
        row.extra = {{"base_norm", norms[i].base}, {"high_norm", norms[i].high}};
        report.rows.push_back(std::move(row));
        ns.push_back(n_grid[i]);
        low.push_back(norms[i].low);
        base.push_back(norms[i].base);
        high.push_back(norms[i].high);
    }
    report.finalize();

    const SlopeFit f_low = fit_loglog(ns, low, fit_window);
    const SlopeFit f_base = fit_loglog(ns, base, fit_window);
    const SlopeFit f_high = fit_loglog(ns, high, fit_window);
    const double t_low = -(m - lp.r + lp.a + inv(lp.q));
    const double t_base = -(m + lp.c + inv(lp.p));
    const double t_high = -(m - lp.r - lp.k + lp.a + lp.h() + inv(lp.p));
    report.extra["component_slopes"] = {
        {"lhs", {{"fit", fit_json(f_low)}, {"target", t_low}}},
        {"base", {{"fit", fit_json(f_base)}, {"target", t_base}}},
        {"high", {{"fit", fit_json(f_high)}, {"target", t_high}}},
    };
    report.verdicts.push_back(slope_verdict("lhs norm slope", f_low, t_low, 0.05));
    report.verdicts.push_back(slope_verdict("base norm slope", f_base, t_base, 0.05));
    report.verdicts.push_back(slope_verdict("high norm slope", f_high, t_high, 0.05));
    report.verdicts.push_back(bound_verdict("max_ratio bounded", report.max_ratio, ratio_bound));
    report.verdicts.push_back(bound_verdict("last-dyad growth", last_dyad_growth(report.rows), 2.0));
    return report;
}

std::vector<HypothesisCheck> landau_sharpness_hypotheses(const LandauParams& lp, double eps, int m) {
    auto checks = landau_hypotheses(lp);
    const double gap = inv(lp.p) - inv(lp.q);
    add(checks, "eps > 0", eps > 0.0);
    add(checks, "eps <= c - a + r + 1/p - 1/q", eps <= lp.c - lp.a + lp.r + gap);
    add(checks, "a - c < r + 1/p - 1/q", lp.a - lp.c < lp.r + gap);
    add(checks, "m > r + k", m > lp.r + lp.k);
    return checks;
}

InequalityReport landau_sharpness_experiment(const LandauParams& lp, double eps, int m,
                                             const std::vector<int>& n_grid, double fit_window) {
    InequalityReport report;
    report.experiment = "landau-sharpness";
    report.hypotheses = landau_sharpness_hypotheses(lp, eps, m);
    require_all(report.hypotheses);
    check_n_grid(n_grid);
    report.metadata = lp.to_json();
    report.metadata["eps"] = eps;
    report.metadata["m"] = m;
    report.metadata["n_grid"] = n_grid;
    report.metadata["fit_window"] = fit_window;

    std::vector<LandauNorms> norms(n_grid.size());
    parallel_for(n_grid.size(), [&](std::size_t i) {
        norms[i] = landau_norms(lp, FunctionSpec::sharpness(m, n_grid[i]), eps);
    });
    std::vector<double> ns;
    std::vector<double> ratios;
    for (std::size_t i = 0; i < n_grid.size(); ++i) {
        auto row = make_row(n_grid[i], norms[i].low, norms[i].base + norms[i].high);
        row.extra = {{"base_norm", norms[i].base}, {"high_norm", norms[i].high}};
        ns.push_back(n_grid[i]);
        ratios.push_back(row.ratio);
        report.rows.push_back(std::move(row));
    }
    report.finalize();
    report.fit = fit_loglog(ns, ratios, fit_window);
    report.target_slope = eps;
    report.verdicts.push_back(slope_verdict("ratio slope", *report.fit, eps, 0.1));
    return report;
}

// ---- Hardy-Littlewood ----

double critical_sigma(double p, double q, const WeightExponents& weight) {
    return (2.0 * weight.a() + 2.0) * (inv(p) - inv(q));
}

namespace {

void add_interlacing(std::vector<HypothesisCheck>& checks, double p, double q, const WeightExponents& w,
                     const JacobiIndex& basis) {
    const double a = w.a();
    const double b = w.b();
    const double al = basis.alpha();
    const double be = basis.beta();
    add(checks, "alpha >= beta", al >= be);
    add(checks, "p(alpha - beta) <= 2(a - b)", p * (al - be) <= 2.0 * (a - b) + 1e-14);
    add(checks, "2(a - b) <= q(alpha - beta)", 2.0 * (a - b) <= q * (al - be) + 1e-14);
    add(checks, "alpha = a, or alpha > a and q > 2, or alpha < a and p < 2",
        al == a || (al > a && q > 2.0) || (al < a && p < 2.0));
}

}  // namespace

std::vector<HypothesisCheck> hardy_littlewood_hypotheses(double p, double q, const WeightExponents& weight,
                                                         const JacobiIndex& basis, double sigma) {
    std::vector<HypothesisCheck> checks;
    add(checks, "1 < p", p > 1.0);
    add(checks, "p < q", p < q);
    add(checks, "q < inf", std::isfinite(q));
    add(checks, "sigma > 0", sigma > 0.0);
    add(checks, "sigma >= (2a+2)(1/p - 1/q)", sigma >= critical_sigma(p, q, weight) - 1e-14);
    add(checks, "a >= b", weight.a() >= weight.b());
    if (basis == basis_of(weight)) {
        add(checks, "a + b >= -1", weight.a() + weight.b() >= -1.0);
    } else {
        add(checks, "a >= -1/2", weight.a() >= -0.5);
        add_interlacing(checks, p, q, weight, basis);
        const double A = (weight.a() + 1.0) * inv(p) - basis.alpha();
        const double B = (weight.b() + 1.0) * inv(p) - basis.beta();
        add(checks, "A = (a+1)/p - alpha is not a positive integer", !is_positive_integer(A));
        add(checks, "B = (b+1)/p - beta is not a positive integer", !is_positive_integer(B));
    }
    return checks;
}

int moment_count(double p, const WeightExponents& weight, const JacobiIndex& basis) {
    const double A = (weight.a() + 1.0) * inv(p) - basis.alpha();
    const double B = (weight.b() + 1.0) * inv(p) - basis.beta();
    return std::max(0, static_cast<int>(std::floor(A))) + std::max(0, static_cast<int>(std::floor(B)));
}

namespace {

struct HlMember {
    SpectralCoeffs coeffs;   // projected expansion in the operator basis
    double rhs = 0.0;        // ||f - S_{M-1} f||_p
    double tail = 0.0;       // relative l2 mass of the top quarter of coefficients
};

HlMember prepare_member(const FunctionSpec& f, double p, const WeightExponents& weight, const JacobiIndex& basis,
                        int moments) {
    HlMember m;
    m.coeffs = analyze(f, basis, expansion_degree(f));
    std::vector<double> low(m.coeffs.coeffs.begin(),
                            m.coeffs.coeffs.begin() + std::min<int>(moments, m.coeffs.size()));
    for (int k = 0; k < std::min<int>(moments, m.coeffs.size()); ++k) m.coeffs.coeffs[k] = 0.0;
    const FunctionSpec projected = low.empty() ? f : f.minus(BasisPolynomial(basis, low));
    m.rhs = lp_norm(projected, p, weight);
    double total = 0.0;
    double top = 0.0;
    const int n = m.coeffs.size();
    for (int k = 0; k < n; ++k) {
        const double c2 = m.coeffs.coeffs[k] * m.coeffs.coeffs[k];
        total += c2;
        if (k >= 3 * n / 4) top += c2;
    }
    m.tail = total > 0.0 ? std::sqrt(top / total) : 0.0;
    return m;
}

double hl_lhs(const HlMember& m, double sigma, double q, const WeightExponents& weight) {
    return lp_norm(fractional_integral(m.coeffs, sigma).to_polynomial(), q, weight);
}

}  // namespace

InequalityReport hardy_littlewood_experiment(double p, double q, const WeightExponents& weight,
                                             const JacobiIndex& basis, double sigma,
                                             const std::vector<std::pair<double, FunctionSpec>>& family,
                                             const HardyLittlewoodOptions& options) {
    InequalityReport report;
    report.experiment = "hardy-littlewood";
    report.hypotheses = hardy_littlewood_hypotheses(p, q, weight, basis, sigma);
    require_all(report.hypotheses);
    if (family.empty()) throw ConfigError("hardy-littlewood needs a non-empty function family");
    const int moments = moment_count(p, weight, basis);
    report.metadata = {{"p", p},
                       {"q", q},
                       {"weight", {weight.a(), weight.b()}},
                       {"basis", {basis.alpha(), basis.beta()}},
                       {"sigma", sigma},
                       {"critical_sigma", critical_sigma(p, q, weight)},
                       {"vanishing_moments", moments}};

    std::vector<HlMember> members(family.size());
    report.rows.resize(family.size());
    parallel_for(family.size(), [&](std::size_t i) {
        members[i] = prepare_member(family[i].second, p, weight, basis, moments);
        auto row = make_row(family[i].first, hl_lhs(members[i], sigma, q, weight), members[i].rhs);
        row.extra = {{"function", family[i].second.describe()},
                     {"expansion_degree", members[i].coeffs.size() - 1},
                     {"coefficient_tail", members[i].tail}};
        report.rows[i] = std::move(row);
    });
    report.finalize();
    const double growth = last_dyad_growth(report.rows);
    report.extra["last_dyad_growth"] = num(growth);
    report.verdicts.push_back(bound_verdict("last-dyad growth", growth, options.drift_bound));

    if (!options.probe_sigmas.empty()) {
        // exploratory: ratios below the critical exponent, reported but not asserted
        auto& probes = report.extra["subcritical_probes"] = nlohmann::json::array();
        for (double s : options.probe_sigmas) {
            std::vector<double> xs;
            std::vector<double> ratios(family.size());
            parallel_for(family.size(), [&](std::size_t i) {
                ratios[i] = members[i].rhs > 0.0 ? hl_lhs(members[i], s, q, weight) / members[i].rhs : 0.0;
            });
            for (const auto& member : family) xs.push_back(member.first);
            const auto fit = fit_loglog(xs, ratios);
            probes.push_back({{"sigma", s},
                              {"max_ratio", *std::max_element(ratios.begin(), ratios.end())},
                              {"fit", fit_json(fit)}});
        }
    }
    return report;
}

// ---- Ulyanov for K-functionals ----

std::vector<HypothesisCheck> ulyanov_k_hypotheses(double p, double q, double r, const WeightExponents& weight,
                                                  const JacobiIndex& basis) {
    std::vector<HypothesisCheck> checks;
    add(checks, "1 < p", p > 1.0);
    add(checks, "p < q", p < q);
    add(checks, "q < inf (the K-functional inequality needs finite q)", std::isfinite(q));
    add(checks, "r > 0", r > 0.0);
    add(checks, "a >= b", weight.a() >= weight.b());
    add(checks, "a >= -1/2", weight.a() >= -0.5);
    add(checks, "(a+1)/p - alpha < 1", (weight.a() + 1.0) * inv(p) - basis.alpha() < 1.0);
    add(checks, "(b+1)/p - beta < 1", (weight.b() + 1.0) * inv(p) - basis.beta() < 1.0);
    if (basis != basis_of(weight)) add_interlacing(checks, p, q, weight, basis);
    return checks;
}

double ulyanov_closed_form_rhs(double t, double lambda, double r, double sigma, double q, double u_min) {
    const double s = r + sigma;
    const double knee = 1.0 / lambda;
    const auto low_part = [&](double u) { return std::pow(lambda, s * q) * std::pow(u, r * q) / (r * q); };
    double total = 0.0;
    const double m = std::min(t, knee);
    if (m > u_min) total += low_part(m) - low_part(u_min);
    const double start = std::max(knee, u_min);
    if (t > start) total += (std::pow(start, -sigma * q) - std::pow(t, -sigma * q)) / (sigma * q);
    return std::pow(total, 1.0 / q);
}

InequalityReport ulyanov_k_experiment(double p, double q, double r, const WeightExponents& weight,
                                      const JacobiIndex& basis, const FunctionSpec& f,
                                      std::vector<double> t_grid, const UGrid& grid, KIntegrand integrand,
                                      double ratio_bound) {
    InequalityReport report;
    report.experiment = "ulyanov-k";
    report.hypotheses = ulyanov_k_hypotheses(p, q, r, weight, basis);
    require_all(report.hypotheses);
    t_grid = sorted_grid(std::move(t_grid), "t_grid");
    if (!(t_grid.front() > 0.0 && t_grid.back() < 1.0)) throw ConfigError("t_grid must lie in (0, 1)");
    const double sigma = critical_sigma(p, q, weight);
    const bool psi_closed = f.family() == "psi" && p == 2.0 && basis == basis_of(weight) &&
                            f.params().value("basis", std::vector<double>{}) ==
                                std::vector<double>{basis.alpha(), basis.beta()};
    if (integrand == KIntegrand::closed_form && !psi_closed) {
        throw ConfigError("closed-form integrand needs f = psi_k in the operator basis, p = 2 and (a,b) = (alpha,beta)");
    }
    const double lambda = psi_closed ? eigenvalue(f.params().at("k").get<int>(), basis) : 0.0;
    report.metadata = {{"p", p},
                       {"q", q},
                       {"r", r},
                       {"sigma", sigma},
                       {"weight", {weight.a(), weight.b()}},
                       {"basis", {basis.alpha(), basis.beta()}},
                       {"function", f.describe()},
                       {"u_min", grid.u_min},
                       {"points_per_dyad", grid.points_per_dyad},
                       {"integrand", integrand == KIntegrand::realized ? "realized" : "closed-form"}};

    const UCells cells(t_grid.back(), grid);
    const int n_max = static_cast<int>(std::floor(1.0 / grid.u_min));
    if (n_max > kMaxPolynomialDegree) throw ConfigError("u_min too small for the degree cap");

    // integrand per cell, realized K values shared between cells with the same n
    std::vector<double> values(cells.size());
    if (integrand == KIntegrand::closed_form) {
        for (std::size_t j = 0; j < cells.size(); ++j) {
            values[j] = std::pow(cells.mid[j], -sigma) * std::min(1.0, std::pow(cells.mid[j] * lambda, r + sigma));
        }
    } else {
        const NearBest engine_p(f, p, weight, n_max);
        std::map<int, double> by_n;
        for (double u : cells.mid) by_n.emplace(static_cast<int>(std::floor(1.0 / u)), 0.0);
        std::vector<int> ns;
        for (const auto& kv : by_n) ns.push_back(kv.first);
        std::vector<double> ks(ns.size());
        parallel_for(ns.size(), [&](std::size_t i) {
            ks[i] = k_spectral_realized(engine_p, r + sigma, 1.0 / (ns[i] + 0.5), basis);
        });
        for (std::size_t i = 0; i < ns.size(); ++i) by_n[ns[i]] = ks[i];
        for (std::size_t j = 0; j < cells.size(); ++j) {
            values[j] = std::pow(cells.mid[j], -sigma) * by_n.at(static_cast<int>(std::floor(1.0 / cells.mid[j])));
        }
    }

    const NearBest engine_q(f, q, weight, static_cast<int>(std::floor(1.0 / t_grid.front())));
    std::vector<double> lhs(t_grid.size());
    parallel_for(t_grid.size(), [&](std::size_t i) { lhs[i] = k_spectral_realized(engine_q, r, t_grid[i], basis); });

    double worst_tail = 0.0;
    for (std::size_t i = 0; i < t_grid.size(); ++i) {
        const auto [rhs, tail] = u_integral(cells, values, q, t_grid[i], grid.u_min);
        auto row = make_row(t_grid[i], lhs[i], rhs);
        row.extra["tail_fraction"] = tail;
        if (psi_closed) {
            const double exact = ulyanov_closed_form_rhs(t_grid[i], lambda, r, sigma, q, grid.u_min);
            row.extra["closed_form_rhs"] = exact;
            row.extra["closed_form_ratio"] = exact > 0.0 ? lhs[i] / exact : 0.0;
        }
        worst_tail = std::max(worst_tail, tail);
        report.rows.push_back(std::move(row));
    }
    report.finalize();
    report.verdicts.push_back(bound_verdict("max_ratio bounded", report.max_ratio, ratio_bound));
    report.verdicts.push_back(bound_verdict("u-integral tail share", worst_tail, 0.1));
    return report;
}

// ---- Ulyanov for moduli ----

std::vector<HypothesisCheck> ulyanov_moduli_hypotheses(double p, double q, int r, const WeightExponents& weight,
                                                       ModuliVariant variant) {
    std::vector<HypothesisCheck> checks;
    add(checks, "1 <= p", p >= 1.0);
    add(checks, "p < q", p < q);
    add(checks, "a >= b", weight.a() >= weight.b());
    add(checks, "b >= 0", weight.b() >= 0.0);
    add(checks, "r >= 1", r >= 1);
    if (variant == ModuliVariant::raised_order) {
        add(checks, "a = b = 0", weight.a() == 0.0 && weight.b() == 0.0);
        add(checks, "1/p - 1/q >= 1/2", inv(p) - inv(q) >= 0.5);
    }
    return checks;
}

InequalityReport ulyanov_moduli_experiment(double p, double q, int r, const WeightExponents& weight,
                                           const FunctionSpec& f, std::vector<double> t_grid, const UGrid& grid,
                                           ModuliVariant variant, double ratio_bound, int h_grid) {
    InequalityReport report;
    report.experiment = "ulyanov-moduli";
    report.hypotheses = ulyanov_moduli_hypotheses(p, q, r, weight, variant);
    require_all(report.hypotheses);
    t_grid = sorted_grid(std::move(t_grid), "t_grid");
    const double sigma = critical_sigma(p, q, weight);
    double exponent = sigma;
    int order = r + static_cast<int>(std::floor(sigma));
    if (variant == ModuliVariant::raised_order) {
        exponent = (p == 1.0 && std::isinf(q)) ? 2.0 : 1.0;
        order = r + static_cast<int>(exponent);
    }
    const double q1 = std::isinf(q) ? 1.0 : q;
    if (!(2.0 * order * t_grid.back() < 1.0)) {
        throw ConfigError("t_grid too coarse: the order-" + std::to_string(order) +
                          " modulus needs t < 1/(2 * " + std::to_string(order) + ")");
    }
    report.metadata = {{"p", num(p)},
                       {"q", num(q)},
                       {"r", r},
                       {"sigma", sigma},
                       {"u_exponent", exponent},
                       {"integrand_order", order},
                       {"q1", q1},
                       {"weight", {weight.a(), weight.b()}},
                       {"function", f.describe()},
                       {"u_min", grid.u_min},
                       {"points_per_dyad", grid.points_per_dyad},
                       {"h_grid", h_grid},
                       {"variant", variant == ModuliVariant::standard ? "standard" : "raised-order"}};

    const UCells cells(t_grid.back(), grid);
    std::vector<double> values(cells.size());
    parallel_for(cells.size(), [&](std::size_t j) {
        SmoothnessQuery sq{f, 1.0, 0.1, 2.0, {}, {}};
        sq.r = order;
        sq.t = cells.mid[j];
        sq.p = p;
        sq.norm_weight = weight;
        values[j] = std::pow(cells.mid[j], -exponent) * dt_modulus(sq, h_grid);
    });
    const double best_error = r >= 1 ? local_best_error(f, r - 1, p, weight, Interval()) : 0.0;

    std::vector<double> lhs(t_grid.size());
    parallel_for(t_grid.size(), [&](std::size_t i) {
        SmoothnessQuery sq{f, 1.0, 0.1, 2.0, {}, {}};
        sq.r = r;
        sq.t = t_grid[i];
        sq.p = q;
        sq.norm_weight = weight;
        lhs[i] = dt_modulus(sq, h_grid);
    });

    double worst_tail = 0.0;
    bool monotone = true;
    double prev_rhs = 0.0;
    for (std::size_t i = 0; i < t_grid.size(); ++i) {
        const auto [integral, tail] = u_integral(cells, values, q1, t_grid[i], grid.u_min);
        const double rhs = integral + std::pow(t_grid[i], r) * best_error;
        auto row = make_row(t_grid[i], lhs[i], rhs);
        row.extra = {{"integral", integral}, {"best_error_term", std::pow(t_grid[i], r) * best_error},
                     {"tail_fraction", tail}};
        worst_tail = std::max(worst_tail, tail);
        monotone = monotone && rhs >= prev_rhs;
        prev_rhs = rhs;
        report.rows.push_back(std::move(row));
    }
    report.finalize();
    report.extra["best_error"] = best_error;
    report.verdicts.push_back(bound_verdict("max_ratio bounded", report.max_ratio, ratio_bound));
    report.verdicts.push_back(bound_verdict("u-integral tail share", worst_tail, 0.1));
    report.verdicts.push_back({"rhs nondecreasing in t", monotone, monotone ? "yes" : "no"});
    return report;
}

// ---- polynomial inequalities ----

InequalityReport nikolskii_check(const std::vector<int>& n_grid, double p, double q, const WeightExponents& weight,
                                 int draws, std::uint64_t seed, double drift_bound) {
    InequalityReport report;
    report.experiment = "nikolskii";
    add(report.hypotheses, "1 <= p", p >= 1.0);
    add(report.hypotheses, "p < q", p < q);
    add(report.hypotheses, "draws >= 0", draws >= 0);
    require_all(report.hypotheses);
    check_n_grid(n_grid);
    const double sigma = critical_sigma(p, q, weight);
    report.metadata = {{"p", num(p)}, {"q", num(q)}, {"weight", {weight.a(), weight.b()}}, {"n_grid", n_grid},
                       {"draws", draws}, {"seed", seed}, {"exponent", sigma}};

    const JacobiIndex basis = basis_of(weight);
    std::vector<SweepItem> items;
    add_basis_functions(items, basis, n_grid);
    std::mt19937_64 rng(seed);
    for (std::size_t i = 0; i < n_grid.size(); ++i) {
        const int n = n_grid[i];
        add_kernels(items, i, basis, n, weight);
        auto random = n > 0 ? random_polynomials(basis, n, draws, rng) : std::vector<BasisPolynomial>{};
        for (std::size_t d = 0; d < random.size(); ++d) {
            items.push_back({i, std::move(random[d]), "draw_" + std::to_string(d)});
        }
    }
    std::vector<std::pair<double, double>> norms(items.size());
    parallel_for(items.size(), [&](std::size_t j) {
        norms[j] = {lp_norm(items[j].poly, q, weight), lp_norm(items[j].poly, p, weight)};
    });

    for (std::size_t i = 0; i < n_grid.size(); ++i) {
        const double scale = n_grid[i] > 0 ? std::pow(n_grid[i], sigma) : 1.0;
        ReportRow best;
        bool have = false;
        for (std::size_t j = 0; j < items.size(); ++j) {
            if (!items[j].in_row(i, n_grid)) continue;
            auto row = make_row(n_grid[i], norms[j].first, scale * norms[j].second);
            if (!have || row.ratio > best.ratio) {
                best = row;
                best.extra = {{"argmax", items[j].label}};
                have = true;
            }
        }
        report.rows.push_back(best);
    }
    report.finalize();
    const double growth = last_dyad_growth(report.rows);
    report.extra["last_dyad_growth"] = num(growth);
    report.verdicts.push_back(bound_verdict("last-dyad growth", growth, drift_bound));
    return report;
}

double phi_power_norm(const BasisPolynomial& g, double e, double p, const WeightExponents& weight) {
    check_norm_exponent(p);
    if (!(e >= 0.0)) throw ConfigError("phi power must be >= 0");
    if (g.is_zero()) return 0.0;
    if (std::isinf(p)) return sup_norm(FunctionSpec::polynomial(g).times_weight(0.5 * e, 0.5 * e));
    return lp_norm(g, p, WeightExponents(weight.a() + 0.5 * p * e, weight.b() + 0.5 * p * e));
}

InequalityReport two_weight_markov_check(const std::vector<int>& n_grid, int r, double sigma, double p,
                                         const WeightExponents& weight, int draws, std::uint64_t seed,
                                         double drift_bound) {
    InequalityReport report;
    report.experiment = "two-weight-markov";
    const int fl = static_cast<int>(std::floor(sigma));
    const double e_low = r + 2.0 * fl - sigma;
    const double e_high = r + fl;
    const int order = r + fl;
    add(report.hypotheses, "1 <= p", p >= 1.0);
    add(report.hypotheses, "sigma >= 0", sigma >= 0.0);
    add(report.hypotheses, "r >= 0", r >= 0);
    add(report.hypotheses, "r + 2[sigma] - sigma >= 0", e_low >= 0.0);
    add(report.hypotheses, "draws >= 0", draws >= 0);
    require_all(report.hypotheses);
    check_n_grid(n_grid);
    report.metadata = {{"p", num(p)}, {"r", r}, {"sigma", sigma}, {"weight", {weight.a(), weight.b()}},
                       {"n_grid", n_grid}, {"draws", draws}, {"seed", seed},
                       {"derivative_order", order}, {"phi_powers", {e_low, e_high}}};

    const JacobiIndex basis = basis_of(weight);
    std::vector<SweepItem> items;
    add_basis_functions(items, basis, n_grid);
    std::mt19937_64 rng(seed);
    for (std::size_t i = 0; i < n_grid.size(); ++i) {
        const int n = n_grid[i];
        add_kernels(items, i, basis, n, weight);
        auto random = n > 0 ? random_polynomials(basis, n, draws, rng) : std::vector<BasisPolynomial>{};
        for (std::size_t d = 0; d < random.size(); ++d) {
            items.push_back({i, std::move(random[d]), "draw_" + std::to_string(d)});
        }
    }
    std::vector<std::pair<double, double>> norms(items.size());
    parallel_for(items.size(), [&](std::size_t j) {
        const auto& P = items[j].poly;
        if (P.degree() < order) return;
        const BasisPolynomial D = derivative_shift(P, order);
        const double lhs = phi_power_norm(D, e_low, p, weight);
        norms[j] = {lhs, e_low == e_high ? lhs : phi_power_norm(D, e_high, p, weight)};
    });

    for (std::size_t i = 0; i < n_grid.size(); ++i) {
        const double scale = n_grid[i] > 0 ? std::pow(n_grid[i], sigma - fl) : 1.0;
        ReportRow best = make_row(n_grid[i], 0.0, 0.0);
        bool have = false;
        for (std::size_t j = 0; j < items.size(); ++j) {
            if (!items[j].in_row(i, n_grid)) continue;
            auto row = make_row(n_grid[i], norms[j].first, scale * norms[j].second);
            if (row.degenerate) continue;
            if (!have || row.ratio > best.ratio) {
                best = row;
                best.extra = {{"argmax", items[j].label}};
                have = true;
            }
        }
        report.rows.push_back(best);
    }
    report.finalize();
    const double growth = last_dyad_growth(report.rows);
    report.extra["last_dyad_growth"] = num(growth);
    report.verdicts.push_back(bound_verdict("last-dyad growth", growth, drift_bound));
    if (sigma == fl) {
        bool exact = true;
        for (const auto& row : report.rows) exact = exact && (row.degenerate || row.ratio == 1.0);
        report.verdicts.push_back({"integer sigma gives ratio 1", exact, exact ? "all rows 1" : "mismatch"});
    }
    return report;
}

// ---- smoothness sweeps ----

InequalityReport modulus_experiment(const FunctionSpec& f, int r, double p, const WeightExponents& weight,
                                    std::vector<double> t_grid, double ratio_bound) {
    InequalityReport report;
    report.experiment = "modulus";
    add(report.hypotheses, "r >= 1", r >= 1);
    add(report.hypotheses, "1 <= p", p >= 1.0);
    require_all(report.hypotheses);
    t_grid = sorted_grid(std::move(t_grid), "t_grid");
    report.metadata = {{"p", num(p)}, {"r", r}, {"weight", {weight.a(), weight.b()}}, {"function", f.describe()}};

    const NearBest engine(f, p, weight, static_cast<int>(std::floor(1.0 / t_grid.front())));
    std::vector<ModulusParts> parts(t_grid.size());
    std::vector<double> kphi(t_grid.size());
    parallel_for(t_grid.size(), [&](std::size_t i) {
        SmoothnessQuery sq{f, 1.0, 0.1, 2.0, {}, {}};
        sq.r = r;
        sq.t = t_grid[i];
        sq.p = p;
        sq.norm_weight = weight;
        parts[i] = dt_modulus_parts(sq);
        kphi[i] = k_phi_realized(engine, r, t_grid[i]);
    });
    bool sandwich = true;
    bool monotone = true;
    for (std::size_t i = 0; i < t_grid.size(); ++i) {
        auto row = make_row(t_grid[i], parts[i].total(), kphi[i]);
        row.extra = {{"main", parts[i].main}, {"edge_lo", parts[i].edge_lo}, {"edge_hi", parts[i].edge_hi}};
        if (!row.degenerate) sandwich = sandwich && row.ratio <= ratio_bound && row.ratio >= 1.0 / ratio_bound;
        if (i > 0) monotone = monotone && parts[i].total() + 1e-12 >= parts[i - 1].total();
        report.rows.push_back(std::move(row));
    }
    report.finalize();
    report.verdicts.push_back({"modulus / K_phi within [1/C, C]", sandwich, "C = " + fmt(ratio_bound)});
    report.extra["modulus_monotone_in_t"] = monotone;
    return report;
}

InequalityReport kfunctional_experiment(const FunctionSpec& f, double r, double p, const WeightExponents& weight,
                                        const JacobiIndex& basis, std::vector<double> t_grid, double ratio_bound) {
    InequalityReport report;
    report.experiment = "kfunctional";
    add(report.hypotheses, "r > 0", r > 0.0);
    add(report.hypotheses, "1 < p < inf", p > 1.0 && std::isfinite(p));
    add(report.hypotheses, "(a+1)/p - alpha < 1", (weight.a() + 1.0) * inv(p) - basis.alpha() < 1.0);
    add(report.hypotheses, "(b+1)/p - beta < 1", (weight.b() + 1.0) * inv(p) - basis.beta() < 1.0);
    require_all(report.hypotheses);
    t_grid = sorted_grid(std::move(t_grid), "t_grid");
    report.metadata = {{"p", p}, {"r", r}, {"weight", {weight.a(), weight.b()}},
                       {"basis", {basis.alpha(), basis.beta()}}, {"function", f.describe()}};

    const NearBest engine(f, p, weight, static_cast<int>(std::floor(1.0 / t_grid.front())));
    std::vector<double> realized(t_grid.size());
    std::vector<double> direct(t_grid.size());
    parallel_for(t_grid.size(), [&](std::size_t i) {
        SmoothnessQuery sq{f, 1.0, 0.1, 2.0, {}, {}};
        sq.r = r;
        sq.t = t_grid[i];
        sq.p = p;
        sq.norm_weight = weight;
        sq.operator_basis = basis;
        realized[i] = k_spectral_realized(engine, r, t_grid[i], basis);
        direct[i] = k_spectral_direct(sq);
    });
    bool upper = true;
    for (std::size_t i = 0; i < t_grid.size(); ++i) {
        upper = upper && direct[i] <= realized[i] + 1e-12;
        report.rows.push_back(make_row(t_grid[i], realized[i], direct[i]));
    }
    report.finalize();
    report.verdicts.push_back({"direct bound <= realized", upper, upper ? "yes" : "no"});
    report.verdicts.push_back(bound_verdict("max_ratio bounded", report.max_ratio, ratio_bound));
    return report;
}

InequalityReport operator_ratio_sweep(int r, double p, const WeightExponents& weight, const JacobiIndex& basis,
                                 int k_max, double drift_bound) {
    InequalityReport report;
    report.experiment = "operator-ratio";
    add(report.hypotheses, "r >= 1", r >= 1);
    add(report.hypotheses, "k_max >= r", k_max >= r);
    add(report.hypotheses, "(a+1)/p - alpha < 1", (weight.a() + 1.0) * inv(p) - basis.alpha() < 1.0);
    add(report.hypotheses, "(b+1)/p - beta < 1", (weight.b() + 1.0) * inv(p) - basis.beta() < 1.0);
    require_all(report.hypotheses);
    report.metadata = {{"p", num(p)}, {"r", r}, {"weight", {weight.a(), weight.b()}},
                       {"basis", {basis.alpha(), basis.beta()}}, {"k_max", k_max}};

    std::vector<OperatorRatios> out(k_max + 1);
    parallel_for(out.size(), [&](std::size_t k) {
        out[k] = operator_ratio_check(BasisPolynomial::unit(basis, static_cast<int>(k)), r, p, weight);
    });
    std::vector<ReportRow> second_rows;
    for (int k = 0; k <= k_max; ++k) {
        auto row = make_row(k, out[k].phi_derivative, out[k].spectral);
        auto second = make_row(k, out[k].spectral_high, out[k].phi_derivative);
        row.extra = {{"second_lhs", second.lhs}, {"second_rhs", second.rhs}, {"second_ratio", num(second.ratio)},
                     {"second_degenerate", second.degenerate}};
        report.rows.push_back(std::move(row));
        second_rows.push_back(second);
    }
    report.finalize();
    double second_max = 0.0;
    for (const auto& row : second_rows) {
        if (!row.degenerate) second_max = std::max(second_max, row.ratio);
    }
    const double g1 = last_dyad_growth(report.rows);
    const double g2 = last_dyad_growth(second_rows);
    report.extra = {{"second_max_ratio", num(second_max)}, {"first_growth", num(g1)}, {"second_growth", num(g2)}};
    report.verdicts.push_back(bound_verdict("first ratio last-dyad growth", g1, drift_bound));
    report.verdicts.push_back(bound_verdict("second ratio last-dyad growth", g2, drift_bound));
    return report;
}

InequalityReport expand_experiment(const FunctionSpec& f, const JacobiIndex& basis, int degree) {
    if (degree < 0) throw ConfigError("degree must be >= 0");
    InequalityReport report;
    report.experiment = "expand";
    report.metadata = {{"function", f.describe()}, {"basis", {basis.alpha(), basis.beta()}}, {"degree", degree}};
    std::vector<double> values(degree + 1, 0.0);
    const auto& params = f.params();
    const bool same_basis = params.contains("basis") &&
                            params.at("basis").get<std::vector<double>>() ==
                                std::vector<double>{basis.alpha(), basis.beta()};
    if (same_basis && f.family() == "psi") {
        // already expanded in this basis: report exactly
        const int k = params.at("k").get<int>();
        if (k <= degree) values[k] = 1.0;
    } else if (same_basis && f.family() == "poly") {
        const auto c = params.at("coeffs").get<std::vector<double>>();
        for (int k = 0; k < std::min<int>(degree + 1, static_cast<int>(c.size())); ++k) values[k] = c[k];
    } else {
        const auto coeffs = analyze(f, basis, degree);
        for (int k = 0; k < std::min(degree + 1, coeffs.size()); ++k) {
            values[k] = std::abs(coeffs.coeffs[k]) < 1e-14 ? 0.0 : coeffs.coeffs[k];
        }
    }
    for (int k = 0; k <= degree; ++k) {
        ReportRow row;
        row.parameter = k;
        row.lhs = values[k];
        row.rhs = 1.0;
        row.ratio = values[k];
        report.rows.push_back(row);
    }
    report.finalize();
    report.extra["coefficients"] = values;
    return report;
}

}  // namespace ulab
