#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "ulab/function_spec.hpp"
#include "ulab/types.hpp"

namespace ulab {

struct ReportRow {
    double parameter = 0.0;
    double lhs = 0.0;
    double rhs = 0.0;
    double ratio = 0.0;        // lhs / rhs; 0 for degenerate rows
    bool degenerate = false;   // lhs = rhs = 0
    nlohmann::json extra = nlohmann::json::object();
};

struct SlopeFit {
    double slope = 0.0;
    double intercept = 0.0;
    double stderr_slope = 0.0;
    int points = 0;
};

/// Least squares of log y against log x over the points with x >= x_max / window
/// (the whole set when fewer than three points fall in the window). Points with y <= 0
/// are skipped.
SlopeFit fit_loglog(const std::vector<double>& x, const std::vector<double>& y, double window = 10.0);

/// max over all rows divided by max over rows with parameter <= parameter_max / 2.
double last_dyad_growth(const std::vector<ReportRow>& rows);

struct Verdict {
    std::string name;
    bool passed = false;
    std::string detail;
};

struct HypothesisCheck {
    std::string condition;
    bool holds = false;
};

struct InequalityReport {
    std::string experiment;
    std::vector<ReportRow> rows;
    double max_ratio = 0.0;
    std::optional<SlopeFit> fit;
    std::optional<double> target_slope;
    std::vector<HypothesisCheck> hypotheses;
    std::vector<Verdict> verdicts;
    nlohmann::json metadata = nlohmann::json::object();
    nlohmann::json extra = nlohmann::json::object();

    bool passed() const;
    /// Sorts rows by parameter and fills max_ratio.
    void finalize();
    nlohmann::json to_json() const;
};

/// Throws ConfigError naming the first failed condition.
void require_all(const std::vector<HypothesisCheck>& checks);

/// Row from lhs and rhs with the degenerate flag set when both vanish.
ReportRow make_row(double parameter, double lhs, double rhs);

// ---- Landau-type inequality ----

struct LandauParams {
    double p = 2.0;
    double q = 2.0;
    double a = 0.0;
    double b = 0.0;
    double c = 0.0;
    double d = 0.0;
    int r = 1;
    int k = 1;
    double h() const;
    nlohmann::json to_json() const;
};

std::vector<HypothesisCheck> landau_hypotheses(const LandauParams& lp);

/// ||f^{(r)} w^{a,b}||_q against ||f w^{c,d}||_p + ||f^{(r+k)} w^{a+h,b+h}||_p for each member.
InequalityReport landau_experiment(const LandauParams& lp, const std::vector<std::pair<double, FunctionSpec>>& family,
                                   double ratio_bound);

/// Sharpness family f_n: the three component norms per n plus their fitted slopes.
InequalityReport landau_family_experiment(const LandauParams& lp, int m, const std::vector<int>& n_grid,
                                          double ratio_bound, double fit_window = 10.0);

std::vector<HypothesisCheck> landau_sharpness_hypotheses(const LandauParams& lp, double eps, int m);

/// Ratio with the perturbed weight w^{a+h+eps, b+h} along f_n; the target slope is eps.
InequalityReport landau_sharpness_experiment(const LandauParams& lp, double eps, int m,
                                             const std::vector<int>& n_grid, double fit_window = 10.0);

// ---- Hardy-Littlewood inequality for I_sigma ----

double critical_sigma(double p, double q, const WeightExponents& weight);

std::vector<HypothesisCheck> hardy_littlewood_hypotheses(double p, double q, const WeightExponents& weight,
                                                         const JacobiIndex& basis, double sigma);

/// Number of low coefficients that must vanish: max(0,[A]) + max(0,[B]).
int moment_count(double p, const WeightExponents& weight, const JacobiIndex& basis);

struct HardyLittlewoodOptions {
    double drift_bound = 2.0;
    std::vector<double> probe_sigmas;   // exploratory, never asserted
};

InequalityReport hardy_littlewood_experiment(double p, double q, const WeightExponents& weight,
                                             const JacobiIndex& basis, double sigma,
                                             const std::vector<std::pair<double, FunctionSpec>>& family,
                                             const HardyLittlewoodOptions& options = {});

// ---- Ulyanov inequalities ----

struct UGrid {
    double u_min = 1.0 / 4096.0;
    int points_per_dyad = 16;
};

enum class KIntegrand { realized, closed_form };

std::vector<HypothesisCheck> ulyanov_k_hypotheses(double p, double q, double r, const WeightExponents& weight,
                                                  const JacobiIndex& basis);

/// (int_{u_min}^t (u^{-sigma} min(1, (u lambda)^{r+sigma}))^q du/u)^{1/q}.
double ulyanov_closed_form_rhs(double t, double lambda, double r, double sigma, double q, double u_min);

InequalityReport ulyanov_k_experiment(double p, double q, double r, const WeightExponents& weight,
                                      const JacobiIndex& basis, const FunctionSpec& f,
                                      std::vector<double> t_grid, const UGrid& grid = {},
                                      KIntegrand integrand = KIntegrand::realized, double ratio_bound = 20.0);

enum class ModuliVariant { standard, raised_order };

std::vector<HypothesisCheck> ulyanov_moduli_hypotheses(double p, double q, int r, const WeightExponents& weight,
                                                       ModuliVariant variant);

InequalityReport ulyanov_moduli_experiment(double p, double q, int r, const WeightExponents& weight,
                                           const FunctionSpec& f, std::vector<double> t_grid,
                                           const UGrid& grid = {}, ModuliVariant variant = ModuliVariant::standard,
                                           double ratio_bound = 20.0, int h_grid = 32);

// ---- polynomial inequalities ----

inline constexpr std::uint64_t kDefaultSeed = 20240611;

/// ||P||_q / (n^{(2a+2)(1/p-1/q)} ||P||_p) maximised over psi_k (k <= n) and seeded random draws.
InequalityReport nikolskii_check(const std::vector<int>& n_grid, double p, double q, const WeightExponents& weight,
                                 int draws = 8, std::uint64_t seed = kDefaultSeed, double drift_bound = 2.0);

/// ||phi^e g||_{L_p(w^{a,b})} for a real power e >= 0.
double phi_power_norm(const BasisPolynomial& g, double e, double p, const WeightExponents& weight);

/// ||phi^{r+2[s]-s} P^{(r+[s])}||_p against n^{s-[s]} ||phi^{r+[s]} P^{(r+[s])}||_p.
InequalityReport two_weight_markov_check(const std::vector<int>& n_grid, int r, double sigma, double p,
                                         const WeightExponents& weight, int draws = 8,
                                         std::uint64_t seed = kDefaultSeed, double drift_bound = 2.0);

// ---- smoothness sweeps ----

/// dt_modulus against k_phi_realized across t; asserts the ratio lies in [1/bound, bound].
InequalityReport modulus_experiment(const FunctionSpec& f, int r, double p, const WeightExponents& weight,
                                    std::vector<double> t_grid, double ratio_bound = 100.0);

/// k_spectral_realized against k_spectral_direct across t.
InequalityReport kfunctional_experiment(const FunctionSpec& f, double r, double p, const WeightExponents& weight,
                                        const JacobiIndex& basis, std::vector<double> t_grid,
                                        double ratio_bound = 20.0);

/// Both derivative/operator ratios over Q = psi_k^{(alpha,beta)}, r <= k <= k_max.
InequalityReport operator_ratio_sweep(int r, double p, const WeightExponents& weight, const JacobiIndex& basis,
                                 int k_max, double drift_bound = 2.0);

/// Coefficients 0..degree of f in the basis as rows (parameter k, lhs coefficient, rhs 1).
InequalityReport expand_experiment(const FunctionSpec& f, const JacobiIndex& basis, int degree);

}  // namespace ulab
