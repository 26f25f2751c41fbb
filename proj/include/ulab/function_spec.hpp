#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "ulab/jacobi.hpp"

namespace ulab {

/// Closed-form test function on [-1, 1] with metadata the quadrature needs:
/// kink abscissae (points where some derivative jumps), endpoint singularities,
/// and exact derivatives up to a declared order.
class FunctionSpec {
public:
    using Evaluator = std::function<double(double)>;
    using DerivativeFactory = std::function<FunctionSpec(int)>;

    struct Traits {
        std::vector<double> kinks;
        bool singular_at_minus_one = false;
        bool singular_at_plus_one = false;
        std::optional<int> polynomial_degree;
        int degree_hint = 0;                 // resolution needed by a polynomial-exact rule
        int max_derivative_order = -1;       // -1: unlimited; 0: none available
    };

    FunctionSpec(std::string family, nlohmann::json params, Evaluator eval, Traits traits,
                 DerivativeFactory derivatives = {});

    static FunctionSpec polynomial(const BasisPolynomial& p);
    static FunctionSpec jacobi_psi(int k, const JacobiIndex& basis);
    /// ((x + 1/n - 1)_+)^m, kink at 1 - 1/n.
    static FunctionSpec sharpness(int m, int n);
    /// (1 - x)^gamma.
    static FunctionSpec endpoint_power(double gamma);
    /// cos(pi * omega * x).
    static FunctionSpec cosine(double omega);
    static FunctionSpec absolute();
    static FunctionSpec monomial(int degree);
    static FunctionSpec constant(double value);
    /// Wraps an arbitrary closure; no exact derivatives.
    static FunctionSpec custom(std::string name, Evaluator eval, std::vector<double> kinks = {},
                               bool smooth = true);

    double operator()(double x) const { return eval_(x); }

    /// Exact derivative as a new FunctionSpec (order 0 returns *this).
    FunctionSpec derivative_function(int order) const;
    double derivative(int order, double x) const { return derivative_function(order)(x); }
    bool has_derivative(int order) const;

    std::span<const double> kinks() const { return traits_.kinks; }
    const Traits& traits() const { return traits_; }
    std::optional<int> polynomial_degree() const { return traits_.polynomial_degree; }
    const std::string& family() const { return family_; }
    const nlohmann::json& params() const { return params_; }
    nlohmann::json describe() const;

    FunctionSpec scaled(double c) const;
    /// f - P.
    FunctionSpec minus(const BasisPolynomial& p) const;
    /// f(x) * (1-x)^c * (1+x)^d.
    FunctionSpec times_weight(double c, double d) const;

    /// Checks every declared kink against a one-sided jump in some available derivative.
    bool verify_kinks() const;

private:
    std::string family_;
    nlohmann::json params_;
    Evaluator eval_;
    Traits traits_;
    DerivativeFactory derivatives_;
};

/// Family {f_n : n in grid} of the sharpness construction.
std::vector<FunctionSpec> sharpness_family(int m, std::span<const int> n_grid);

/// Builds a FunctionSpec from a JSON description such as
/// {"family": "cos", "omega": 2} or {"family": "psi", "k": 3, "basis": [0, 0]}.
FunctionSpec function_from_json(const nlohmann::json& spec);

}  // namespace ulab
