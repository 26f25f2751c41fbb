#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace ulab {

/// Invalid parameters or a violated theorem hypothesis. The message names the failed condition.
class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A numerical routine could not produce a result (e.g. eigen-solve failure).
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Exponents of the Jacobi weight (1-x)^a (1+x)^b on [-1,1]; a is the exponent at x=1.
class WeightExponents {
public:
    WeightExponents() = default;
    WeightExponents(double a, double b) : a_(a), b_(b) {
        if (!(a > -1.0) || !(b > -1.0) || !std::isfinite(a) || !std::isfinite(b)) {
            throw ConfigError("weight exponents must satisfy a > -1 and b > -1 (got a=" +
                              std::to_string(a) + ", b=" + std::to_string(b) + ")");
        }
    }

    double a() const { return a_; }
    double b() const { return b_; }

    /// w(x) = (1-x)^a (1+x)^b
    double operator()(double x) const {
        return std::pow(1.0 - x, a_) * std::pow(1.0 + x, b_);
    }

    friend bool operator==(const WeightExponents&, const WeightExponents&) = default;

private:
    double a_ = 0.0;
    double b_ = 0.0;
};

/// Index (alpha, beta) of a Jacobi polynomial system.
class JacobiIndex {
public:
    JacobiIndex() = default;
    JacobiIndex(double alpha, double beta) : alpha_(alpha), beta_(beta) {
        if (!(alpha > -1.0) || !(beta > -1.0) || !std::isfinite(alpha) || !std::isfinite(beta)) {
            throw ConfigError("Jacobi index must satisfy alpha > -1 and beta > -1 (got alpha=" +
                              std::to_string(alpha) + ", beta=" + std::to_string(beta) + ")");
        }
    }

    double alpha() const { return alpha_; }
    double beta() const { return beta_; }

    WeightExponents weight() const { return {alpha_, beta_}; }

    friend bool operator==(const JacobiIndex&, const JacobiIndex&) = default;

private:
    double alpha_ = 0.0;
    double beta_ = 0.0;
};

inline JacobiIndex basis_of(const WeightExponents& w) { return {w.a(), w.b()}; }

/// Closed subinterval [lo, hi] of [-1, 1].
class Interval {
public:
    Interval() = default;
    Interval(double lo, double hi) : lo_(lo), hi_(hi) {
        if (!(lo >= -1.0) || !(hi <= 1.0) || !(lo < hi)) {
            throw ConfigError("interval must satisfy -1 <= lo < hi <= 1 (got [" + std::to_string(lo) +
                              ", " + std::to_string(hi) + "])");
        }
    }

    double lo() const { return lo_; }
    double hi() const { return hi_; }
    double length() const { return hi_ - lo_; }
    bool contains(double x) const { return x >= lo_ && x <= hi_; }
    bool is_full() const { return lo_ == -1.0 && hi_ == 1.0; }

    friend bool operator==(const Interval&, const Interval&) = default;

private:
    double lo_ = -1.0;
    double hi_ = 1.0;
};

/// Norm exponent p in [1, inf]; infinity selects the uniform norm.
inline void check_norm_exponent(double p) {
    if (!(p >= 1.0)) {
        throw ConfigError("norm exponent must satisfy p >= 1 (got " + std::to_string(p) + ")");
    }
}

}  // namespace ulab
