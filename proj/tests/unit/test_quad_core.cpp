#include <doctest.h>

#include <cmath>
#include <utility>
#include <vector>

#include "ulab/norms.hpp"
#include "ulab/quadrature.hpp"

using namespace ulab;

namespace {

const std::vector<WeightExponents> kWeights{{0.0, 0.0}, {-0.5, -0.5}, {1.3, 0.7}, {0.5, -0.3}};

// x^m = sum_j C(m,j) (1+x)^j (-1)^{m-j}; each term is a Beta integral.
// Returns the moment and the sum of absolute terms (the cancellation scale).
std::pair<double, double> binomial_moment(double a, double b, int m) {
    long double sum = 0.0L;
    long double scale = 0.0L;
    long double binom = 1.0L;
    for (int j = 0; j <= m; ++j) {
        const long double beta_int = std::exp((a + b + j + 1) * std::log(2.0L) + std::lgamma(a + 1.0L) +
                                              std::lgamma(b + j + 1.0L) - std::lgamma(a + b + j + 2.0L));
        sum += binom * ((m - j) % 2 == 0 ? 1.0L : -1.0L) * beta_int;
        scale += binom * beta_int;
        binom = binom * (m - j) / (j + 1);
    }
    return {static_cast<double>(sum), static_cast<double>(scale)};
}

}  // namespace

TEST_CASE("moments: trivial and Beta values") {
    const auto m = jacobi_moments({0.0, 0.0}, 3);
    CHECK(m[0] == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(std::abs(m[1]) < 1e-15);
    CHECK(m[2] == doctest::Approx(2.0 / 3.0).epsilon(1e-14));
    CHECK(jacobi_moments({1.0, 0.0}, 0)[0] == doctest::Approx(2.0).epsilon(1e-14));
}

TEST_CASE("moments: recurrence agrees with the binomial Beta expansion") {
    for (const auto& w : kWeights) {
        const auto m = jacobi_moments(w, 12);
        for (int k = 0; k <= 12; ++k) {
            const auto [oracle, scale] = binomial_moment(w.a(), w.b(), k);
            CHECK(std::abs(m[k] - oracle) <= 1e-14 * scale);
        }
    }
}

TEST_CASE("gauss_jacobi_rule: small closed forms") {
    auto r1 = gauss_jacobi_rule({0.0, 0.0}, 1);
    CHECK(r1.nodes[0] == doctest::Approx(0.0));
    CHECK(r1.weights[0] == doctest::Approx(2.0));

    auto r2 = gauss_jacobi_rule({0.0, 0.0}, 2);
    CHECK(r2.nodes[0] == doctest::Approx(-1.0 / std::sqrt(3.0)).epsilon(1e-14));
    CHECK(r2.nodes[1] == doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-14));
    CHECK(r2.weights[0] == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(r2.weights[1] == doctest::Approx(1.0).epsilon(1e-14));

    const WeightExponents w(1.3, 0.7);
    auto g = gauss_jacobi_rule(w, 1);
    CHECK(g.nodes[0] == doctest::Approx((0.7 - 1.3) / 4.0).epsilon(1e-14));
    CHECK(g.weights[0] == doctest::Approx(jacobi_moments(w, 0)[0]).epsilon(1e-14));
}

TEST_CASE("gauss_jacobi_rule: exact on degree <= 2n-1, ordered and positive") {
    for (const auto& w : kWeights) {
        const auto m = jacobi_moments(w, 127);
        for (int n = 1; n <= 64; ++n) {
            const auto rule = gauss_jacobi_rule(w, n);
            REQUIRE(rule.nodes.size() == static_cast<std::size_t>(n));
            for (int i = 0; i < n; ++i) {
                CHECK(rule.weights[i] > 0.0);
                CHECK(std::abs(rule.nodes[i]) < 1.0);
                if (i > 0) CHECK(rule.nodes[i] > rule.nodes[i - 1]);
            }
            for (int deg = 0; deg <= 2 * n - 1; ++deg) {
                double s = 0.0;
                for (int i = 0; i < n; ++i) s += rule.weights[i] * std::pow(rule.nodes[i], deg);
                CHECK(std::abs(s - m[deg]) <= 1e-10 * (1.0 + std::abs(m[deg])));
            }
        }
    }
}

TEST_CASE("gauss_jacobi_rule: rejects n < 1") {
    CHECK_THROWS_AS(gauss_jacobi_rule({0.0, 0.0}, 0), ConfigError);
}

TEST_CASE("weighted_lp_norm: constants give the Beta mass") {
    CHECK(weighted_lp_norm(FunctionSpec::constant(1.0), 2.0, {0.0, 0.0}) ==
          doctest::Approx(std::sqrt(2.0)).epsilon(1e-13));
    for (const auto& w : kWeights) {
        for (double p : {1.0, 1.5, 2.0, 3.0}) {
            const double mass = jacobi_moments(w, 0)[0];
            CHECK(weighted_lp_norm(FunctionSpec::constant(1.0), p, w) ==
                  doctest::Approx(std::pow(mass, 1.0 / p)).epsilon(1e-12));
        }
    }
}

TEST_CASE("weighted_lp_norm: homogeneity, interval monotonicity, Hoelder") {
    const auto f = FunctionSpec::cosine(3.0);
    const WeightExponents w(0.5, -0.3);
    const double base = weighted_lp_norm(f, 3.0, w);
    CHECK(weighted_lp_norm(f.scaled(-2.5), 3.0, w) == doctest::Approx(2.5 * base).epsilon(1e-12));

    const double inner = weighted_lp_norm(f, 3.0, w, Interval(-0.5, 0.9));
    const double outer = weighted_lp_norm(f, 3.0, w, Interval(-0.9, 1.0));
    CHECK(inner <= outer);
    CHECK(outer <= base * (1.0 + 1e-12));

    const auto poly = FunctionSpec::jacobi_psi(5, {0.0, 0.0});
    for (const auto& wt : kWeights) {
        const double mass = jacobi_moments(wt, 0)[0];
        const double n2 = weighted_lp_norm(poly, 2.0, wt);
        const double n4 = weighted_lp_norm(poly, 4.0, wt);
        CHECK(n2 <= n4 * std::pow(mass, 0.5 - 0.25) * (1.0 + 1e-8));
    }
}

TEST_CASE("weighted_lp_norm: kinked and singular integrands") {
    // int_{-1}^{1} |x| dx = 1
    CHECK(weighted_lp_norm(FunctionSpec::absolute(), 1.0, {0.0, 0.0}) == doctest::Approx(1.0).epsilon(1e-12));
    // int (1-x)^{-0.4} dx over [-1,1] = 2^{0.6}/0.6
    const double expected = std::pow(2.0, 0.6) / 0.6;
    CHECK(weighted_lp_norm(FunctionSpec::endpoint_power(-0.4), 1.0, {0.0, 0.0}) ==
          doctest::Approx(expected).epsilon(1e-8));
    // sharpness family: int_{x0}^{1} (x-x0)^{2m} dx = n^{-(2m+1)}/(2m+1)
    const int m = 3;
    const int n = 50;
    const double exact = std::sqrt(std::pow(n, -(2.0 * m + 1)) / (2 * m + 1));
    CHECK(weighted_lp_norm(FunctionSpec::sharpness(m, n), 2.0, {0.0, 0.0}) ==
          doctest::Approx(exact).epsilon(1e-12));
    // odd p across sign changes: int |x^3| dx = 1/2
    CHECK(weighted_lp_norm(FunctionSpec::monomial(3), 1.0, {0.0, 0.0}) == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("sup_norm: closed forms and monotonicity") {
    CHECK(sup_norm(FunctionSpec::monomial(1)) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(sup_norm(FunctionSpec::jacobi_psi(2, {0.0, 0.0})) == doctest::Approx(std::sqrt(2.5)).epsilon(1e-14));
    CHECK(sup_norm(FunctionSpec::constant(0.0)) == 0.0);
    const auto f = FunctionSpec::cosine(7.3);
    double prev = 0.0;
    for (int res : {17, 33, 65, 129, 257, 1025}) {
        const double s = sup_norm(f, Interval(-0.3, 0.8), res);
        CHECK(s >= prev);
        prev = s;
    }
    CHECK(prev == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("norms reject bad inputs") {
    CHECK_THROWS_AS(weighted_lp_norm(FunctionSpec::constant(1.0), 0.5, {0.0, 0.0}), ConfigError);
    CHECK_THROWS_AS(Interval(0.5, 0.5), ConfigError);
    CHECK_THROWS_AS(WeightExponents(-1.0, 0.0), ConfigError);
}
