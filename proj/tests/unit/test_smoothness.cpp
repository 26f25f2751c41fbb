#include <doctest.h>

#include <cmath>

#include "ulab/norms.hpp"
#include "ulab/smoothness.hpp"

using namespace ulab;

namespace {

SmoothnessQuery make_query(FunctionSpec f, double r, double t, double p, WeightExponents w = {},
                           JacobiIndex basis = {}) {
    return SmoothnessQuery{std::move(f), r, t, p, w, basis};
}

}  // namespace

TEST_CASE("direct K-functional of a basis function is min(1, (t lambda_k)^r)") {
    const JacobiIndex basis(0.0, 0.0);
    for (int k : {1, 3, 8}) {
        for (double r : {0.5, 1.0, 2.0}) {
            for (double t : {0.05, 0.2, 0.6}) {
                const auto q = make_query(FunctionSpec::jacobi_psi(k, basis), r, t, 2.0, {0.0, 0.0}, basis);
                const double expected = std::min(1.0, std::pow(t * eigenvalue(k, basis), r));
                CHECK(k_spectral_direct(q) == doctest::Approx(expected).epsilon(1e-6));
            }
        }
    }
}

TEST_CASE("realized K-functional dominates the direct bound up to the near-best constant") {
    const auto f = FunctionSpec::absolute();
    for (double t : {0.25, 0.1, 0.05}) {
        const auto q = make_query(f, 1.0, t, 3.0);
        const double direct = k_spectral_direct(q);
        const double realized = k_spectral_realized(q);
        CHECK(direct > 0.0);
        CHECK(realized >= 0.5 * direct);
        CHECK(realized <= 100.0 * direct);
    }
}

TEST_CASE("realized K-functional needs 1 < p < inf") {
    CHECK_THROWS_AS(k_spectral_realized(make_query(FunctionSpec::absolute(), 1.0, 0.1, 1.0)), ConfigError);
    CHECK_THROWS_AS(k_spectral_realized(make_query(FunctionSpec::absolute(), 1.0, 0.1, kInf)), ConfigError);
    CHECK_THROWS_AS(k_spectral_realized(make_query(FunctionSpec::absolute(), 1.0, 1.5, 2.0)), ConfigError);
}

TEST_CASE("modulus of x in the uniform norm") {
    for (double t : {0.02, 0.05, 0.1}) {
        const auto parts = dt_modulus_parts(make_query(FunctionSpec::monomial(1), 1.0, t, kInf));
        CHECK(parts.main == doctest::Approx(t).epsilon(1e-9));
        CHECK(parts.edge_lo == doctest::Approx(2.0 * t * t).epsilon(1e-6));
        CHECK(parts.edge_hi == doctest::Approx(2.0 * t * t).epsilon(1e-6));
    }
}

TEST_CASE("modulus annihilates polynomials below the order") {
    for (double p : {1.0, 2.0, kInf}) {
        const auto parts = dt_modulus_parts(make_query(FunctionSpec::monomial(2), 3.0, 0.05, p, {0.5, 0.0}));
        CHECK(parts.main <= 1e-10);
        CHECK(parts.total() <= 1e-10);
    }
}

TEST_CASE("modulus of a smooth function scales like t^r") {
    const auto f = FunctionSpec::cosine(1.0);
    const double w1 = dt_modulus(make_query(f, 2.0, 0.02, 2.0));
    const double w2 = dt_modulus(make_query(f, 2.0, 0.01, 2.0));
    CHECK(std::log2(w1 / w2) == doctest::Approx(2.0).epsilon(0.05));
}

TEST_CASE("modulus rejects an empty inner interval and fractional order") {
    CHECK_THROWS_AS(dt_modulus(make_query(FunctionSpec::absolute(), 2.0, 0.3, 2.0)), ConfigError);
    CHECK_THROWS_AS(dt_modulus(make_query(FunctionSpec::absolute(), 1.5, 0.05, 2.0)), ConfigError);
}

TEST_CASE("phi difference kinks follow the shifted kink") {
    const auto diff = phi_difference(FunctionSpec::absolute(), 1, 0.1, Interval(-0.9, 0.9));
    CHECK(diff.kinks().size() == 2);
    for (double x : diff.kinks()) {
        const double y = std::abs(x + 0.05 * phi(x)) < std::abs(x - 0.05 * phi(x)) ? x + 0.05 * phi(x)
                                                                                  : x - 0.05 * phi(x);
        CHECK(std::abs(y) <= 1e-12);
    }
}

TEST_CASE("phi-weighted norm of a polynomial") {
    const JacobiIndex basis(0.0, 0.0);
    const auto g = BasisPolynomial::unit(basis, 4);
    // ||phi g||_2 with unit weight is ||g||_{L_2(w^{1,1})}
    const double direct = weighted_lp_norm(FunctionSpec::polynomial(g).times_weight(0.5, 0.5), 2.0, {0.0, 0.0});
    CHECK(phi_weighted_norm(g, 1, 2.0, {0.0, 0.0}) == doctest::Approx(direct).epsilon(1e-10));
    const double sup = sup_norm(FunctionSpec::polynomial(g).times_weight(1.0, 1.0));
    CHECK(phi_weighted_norm(g, 2, kInf, {0.0, 0.0}) == doctest::Approx(sup).epsilon(1e-12));
}

TEST_CASE("K_phi of a polynomial below the order is its near-best error") {
    const auto q = make_query(FunctionSpec::monomial(1), 2.0, 0.1, 2.0);
    CHECK(k_phi_realized(q) <= 1e-12);
}

TEST_CASE("derivative/operator ratios on single basis functions at p = 2") {
    const JacobiIndex basis(0.0, 0.0);
    const WeightExponents w(0.0, 0.0);
    for (int k : {1, 2, 5, 9}) {
        const auto r1 = operator_ratio_check(BasisPolynomial::unit(basis, k), 1, 2.0, w);
        REQUIRE(r1.first);
        CHECK(*r1.first == doctest::Approx(1.0).epsilon(1e-9));
        REQUIRE(r1.second);
        CHECK(*r1.second == doctest::Approx(1.0).epsilon(1e-9));
    }
    for (int k : {2, 3, 7}) {
        const auto r2 = operator_ratio_check(BasisPolynomial::unit(basis, k), 2, 2.0, w);
        REQUIRE(r2.first);
        const double expected = std::sqrt((k - 1.0) * (k + 2.0) / (k * (k + 1.0)));
        CHECK(*r2.first == doctest::Approx(expected).epsilon(1e-9));
    }
}

TEST_CASE("derivative/operator ratios: degenerate cases") {
    const JacobiIndex basis(0.5, 0.5);
    const auto constant = operator_ratio_check(BasisPolynomial::unit(basis, 0), 1, 3.0, {0.5, 0.5});
    CHECK_FALSE(constant.first);
    CHECK_FALSE(constant.second);
    const auto low = operator_ratio_check(BasisPolynomial::unit(basis, 1), 2, 3.0, {0.5, 0.5});
    CHECK(low.phi_derivative == 0.0);
    CHECK_FALSE(low.second);
    CHECK(low.first);
    CHECK(*low.first == 0.0);
}

TEST_CASE("expansion condition") {
    CHECK_NOTHROW(check_expansion_condition(2.0, {0.0, 0.0}, {0.0, 0.0}));
    CHECK_THROWS_AS(check_expansion_condition(1.0, {1.0, 0.0}, {-0.5, 0.0}), ConfigError);
    CHECK_THROWS_AS(check_expansion_condition(1.2, {0.0, 3.0}, {0.0, 0.0}), ConfigError);
}
