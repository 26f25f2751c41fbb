#include <doctest.h>

#include <cmath>

#include "ulab/approx.hpp"
#include "ulab/norms.hpp"
#include "ulab/quadrature.hpp"

using namespace ulab;

TEST_CASE("best_approx_l2: exact cases and orthogonality") {
    const WeightExponents w(0.5, -0.3);
    const JacobiIndex b(0.5, -0.3);
    const auto poly = FunctionSpec::polynomial(BasisPolynomial(b, {1.0, -2.0, 0.5}));
    const auto r = best_approx_l2(poly, 3, w);
    CHECK(r.error < 1e-14);
    CHECK(r.approximant.coeff(1) == doctest::Approx(-2.0));

    const auto next = best_approx_l2(FunctionSpec::jacobi_psi(5, b), 4, w);
    CHECK(next.error == doctest::Approx(1.0).epsilon(1e-12));
    for (double c : next.approximant.coeffs()) CHECK(std::abs(c) < 1e-13);

    // residual orthogonal to Pi_n
    const auto f = FunctionSpec::cosine(2.3);
    const auto fit = best_approx_l2(f, 6, w);
    const auto rule = gauss_jacobi_rule(w, 80);
    for (int j = 0; j <= 6; ++j) {
        double s = 0.0;
        for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
            const double x = rule.nodes[i];
            s += rule.weights[i] * (f(x) - fit.approximant(x)) * eval_orthonormal(j, b, x);
        }
        CHECK(std::abs(s) < 1e-8);
    }
    // error matches the direct norm of the residual
    CHECK(fit.error == doctest::Approx(weighted_lp_norm(f.minus(fit.approximant), 2.0, w)).epsilon(1e-8));
}

TEST_CASE("best_approx_lp: polynomials, p = 2 agreement, large-p Chebyshev limit") {
    const WeightExponents w(0.0, 0.0);
    const auto cube = FunctionSpec::monomial(3);
    const auto r = best_approx_lp(cube, 3, 3.0, w, 1e-10);
    CHECK(r.error <= 1e-10 * weighted_lp_norm(cube, 3.0, w));

    const auto f = FunctionSpec::cosine(1.7);
    const auto l2 = best_approx_l2(f, 4, w);
    const auto irls = best_approx_lp(f, 4, 2.0, w, 1e-10);
    CHECK(irls.error == doctest::Approx(l2.error).epsilon(1e-8));

    // E_1(x^2) in L_p tends to the minimax value 1/2 times 2^{1/p}
    const auto sq = FunctionSpec::monomial(2);
    const auto big = best_approx_lp(sq, 1, 60.0, w, 1e-12);
    CHECK(big.error / std::pow(2.0, 1.0 / 60.0) == doctest::Approx(0.5).epsilon(0.03));
}

TEST_CASE("best_approx_lp: objective decreases with degree, p = 1 surrogate") {
    const WeightExponents w(0.5, 0.5);
    const auto f = FunctionSpec::absolute();
    double prev = 1e300;
    for (int n = 0; n <= 8; ++n) {
        const auto r = best_approx_lp(f, n, 4.0, w, 1e-10);
        CHECK(r.converged);
        CHECK(r.error <= prev * (1.0 + 1e-8));
        prev = r.error;
    }
    const auto l1 = best_approx_lp(f, 2, 1.0, w, 1e-10);
    CHECK(l1.surrogate);
    CHECK(l1.error > 0.0);
}

TEST_CASE("best_approx_sup: Chebyshev and midrange oracles") {
    const auto sq = best_approx_sup(FunctionSpec::monomial(2), 1);
    CHECK(sq.error == doctest::Approx(0.5).epsilon(1e-10));
    CHECK(sq.converged);
    const auto ab = best_approx_sup(FunctionSpec::absolute(), 0);
    CHECK(ab.error == doctest::Approx(0.5).epsilon(1e-10));
    const auto poly = best_approx_sup(FunctionSpec::monomial(4), 4);
    CHECK(poly.error < 1e-12);
    // x^{n+1} has minimax error 2^{-n}
    const auto x6 = best_approx_sup(FunctionSpec::monomial(6), 5);
    CHECK(x6.error == doctest::Approx(std::pow(2.0, -5)).epsilon(1e-8));
    const auto c = best_approx_sup(FunctionSpec::cosine(4.0), 12);
    CHECK(c.converged);
}

TEST_CASE("local_best_error: oracles and monotonicity") {
    const WeightExponents w(0.0, 0.0);
    CHECK(local_best_error(FunctionSpec::monomial(1), 0, kInf, w, Interval(0.9, 1.0)) ==
          doctest::Approx(0.05).epsilon(1e-10));
    CHECK(local_best_error(FunctionSpec::monomial(2), 2, 3.0, {1.0, 0.5}, Interval(0.8, 1.0)) < 1e-12);
    const auto f = FunctionSpec::cosine(3.0);
    const double small = local_best_error(f, 1, 2.5, {0.5, 0.0}, Interval(0.95, 1.0));
    const double large = local_best_error(f, 1, 2.5, {0.5, 0.0}, Interval(0.9, 1.0));
    CHECK(small <= large);
}

TEST_CASE("near_best: reproduction, projection, bounded against best") {
    const WeightExponents w(0.0, 0.0);
    const auto poly = FunctionSpec::jacobi_psi(3, {0.0, 0.0});
    const auto p4 = near_best(poly, 5, 4.0, w);
    CHECK(p4.coeff(3) == doctest::Approx(1.0).epsilon(1e-12));

    const auto f = FunctionSpec::cosine(2.0);
    const auto proj = near_best(f, 6, 2.0, w);
    CHECK(weighted_lp_norm(f.minus(proj), 2.0, w) == doctest::Approx(best_approx_l2(f, 6, w).error).epsilon(1e-8));

    for (int n : {8, 32, 128, 256}) {
        const auto fn = FunctionSpec::sharpness(4, n);
        const NearBest engine(fn, 4.0, w, 6);
        const double achieved = engine(6).error;
        const double best = best_approx_lp(fn, 6, 4.0, w, 1e-10).error;
        CHECK(achieved <= kNearBestConstant * best);
    }
}
