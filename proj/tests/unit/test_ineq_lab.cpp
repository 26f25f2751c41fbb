#include <doctest.h>

#include <cmath>

#include "ulab/ineq_lab.hpp"
#include "ulab/jacobi.hpp"
#include "ulab/norms.hpp"

using namespace ulab;

TEST_CASE("log-log fit recovers an exact power law and uses the last decade") {
    std::vector<double> x{1, 2, 4, 8, 16, 32, 64, 128};
    std::vector<double> y;
    for (double v : x) y.push_back(3.0 * std::pow(v, -1.5) * (v < 10 ? 2.0 : 1.0));
    const auto fit = fit_loglog(x, y, 10.0);
    CHECK(fit.points == 4);
    CHECK(fit.slope == doctest::Approx(-1.5).epsilon(1e-12));
    CHECK(fit.stderr_slope <= 1e-10);
    CHECK(fit_loglog(x, y, 0.0).points == 8);
}

TEST_CASE("last-dyad growth and degenerate rows") {
    std::vector<ReportRow> rows{make_row(4, 1, 2), make_row(8, 1, 1), make_row(16, 3, 1), make_row(32, 0, 0)};
    CHECK(rows[3].degenerate);
    CHECK(rows[0].ratio == 0.5);
    CHECK(last_dyad_growth(rows) == doctest::Approx(3.0));
    CHECK(make_row(1, 1, 0).ratio == kInf);
}

TEST_CASE("hypothesis failures name the violated condition") {
    LandauParams lp;
    lp.p = 3.0;
    lp.q = 2.0;
    try {
        landau_experiment(lp, {{0.0, FunctionSpec::monomial(3)}}, 10.0);
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find("p <= q") != std::string::npos);
    }
    CHECK_THROWS_AS(landau_sharpness_experiment(LandauParams{}, 0.0, 4, {8, 16}), ConfigError);
    CHECK_THROWS_AS(hardy_littlewood_experiment(2.0, 2.0, {}, {}, 0.5, {{1.0, FunctionSpec::absolute()}}),
                    ConfigError);
    CHECK_THROWS_AS(ulyanov_k_experiment(2.0, kInf, 1.0, {}, {}, FunctionSpec::absolute(), {0.1}), ConfigError);
}

TEST_CASE("Landau: polynomials below the order give ratio 0") {
    LandauParams lp;
    lp.p = 2.0;
    lp.q = 4.0;
    lp.r = 3;
    lp.k = 1;
    const auto report = landau_experiment(lp, {{0.0, FunctionSpec::monomial(2)}, {1.0, FunctionSpec::cosine(1.0)}}, 1e3);
    CHECK(report.rows[0].lhs == 0.0);
    CHECK(report.rows[0].ratio == 0.0);
    CHECK(report.rows[1].ratio > 0.0);
    CHECK(report.passed());
}

TEST_CASE("Landau: sharpness family norm slopes") {
    LandauParams lp;
    lp.p = 2.0;
    lp.q = 4.0;
    lp.c = 0.5;
    lp.d = 0.5;
    const auto report = landau_family_experiment(lp, 4, {8, 16, 32, 64, 128, 256, 512}, 1e6);
    CHECK(report.passed());
    const auto& slopes = report.extra.at("component_slopes");
    CHECK(slopes.at("base").at("fit").at("slope").get<double>() == doctest::Approx(-5.0).epsilon(0.01));
}

TEST_CASE("Landau sharpness: ratio grows like n^eps") {
    LandauParams lp;
    for (double eps : {0.2, 0.5}) {
        const auto report = landau_sharpness_experiment(lp, eps, 4, {16, 32, 64, 128, 256, 512});
        REQUIRE(report.fit);
        CHECK(report.fit->slope == doctest::Approx(eps).epsilon(0.1));
        CHECK(report.passed());
    }
}

TEST_CASE("Landau sharpness: doubling m leaves the ratio slope at eps") {
    LandauParams lp;
    const std::vector<int> grid{16, 32, 64, 128, 256, 512};
    const auto base = landau_sharpness_experiment(lp, 0.25, 4, grid);
    const auto doubled = landau_sharpness_experiment(lp, 0.25, 8, grid);
    REQUIRE(base.fit);
    REQUIRE(doubled.fit);
    CHECK(doubled.fit->slope == doctest::Approx(base.fit->slope).epsilon(0.1));
    CHECK(doubled.passed());
}

TEST_CASE("Hardy-Littlewood: I_sigma multiplies psi_k coefficients by lambda_k^{-sigma}") {
    const JacobiIndex basis(0.0, 0.0);
    const int k = 5;
    const auto report = hardy_littlewood_experiment(2.0, 4.0, {0.0, 0.0}, basis, 0.5,
                                                    {{1.0, FunctionSpec::jacobi_psi(k, basis)}});
    const double expected = std::pow(eigenvalue(k, basis), -0.5) *
                            lp_norm(BasisPolynomial::unit(basis, k), 4.0, {0.0, 0.0});
    CHECK(report.rows[0].lhs == doctest::Approx(expected).epsilon(1e-12));
    CHECK(report.rows[0].rhs == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("Hardy-Littlewood: hypothesis set for a different operator basis") {
    const auto checks = hardy_littlewood_hypotheses(2.0, 4.0, {0.0, 0.0}, {0.5, 0.5}, 0.5);
    CHECK_NOTHROW(require_all(checks));
    // alpha > a needs q > 2
    CHECK_THROWS_AS(require_all(hardy_littlewood_hypotheses(1.5, 2.0, {0.0, 0.0}, {0.5, 0.5}, 1.0)), ConfigError);
    CHECK(moment_count(1.2, {2.0, 0.0}, {0.0, 0.0}) == 2);
}

TEST_CASE("Ulyanov K: closed-form rhs for a basis function") {
    const double lambda = eigenvalue(5, {0.0, 0.0});
    // only the upper regime: (int_{1/lambda}^t u^{-sigma q - 1} du + low part)^{1/q}
    const double v = ulyanov_closed_form_rhs(0.5, lambda, 1.0, 0.5, 4.0, 1.0 / 4096.0);
    const double low = std::pow(lambda, 6.0) * (std::pow(1.0 / lambda, 4.0) - std::pow(1.0 / 4096.0, 4.0)) / 4.0;
    const double high = (std::pow(lambda, 2.0) - std::pow(0.5, -2.0)) / 2.0;
    CHECK(v == doctest::Approx(std::pow(low + high, 0.25)).epsilon(1e-13));

    const auto report = ulyanov_k_experiment(2.0, 4.0, 1.0, {0.0, 0.0}, {0.0, 0.0},
                                             FunctionSpec::jacobi_psi(5, {0.0, 0.0}), {1.0 / 8, 1.0 / 32, 1.0 / 128},
                                             UGrid{}, KIntegrand::closed_form);
    for (const auto& row : report.rows) {
        CHECK(row.rhs == doctest::Approx(row.extra.at("closed_form_rhs").get<double>()).epsilon(5e-3));
    }
    CHECK(report.passed());
}

TEST_CASE("Ulyanov moduli: polynomials below the order are degenerate rows") {
    const auto report = ulyanov_moduli_experiment(2.0, 4.0, 2, {0.0, 0.0}, FunctionSpec::monomial(1),
                                                  {1.0 / 16, 1.0 / 32}, UGrid{1.0 / 256, 4});
    for (const auto& row : report.rows) CHECK(row.degenerate);
    CHECK_THROWS_AS(ulyanov_moduli_experiment(2.0, 4.0, 2, {0.0, 0.0}, FunctionSpec::monomial(1), {0.3}),
                    ConfigError);
    CHECK_THROWS_AS(require_all(ulyanov_moduli_hypotheses(2.0, 4.0, 1, {0.0, 0.0}, ModuliVariant::raised_order)),
                    ConfigError);
}

TEST_CASE("Nikolskii: constants, the L2 to L_inf kernel constant, homogeneity") {
    const WeightExponents w(0.0, 0.0);
    const auto zero = nikolskii_check({0}, 2.0, 4.0, w);
    // ||1||_4 / ||1||_2 with unit weight: 2^{1/4} / 2^{1/2}
    CHECK(zero.rows[0].ratio == doctest::Approx(std::pow(2.0, -0.25)).epsilon(1e-12));

    const auto report = nikolskii_check({4, 16}, 2.0, kInf, w, 2);
    // the endpoint kernel attains (n+1)/sqrt(2)
    CHECK(report.rows[0].ratio == doctest::Approx(5.0 / (4.0 * std::sqrt(2.0))).epsilon(1e-9));
    CHECK(report.rows[1].ratio == doctest::Approx(17.0 / (16.0 * std::sqrt(2.0))).epsilon(1e-9));

    const auto P = BasisPolynomial(JacobiIndex(0.0, 0.0), {0.3, -1.0, 2.0});
    const double r1 = lp_norm(P, 4.0, w) / lp_norm(P, 2.0, w);
    const double r5 = lp_norm(P.scaled(5.0), 4.0, w) / lp_norm(P.scaled(5.0), 2.0, w);
    CHECK(r1 == doctest::Approx(r5).epsilon(1e-13));
}

TEST_CASE("Nikolskii draws are reproducible") {
    const auto a = nikolskii_check({8}, 1.0, 3.0, {0.5, 0.0}, 4, 7).to_json();
    const auto b = nikolskii_check({8}, 1.0, 3.0, {0.5, 0.0}, 4, 7).to_json();
    CHECK(a.dump() == b.dump());
}

TEST_CASE("two-weight Markov: integer sigma gives ratio exactly 1") {
    const auto report = two_weight_markov_check({4, 8, 16}, 1, 1.0, 2.0, {0.0, 0.0});
    for (const auto& row : report.rows) CHECK(row.ratio == 1.0);
    CHECK(report.passed());
    const auto low = two_weight_markov_check({1}, 1, 1.0, 2.0, {0.0, 0.0});
    CHECK(low.rows[0].degenerate);
}

TEST_CASE("two-weight Markov: phi power norm matches the weight shift") {
    const JacobiIndex basis(0.0, 0.0);
    const auto g = BasisPolynomial::unit(basis, 3);
    CHECK(phi_power_norm(g, 1.0, 2.0, {0.0, 0.0}) ==
          doctest::Approx(lp_norm(g, 2.0, {1.0, 1.0})).epsilon(1e-12));
    CHECK(phi_power_norm(g, 0.0, 3.0, {0.2, 0.1}) == doctest::Approx(lp_norm(g, 3.0, {0.2, 0.1})).epsilon(1e-12));
}

TEST_CASE("derivative and operator ratio sweep stays bounded") {
    const auto report = operator_ratio_sweep(1, 2.0, {0.0, 0.0}, {0.0, 0.0}, 16);
    CHECK(report.rows[0].degenerate);
    for (std::size_t k = 1; k < report.rows.size(); ++k) {
        CHECK(report.rows[k].ratio == doctest::Approx(1.0).epsilon(1e-9));
    }
    CHECK(report.passed());
}

TEST_CASE("expand reports exact unit coefficients for psi_k") {
    const auto report = expand_experiment(FunctionSpec::jacobi_psi(3, {0.0, 0.0}), {0.0, 0.0}, 5);
    const std::vector<double> expected{0, 0, 0, 1, 0, 0};
    CHECK(report.extra.at("coefficients").get<std::vector<double>>() == expected);
    const auto other = expand_experiment(FunctionSpec::monomial(1), {0.0, 0.0}, 3);
    CHECK(other.rows[1].lhs == doctest::Approx(std::sqrt(2.0 / 3.0)).epsilon(1e-12));
}

TEST_CASE("modulus and K-functional sweeps") {
    const auto m = modulus_experiment(FunctionSpec::absolute(), 2, 2.0, {0.0, 0.0}, {0.2, 0.1, 0.05});
    CHECK(m.passed());
    const auto k = kfunctional_experiment(FunctionSpec::absolute(), 1.0, 3.0, {0.0, 0.0}, {0.0, 0.0}, {0.25, 0.1});
    CHECK(k.passed());
}

TEST_CASE("report JSON carries rows, summary and verdicts") {
    const auto j = operator_ratio_sweep(1, 2.0, {0.0, 0.0}, {0.0, 0.0}, 4).to_json();
    CHECK(j.at("rows").size() == 5);
    CHECK(j.at("summary").contains("max_ratio"));
    CHECK(j.at("verdicts").size() == 2);
    CHECK(j.at("passed").get<bool>());
}
