#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "ulab/norms.hpp"
#include "ulab/spectral.hpp"

using namespace ulab;

namespace {

const std::vector<JacobiIndex> kBases{{0.0, 0.0}, {-0.5, -0.5}, {1.3, 0.7}, {0.5, -0.3}};

BasisPolynomial sample_polynomial(const JacobiIndex& b, int degree) {
    std::vector<double> c;
    for (int k = 0; k <= degree; ++k) c.push_back(std::sin(0.7 * k + 0.3) / std::sqrt(1.0 + k));
    return {b, c};
}

}  // namespace

TEST_CASE("analyze: unit vectors and constants") {
    const JacobiIndex b(1.3, 0.7);
    const auto c = analyze(FunctionSpec::jacobi_psi(3, b), b, 8);
    for (int k = 0; k <= 8; ++k) CHECK(std::abs(c.coeffs[k] - (k == 3 ? 1.0 : 0.0)) < 1e-12);

    const auto one = analyze(FunctionSpec::constant(1.0), {0.0, 0.0}, 5);
    CHECK(one.coeffs[0] == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
    for (int k = 1; k <= 5; ++k) CHECK(std::abs(one.coeffs[k]) < 1e-14);
}

TEST_CASE("analyze: linearity on a kinked function") {
    const auto f = FunctionSpec::sharpness(3, 20);
    const auto c1 = analyze(f, {0.5, -0.3}, 30);
    const auto c2 = analyze(f.scaled(2.0), {0.5, -0.3}, 30);
    for (int k = 0; k <= 30; ++k) CHECK(c2.coeffs[k] == doctest::Approx(2.0 * c1.coeffs[k]).epsilon(1e-12));
}

TEST_CASE("analyze/synthesize round trip on degree-40 polynomials") {
    for (const auto& b : kBases) {
        const auto p = sample_polynomial(b, 40);
        const auto c = analyze(FunctionSpec::polynomial(p), b, 40);
        for (int j = 0; j < 100; ++j) {
            const double x = std::cos(std::numbers::pi * (j + 0.5) / 100);
            CHECK(std::abs(synthesize(c, x) - p(x)) < 1e-10);
        }
    }
    CHECK(synthesize(SpectralCoeffs{{0.0, 0.0}, {1.0}}, 0.4) == doctest::Approx(1.0 / std::sqrt(2.0)));
    CHECK(synthesize(SpectralCoeffs{{0.0, 0.0}, {}}, 0.4) == 0.0);
}

TEST_CASE("Parseval at p = 2") {
    for (const auto& b : kBases) {
        const auto p = sample_polynomial(b, 40);
        double s = 0.0;
        for (double c : p.coeffs()) s += c * c;
        const double n = weighted_lp_norm(FunctionSpec::polynomial(p), 2.0, b.weight());
        CHECK(std::abs(n * n - s) < 1e-9);
    }
}

TEST_CASE("fractional operators: multiplier algebra") {
    const JacobiIndex b(0.0, 0.0);
    const SpectralCoeffs c{b, {0.5, 1.0, -2.0, 0.25, 3.0}};
    const auto di = fractional_derivative(fractional_integral(c, 0.7), 0.7);
    CHECK(di.coeffs[0] == 0.0);
    for (int k = 1; k < 5; ++k) CHECK(di.coeffs[k] == doctest::Approx(c.coeffs[k]).epsilon(1e-15));

    const auto ii = fractional_integral(fractional_integral(c, 0.3), 1.1);
    const auto i14 = fractional_integral(c, 1.4);
    for (int k = 0; k < 5; ++k) CHECK(ii.coeffs[k] == doctest::Approx(i14.coeffs[k]).epsilon(1e-14));

    const auto e0 = fractional_integral(SpectralCoeffs{b, {1.0}}, 2.0);
    CHECK(e0.coeffs[0] == 1.0);
    const auto e1 = fractional_derivative(SpectralCoeffs{b, {0.0, 1.0}}, 2.0);
    CHECK(e1.coeffs[1] == doctest::Approx(2.0).epsilon(1e-15));

    const auto tiny = fractional_integral(c, 1e-12);
    for (int k = 0; k < 5; ++k) CHECK(std::abs(tiny.coeffs[k] - c.coeffs[k]) <= 1e-9 * std::abs(c.coeffs[k]));

    double prev = 2.0;
    for (int k = 1; k < 50; ++k) {
        const double m = std::pow(eigenvalue(k, b), -0.5);
        CHECK(m < prev);
        prev = m;
    }
    CHECK_THROWS_AS(fractional_integral(c, 0.0), ConfigError);
}

TEST_CASE("D_2 matches the Jacobi differential operator on psi_k") {
    // P y = -(1/w) d/dx (w (1 - x^2) y'), eigenvalue lambda_k^2
    const JacobiIndex b(0.5, -0.3);
    const auto w = b.weight();
    for (int k = 1; k <= 8; ++k) {
        const auto psi = BasisPolynomial::unit(b, k);
        const auto d1 = derivative_shift(psi, 1);
        const auto g = [&](double x) { return w(x) * (1.0 - x * x) * d1(x); };
        const auto d2 = fractional_derivative(SpectralCoeffs::from_polynomial(psi), 2.0).to_polynomial();
        const double h = 1e-3;
        for (double x : {-0.6, 0.1, 0.7}) {
            const double dg = (-g(x + 2 * h) + 8 * g(x + h) - 8 * g(x - h) + g(x - 2 * h)) / (12 * h);
            CHECK(-dg / w(x) == doctest::Approx(d2(x)).epsilon(1e-7));
        }
    }
}

TEST_CASE("partial sums and Cesaro means") {
    const SpectralCoeffs c{{0.0, 0.0}, {1.0, 2.0, 3.0, 4.0}};
    CHECK(partial_sum(c, 10).coeffs == c.coeffs);
    CHECK(partial_sum(c, 0).coeffs == std::vector<double>{1.0});
    CHECK(partial_sum(partial_sum(c, 2), 2).coeffs == partial_sum(c, 2).coeffs);

    CHECK(cesaro_factor(0, 1, 1) == 1.0);
    CHECK(cesaro_factor(1, 1, 1) == 0.5);
    for (int n : {1, 5, 17}) {
        for (int ell : {1, 2, 4}) CHECK(cesaro_factor(0, n, ell) == 1.0);
    }
    double prev = 0.0;
    for (int n = 3; n <= 4096; n *= 2) {
        const double f = cesaro_factor(3, n, 3);
        CHECK(f > prev);
        prev = f;
    }
    CHECK(prev > 0.99);
    const auto cm = cesaro_mean(c, 2, 1);
    CHECK(cm.size() == 3);
    CHECK(cm.coeffs[2] == doctest::Approx(3.0 * (1.0 - 2.0 / 3.0)));
}

TEST_CASE("delayed means reproduce low degrees and damp into [0,1]") {
    for (int ell : {1, 2, 3}) {
        for (int n : {1, 4, 16, 256}) {
            for (int k = 0; k <= 3 * n; ++k) {
                const double f = vallee_poussin_factor(k, n, ell);
                CHECK(f >= 0.0);
                CHECK(f <= 1.0);
                if (k <= n) CHECK(f == 1.0);
                if (k >= 2 * n) CHECK(f == 0.0);
            }
        }
    }
    // ell = 1: 2 sigma_{2n-1} - sigma_{n-1}
    for (int n : {3, 10}) {
        for (int k = 0; k <= 2 * n; ++k) {
            const double fejer = 2.0 * cesaro_factor(k, 2 * n - 1, 1) - cesaro_factor(k, n - 1, 1);
            CHECK(vallee_poussin_factor(k, n, 1) == doctest::Approx(fejer).epsilon(1e-14));
        }
    }
    const SpectralCoeffs c{{1.3, 0.7}, std::vector<double>(300, 1.0)};
    const auto v = vallee_poussin(c, 100, 2);
    CHECK(v.size() == 201);
    for (int k = 0; k <= 100; ++k) CHECK(v.coeffs[k] == 1.0);
}

TEST_CASE("default Cesaro order exceeds the threshold") {
    CHECK(default_cesaro_order(2.0, {0.0, 0.0}, {0.0, 0.0}) == 1);
    // |2(a+1)/p - alpha - 1| = |2*2/1 - 0 - 1| = 3 -> 4
    CHECK(default_cesaro_order(1.0, {1.0, 1.0}, {0.0, 0.0}) == 4);
}
