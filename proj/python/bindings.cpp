#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "ulab/approx.hpp"
#include "ulab/config.hpp"
#include "ulab/function_spec.hpp"
#include "ulab/jacobi.hpp"
#include "ulab/norms.hpp"
#include "ulab/quadrature.hpp"
#include "ulab/smoothness.hpp"
#include "ulab/spectral.hpp"

namespace py = pybind11;
using nlohmann::json;

namespace {

ulab::FunctionSpec function_of(const std::string& spec) { return ulab::function_from_json(json::parse(spec)); }

std::vector<double> coeffs_of(const ulab::SpectralCoeffs& c) { return c.coeffs; }

ulab::SpectralCoeffs spectral(std::vector<double> coeffs, double alpha, double beta) {
    return {ulab::JacobiIndex(alpha, beta), std::move(coeffs), 0.0};
}

ulab::SmoothnessQuery query(const std::string& f, double r, double t, double p, std::pair<double, double> weight,
                            std::pair<double, double> basis) {
    return {function_of(f), r, t, p, {weight.first, weight.second}, {basis.first, basis.second}};
}

}  // namespace

PYBIND11_MODULE(_ulab, m) {
    m.doc() = "Weighted Jacobi spectral operators, moduli of smoothness and inequality experiments";
    py::register_exception<ulab::ConfigError>(m, "ConfigError", PyExc_ValueError);
    py::register_exception<ulab::NumericalError>(m, "NumericalError", PyExc_RuntimeError);
    m.attr("__version__") = ulab::kArtifactVersion;

    m.def("gauss_jacobi_rule", [](double a, double b, int n) {
        const auto rule = ulab::gauss_jacobi_rule({a, b}, n);
        return std::make_pair(rule.nodes, rule.weights);
    }, py::arg("a"), py::arg("b"), py::arg("n"), "nodes and weights of the n-point rule for (1-x)^a (1+x)^b");

    m.def("eigenvalue", [](int k, double alpha, double beta) { return ulab::eigenvalue(k, {alpha, beta}); },
          py::arg("k"), py::arg("alpha"), py::arg("beta"));

    m.def("eval_orthonormal", [](int k, double alpha, double beta, const std::vector<double>& xs) {
        std::vector<double> out;
        out.reserve(xs.size());
        for (double x : xs) out.push_back(ulab::eval_orthonormal(k, {alpha, beta}, x));
        return out;
    }, py::arg("k"), py::arg("alpha"), py::arg("beta"), py::arg("x"));

    m.def("evaluate_series", [](std::vector<double> coeffs, double alpha, double beta, const std::vector<double>& xs) {
        const ulab::BasisPolynomial p({alpha, beta}, std::move(coeffs));
        std::vector<double> out;
        out.reserve(xs.size());
        for (double x : xs) out.push_back(p(x));
        return out;
    }, py::arg("coeffs"), py::arg("alpha"), py::arg("beta"), py::arg("x"));

    m.def("analyze", [](const std::string& f, double alpha, double beta, int n) {
        return coeffs_of(ulab::analyze(function_of(f), {alpha, beta}, n));
    }, py::arg("function"), py::arg("alpha"), py::arg("beta"), py::arg("n"));

    m.def("fractional_integral", [](std::vector<double> c, double alpha, double beta, double sigma) {
        return coeffs_of(ulab::fractional_integral(spectral(std::move(c), alpha, beta), sigma));
    }, py::arg("coeffs"), py::arg("alpha"), py::arg("beta"), py::arg("sigma"));

    m.def("fractional_derivative", [](std::vector<double> c, double alpha, double beta, double sigma) {
        return coeffs_of(ulab::fractional_derivative(spectral(std::move(c), alpha, beta), sigma));
    }, py::arg("coeffs"), py::arg("alpha"), py::arg("beta"), py::arg("sigma"));

    m.def("derivative_shift", [](std::vector<double> c, double alpha, double beta, int r) {
        const auto d = ulab::derivative_shift(ulab::BasisPolynomial({alpha, beta}, std::move(c)), r);
        return std::vector<double>(d.coeffs().begin(), d.coeffs().end());
    }, py::arg("coeffs"), py::arg("alpha"), py::arg("beta"), py::arg("r"),
       "coefficients of the r-th derivative in the basis (alpha+r, beta+r)");

    m.def("polynomial_norm", [](std::vector<double> c, double alpha, double beta, double p, double a, double b) {
        return ulab::lp_norm(ulab::BasisPolynomial({alpha, beta}, std::move(c)), p, {a, b});
    }, py::arg("coeffs"), py::arg("alpha"), py::arg("beta"), py::arg("p"), py::arg("a") = 0.0, py::arg("b") = 0.0);

    m.def("function_norm", [](const std::string& f, double p, double a, double b) {
        return ulab::lp_norm(function_of(f), p, {a, b});
    }, py::arg("function"), py::arg("p"), py::arg("a") = 0.0, py::arg("b") = 0.0);

    m.def("best_approx", [](const std::string& f, int n, double p, double a, double b) {
        const auto res = ulab::best_approx(function_of(f), n, p, {a, b});
        const auto c = res.approximant.coeffs();
        return std::make_pair(std::vector<double>(c.begin(), c.end()), res.error);
    }, py::arg("function"), py::arg("n"), py::arg("p"), py::arg("a") = 0.0, py::arg("b") = 0.0);

    m.def("k_spectral_direct", [](const std::string& f, double r, double t, double p, std::pair<double, double> w,
                                  std::pair<double, double> basis) {
        return ulab::k_spectral_direct(query(f, r, t, p, w, basis));
    }, py::arg("function"), py::arg("r"), py::arg("t"), py::arg("p"), py::arg("weight"), py::arg("basis"));

    m.def("k_spectral_realized", [](const std::string& f, double r, double t, double p, std::pair<double, double> w,
                                    std::pair<double, double> basis) {
        return ulab::k_spectral_realized(query(f, r, t, p, w, basis));
    }, py::arg("function"), py::arg("r"), py::arg("t"), py::arg("p"), py::arg("weight"), py::arg("basis"));

    m.def("dt_modulus", [](const std::string& f, int r, double t, double p, std::pair<double, double> w) {
        return ulab::dt_modulus(query(f, r, t, p, w, w));
    }, py::arg("function"), py::arg("r"), py::arg("t"), py::arg("p"), py::arg("weight"));

    m.def("k_phi_realized", [](const std::string& f, int r, double t, double p, std::pair<double, double> w) {
        return ulab::k_phi_realized(query(f, r, t, p, w, w));
    }, py::arg("function"), py::arg("r"), py::arg("t"), py::arg("p"), py::arg("weight"));

    m.def("normalize_config", [](const std::string& config) {
        return ulab::normalize_config(json::parse(config)).dump();
    }, py::arg("config"));

    m.def("run_config", [](const std::string& config, const std::string& timestamp) {
        const auto normalized = ulab::normalize_config(json::parse(config));
        ulab::InequalityReport report;
        {
            py::gil_scoped_release release;
            report = ulab::run_config(normalized);
        }
        return ulab::make_manifest(normalized, report, timestamp).dump();
    }, py::arg("config"), py::arg("timestamp") = "");

    m.def("report_csv", [](const std::string& config) {
        return ulab::report_csv(ulab::run_config(json::parse(config)));
    }, py::arg("config"));

    m.def("presets", [] {
        json out = json::array();
        for (const auto& p : ulab::presets()) {
            out.push_back({{"name", p.name}, {"description", p.description}, {"config", p.config}});
        }
        return out.dump();
    });
}
