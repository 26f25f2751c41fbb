import math

import pytest

import ulab


def test_quadrature_integrates_the_weight():
    nodes, weights = ulab.gauss_jacobi_rule(0.5, -0.3, 12)
    assert len(nodes) == 12
    assert sum(weights) == pytest.approx(2 ** 1.2 * math.gamma(1.5) * math.gamma(0.7) / math.gamma(2.2), rel=1e-12)


def test_orthonormal_evaluation_and_eigenvalue():
    assert ulab.eval_orthonormal(0, 0.0, 0.0, [0.3])[0] == pytest.approx(1 / math.sqrt(2))
    assert ulab.eval_orthonormal(1, 0.0, 0.0, [1.0])[0] == pytest.approx(math.sqrt(1.5))
    assert ulab.eigenvalue(3, 0.0, 0.0) == pytest.approx(math.sqrt(12))


def test_fractional_operators_invert_on_mean_zero():
    c = [0.0, 1.0, -0.5, 0.25]
    back = ulab.fractional_derivative(ulab.fractional_integral(c, 0.0, 0.0, 0.7), 0.0, 0.0, 0.7)
    assert back == pytest.approx(c, abs=1e-14)


def test_expand_psi3():
    assert ulab.expand({"family": "psi", "k": 3, "basis": [0, 0]}, degree=5) == [0, 0, 0, 1, 0, 0]


def test_norms_and_smoothness():
    assert ulab.function_norm({"family": "constant", "value": 1.0}, 2) == pytest.approx(math.sqrt(2))
    assert ulab.function_norm({"family": "abs"}, "inf") == pytest.approx(1.0)
    psi = {"family": "psi", "k": 4, "basis": [0, 0]}
    lam = ulab.eigenvalue(4, 0.0, 0.0)
    assert ulab.k_spectral_direct(psi, 1.0, 0.1, 2) == pytest.approx(min(1.0, 0.1 * lam), rel=1e-6)
    assert ulab.dt_modulus({"family": "monomial", "degree": 1}, 2, 0.05, 2) <= 1e-10


def test_config_errors_are_value_errors():
    with pytest.raises(ulab.ConfigError, match="p < q"):
        ulab.run({"kind": "nikolskii", "p": 2.0, "q": 2.0})
    with pytest.raises(ValueError, match="unknown field"):
        ulab.normalize_config({"kind": "expand", "function": {"family": "abs"}, "bogus": 1})


def test_run_preset_manifest():
    names = [p["name"] for p in ulab.presets()]
    assert len(names) >= 6
    config = next(p["config"] for p in ulab.presets() if p["name"] == "landau-sharpness-eps-0.25")
    manifest = ulab.run(config)
    assert manifest["passed"]
    assert manifest["summary"]["fitted_slope"] == pytest.approx(0.25, rel=0.1)
    assert manifest["config"] == config
    csv = ulab.report_csv(config).splitlines()
    assert csv[0] == "parameter,lhs,rhs,ratio"
    assert len(csv) - 1 == len(manifest["rows"])
