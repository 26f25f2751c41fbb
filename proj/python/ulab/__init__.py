"""Weighted Jacobi spectral operators, moduli of smoothness and inequality experiments.

Functions are described by dicts such as {"family": "cos", "omega": 2} or
{"family": "psi", "k": 3, "basis": [0, 0]}; experiment configs and reports are dicts.
"""

import json as _json

from . import _ulab
from ._ulab import (
    ConfigError,
    NumericalError,
    __version__,
    derivative_shift,
    eigenvalue,
    eval_orthonormal,
    evaluate_series,
    fractional_derivative,
    fractional_integral,
    gauss_jacobi_rule,
    polynomial_norm,
)

__all__ = [
    "ConfigError",
    "NumericalError",
    "__version__",
    "analyze",
    "best_approx",
    "derivative_shift",
    "dt_modulus",
    "eigenvalue",
    "eval_orthonormal",
    "evaluate_series",
    "expand",
    "fractional_derivative",
    "fractional_integral",
    "function_norm",
    "gauss_jacobi_rule",
    "k_phi_realized",
    "k_spectral_direct",
    "k_spectral_realized",
    "normalize_config",
    "polynomial_norm",
    "presets",
    "report_csv",
    "run",
]


def _spec(function):
    return _json.dumps(function)


def _inf(p):
    return float("inf") if p in ("inf", "infinity") else float(p)


def analyze(function, alpha, beta, n):
    return _ulab.analyze(_spec(function), alpha, beta, n)


def function_norm(function, p, a=0.0, b=0.0):
    return _ulab.function_norm(_spec(function), _inf(p), a, b)


def best_approx(function, n, p, a=0.0, b=0.0):
    """(coefficients, error) of a best approximant of degree n in L_p(w^{a,b})."""
    return _ulab.best_approx(_spec(function), n, _inf(p), a, b)


def k_spectral_direct(function, r, t, p, weight=(0.0, 0.0), basis=None):
    return _ulab.k_spectral_direct(_spec(function), r, t, _inf(p), tuple(weight), tuple(basis or weight))


def k_spectral_realized(function, r, t, p, weight=(0.0, 0.0), basis=None):
    return _ulab.k_spectral_realized(_spec(function), r, t, _inf(p), tuple(weight), tuple(basis or weight))


def dt_modulus(function, r, t, p, weight=(0.0, 0.0)):
    return _ulab.dt_modulus(_spec(function), r, t, _inf(p), tuple(weight))


def k_phi_realized(function, r, t, p, weight=(0.0, 0.0)):
    return _ulab.k_phi_realized(_spec(function), r, t, _inf(p), tuple(weight))


def normalize_config(config):
    return _json.loads(_ulab.normalize_config(_json.dumps(config)))


def run(config, timestamp=""):
    """Runs an experiment config and returns its manifest (rows, summary, verdicts, config echo)."""
    return _json.loads(_ulab.run_config(_json.dumps(config), timestamp))


def report_csv(config):
    return _ulab.report_csv(_json.dumps(config))


def presets():
    return _json.loads(_ulab.presets())


def expand(function, basis=(0.0, 0.0), degree=8):
    """Coefficients 0..degree of a function in the orthonormal basis."""
    manifest = run({"kind": "expand", "function": function, "basis": list(basis), "degree": degree})
    return manifest["extra"]["coefficients"]
