"""Existence and non-existence checks and solvers for perturbed Hammerstein systems."""

import json as _json

from ._perhamm import (
    ArgumentError,
    ConvergenceError,
    DegenerateKernelError,
    DivergenceError,
    DomainError,
    LookupError,
    Numerics,
    ParseError,
    Problem,
    ProblemFileError,
    builtin_kernel_names,
    bundled_problem_names,
    canonical,
    characteristic_value,
    enclose,
    evaluate,
    kernel_constant,
)

__all__ = [
    "ArgumentError",
    "ConvergenceError",
    "DegenerateKernelError",
    "DivergenceError",
    "DomainError",
    "LookupError",
    "Numerics",
    "ParseError",
    "Problem",
    "ProblemFileError",
    "builtin_kernel_names",
    "bundled_problem_names",
    "canonical",
    "characteristic_value",
    "check",
    "constants",
    "enclose",
    "evaluate",
    "kernel_constant",
    "solve",
    "spectral",
]


def constants(problem):
    """Kernel constants, gamma norms and characteristic values as a dict."""
    return _json.loads(problem.constants_json())


def spectral(problem):
    """Characteristic values and eigenfunction tables as a dict."""
    return _json.loads(problem.spectral_json())


def check(problem, mode="existence"):
    """Run the existence or non-existence check; returns the report dict."""
    return _json.loads(problem.check_json(mode))


def solve(problem, tables=False):
    """Multistart Picard iteration; returns starts and distinct fixed points."""
    return _json.loads(problem.solve_json(tables))
