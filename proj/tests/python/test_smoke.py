import math
import os

import pytest

import perhamm


def test_kernel_constants():
    assert perhamm.kernel_constant("green_2nd_dirichlet", 0) == pytest.approx(1 / 8, abs=1e-12)
    assert perhamm.kernel_constant("green_4th_beam", 0) == pytest.approx(5 / 384, abs=1e-12)
    assert perhamm.kernel_constant("green_4th_beam", 1) <= 5 / 24
    with pytest.raises(KeyError):
        perhamm.kernel_constant("green_6th", 0)


def test_characteristic_values():
    assert perhamm.characteristic_value("green_2nd_dirichlet") == pytest.approx(math.pi**2, rel=1e-10)
    assert perhamm.characteristic_value("green_4th_beam") == pytest.approx(math.pi**4, rel=1e-10)


def test_expressions():
    assert perhamm.evaluate("u1^2*(2 - t*sin(u1'))", 0.5, {"u1": 1.0, "u1'": 0.0}) == 2.0
    lo, hi = perhamm.enclose("u1^2*(2 - t*sin(u1' + u2''))", (0, 1), {"u1": (0, 1), "u1'": (-1, 1), "u2''": (-1, 1)})
    assert lo <= 0.0 and hi == pytest.approx(3.0)
    assert perhamm.canonical("(1 + 2)*u1'") == "(1 + 2)*u1'"
    with pytest.raises(ValueError):
        perhamm.evaluate("1 +")
    with pytest.raises(ArithmeticError):
        perhamm.evaluate("1/0")


def test_existence_example():
    report = perhamm.check(perhamm.Problem.bundled("example1"), "existence")
    assert report["verdict"] == "pass"
    outer = next(r for r in report["records"] if r["name"] == "outer_sphere_bound")
    assert outer["lhs"] == pytest.approx(math.exp(2) / 24 + 2 / 3, abs=1e-9)


def test_nonexistence_example():
    problem = perhamm.Problem.bundled("example2")
    report = perhamm.check(problem, "nonexistence")
    assert report["verdict"] == "pass"
    problem.set_lambda(1, 2.0)
    assert perhamm.check(problem, "nonexistence")["verdict"] == "fail"


def test_solve_and_round_trip():
    problem = perhamm.Problem.bundled("linear")
    result = perhamm.solve(problem, tables=True)
    assert len(result["fixed_points"]) == 1
    fp = result["fixed_points"][0]
    assert fp["norm"] == pytest.approx(0.5, abs=1e-8)
    for t, u, _ in fp["table"]["rows"]:
        assert u == pytest.approx(t * (1 - t) / 2, abs=1e-8)
    assert perhamm.Problem(problem.emit()) == problem


def test_problem_files():
    directory = os.environ.get("PERHAMM_PROBLEM_DIR")
    if directory is None:
        pytest.skip("problem directory not configured")
    for name in perhamm.bundled_problem_names():
        assert perhamm.Problem.load(os.path.join(directory, name + ".problem")) == perhamm.Problem.bundled(name)
    with pytest.raises(ValueError):
        perhamm.Problem('{"system": {"components": []}, "bogus": 1}')
