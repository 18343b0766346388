import math

import numpy as np
import pytest

from sparsega import Algebra
from sparsega.autodiff import coefficient_derivatives, derivative, derivatives, dual_number, variable
from sparsega.derivdemo import analytic, polynomial_check, report, trajectory


def test_first_derivative_of_polynomial():
    x = variable(2.0)
    f = x * x * x - x * 4 + 1
    assert derivatives(f, 1) == [1.0, 8.0]


def test_second_derivative_of_polynomial():
    assert polynomial_check(3.0) == [9.0, 6.0, 2.0]
    x = variable(1.5, 2)
    f = x * x * x * x
    assert derivatives(f, 2) == pytest.approx([1.5**4, 4 * 1.5**3, 12 * 1.5**2])


def test_third_order():
    x = variable(2.0, 3)
    f = x * x * x
    assert derivatives(f, 3) == pytest.approx([8.0, 12.0, 12.0, 6.0])


def test_quotient_and_sqrt():
    x = variable(4.0)
    assert derivatives(1 / x, 1) == pytest.approx([0.25, -1 / 16])
    alg = Algebra(2, 0, 0)
    # x itself is a grade-mixed dual number, so take roots of multivectors
    # whose coefficients are duals
    assert derivatives(alg.scalar([x]).sqrt().e, 1) == pytest.approx([2.0, 0.25])
    assert derivatives(alg.vector([x, x * 0 + 3.0]).norm().e, 1) == pytest.approx([5.0, 0.8])


def test_rotor_rotation_derivatives():
    alg = Algebra(2, 0, 1)
    t = 0.7
    x, y = trajectory(alg, variable(t, 2))
    (ax, ay), (vx, vy), (cx, cy) = analytic(t)
    assert derivatives(x, 2) == pytest.approx([ax, vx, cx], rel=1e-12)
    assert derivatives(y, 2) == pytest.approx([ay, vy, cy], rel=1e-12)


def test_exp_at_zero_angle_nested():
    alg = Algebra(2, 0, 1)
    x, y = trajectory(alg, variable(0.0, 2))
    (ax, ay), (vx, vy), (cx, cy) = analytic(0.0)
    assert derivatives(x, 2) == pytest.approx([ax, vx, cx], abs=1e-12)
    assert derivatives(y, 2) == pytest.approx([ay, vy, cy], abs=1e-12)


def test_report_thresholds():
    rep = report(40)
    assert rep["max_rel_err_first_vs_analytic"] < 1e-9
    assert rep["max_rel_err_second_vs_analytic"] < 1e-9
    assert rep["max_rel_err_first_vs_fd"] < 1e-6
    assert rep["max_rel_err_second_vs_fd"] < 1e-6
    assert rep["max_velocity_dot_radius"] < 1e-9


def test_coefficient_derivatives():
    alg = Algebra(2, 0, 0)
    t = variable(0.3)
    v = alg.vector([t * t, t * 3])
    d = coefficient_derivatives(v, 1)
    assert d["e1"] == pytest.approx([0.09, 0.6]) and d["e2"] == pytest.approx([0.9, 3.0])


def test_plain_values_and_bounds():
    assert derivative(5.0, 0, 2) == 5.0 and derivative(5.0, 1, 1) == 0
    with pytest.raises(ValueError):
        derivative(dual_number(1.0), 2, 1)
    with pytest.raises(ValueError):
        variable(1.0, -1)
