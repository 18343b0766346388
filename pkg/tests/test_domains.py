from fractions import Fraction

import numpy as np
import pytest

from sparsega import Algebra, DomainError
from sparsega.autodiff import derivatives, dual_number, variable
from sparsega.domains import ARRAY, FLOAT, NESTED, RATIONAL, SYMBOLIC, broadcast, resolve_domain
from sparsega.polynomial import RationalExpr


def test_resolution_precedence():
    d = dual_number(1.0)
    assert resolve_domain([1, 2]) is FLOAT
    assert resolve_domain([Fraction(1, 2), 3]) is RATIONAL
    assert resolve_domain([Fraction(1, 2), 0.5]) is FLOAT
    assert resolve_domain([np.ones(3), 2.0]) is ARRAY
    assert resolve_domain([RationalExpr.symbol("a"), np.ones(2)]) is SYMBOLIC
    assert resolve_domain([d, RationalExpr.symbol("a")]) is NESTED
    with pytest.raises(DomainError):
        resolve_domain([np.ones(3), np.ones(4)])


def test_broadcast():
    assert list(broadcast("add", np.array([1, 2, 3]), 1)) == [2, 3, 4]
    assert list(broadcast("mul", np.array([1, 2]), np.array([3, 4]))) == [3, 8]
    assert broadcast("add", 1, 2) == 3
    with pytest.raises(DomainError):
        broadcast("add", np.ones(3), np.ones(4))


def test_sqrt_per_domain():
    assert FLOAT.sqrt(25) == 5
    assert list(ARRAY.sqrt(np.array([4.0, 9.0]))) == [2, 3]
    assert RATIONAL.sqrt(Fraction(9, 4)) == Fraction(3, 2)
    with pytest.raises(DomainError):
        RATIONAL.sqrt(Fraction(2))
    with pytest.raises(DomainError):
        FLOAT.sqrt(-1.0)
    r = NESTED.sqrt(dual_number(4.0, 4.0))
    assert (r.e, r.e0) == (2.0, 1.0)
    with pytest.raises(DomainError):
        NESTED.sqrt(dual_number(0.0, 1.0))


def test_dual_arithmetic():
    t = dual_number(3.0, 1.0)
    sq = t * t
    assert (sq.e, sq.e0) == (9.0, 6.0)
    x, y = dual_number(2.0, 1.0), dual_number(5.0, 1.0)
    p = x * y
    assert (p.e, p.e0) == (10.0, 7.0)


def test_dual_division_uses_quotient_rule():
    x = variable(2.0)
    assert derivatives(1 / (x * x), 1) == [0.25, -0.25]


def test_nested_second_derivative_with_finite_differences():
    t = variable(2.0, 2)
    f, d1, d2 = derivatives(t * t * t, 2)
    assert (f, d1, d2) == (8.0, 12.0, 12.0)
    g = lambda s: s**3
    h = 1e-5
    fd1 = (g(2 + h) - g(2 - h)) / (2 * h)
    fd2 = (g(2 + h) - 2 * g(2) + g(2 - h)) / h**2
    assert abs(fd1 - d1) / d1 < 1e-6
    assert abs(fd2 - d2) / d2 < 1e-4  # second differences lose precision at h=1e-5


def test_rational_domain_is_exact(vga2):
    a = vga2.vector([Fraction(1, 3), Fraction(2, 7)])
    b = a / a
    assert b.e == 1 and b.e12 == 0


def test_exact_domain_matches_symbolic_evaluation():
    alg = Algebra(3, 0, 1)
    A, B = alg.evenmv(name="a"), alg.vector(name="b")
    sym = A >> B
    vals_a = [Fraction(i + 1, 3) for i in range(len(A.keys()))]
    vals_b = [Fraction(2 - i, 5) for i in range(len(B.keys()))]
    num = alg.evenmv(vals_a) >> alg.vector(vals_b)
    env = {str(s): v for s, v in zip(A.values(), vals_a)} | {str(s): v for s, v in zip(B.values(), vals_b)}
    assert num.keys() == sym.keys()
    assert list(num.values()) == [e.evaluate(env) for e in sym.values()]


def test_exp_needs_trig():
    alg = Algebra(2)
    with pytest.raises(Exception, match="trigonometric"):
        (alg.e12 * Fraction(1, 2)).exp()


def test_inner_cache_warm_after_first_use():
    alg = Algebra(2, 0, 1)
    t = variable(0.3, 1)
    P = alg.vector([1.0, 2.0, 3.0]).dual()
    R = (alg.e12 * t).exp()
    R >> P
    inner = t.algebra
    before = {name: c.generations for name, c in inner.operator_caches().items()}
    t2 = variable(0.9, 1)
    (alg.e12 * t2).exp() >> P
    after = {name: c.generations for name, c in inner.operator_caches().items()}
    assert before == after
