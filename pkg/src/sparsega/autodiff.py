"""Forward-mode differentiation with dual-number coefficients.

A dual number ``a + b e0`` lives in G(0,0,1), where ``e0 * e0 = 0``. Using
such values as coefficients of another algebra makes every kernel carry
first derivatives along. Nesting the construction ``order`` times gives
derivatives up to that order.
"""
from __future__ import annotations

from functools import lru_cache

from .domains import is_multivector


@lru_cache(maxsize=None)
def dual_algebra():
    from .algebra import Algebra

    return Algebra(0, 0, 1)


def dual_number(real, infinitesimal=1):
    return dual_algebra().multivector(e=real, e0=infinitesimal)


def variable(x, order: int = 1):
    """Seed ``x`` as the independent variable, nested ``order`` times."""
    if order < 0:
        raise ValueError("order must be non-negative")
    for _ in range(order):
        x = dual_number(x, 1)
    return x


def _part(v, name: str):
    if is_multivector(v):
        return v.coefficient(name)
    return v if name == "e" else 0


def derivative(v, k: int, order: int):
    """k-th derivative stored in a value built from ``variable(x, order)``.

    The outer ``k`` nesting levels contribute their infinitesimal part and
    the inner ones their real part.
    """
    if not 0 <= k <= order:
        raise ValueError(f"derivative order {k} not in [0, {order}]")
    for level in range(order):
        v = _part(v, "e0" if level < k else "e")
    return v


def derivatives(v, order: int) -> list:
    """[f, f', ..., f^(order)] for a value computed from ``variable(x, order)``."""
    return [derivative(v, k, order) for k in range(order + 1)]


def coefficient_derivatives(mv, order: int) -> dict:
    """Blade name -> derivative list for a multivector over nested duals."""
    names = mv.algebra.names_by_key
    return {names[k]: derivatives(c, order) for k, c in mv.items()}
