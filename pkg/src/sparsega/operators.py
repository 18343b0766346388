"""Blade-wise definitions of the algebra's operators.

Each definition receives the algebra and sparse symbolic multivectors
(``dict`` mapping blade key to :class:`RationalExpr`) and returns the same
kind of dict. They run only at code-generation time; the results are turned
into kernels by the operator cache.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Callable

from .blades import grade
from .polynomial import RationalExpr

SymMV = dict  # blade key -> RationalExpr

HALF = Fraction(1, 2)


class GenerationError(ValueError):
    """An operator is undefined for the requested input types."""


def _acc(out: SymMV, k: int, v: RationalExpr) -> None:
    cur = out.get(k)
    out[k] = v if cur is None else cur + v


def prune(a: SymMV) -> SymMV:
    return {k: v for k, v in a.items() if not v.is_zero()}


def _product(alg, a: SymMV, b: SymMV, keep: Callable[[int, int, int], bool] | None = None) -> SymMV:
    out: SymMV = {}
    table = alg.blade_product
    for ka, va in a.items():
        for kb, vb in b.items():
            s, k = table(ka, kb)
            if not s or (keep is not None and not keep(ka, kb, k)):
                continue
            term = va * vb
            _acc(out, k, term if s > 0 else -term)
    return out


def gp(alg, a, b):
    return _product(alg, a, b)


def op(alg, a, b):
    # Disjointness, not grade filtering: the metric is never consulted.
    return _product(alg, a, b, lambda ka, kb, k: not ka & kb)


def ip(alg, a, b):
    return _product(alg, a, b, lambda ka, kb, k: grade(k) == abs(grade(ka) - grade(kb)))


def lc(alg, a, b):
    return _product(alg, a, b, lambda ka, kb, k: grade(k) == grade(kb) - grade(ka))


def rc(alg, a, b):
    return _product(alg, a, b, lambda ka, kb, k: grade(k) == grade(ka) - grade(kb))


def sp(alg, a, b):
    return _product(alg, a, b, lambda ka, kb, k: k == 0)


def add(alg, a, b):
    out = dict(a)
    for k, v in b.items():
        _acc(out, k, v)
    return out


def sub(alg, a, b):
    return add(alg, a, neg(alg, b))


def neg(alg, a):
    return {k: -v for k, v in a.items()}


def scale(a: SymMV, s) -> SymMV:
    return {k: v * s for k, v in a.items()}


def reverse(alg, a):
    return {k: v if alg.reverse_signs[k] > 0 else -v for k, v in a.items()}


def dual(alg, a):
    out = {}
    for k, v in a.items():
        s, kk = alg.dual_table[k]
        out[kk] = v if s > 0 else -v
    return out


def undual(alg, a):
    out = {}
    for k, v in a.items():
        s, kk = alg.undual_table[k]
        out[kk] = v if s > 0 else -v
    return out


def rp(alg, a, b):
    return undual(alg, op(alg, dual(alg, a), dual(alg, b)))


def sw(alg, b, a):
    """b a ~b, fused into a single kernel."""
    return gp(alg, gp(alg, b, a), reverse(alg, b))


def proj(alg, a, b):
    """(a . b) ~b; b is assumed normalized."""
    return gp(alg, ip(alg, a, b), reverse(alg, b))


def cp(alg, a, b):
    return scale(sub(alg, gp(alg, a, b), gp(alg, b, a)), HALF)


def acp(alg, a, b):
    return scale(add(alg, gp(alg, a, b), gp(alg, b, a)), HALF)


def normsq(alg, a):
    return gp(alg, a, reverse(alg, a))


def _scalar_normsq(alg, a, message: str) -> RationalExpr:
    n = prune(normsq(alg, a))
    if any(k for k in n):
        raise GenerationError(message)
    return n.get(0, RationalExpr.const(0))


_NORM_MSG = "norm undefined: a ã is not scalar for this type"
_INV_MSG = "not invertible by versor formula: b b̃ is not scalar for this type"


def norm(alg, a):
    s = _scalar_normsq(alg, a, _NORM_MSG)
    if s.is_zero():
        return {}
    return {0: s.sqrt()}


def normalized(alg, a):
    if not a:
        return {}
    s = _scalar_normsq(alg, a, _NORM_MSG)
    if s.is_zero():
        raise GenerationError("cannot normalize: a ã vanishes identically for this type")
    r = s.sqrt()
    return {k: v / r for k, v in a.items()}


def _conjugate(alg, a):
    return {k: -v if alg.reverse_signs[k] * (-1) ** grade(k) < 0 else v for k, v in a.items()}


def inv(alg, b):
    # Versor formula b~ / (b b~) first; when b b~ is not scalar try the
    # Clifford conjugate, which covers every element of algebras with d <= 2
    # (e.g. dual numbers a + b e0).
    for conj in (reverse, _conjugate):
        c = conj(alg, b)
        n = prune(gp(alg, b, c))
        if not any(k for k in n):
            s = n.get(0, RationalExpr.const(0))
            if s.is_zero():
                raise GenerationError("not invertible: b b̃ vanishes identically for this type")
            return {k: v / s for k, v in c.items()}
    raise GenerationError(_INV_MSG)


def div(alg, a, b):
    return gp(alg, a, inv(alg, b))


def sqrt(alg, a):
    """Square root of a rotor-like element: normalized(1 + â) * |a|**(1/2)."""
    if any(grade(k) % 2 for k in a):
        raise GenerationError("sqrt is only defined for even elements")
    if not a:
        return {}
    n2 = _scalar_normsq(alg, a, _NORM_MSG)
    if n2.is_zero():
        raise GenerationError("sqrt undefined: a ã vanishes identically for this type")
    r = n2.sqrt()
    u = add(alg, {0: RationalExpr.const(1)}, {k: v / r for k, v in a.items()})
    m2 = _scalar_normsq(alg, u, _NORM_MSG)
    f = r.sqrt() / m2.sqrt()
    return {k: v * f for k, v in u.items()}


# name -> (arity, definition)
OPERATORS: dict[str, tuple[int, Callable]] = {
    "gp": (2, gp),
    "ip": (2, ip),
    "sp": (2, sp),
    "lc": (2, lc),
    "rc": (2, rc),
    "op": (2, op),
    "rp": (2, rp),
    "sw": (2, sw),
    "proj": (2, proj),
    "cp": (2, cp),
    "acp": (2, acp),
    "add": (2, add),
    "sub": (2, sub),
    "div": (2, div),
    "neg": (1, neg),
    "reverse": (1, reverse),
    "dual": (1, dual),
    "undual": (1, undual),
    "normsq": (1, normsq),
    "norm": (1, norm),
    "normalized": (1, normalized),
    "inv": (1, inv),
    "sqrt": (1, sqrt),
}

BINARY = tuple(k for k, (n, _) in OPERATORS.items() if n == 2)
UNARY = tuple(k for k, (n, _) in OPERATORS.items() if n == 1)


def exp_bivector(B):
    """exp of a simple bivector, evaluated on the coefficients.

    With lam the scalar B*B: cos/sin branch for lam < 0, cosh/sinh for
    lam > 0, and 1 + B for lam = 0. Needs a trig-capable domain.
    """
    from .domains import resolve_domain

    alg = B.algebra
    if any(grade(k) != 2 for k in B.keys()):
        raise GenerationError("exp is only implemented for bivectors")
    sq = B * B
    if any(k for k in sq.keys()):
        raise GenerationError("exp needs a simple bivector: B*B is not scalar for this type")
    lam = sq.e
    domain = resolve_domain(B.values(), (lam,))
    if not domain.has_trig:
        raise GenerationError(f"exp needs trigonometric functions, unavailable in the {domain.name} domain")
    c, s = domain.exp_scalars(lam)
    keys = (0,) + tuple(B.keys())
    values = (c,) + tuple(v * s for v in B.values())
    return alg.make(keys, values)
