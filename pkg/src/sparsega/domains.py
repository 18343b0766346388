"""Scalar domains: what multivector coefficients can be.

A domain supplies the arithmetic a kernel needs (``add``, ``sub``, ``mul``,
``div``, ``neg``, ``sqrt`` and a way to embed rational constants). Trig
functions are an optional capability used only by the bivector exponential.

Domains are chosen from the coefficient values by :func:`resolve_domain`.
"""
from __future__ import annotations

import math
import operator
from fractions import Fraction
from numbers import Number, Rational

import numpy as np

from .polynomial import RationalExpr


class DomainError(ArithmeticError):
    pass


class ScalarDomain:
    name = "abstract"
    has_trig = False
    zero = 0
    one = 1

    def __init__(self):
        self.table = {
            "add": self.add,
            "sub": self.sub,
            "mul": self.mul,
            "div": self.div,
            "neg": self.neg,
            "sqrt": self.sqrt,
        }

    add = staticmethod(operator.add)
    sub = staticmethod(operator.sub)
    mul = staticmethod(operator.mul)
    div = staticmethod(operator.truediv)
    neg = staticmethod(operator.neg)

    def sqrt(self, x):
        raise DomainError(f"{self.name} domain has no square root")

    def const(self, c: Fraction):
        return c

    def isclose(self, x, y, rel=1e-12, abs=0.0) -> bool:
        return x == y

    def _no_trig(self, *_):
        raise DomainError(f"{self.name} domain has no trigonometric functions")

    cos = sin = cosh = sinh = _no_trig

    def exp_scalars(self, lam):
        """(C, S) with exp(B) = C + S*B for a simple bivector B with B*B = lam."""
        raise DomainError(f"{self.name} domain cannot evaluate exponentials")

    def __repr__(self):
        return f"<{self.name} domain>"


class FloatDomain(ScalarDomain):
    name = "float"
    has_trig = True

    def sqrt(self, x):
        if x < 0:
            raise DomainError(f"square root of negative value {x}")
        return math.sqrt(x)

    def const(self, c):
        return int(c) if c.denominator == 1 else float(c)

    def isclose(self, x, y, rel=1e-12, abs=0.0):
        return math.isclose(x, y, rel_tol=rel, abs_tol=abs)

    cos = staticmethod(math.cos)
    sin = staticmethod(math.sin)
    cosh = staticmethod(math.cosh)
    sinh = staticmethod(math.sinh)

    def exp_scalars(self, lam):
        if lam < 0:
            t = math.sqrt(-lam)
            return math.cos(t), math.sin(t) / t
        if lam > 0:
            t = math.sqrt(lam)
            return math.cosh(t), math.sinh(t) / t
        return 1.0, 1.0


class RationalDomain(ScalarDomain):
    name = "rational"

    @staticmethod
    def div(x, y):
        return Fraction(x) / y

    def sqrt(self, x):
        x = Fraction(x)
        if x < 0:
            raise DomainError(f"square root of negative value {x}")
        n, d = math.isqrt(x.numerator), math.isqrt(x.denominator)
        if n * n != x.numerator or d * d != x.denominator:
            raise DomainError(f"{x} is not a perfect square")
        return Fraction(n, d)


class ArrayDomain(ScalarDomain):
    """Float arrays, all sharing one shape; plain scalars broadcast."""

    name = "array"
    has_trig = True

    def sqrt(self, x):
        if np.any(np.asarray(x) < 0):
            raise DomainError("square root of negative array entries")
        return np.sqrt(x)

    def const(self, c):
        return int(c) if c.denominator == 1 else float(c)

    def isclose(self, x, y, rel=1e-12, abs=0.0):
        return bool(np.allclose(x, y, rtol=rel, atol=abs))

    cos = staticmethod(np.cos)
    sin = staticmethod(np.sin)
    cosh = staticmethod(np.cosh)
    sinh = staticmethod(np.sinh)

    def exp_scalars(self, lam):
        lam = np.asarray(lam, dtype=float)
        t = np.sqrt(np.abs(lam))
        neg = lam < 0
        c = np.where(neg, np.cos(t), np.cosh(t))
        with np.errstate(invalid="ignore", divide="ignore"):
            s = np.where(neg, np.sin(t), np.sinh(t)) / t
        s = np.where(t == 0, 1.0, s)
        return c, s


class SymbolicDomain(ScalarDomain):
    """Exact rational expressions over named symbols."""

    name = "symbolic"
    zero = RationalExpr.const(0)
    one = RationalExpr.const(1)

    def sqrt(self, x):
        return RationalExpr.coerce(x).sqrt()

    def const(self, c):
        return RationalExpr.const(c)

    def isclose(self, x, y, rel=0.0, abs=0.0):
        return (RationalExpr.coerce(x) - y).is_zero()


class NestedDomain(ScalarDomain):
    """Coefficients that are themselves multivectors of another algebra.

    Arithmetic delegates to the inner algebra's kernels. When the inner
    algebra is G(0,0,1) its elements are dual numbers ``a + b*e0`` and
    sqrt/trig follow ``f(a + b e0) = f(a) + f'(a) b e0``.
    """

    name = "nested"
    has_trig = True

    def const(self, c):
        return int(c) if c.denominator == 1 else float(c)

    @staticmethod
    def _dual_parts(x):
        alg = x.algebra
        if alg.signature.d != 1 or alg.signature.r != 1:
            return None
        return x.e, x.e0, alg

    def div(self, x, y):
        # The versor inverse does not apply to a + b e0 (its a ã is not
        # scalar), so dual quotients use the quotient rule instead.
        parts = self._dual_parts(y) if is_multivector(y) else None
        if parts is None:
            return x / y
        c, d, alg = parts
        if is_multivector(x):
            a, b = x.e, x.e0
        else:
            a, b = x, 0
        return alg.multivector(e=a / c, e0=(b * c - a * d) / (c * c))

    def sqrt(self, x):
        if not is_multivector(x):
            return domain_of(x).sqrt(x)
        parts = self._dual_parts(x)
        if parts is None:
            return x.sqrt()
        a, b, alg = parts
        ra = domain_of(a).sqrt(a)
        if isinstance(b, Number) and b == 0:
            return alg.multivector(e=ra)
        if _is_zero(ra):
            raise DomainError("square root of a dual number with zero real part has no derivative")
        return alg.multivector(e=ra, e0=b / (2 * ra))

    def _unary(self, fname, dname, dsign=1):
        def f(v):
            return getattr(domain_of(v), fname)(v)

        def df(v):
            r = getattr(domain_of(v), dname)(v)
            return -r if dsign < 0 else r

        return f, df

    def cos(self, x):
        return self._apply(x, "cos", "sin", -1)

    def sin(self, x):
        return self._apply(x, "sin", "cos")

    def cosh(self, x):
        return self._apply(x, "cosh", "sinh")

    def sinh(self, x):
        return self._apply(x, "sinh", "cosh")

    def _apply(self, x, fname, dname, dsign=1):
        if not is_multivector(x):
            return getattr(domain_of(x), fname)(x)
        f, df = self._unary(fname, dname, dsign)
        parts = self._dual_parts(x)
        if parts is None:
            raise DomainError(f"nested domain over {x.algebra.signature} has no {fname}")
        a, b, alg = parts
        fa = f(a)
        if isinstance(b, Number) and b == 0:
            return alg.multivector(e=fa)
        return alg.multivector(e=fa, e0=df(a) * b)

    def exp_scalars(self, lam):
        if not is_multivector(lam):
            return domain_of(lam).exp_scalars(lam)
        parts = self._dual_parts(lam)
        if parts is None:
            raise DomainError(f"nested domain over {lam.algebra.signature} cannot evaluate exponentials")
        l0, l1, alg = parts
        c0, s0 = domain_of(l0).exp_scalars(l0)
        if isinstance(l1, Number) and l1 == 0:
            return alg.multivector(e=c0), alg.multivector(e=s0)
        # d/dlam C = S/2 and d/dlam S = (C - S) / (2 lam), with limit 1/6 at lam = 0.
        if isinstance(l0, np.ndarray):
            with np.errstate(invalid="ignore", divide="ignore"):
                ds = (c0 - s0) / (2 * l0)
            ds = np.where(l0 == 0, 1 / 6, ds)
        elif is_multivector(l0):
            # Deeper nesting: the quotient above is singular wherever the
            # real part of lam vanishes, so use the entire series instead.
            return _series_exp_scalars(lam)
        elif l0 == 0:
            ds = 1 / 6
        else:
            ds = (c0 - s0) / (2 * l0)
        return alg.multivector(e=c0, e0=s0 / 2 * l1), alg.multivector(e=s0, e0=ds * l1)


def _real_magnitude(v) -> float:
    while is_multivector(v):
        v = v.e
    return float(np.max(np.abs(v)))


def _series_exp_scalars(lam, terms: int = 12):
    """C = sum lam^n/(2n)!, S = sum lam^n/(2n+1)! using ring operations only.

    lam is scaled by 4**-k into |lam| <= 1/4, summed, then doubled back with
    C(4x) = C(x)^2 + x S(x)^2 and S(4x) = C(x) S(x).
    """
    m = _real_magnitude(lam)
    k = 0
    while m > 0.25:
        m /= 4
        k += 1
    x = lam * (1.0 / 4**k)
    c = 1.0 / math.factorial(2 * terms)
    s_ = 1.0 / math.factorial(2 * terms + 1)
    for n in range(terms - 1, -1, -1):
        c = c * x + 1.0 / math.factorial(2 * n)
        s_ = s_ * x + 1.0 / math.factorial(2 * n + 1)
    for _ in range(k):
        c, s_ = c * c + x * s_ * s_, c * s_
        x = x * 4
    return c, s_


def _is_zero(v) -> bool:
    if is_multivector(v):
        return all(_is_zero(c) for c in v.values())
    if isinstance(v, np.ndarray):
        return bool(np.any(v == 0))
    return v == 0


FLOAT = FloatDomain()
RATIONAL = RationalDomain()
ARRAY = ArrayDomain()
SYMBOLIC = SymbolicDomain()
NESTED = NestedDomain()


def is_multivector(x) -> bool:
    return getattr(type(x), "is_multivector", False)


def domain_of(x) -> ScalarDomain:
    return resolve_domain((x,))


def resolve_domain(*seqs) -> ScalarDomain:
    """Pick the domain for a kernel call from all coefficient values involved.

    Precedence: nested multivectors, symbolic expressions, arrays, floats,
    exact rationals. Plain ints alone resolve to the float domain; a
    Fraction anywhere (without floats) selects exact rational arithmetic.
    """
    nested = symbolic = floating = rational = False
    shape = None
    for seq in seqs:
        for v in seq:
            t = type(v)
            if t is float or t is int:
                floating = floating or t is float
                continue
            if t is np.ndarray:
                if v.ndim:
                    if shape is None:
                        shape = v.shape
                    elif v.shape != shape:
                        raise DomainError(f"array coefficients of shapes {shape} and {v.shape} do not match")
                else:
                    floating = True
            elif t is Fraction:
                rational = True
            elif t is RationalExpr:
                symbolic = True
            elif is_multivector(v):
                nested = True
            elif isinstance(v, Rational):
                rational = rational or not isinstance(v, (int, np.integer))
            else:
                floating = True
    if nested:
        return NESTED
    if symbolic:
        return SYMBOLIC
    if shape is not None:
        return ARRAY
    if rational and not floating:
        return RATIONAL
    return FLOAT


def broadcast(op: str, a, b):
    """Apply a binary field operation elementwise with scalar broadcasting.

    Arrays must share a shape; scalar-scalar results stay scalar.
    """
    sa = getattr(a, "shape", ())
    sb = getattr(b, "shape", ())
    if sa and sb and sa != sb:
        raise DomainError(f"cannot broadcast shapes {sa} and {sb}")
    return ARRAY.table[op](a, b)
