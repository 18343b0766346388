"""Exact multivariate rational-polynomial arithmetic used during code generation.

Monomials are sorted tuples of symbol names with repetition, so ``a**2*a12``
is ``("a", "a", "a12")``. Coefficients are Python ints or Fractions.

Square roots are opaque atoms: ``RationalExpr.sqrt`` returns a fresh symbol
whose name starts with ``ATOM_PREFIX`` and whose radicand is recorded in a
module-level registry. The only simplification applied to atoms is
``atom**2 -> radicand`` when the radicand is a polynomial.
"""
from __future__ import annotations

import math
from fractions import Fraction
from numbers import Rational
from typing import Callable, Iterable, Mapping

ATOM_PREFIX = "√"

_ATOMS: dict[str, "RationalExpr"] = {}


def _norm(c):
    if type(c) is Fraction and c.denominator == 1:
        return c.numerator
    return c


def is_atom(name: str) -> bool:
    return name[0] == ATOM_PREFIX


def radicand(name: str) -> "RationalExpr":
    return _ATOMS[name]


class Polynomial:
    __slots__ = ("terms", "_atoms")

    def __init__(self, terms: dict | None = None):
        # Callers guarantee no zero coefficients.
        self.terms = terms if terms is not None else {}
        self._atoms = None

    @classmethod
    def symbol(cls, name: str) -> "Polynomial":
        return cls({(name,): 1})

    @classmethod
    def const(cls, c) -> "Polynomial":
        c = _norm(c)
        return cls({(): c} if c else {})

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        t = self.terms
        return not t or (len(t) == 1 and () in t)

    def constant_value(self):
        return self.terms.get((), 0)

    def is_one(self) -> bool:
        t = self.terms
        return len(t) == 1 and t.get(()) == 1

    def has_atoms(self) -> bool:
        if self._atoms is None:
            self._atoms = any(is_atom(s) for m in self.terms for s in m)
        return self._atoms

    def symbols(self) -> set[str]:
        return {s for m in self.terms for s in m}

    def __add__(self, other: "Polynomial") -> "Polynomial":
        if not other.terms:
            return self
        if not self.terms:
            return other
        out = self.terms.copy()
        for m, c in other.terms.items():
            s = out.get(m)
            if s is None:
                out[m] = c
            else:
                s = _norm(s + c)
                if s:
                    out[m] = s
                else:
                    del out[m]
        return Polynomial(out)

    def __neg__(self) -> "Polynomial":
        return Polynomial({m: -c for m, c in self.terms.items()})

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        return self + (-other)

    def scale(self, k) -> "Polynomial":
        k = _norm(k)
        if not k:
            return Polynomial()
        if k == 1:
            return self
        return Polynomial({m: _norm(c * k) for m, c in self.terms.items()})

    def __mul__(self, other: "Polynomial") -> "Polynomial":
        a, b = self.terms, other.terms
        if not a or not b:
            return Polynomial()
        if len(a) == 1 and () in a:
            return other.scale(a[()])
        if len(b) == 1 and () in b:
            return self.scale(b[()])
        out: dict = {}
        get = out.get
        for ma, ca in a.items():
            for mb, cb in b.items():
                m = tuple(sorted(ma + mb)) if ma and mb else (ma or mb)
                s = get(m)
                c = ca * cb
                if s is None:
                    out[m] = c
                else:
                    s = s + c
                    if s:
                        out[m] = s
                    else:
                        del out[m]
        for m, c in out.items():
            if type(c) is Fraction:
                out[m] = _norm(c)
        p = Polynomial(out)
        if self.has_atoms() or other.has_atoms():
            p = _reduce_atom_squares(p)
        return p

    def __eq__(self, other):
        return isinstance(other, Polynomial) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def sorted_terms(self) -> list:
        return sorted(self.terms.items())

    def leading(self):
        return min(self.terms.items())

    def content(self) -> Fraction:
        """Positive rational gcd of all coefficients."""
        num = 0
        den = 1
        for c in self.terms.values():
            c = Fraction(c)
            num = math.gcd(num, c.numerator)
            den = den * c.denominator // math.gcd(den, c.denominator)
        return Fraction(num, den)

    def evaluate(self, env: Mapping[str, object]):
        total = 0
        for m, c in self.terms.items():
            term = c
            for s in m:
                term = term * env[s]
            total = total + term
        return total

    def __str__(self):
        return format_poly(self)

    __repr__ = __str__


def _reduce_atom_squares(p: Polynomial) -> Polynomial:
    """Replace atom**2 by its radicand wherever the radicand is polynomial."""
    changed = False
    out = Polynomial()
    for m, c in p.terms.items():
        rest = []
        factor = None
        i = 0
        while i < len(m):
            s = m[i]
            if is_atom(s) and i + 1 < len(m) and m[i + 1] == s and _ATOMS[s].den.is_one():
                f = _ATOMS[s].num
                factor = f if factor is None else factor * f
                i += 2
            else:
                rest.append(s)
                i += 1
        if factor is None:
            out = out + Polynomial({m: c})
        else:
            changed = True
            out = out + factor * Polynomial({tuple(rest): c})
    return out if changed else p


def _format_monomial(m: tuple) -> str:
    parts = []
    i = 0
    while i < len(m):
        j = i
        while j < len(m) and m[j] == m[i]:
            j += 1
        name = m[i]
        if is_atom(name):
            name = "sqrt" + name[1:]
        parts.append(name if j - i == 1 else f"{name}**{j - i}")
        i = j
    return "*".join(parts)


def _format_coef(c) -> str:
    return str(c) if type(c) is int else f"({c})"


def format_poly(p: Polynomial) -> str:
    if not p.terms:
        return "0"
    out = []
    for m, c in p.sorted_terms():
        mag = -c if c < 0 else c
        if not m:
            body = _format_coef(mag)
        elif mag == 1:
            body = _format_monomial(m)
        else:
            body = f"{_format_coef(mag)}*{_format_monomial(m)}"
        if not out:
            out.append(f"-{body}" if c < 0 else body)
        else:
            out.append(f" - {body}" if c < 0 else f" + {body}")
    return "".join(out)


ONE = Polynomial.const(1)


class RationalExpr:
    """A quotient of polynomials kept in a light canonical form.

    The denominator is made monic in its leading monomial, constant
    denominators are folded into the numerator, and a numerator that is a
    scalar multiple of the denominator collapses to that scalar. No
    polynomial gcd is taken.
    """

    __slots__ = ("num", "den")

    def __init__(self, num: Polynomial, den: Polynomial = ONE):
        self.num = num
        self.den = den

    @classmethod
    def make(cls, num: Polynomial, den: Polynomial) -> "RationalExpr":
        if den.is_zero():
            raise ZeroDivisionError("division by an identically zero expression")
        if num.is_zero():
            return ZERO
        if den.is_constant():
            return cls(num.scale(Fraction(1) / Fraction(den.constant_value())))
        lead = Fraction(den.leading()[1])
        if lead != 1:
            inv = 1 / lead
            num, den = num.scale(inv), den.scale(inv)
        if len(num.terms) == len(den.terms):
            m, c = den.leading()
            k = Fraction(num.terms.get(m, 0)) / c
            if k and num == den.scale(k):
                return cls.const(k)
        return cls(num, den)

    @classmethod
    def symbol(cls, name: str) -> "RationalExpr":
        return cls(Polynomial.symbol(name))

    @classmethod
    def const(cls, c) -> "RationalExpr":
        return cls(Polynomial.const(c))

    @staticmethod
    def coerce(x) -> "RationalExpr":
        if isinstance(x, RationalExpr):
            return x
        if isinstance(x, Rational):
            return RationalExpr.const(x)
        if isinstance(x, float) and x.is_integer():
            return RationalExpr.const(int(x))
        raise TypeError(f"cannot use {type(x).__name__} in an exact symbolic expression")

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_constant(self) -> bool:
        return self.den.is_one() and self.num.is_constant()

    def constant_value(self):
        return self.num.constant_value()

    def symbols(self) -> set[str]:
        return self.num.symbols() | self.den.symbols()

    def __add__(self, other) -> "RationalExpr":
        other = RationalExpr.coerce(other)
        if self.den.is_one() and other.den.is_one():
            return RationalExpr(self.num + other.num)
        if self.den == other.den:
            return RationalExpr.make(self.num + other.num, self.den)
        return RationalExpr.make(
            self.num * other.den + other.num * self.den, self.den * other.den
        )

    __radd__ = __add__

    def __neg__(self) -> "RationalExpr":
        return RationalExpr(-self.num, self.den)

    def __sub__(self, other) -> "RationalExpr":
        return self + (-RationalExpr.coerce(other))

    def __rsub__(self, other) -> "RationalExpr":
        return RationalExpr.coerce(other) + (-self)

    def __mul__(self, other) -> "RationalExpr":
        other = RationalExpr.coerce(other)
        if self.den.is_one() and other.den.is_one():
            return RationalExpr(self.num * other.num)
        return RationalExpr.make(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "RationalExpr":
        other = RationalExpr.coerce(other)
        if other.is_zero():
            raise ZeroDivisionError("division by an identically zero expression")
        return RationalExpr.make(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other) -> "RationalExpr":
        return RationalExpr.coerce(other) / self

    def sqrt(self) -> "RationalExpr":
        if self.is_constant():
            c = Fraction(self.constant_value())
            if c < 0:
                raise ValueError("square root of a negative constant")
            rn, rd = math.isqrt(c.numerator), math.isqrt(c.denominator)
            if rn * rn == c.numerator and rd * rd == c.denominator:
                return RationalExpr.const(Fraction(rn, rd))
        name = f"{ATOM_PREFIX}({self})"
        _ATOMS.setdefault(name, self)
        return RationalExpr.symbol(name)

    def __eq__(self, other):
        if isinstance(other, RationalExpr):
            return self.num == other.num and self.den == other.den
        if isinstance(other, Rational):
            return self.is_constant() and self.constant_value() == other
        return NotImplemented

    def __hash__(self):
        return hash((self.num, self.den))

    def evaluate(self, env: Mapping[str, object], sqrt: Callable = math.sqrt):
        """Evaluate with ``env`` mapping input symbols to values; sqrt atoms are
        evaluated recursively with ``sqrt``."""
        full = dict(env)
        for name in sorted(self.symbols()):
            _bind_atom(name, full, sqrt)
        num = self.num.evaluate(full)
        if self.den.is_one():
            return num
        return num / self.den.evaluate(full)

    def __str__(self):
        if self.den.is_one():
            return format_poly(self.num)
        return f"({format_poly(self.num)})/({format_poly(self.den)})"

    __repr__ = __str__


def _bind_atom(name: str, env: dict, sqrt: Callable) -> None:
    if name in env or not is_atom(name):
        return
    inner = _ATOMS[name]
    for s in sorted(inner.symbols()):
        _bind_atom(s, env, sqrt)
    value = inner.num.evaluate(env)
    if not inner.den.is_one():
        value = value / inner.den.evaluate(env)
    env[name] = sqrt(value)


ZERO = RationalExpr(Polynomial())


def symbols(names: Iterable[str]) -> list[RationalExpr]:
    return [RationalExpr.symbol(n) for n in names]
