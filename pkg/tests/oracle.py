"""Dense brute-force reference implementation used only by the tests.

Written independently of the package: blades are tuples of basis indices,
signs come from bubble-sorting concatenated index lists, and every product
loops over all 2^d x 2^d blade pairs (vectorized through precomputed
Cayley tables). Null basis vectors occupy the lowest indices.
"""
from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache
from itertools import combinations

import numpy as np


def _bubble_product(a: tuple, b: tuple, metric):
    """Sign and sorted index tuple of e_a e_b, contracting repeated indices."""
    seq = list(a) + list(b)
    sign = 1
    n = len(seq)
    for i in range(n):
        for j in range(n - 1 - i):
            if seq[j] > seq[j + 1]:
                seq[j], seq[j + 1] = seq[j + 1], seq[j]
                sign = -sign
    out = []
    i = 0
    while i < len(seq):
        if i + 1 < len(seq) and seq[i] == seq[i + 1]:
            sign *= metric[seq[i]]
            i += 2
        else:
            out.append(seq[i])
            i += 1
    return sign, tuple(out)


class Dense:
    def __init__(self, p: int, q: int, r: int):
        self.d = d = p + q + r
        self.metric = [0] * r + [1] * p + [-1] * q
        self.blades = [c for k in range(d + 1) for c in combinations(range(d), k)]
        self.n = len(self.blades)
        self.pos = {b: i for i, b in enumerate(self.blades)}
        self.grades = np.array([len(b) for b in self.blades])
        sign = np.zeros((self.n, self.n), dtype=int)
        idx = np.zeros((self.n, self.n), dtype=int)
        for i, a in enumerate(self.blades):
            for j, b in enumerate(self.blades):
                s, c = _bubble_product(a, b, self.metric)
                sign[i, j] = s
                idx[i, j] = self.pos[c]
        self.sign, self.idx = sign, idx
        ones = [1] * d
        full = tuple(range(d))
        self.dual_sign = np.zeros(self.n, dtype=int)
        self.dual_idx = np.zeros(self.n, dtype=int)
        for i, a in enumerate(self.blades):
            comp = tuple(x for x in full if x not in a)
            s, c = _bubble_product(a, comp, ones)
            assert c == full
            self.dual_sign[i] = s  # a ^ (s comp) = +I
            self.dual_idx[i] = self.pos[comp]
        self.rev = np.array([(-1) ** (k * (k - 1) // 2) for k in self.grades])
        self.conj = self.rev * np.array([(-1) ** k for k in self.grades])

    # -- conversion ----------------------------------------------------------

    def blade_of_key(self, key: int) -> int:
        return self.pos[tuple(i for i in range(self.d) if key >> i & 1)]

    def from_mv(self, mv, dtype=float):
        out = np.zeros(self.n, dtype=object if dtype is Fraction else float)
        if dtype is Fraction:
            out[:] = Fraction(0)
        for k, v in mv.items():
            out[self.blade_of_key(k)] = v
        return out

    def coefficient(self, x, key: int):
        return x[self.blade_of_key(key)]

    # -- products ------------------------------------------------------------

    def _prod(self, a, b, mask=None):
        terms = self.sign * np.multiply.outer(a, b)
        if mask is not None:
            terms = np.where(mask, terms, 0)
        out = np.zeros(self.n, dtype=terms.dtype)
        if terms.dtype == object:
            out[:] = Fraction(0)
        np.add.at(out, self.idx.ravel(), terms.ravel())
        return out

    @lru_cache(maxsize=None)
    def _mask(self, rule: str):
        gi = self.grades[:, None]
        gj = self.grades[None, :]
        gk = self.grades[self.idx]
        if rule == "op":
            return gk == gi + gj
        if rule == "ip":
            return gk == np.abs(gi - gj)
        if rule == "lc":
            return gk == gj - gi
        if rule == "rc":
            return gk == gi - gj
        if rule == "sp":
            return gk == 0
        raise KeyError(rule)

    def gp(self, a, b):
        return self._prod(a, b)

    def op(self, a, b):
        return self._prod(a, b, self._mask("op"))

    def ip(self, a, b):
        return self._prod(a, b, self._mask("ip"))

    def lc(self, a, b):
        return self._prod(a, b, self._mask("lc"))

    def rc(self, a, b):
        return self._prod(a, b, self._mask("rc"))

    def sp(self, a, b):
        return self._prod(a, b, self._mask("sp"))

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def neg(self, a):
        return -a

    def reverse(self, a):
        return a * self.rev

    def dual(self, a):
        out = np.zeros_like(a)
        out[self.dual_idx] = a * self.dual_sign
        return out

    def undual(self, a):
        out = np.zeros_like(a)
        out[:] = a[self.dual_idx] * self.dual_sign
        return out

    def rp(self, a, b):
        return self.undual(self.op(self.dual(a), self.dual(b)))

    def sw(self, b, a):
        return self.gp(self.gp(b, a), self.reverse(b))

    def proj(self, a, b):
        return self.gp(self.ip(a, b), self.reverse(b))

    def cp(self, a, b):
        return (self.gp(a, b) - self.gp(b, a)) / 2

    def acp(self, a, b):
        return (self.gp(a, b) + self.gp(b, a)) / 2

    def normsq(self, a):
        return self.gp(a, self.reverse(a))

    # Partial operators raise Undefined when a numeric check on generic
    # values shows the required product is not a pure scalar.

    def _scalar(self, x, *, tol):
        rest = np.abs(np.asarray(x[1:], dtype=float))
        scale = max(1.0, float(np.max(np.abs(np.asarray(x, dtype=float)))))
        if rest.size and rest.max() > tol * scale:
            raise Undefined()
        if x[0] == 0:
            raise Undefined()  # vanishes, e.g. a purely null element
        return x[0]

    def norm(self, a, tol=1e-9):
        try:
            s = self._scalar(self.normsq(a), tol=tol)
        except Undefined:
            if np.abs(np.asarray(self.normsq(a), dtype=float)).max() > 0:
                raise
            s = 0.0
        out = np.zeros(self.n)
        out[0] = math.sqrt(s)
        return out

    def normalized(self, a, tol=1e-9):
        s = self._scalar(self.normsq(a), tol=tol)
        return a / math.sqrt(s)

    def inv(self, b, tol=1e-9):
        for c in (self.reverse(b), b * self.conj):
            try:
                s = self._scalar(self.gp(b, c), tol=tol)
            except Undefined:
                continue
            return c / s
        raise Undefined()

    def div(self, a, b, tol=1e-9):
        return self.gp(a, self.inv(b, tol))

    def sqrt(self, a, tol=1e-9):
        if np.any((self.grades % 2 == 1) & (np.abs(a.astype(float)) > 0)):
            raise Undefined()
        n = math.sqrt(self._scalar(self.normsq(a), tol=tol))
        u = a / n
        u[0] += 1
        m = math.sqrt(self._scalar(self.normsq(u), tol=tol))
        return u * math.sqrt(n) / m


class Undefined(Exception):
    pass


@lru_cache(maxsize=None)
def dense(p: int, q: int = 0, r: int = 0) -> Dense:
    return Dense(p, q, r)
