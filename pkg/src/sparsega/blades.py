"""Basis-blade combinatorics for an algebra with signature G(p, q, r).

A blade is identified by an integer bitmask: bit ``i`` is set when basis
vector ``i`` takes part in the blade. Null basis vectors occupy the lowest
indices, so in G(2, 0, 1) the basis is ``e0`` (null), ``e1``, ``e2``.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from typing import NamedTuple

MAX_DIM = 16
# Blade names are built from single digits.
MAX_NAMED_DIGIT = 9

_NAME_RE = re.compile(r"^e(\d*)$")


class BladeNameError(ValueError):
    pass


@dataclass(frozen=True)
class Signature:
    p: int = 0
    q: int = 0
    r: int = 0

    def __post_init__(self):
        if min(self.p, self.q, self.r) < 0:
            raise ValueError(f"signature counts must be non-negative, got {self}")
        if self.d > MAX_DIM:
            raise ValueError(f"dimension {self.d} exceeds the supported maximum of {MAX_DIM}")

    @property
    def d(self) -> int:
        return self.p + self.q + self.r

    @property
    def metric(self) -> tuple[int, ...]:
        return (0,) * self.r + (1,) * self.p + (-1,) * self.q

    @property
    def start_index(self) -> int:
        return 0 if self.r > 0 else 1

    @property
    def pseudoscalar(self) -> int:
        return (1 << self.d) - 1

    def __str__(self):
        return f"G({self.p},{self.q},{self.r})"


class SignedBlade(NamedTuple):
    coef: int
    key: int


def grade(key: int) -> int:
    return key.bit_count()


def indices(key: int) -> tuple[int, ...]:
    """Ascending basis-vector indices present in ``key``."""
    out = []
    i = 0
    while key:
        if key & 1:
            out.append(i)
        key >>= 1
        i += 1
    return tuple(out)


@lru_cache(maxsize=None)
def canonical_order(sig: Signature) -> tuple[int, ...]:
    """All blade keys ordered by grade, then lexicographically by index tuple."""
    return tuple(sorted(range(1 << sig.d), key=lambda k: (grade(k), indices(k))))


def blade_name(key: int, sig: Signature) -> str:
    if key >> sig.d:
        raise BladeNameError(f"key {key:#b} is outside {sig}")
    return "e" + "".join(str(i + sig.start_index) for i in indices(key))


def _digits(name: str) -> tuple[int, ...]:
    m = _NAME_RE.match(name)
    if m is None:
        raise BladeNameError(f"not a blade name: {name!r}")
    digits = tuple(int(c) for c in m.group(1))
    for x, y in zip(digits, digits[1:]):
        if x == y:
            raise BladeNameError(f"repeated basis vector in {name!r}")
        if x > y:
            raise BladeNameError(f"basis vectors must be ascending in {name!r}")
    return digits


def parse_blade_name(name: str, sig: Signature) -> int:
    key = 0
    for digit in _digits(name):
        i = digit - sig.start_index
        if not 0 <= i < sig.d:
            raise BladeNameError(f"{name!r} names a basis vector outside {sig}")
        key |= 1 << i
    return key


def parse_blade_name_lenient(name: str, sig: Signature) -> int | None:
    """Like :func:`parse_blade_name`, but returns None for well-formed names
    of blades that do not exist in ``sig``."""
    key = 0
    for digit in _digits(name):
        i = digit - sig.start_index
        if not 0 <= i < sig.d:
            return None
        key |= 1 << i
    return key


def swap_sign(a: int, b: int) -> int:
    """(-1)**S where S counts the transpositions needed to merge the ascending
    index lists of ``a`` followed by ``b``."""
    swaps = 0
    a >>= 1
    while a:
        swaps += (a & b).bit_count()
        a >>= 1
    return -1 if swaps & 1 else 1


def gp_blades(a: int, b: int, sig: Signature) -> SignedBlade:
    coef = swap_sign(a, b)
    common = a & b
    if common:
        metric = sig.metric
        for i in indices(common):
            coef *= metric[i]
            if not coef:
                break
    return SignedBlade(coef, a ^ b)


def reverse_sign(key: int) -> int:
    return -1 if grade(key) % 4 in (2, 3) else 1


def dual_blade(key: int, sig: Signature) -> SignedBlade:
    """Metric-free right complement: ``e_key ^ dual(e_key) == +pseudoscalar``."""
    comp = ~key & sig.pseudoscalar
    return SignedBlade(swap_sign(key, comp), comp)


def undual_blade(key: int, sig: Signature) -> SignedBlade:
    comp = ~key & sig.pseudoscalar
    return SignedBlade(swap_sign(comp, key), comp)
