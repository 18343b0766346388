"""The sparse multivector value type."""
from __future__ import annotations

from numbers import Number
from typing import Callable, Iterable

import numpy as np

from .blades import BladeNameError, grade as blade_grade, parse_blade_name_lenient


def _is_blade_attr(name: str) -> bool:
    return name[:1] == "e" and name[1:].isdigit() or name == "e"


class MultiVector:
    """An immutable, dictionary-like multivector.

    ``keys()`` are blade bitmasks in canonical order and ``values()`` the
    matching coefficients. Coefficients are read by blade name (``x.e12``);
    indexing with ``[]`` is forwarded to the coefficients, which is how array
    valued multivectors are sliced and masked.
    """

    is_multivector = True
    __slots__ = ("algebra", "_keys", "_values", "_type")
    # Keep numpy from broadcasting over us; ndarray <op> mv defers to mv.
    __array_ufunc__ = None

    def __init__(self, algebra, keys: Iterable[int], values: Iterable):
        keys = tuple(keys)
        values = tuple(values)
        if len(keys) != len(values):
            raise ValueError(f"{len(keys)} keys but {len(values)} values")
        index = algebra.index
        if any(index[a] >= index[b] for a, b in zip(keys, keys[1:])):
            raise ValueError("keys must be unique and in canonical order; use Algebra.make")
        self.algebra = algebra
        self._keys = keys
        self._values = values
        self._type = algebra.type_number(keys)

    @classmethod
    def _raw(cls, algebra, keys: tuple, values, type_number: int) -> "MultiVector":
        mv = object.__new__(cls)
        mv.algebra = algebra
        mv._keys = keys
        mv._values = tuple(values)
        mv._type = type_number
        return mv

    # -- dictionary-like access -------------------------------------------

    def keys(self) -> tuple[int, ...]:
        return self._keys

    def values(self) -> tuple:
        return self._values

    def items(self):
        return tuple(zip(self._keys, self._values))

    @property
    def type_number(self) -> int:
        return self._type

    def coefficient(self, name: str):
        """Coefficient of the named blade; 0 for blades not stored, including
        blades that do not exist in this algebra."""
        key = parse_blade_name_lenient(name, self.algebra.signature)
        if key is not None:
            for k, v in zip(self._keys, self._values):
                if k == key:
                    return v
        return 0

    def __getattr__(self, name):
        if name.startswith("_") or not _is_blade_attr(name):
            raise AttributeError(f"{type(self).__name__!r} object has no attribute {name!r}")
        try:
            return self.coefficient(name)
        except BladeNameError as exc:
            raise AttributeError(str(exc)) from None

    def grade(self, *k) -> "MultiVector":
        grades = set()
        for g in k:
            if isinstance(g, Iterable):
                grades.update(g)
            else:
                grades.add(g)
        positions = [i for i, key in enumerate(self._keys) if blade_grade(key) in grades]
        keys = tuple(self._keys[i] for i in positions)
        out = MultiVector._raw(
            self.algebra, keys, (self._values[i] for i in positions), self.algebra.type_number(keys)
        )
        tracer = self.algebra._active_tracer()
        if tracer is not None:
            tracer.record_select(self, positions, out)
        return out

    # -- array-axis utilities -----------------------------------------------

    @property
    def shape(self) -> tuple:
        shape = ()
        for v in self._values:
            s = getattr(v, "shape", ())
            if s:
                if shape and s != shape:
                    raise ValueError(f"coefficients have mixed shapes {shape} and {s}")
                shape = s
        return shape

    def __getitem__(self, index) -> "MultiVector":
        shape = self.shape
        if not shape:
            raise TypeError("only multivectors over arrays can be indexed; use x.e12 for coefficients")
        mask = np.asarray(index) if isinstance(index, (list, np.ndarray)) else None
        if mask is not None and mask.dtype == bool and mask.shape != shape[: mask.ndim]:
            raise IndexError(f"mask of shape {mask.shape} does not match coefficients of shape {shape}")
        values = tuple(v[index] if getattr(v, "shape", ()) else v for v in self._values)
        return MultiVector._raw(self.algebra, self._keys, values, self._type)

    def __iter__(self):
        shape = self.shape
        if not shape:
            raise TypeError("only multivectors over arrays can be iterated")
        for i in range(shape[0]):
            yield self[i]

    def __len__(self):
        shape = self.shape
        if not shape:
            raise TypeError("multivector with scalar coefficients has no length")
        return shape[0]

    def map(self, f: Callable) -> "MultiVector":
        """Apply ``f`` to every coefficient independently (e.g. ``np.mean``)."""
        return MultiVector._raw(self.algebra, self._keys, (f(v) for v in self._values), self._type)

    def filter(self, keep: Callable | None = None) -> "MultiVector":
        """Drop coefficients failing ``keep`` (default: drop exact zeros,
        including all-zero arrays). Changes the type number."""
        if keep is None:
            keep = lambda v: bool(np.any(v != 0)) if isinstance(v, np.ndarray) else v != 0
        pairs = [(k, v) for k, v in zip(self._keys, self._values) if keep(v)]
        keys = tuple(k for k, _ in pairs)
        return MultiVector._raw(self.algebra, keys, (v for _, v in pairs), self.algebra.type_number(keys))

    # -- operators ------------------------------------------------------------

    def gp(self, other):
        return self.algebra.gp(self, other)

    def ip(self, other):
        return self.algebra.ip(self, other)

    def sp(self, other):
        return self.algebra.sp(self, other)

    def lc(self, other):
        return self.algebra.lc(self, other)

    def rc(self, other):
        return self.algebra.rc(self, other)

    def op(self, other):
        return self.algebra.op(self, other)

    def rp(self, other):
        return self.algebra.rp(self, other)

    def sw(self, other):
        """Conjugate ``other`` by self: self * other * ~self."""
        return self.algebra.sw(self, other)

    def proj(self, other):
        """Project self onto ``other`` (assumed normalized)."""
        return self.algebra.proj(self, other)

    def cp(self, other):
        return self.algebra.cp(self, other)

    def acp(self, other):
        return self.algebra.acp(self, other)

    def add(self, other):
        return self.algebra.add(self, other)

    def sub(self, other):
        return self.algebra.sub(self, other)

    def div(self, other):
        return self.algebra.div(self, other)

    def neg(self):
        return self.algebra.neg(self)

    def reverse(self):
        return self.algebra.reverse(self)

    def dual(self):
        return self.algebra.dual(self)

    def undual(self):
        return self.algebra.undual(self)

    def normsq(self):
        return self.algebra.normsq(self)

    def norm(self):
        return self.algebra.norm(self)

    def normalized(self):
        return self.algebra.normalized(self)

    def inv(self):
        return self.algebra.inv(self)

    def sqrt(self):
        return self.algebra.sqrt(self)

    def exp(self):
        from .operators import exp_bivector

        return exp_bivector(self)

    __mul__ = gp
    __or__ = ip
    __xor__ = op
    __and__ = rp
    __rshift__ = sw
    __matmul__ = proj
    __add__ = add
    __sub__ = sub
    __truediv__ = div
    __neg__ = neg
    __invert__ = reverse

    def __pos__(self):
        return self

    def __rmul__(self, other):
        return self.algebra.gp(other, self)

    def __radd__(self, other):
        return self.algebra.add(other, self)

    def __rsub__(self, other):
        return self.algebra.sub(other, self)

    def __rtruediv__(self, other):
        return self.algebra.div(other, self)

    def __ror__(self, other):
        return self.algebra.ip(other, self)

    def __rxor__(self, other):
        return self.algebra.op(other, self)

    def __rand__(self, other):
        return self.algebra.rp(other, self)

    def __pow__(self, n):
        if not isinstance(n, int):
            if n == 0.5:
                return self.sqrt()
            raise TypeError("only integer powers and 0.5 are supported")
        base = self if n >= 0 else self.inv()
        out = None
        for _ in range(abs(n)):
            out = base if out is None else out * base
        return out if out is not None else self.algebra.scalar([1])

    # -- rendering -------------------------------------------------------------

    def __str__(self):
        if not self._keys:
            return "0"
        names = self.algebra.names_by_key
        parts = []
        for k, v in zip(self._keys, self._values):
            c = _format_value(v)
            parts.append(f"({c})" if k == 0 else f"({c}) {names[k]}")
        return " + ".join(parts)

    def __repr__(self):
        return str(self)

    def __bool__(self):
        return bool(self._keys)


def _format_value(v) -> str:
    if isinstance(v, np.ndarray):
        return np.array2string(v, separator=", ", threshold=8)
    if isinstance(v, np.generic):
        v = v.item()
    if isinstance(v, Number) and not isinstance(v, bool):
        return repr(v) if isinstance(v, float) else str(v)
    return str(v)
