"""The Algebra: blade tables, constructors and one operator cache per operator."""
from __future__ import annotations

import threading
from contextlib import contextmanager
from typing import Callable, Iterable, Mapping

import numpy as np

from . import blades as bl
from .cache import PREFIXES, OperatorCache, RegisteredExpression
from .kernel import KernelIR
from .multivector import MultiVector
from .operators import OPERATORS, GenerationError
from .polynomial import RationalExpr

class Algebra:
    """Geometric algebra G(p, q, r).

    Operators are attributes holding their kernel cache, e.g. ``alg.gp(a, b)``
    or ``alg.sw.operator_dict``. Null basis vectors come first, so naming
    starts at ``e0`` when ``r > 0`` and at ``e1`` otherwise.
    """

    def __init__(self, p: int = 0, q: int = 0, r: int = 0):
        sig = bl.Signature(p, q, r)
        if sig.d and sig.d - 1 + sig.start_index > bl.MAX_NAMED_DIGIT:
            raise ValueError(f"{sig} has more basis vectors than single-digit blade names allow")
        self.signature = sig
        self.d = sig.d
        self.order: tuple[int, ...] = bl.canonical_order(sig)
        self.index: dict[int, int] = {k: i for i, k in enumerate(self.order)}
        self.names_by_key = {k: bl.blade_name(k, sig) for k in self.order}
        self.reverse_signs = [bl.reverse_sign(k) for k in range(1 << self.d)]
        self.dual_table = [bl.dual_blade(k, sig) for k in range(1 << self.d)]
        self.undual_table = [bl.undual_blade(k, sig) for k in range(1 << self.d)]
        self._products: dict[tuple[int, int], bl.SignedBlade] = {}
        self._keys_of: dict[int, tuple[int, ...]] = {}
        self._hook: Callable | None = None
        self._local = threading.local()
        for name, (arity, definition) in OPERATORS.items():
            setattr(self, name, OperatorCache(self, name, arity, definition))

    def __repr__(self):
        return f"Algebra({self.signature.p}, {self.signature.q}, {self.signature.r})"

    @property
    def pss(self) -> MultiVector:
        return self.make((self.signature.pseudoscalar,), (1,))

    # -- blade bookkeeping ---------------------------------------------

    def blade_product(self, a: int, b: int) -> bl.SignedBlade:
        key = (a, b)
        out = self._products.get(key)
        if out is None:
            out = self._products[key] = bl.gp_blades(a, b, self.signature)
        return out

    def type_number(self, keys: Iterable[int]) -> int:
        index = self.index
        n = 0
        for k in keys:
            n |= 1 << index[k]
        return n

    def keys_of(self, type_number: int) -> tuple[int, ...]:
        keys = self._keys_of.get(type_number)
        if keys is None:
            if type_number >> len(self.order):
                raise ValueError(f"type number {type_number} is out of range for {self.signature}")
            keys = tuple(k for i, k in enumerate(self.order) if type_number >> i & 1)
            self._keys_of[type_number] = keys
        return keys

    def blade_name(self, key: int) -> str:
        return self.names_by_key[key]

    def parse(self, name: str) -> int:
        return bl.parse_blade_name(name, self.signature)

    def symbol_name(self, prefix: str, key: int) -> str:
        return prefix + self.names_by_key[key][1:]

    def symbolic_inputs(self, types: tuple[int, ...]):
        if len(types) > len(PREFIXES):
            raise ValueError(f"at most {len(PREFIXES)} kernel inputs are supported")
        names, inputs = [], []
        for prefix, t in zip(PREFIXES, types):
            keys = self.keys_of(t)
            ns = [self.symbol_name(prefix, k) for k in keys]
            names.append(ns)
            inputs.append({k: RationalExpr.symbol(n) for k, n in zip(keys, ns)})
        return names, inputs

    # -- constructors ----------------------------------------------------

    def make(self, keys: Iterable[int], values: Iterable) -> MultiVector:
        """Multivector from keys in any order (sorted canonically here)."""
        keys, values = tuple(keys), tuple(values)
        if len(keys) != len(values):
            raise ValueError(f"{len(keys)} keys but {len(values)} values")
        pairs = list(zip(keys, values))
        seen = set()
        for k, _ in pairs:
            if k in seen:
                raise ValueError(f"duplicate blade {self.names_by_key.get(k, k)}")
            if k not in self.index:
                raise ValueError(f"key {k} is not a blade of {self.signature}")
            seen.add(k)
        pairs.sort(key=lambda kv: self.index[kv[0]])
        keys = tuple(k for k, _ in pairs)
        return MultiVector._raw(self, keys, (v for _, v in pairs), self.type_number(keys))

    def multivector(self, entries: Mapping[str, object] | None = None, **kwargs) -> MultiVector:
        """``alg.multivector(e=3.0, e0=1.0)`` or ``alg.multivector({"e12": x})``."""
        items = list((entries or {}).items())
        dup = set(entries or {}) & set(kwargs)
        if dup:
            raise ValueError(f"duplicate blade names {sorted(dup)}")
        items += list(kwargs.items())
        keys = [self.parse(name) for name, _ in items]
        return self.make(keys, (v for _, v in items))

    def graded(self, grades: Iterable[int], values=None, name: str | None = None) -> MultiVector:
        grades = set(grades)
        keys = tuple(k for k in self.order if bl.grade(k) in grades)
        if name is not None:
            if values is not None:
                raise ValueError("give either values or name, not both")
            values = [RationalExpr.symbol(self.symbol_name(name, k)) for k in keys]
        elif values is None:
            raise ValueError("give values or a symbol name")
        if isinstance(values, np.ndarray):
            if values.ndim == 0 or len(values) != len(keys):
                raise ValueError(f"expected {len(keys)} coefficients along the first axis, got shape {values.shape}")
            values = tuple(values)
        else:
            values = tuple(values)
            if len(values) != len(keys):
                raise ValueError(f"expected {len(keys)} coefficients, got {len(values)}")
        return MultiVector._raw(self, keys, values, self.type_number(keys))

    def scalar(self, values=None, name=None):
        if values is not None and not isinstance(values, (list, tuple, np.ndarray)):
            values = [values]
        return self.graded((0,), values, name)

    def vector(self, values=None, name=None):
        return self.graded((1,), values, name)

    def bivector(self, values=None, name=None):
        return self.graded((2,), values, name)

    def trivector(self, values=None, name=None):
        return self.graded((3,), values, name)

    def quadvector(self, values=None, name=None):
        return self.graded((4,), values, name)

    def pseudovector(self, values=None, name=None):
        return self.graded((self.d - 1,), values, name)

    def pseudoscalar(self, values=None, name=None):
        return self.graded((self.d,), values, name)

    def evenmv(self, values=None, name=None):
        return self.graded(range(0, self.d + 1, 2), values, name)

    def oddmv(self, values=None, name=None):
        return self.graded(range(1, self.d + 1, 2), values, name)

    def fullmv(self, values=None, name=None):
        return self.graded(range(self.d + 1), values, name)

    def blade(self, name: str, value=1) -> MultiVector:
        return self.make((self.parse(name),), (value,))

    def __getattr__(self, name):
        if name[:1] == "e" and (name == "e" or name[1:].isdigit()):
            try:
                return self.blade(name)
            except bl.BladeNameError as exc:
                raise AttributeError(str(exc)) from None
        raise AttributeError(f"'Algebra' object has no attribute {name!r}")

    def stack(self, mvs: Iterable[MultiVector]) -> MultiVector:
        """Stack multivectors with scalar coefficients into one over arrays."""
        mvs = list(mvs)
        keys = sorted({k for mv in mvs for k in mv.keys()}, key=self.index.__getitem__)
        cols = []
        for k in keys:
            col = []
            for mv in mvs:
                d = dict(mv.items())
                col.append(d.get(k, 0))
            cols.append(np.array(col))
        return MultiVector._raw(self, tuple(keys), cols, self.type_number(keys))

    def coerce(self, x) -> MultiVector:
        """Multivectors of this signature pass through; anything else becomes
        a scalar coefficient."""
        if isinstance(x, MultiVector) and x.algebra.signature == self.signature:
            if x.algebra is not self:
                return MultiVector._raw(self, x._keys, x._values, x._type)
            return x
        return MultiVector._raw(self, (0,), (x,), 1)

    # -- composition -------------------------------------------------------

    def register(self, builder: Callable | None = None, *, symbolic: bool = False):
        """Decorator compiling ``builder`` per input-type tuple.

        Use as ``@alg.register`` or ``@alg.register(symbolic=True)``.
        """
        if builder is None:
            return lambda f: RegisteredExpression(self, f, symbolic=symbolic)
        return RegisteredExpression(self, builder, symbolic=symbolic)

    def set_post_generation_hook(self, hook: Callable[[KernelIR], object] | None) -> None:
        """``hook`` is applied to every newly generated kernel before caching.

        It must return an object with an ``execute(inputs, domain)`` method,
        typically a transformed KernelIR. ``None`` restores the identity.
        """
        self._hook = hook

    def _post_process(self, kernel: KernelIR):
        if self._hook is None:
            return kernel
        try:
            out = self._hook(kernel)
        except Exception as exc:
            raise GenerationError(f"post-generation hook failed on {kernel.name}: {exc}") from exc
        if not hasattr(out, "execute"):
            raise GenerationError(f"post-generation hook returned {type(out).__name__}, which cannot execute")
        return out

    def _active_tracer(self):
        return getattr(self._local, "tracer", None)

    @contextmanager
    def _tracing(self, tracer):
        prev = self._active_tracer()
        self._local.tracer = tracer
        try:
            yield tracer
        finally:
            self._local.tracer = prev

    def operator_caches(self) -> dict[str, OperatorCache]:
        return {name: getattr(self, name) for name in OPERATORS}
