"""Per-operator kernel caches and registered (fused) expressions.

An :class:`OperatorCache` maps a tuple of input type numbers to the output
type number and the kernel computing it. On a miss the operator is run on
symbolic inputs of exactly those sparsity types, identically-zero outputs are
dropped, and CSE turns the rest into a kernel.
"""
from __future__ import annotations

import logging
import string
from typing import Callable

from .domains import resolve_domain
from .kernel import KernelIR, cse
from .multivector import MultiVector
from .operators import GenerationError, prune
from .polynomial import RationalExpr

log = logging.getLogger(__name__)

PREFIXES = string.ascii_lowercase[:23]  # a..w; x is reserved for temporaries


class TraceError(RuntimeError):
    """A registered builder did something that cannot be replayed as kernels."""


class OperatorCache:
    def __init__(self, algebra, name: str, arity: int, definition: Callable):
        self.algebra = algebra
        self.name = name
        self.arity = arity
        self.definition = definition
        self.operator_dict: dict[tuple[int, ...], tuple[int, KernelIR]] = {}
        self.generations = 0
        self.hits = 0

    def __repr__(self):
        return f"<OperatorCache {self.name}: {len(self.operator_dict)} kernels>"

    def __call__(self, *args) -> MultiVector:
        if len(args) != self.arity:
            raise TypeError(f"{self.name} takes {self.arity} argument(s), got {len(args)}")
        alg = self.algebra
        mvs = [alg.coerce(a) for a in args]
        types = tuple(mv._type for mv in mvs)
        entry = self.operator_dict.get(types)
        if entry is None:
            entry = self.get_or_generate(types)
        else:
            self.hits += 1
        out_type, kernel = entry
        values = [mv._values for mv in mvs]
        out = kernel.execute(values, resolve_domain(*values))
        result = MultiVector._raw(alg, alg.keys_of(out_type), out, out_type)
        tracer = alg._active_tracer()
        if tracer is not None:
            tracer.record(kernel, mvs, result)
        return result

    def get_or_generate(self, types: tuple[int, ...]) -> tuple[int, KernelIR]:
        entry = self.operator_dict.get(types)
        if entry is not None:
            self.hits += 1
            return entry
        alg = self.algebra
        names, inputs = alg.symbolic_inputs(types)
        if not any(types):
            result = {}
        else:
            result = prune(self.definition(alg, *inputs))
        keys = sorted(result, key=alg.index.__getitem__)
        out_type = alg.type_number(keys)
        kernel = cse(
            [result[k] for k in keys],
            names,
            name=f"codegen_{self.name}_" + "_x_".join(map(str, types)),
            input_types=types,
            output_type=out_type,
        )
        kernel = alg._post_process(kernel)
        entry = (out_type, kernel)
        # Regeneration is idempotent, so a racing duplicate insert is harmless.
        self.operator_dict[types] = entry
        self.generations += 1
        log.debug("generated %s for types %s (%d instructions)", self.name, types, _size(kernel))
        return entry

    def entries(self) -> list[tuple[tuple[int, ...], int, int]]:
        """(input types, output type, instruction count) for every cached kernel."""
        return [(t, out, _size(k)) for t, (out, k) in self.operator_dict.items()]


def _size(kernel) -> int:
    """Instruction count; -1 for hook results that do not report one."""
    try:
        return len(kernel)
    except TypeError:
        return -1


class _Tracer:
    def __init__(self, inputs):
        self.slots: dict[int, int] = {}
        self.keep: list[MultiVector] = []
        self.consts: dict[int, tuple] = {}
        self.steps: list[tuple] = []
        for mv in inputs:
            self._new(mv)

    def _new(self, mv) -> int:
        s = len(self.keep)
        self.keep.append(mv)
        self.slots[id(mv)] = s
        return s

    def slot(self, mv) -> int:
        s = self.slots.get(id(mv))
        if s is None:
            if any(isinstance(v, RationalExpr) and v.symbols() for v in mv._values):
                raise TraceError(
                    "builder produced a multivector from its inputs outside the operator "
                    "kernels (e.g. via map or coefficient access); use symbolic=True"
                )
            s = self._new(mv)
            self.consts[s] = mv._values
        return s

    def record(self, kernel, mvs, result):
        ins = tuple(self.slot(m) for m in mvs)
        self.steps.append((kernel, ins, self._new(result)))

    def record_select(self, src, positions, result):
        self.steps.append((tuple(positions), (self.slot(src),), self._new(result)))


class _Pipeline:
    def __init__(self, tracer: _Tracer, output: MultiVector, ninputs: int):
        self.nslots = len(tracer.keep)
        self.consts = tuple(tracer.consts.items())
        self.steps = tuple(tracer.steps)
        self.ninputs = ninputs
        self.output = tracer.slot(output)
        self.keys = output._keys
        self.type = output._type

    def __len__(self):
        return len(self.steps)

    def kernels(self) -> list[KernelIR]:
        return [k for k, _, _ in self.steps if not isinstance(k, tuple)]

    def run(self, algebra, mvs) -> MultiVector:
        slots = [None] * self.nslots
        for i, mv in enumerate(mvs):
            slots[i] = mv._values
        for s, v in self.consts:
            slots[s] = v
        domain = resolve_domain(*(mv._values for mv in mvs), *(v for _, v in self.consts))
        for step, ins, out in self.steps:
            if isinstance(step, tuple):
                src = slots[ins[0]]
                slots[out] = [src[p] for p in step]
            else:
                slots[out] = step.execute([slots[i] for i in ins], domain)
        return MultiVector._raw(algebra, self.keys, slots[self.output], self.type)


class _Fused:
    def __init__(self, keys, type_number, kernel):
        self.keys = keys
        self.type = type_number
        self.kernel = kernel

    def run(self, algebra, mvs) -> MultiVector:
        values = [mv._values for mv in mvs]
        out = self.kernel.execute(values, resolve_domain(*values))
        return MultiVector._raw(algebra, self.keys, out, self.type)


class RegisteredExpression:
    """A user expression compiled per input-type tuple.

    Pipeline mode traces the builder into the sequence of cached operator
    kernels it calls and replays them back to back. Symbolic mode evaluates
    the whole builder on symbolic inputs and fuses it into one kernel.
    """

    def __init__(self, algebra, builder: Callable, symbolic: bool = False):
        self.algebra = algebra
        self.builder = builder
        self.symbolic = symbolic
        self.cache: dict[tuple[int, ...], _Pipeline | _Fused] = {}
        self.generations = 0
        self.__name__ = getattr(builder, "__name__", "expression")
        self.__doc__ = getattr(builder, "__doc__", None)

    def __repr__(self):
        mode = "symbolic" if self.symbolic else "pipeline"
        return f"<registered {self.__name__} ({mode}), {len(self.cache)} entries>"

    def __call__(self, *args) -> MultiVector:
        alg = self.algebra
        mvs = [alg.coerce(a) for a in args]
        types = tuple(mv._type for mv in mvs)
        plan = self.cache.get(types)
        if plan is None:
            plan = self._build(types)
        return plan.run(alg, mvs)

    def _build(self, types):
        alg = self.algebra
        names, inputs = alg.symbolic_inputs(types)
        sym = [MultiVector._raw(alg, tuple(d), tuple(d.values()), t) for d, t in zip(inputs, types)]
        if self.symbolic:
            out = alg.coerce(self.builder(*sym))
            result = {
                k: RationalExpr.coerce(v) for k, v in zip(out._keys, out._values)
            }
            result = prune(result)
            keys = tuple(sorted(result, key=alg.index.__getitem__))
            type_number = alg.type_number(keys)
            kernel = cse(
                [result[k] for k in keys],
                names,
                name=f"codegen_{self.__name__}_" + "_x_".join(map(str, types)),
                input_types=types,
                output_type=type_number,
            )
            plan = _Fused(keys, type_number, alg._post_process(kernel))
        else:
            tracer = _Tracer(sym)
            with alg._tracing(tracer):
                out = alg.coerce(self.builder(*sym))
            plan = _Pipeline(tracer, out, len(sym))
        self.cache[types] = plan
        self.generations += 1
        return plan


__all__ = ["OperatorCache", "RegisteredExpression", "TraceError", "GenerationError"]
