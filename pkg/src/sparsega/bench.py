"""Timing of first calls (code generation + execution) against warm calls.

Absolute numbers depend on the machine; what is meaningful is the ordering
between first and steady-state calls and between the input cases.
"""
from __future__ import annotations

import math
import statistics
import time
from dataclasses import asdict, dataclass, field

import numpy as np

from .algebra import Algebra
from .operators import OPERATORS

CASES = ("vectors", "evens", "full")
EXTRA_CASES = ("broadcast", "projection")
_CONSTRUCTORS = {"vectors": "vector", "evens": "evenmv", "full": "fullmv"}


@dataclass
class BenchReport:
    algebra: str
    op: str
    case: str
    first_call_us: float
    steady_us: float
    instructions: int
    repeats: int
    extra: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return asdict(self)

    def row(self) -> str:
        return (
            f"{self.algebra:<10} {self.op:<10} {self.case:<24} "
            f"{self.first_call_us:>12.1f} {self.steady_us:>10.2f} {self.instructions:>6}"
        )


HEADER = f"{'algebra':<10} {'op':<10} {'case':<24} {'first (us)':>12} {'warm (us)':>10} {'instr':>6}"


def parse_signature(spec: str) -> tuple[int, int, int]:
    try:
        parts = [int(s) for s in spec.split(",")]
    except ValueError:
        raise ValueError(f"algebra must look like p,q,r, got {spec!r}") from None
    if not 1 <= len(parts) <= 3 or any(p < 0 for p in parts):
        raise ValueError(f"algebra must look like p,q,r, got {spec!r}")
    return tuple(parts + [0] * (3 - len(parts)))


def random_input(alg: Algebra, case: str, rng: np.random.Generator):
    ctor = getattr(alg, _CONSTRUCTORS[case])
    n = len(ctor(name="t").keys())
    return ctor(list(rng.standard_normal(n)))


def _median_of_means(fn, repeats: int, blocks: int = 5) -> float:
    per_block = max(1, math.ceil(repeats / blocks))
    means = []
    for _ in range(blocks):
        t0 = time.perf_counter()
        for _ in range(per_block):
            fn()
        means.append((time.perf_counter() - t0) / per_block)
    return statistics.median(means)


def bench(signature, op: str, case: str, repeats: int = 1000, trials: int = 3, seed: int = 0) -> BenchReport:
    if repeats < 1:
        raise ValueError("repeats must be at least 1")
    if op not in OPERATORS:
        raise ValueError(f"unknown operator {op!r}; choose from {', '.join(OPERATORS)}")
    if case not in CASES:
        raise ValueError(f"unknown case {case!r}; choose from {', '.join(CASES)}")
    p, q, r = signature
    arity = OPERATORS[op][0]
    rng = np.random.default_rng(seed)
    first = math.inf
    for _ in range(max(1, trials)):
        alg = Algebra(p, q, r)  # fresh caches, so the call includes generation
        args = [random_input(alg, case, rng) for _ in range(arity)]
        fn = getattr(alg, op)
        t0 = time.perf_counter()
        fn(*args)
        first = min(first, time.perf_counter() - t0)
    fn(*args)  # warm-up, excluded
    steady = _median_of_means(lambda: fn(*args), repeats)
    types = tuple(a.type_number for a in args)
    kernel = fn.operator_dict[types][1]
    return BenchReport(str(alg.signature), op, case, first * 1e6, steady * 1e6, len(kernel), repeats)


def bench_broadcast(n: int = 10000, repeats: int = 3, seed: int = 0) -> BenchReport:
    """One array-valued sandwich over ``n`` points against ``n`` scalar sandwiches."""
    alg = Algebra(2, 0, 1)
    rng = np.random.default_rng(seed)
    coords = np.vstack([np.ones(n), rng.uniform(-1, 1, (2, n))])
    points = alg.vector(coords).dual()
    scalar_points = list(points)
    R = (alg.e12 * 0.5).exp()
    R >> points
    R >> scalar_points[0]

    def loop():
        for pt in scalar_points:
            R >> pt

    batched = min(_timed(lambda: R >> points) for _ in range(max(1, repeats)))
    looped = min(_timed(loop) for _ in range(max(1, repeats)))
    kernel = alg.sw.operator_dict[(R.type_number, points.type_number)][1]
    return BenchReport(
        str(alg.signature), "sw", "broadcast", looped * 1e6, batched * 1e6, len(kernel), repeats,
        extra={"n": n, "batched_us": batched * 1e6, "loop_us": looped * 1e6},
    )


def _timed(fn) -> float:
    t0 = time.perf_counter()
    fn()
    return time.perf_counter() - t0


def projection_variants(alg: Algebra) -> dict:
    pipeline = alg.register(lambda a, b: (a | b) / b)
    symbolic = alg.register(lambda a, b: (a | b) / b, symbolic=True)
    return {
        "unregistered": lambda a, b: (a | b) / b,
        "pipeline": pipeline,
        "symbolic": symbolic,
        "builtin": lambda a, b: a @ b,
    }


def bench_projection(repeats: int = 1000, trials: int = 3, seed: int = 0) -> list[BenchReport]:
    """Point onto line in G(2,0,1): four ways of writing the projection."""
    rng = np.random.default_rng(seed)
    reports = []
    names = list(projection_variants(Algebra(2, 0, 1)))
    for name in names:
        first = math.inf
        for _ in range(max(1, trials)):
            alg = Algebra(2, 0, 1)
            fn = projection_variants(alg)[name]
            point = alg.vector([1.0, *rng.uniform(-1, 1, 2)]).dual()
            line = alg.vector(list(rng.standard_normal(3))).normalized()
            t0 = time.perf_counter()
            fn(point, line)
            first = min(first, time.perf_counter() - t0)
        fn(point, line)
        steady = _median_of_means(lambda: fn(point, line), repeats)
        reports.append(BenchReport(str(alg.signature), "proj", f"projection:{name}", first * 1e6, steady * 1e6, 0, repeats))
    return reports


def table(reports: list[BenchReport]) -> str:
    return "\n".join([HEADER, *(r.row() for r in reports)])
