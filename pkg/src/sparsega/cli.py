"""Command line: ``sparsega bench | kernel | demo boids | demo deriv``."""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import fields

from . import bench as bm
from .algebra import Algebra
from .blades import BladeNameError, grade
from .operators import OPERATORS, GenerationError

KINDS = {
    "scalar": (0,),
    "vector": (1,),
    "bivector": (2,),
    "trivector": (3,),
    "quadvector": (4,),
    "even": "even",
    "odd": "odd",
    "full": "full",
    "pseudovector": "pseudovector",
    "pseudoscalar": "pseudoscalar",
}


def kind_keys(alg: Algebra, kind: str) -> tuple[int, ...]:
    """Blade keys for a kind: a grade-set name (``vector``, ``even``, ...),
    ``grades:0,2``, or an explicit blade list such as ``e,e12``."""
    d = alg.d
    aliases = {"evenmv": "even", "oddmv": "odd", "fullmv": "full"}
    kind = aliases.get(kind, kind)
    if kind in KINDS:
        spec = KINDS[kind]
        grades = {
            "even": range(0, d + 1, 2),
            "odd": range(1, d + 1, 2),
            "full": range(d + 1),
            "pseudovector": (d - 1,),
            "pseudoscalar": (d,),
        }.get(spec, spec)
    elif kind.startswith("grades:"):
        try:
            grades = [int(g) for g in kind[7:].split(",")]
        except ValueError:
            raise ValueError(f"bad grade list in {kind!r}") from None
    else:
        keys = [alg.parse(name.strip()) for name in kind.split(",")]
        if len(set(keys)) != len(keys):
            raise ValueError(f"repeated blade in {kind!r}")
        return tuple(sorted(keys, key=alg.index.__getitem__))
    grades = set(grades)
    return tuple(k for k in alg.order if grade(k) in grades)


def _algebra(spec: str) -> Algebra:
    return Algebra(*bm.parse_signature(spec))


def cmd_bench(args) -> int:
    if args.repeats < 1:
        raise ValueError("--repeats must be at least 1")
    sig = bm.parse_signature(args.algebra)
    if args.case == "broadcast":
        reports = [bm.bench_broadcast(args.n, repeats=min(args.repeats, 5))]
    elif args.case == "projection":
        reports = bm.bench_projection(args.repeats)
    else:
        reports = [bm.bench(sig, args.op, args.case, args.repeats, trials=args.trials)]
    if args.json:
        print(json.dumps([r.to_dict() for r in reports], indent=2))
    else:
        print(bm.table(reports))
    return 0


def cmd_kernel(args) -> int:
    alg = _algebra(args.algebra)
    if args.op not in OPERATORS:
        raise ValueError(f"unknown operator {args.op!r}; choose from {', '.join(OPERATORS)}")
    arity = OPERATORS[args.op][0]
    kinds = [args.lhs] if arity == 1 else [args.lhs, args.rhs]
    if any(k is None for k in kinds):
        raise ValueError(f"{args.op} needs --lhs" + (" and --rhs" if arity == 2 else ""))
    types = tuple(alg.type_number(kind_keys(alg, k)) for k in kinds)
    cache = getattr(alg, args.op)
    out_type, kernel = cache.get_or_generate(types)
    print(kernel.source())
    if args.stats:
        print(f"# {types} -> ({out_type}, {len(kernel)} instructions)")
    return 0


def _boid_params(args):
    from .boids import BoidParams

    kw = {f.name: getattr(args, f.name) for f in fields(BoidParams) if getattr(args, f.name, None) is not None}
    return BoidParams(**kw)


def cmd_boids(args) -> int:
    from .boids import Flock, simulate, write_frames

    if args.n < 1 or args.steps < 0:
        raise ValueError("--n must be >= 1 and --steps >= 0")
    params = _boid_params(args)
    flock = Flock.random(args.n, args.seed, params)
    frames = simulate(flock, args.steps)
    paths = write_frames(frames, args.out, args.format, params)
    print(f"wrote {len(frames)} frames for {args.n} boids to {paths[0] if len(paths) == 1 else args.out}")
    return 0


def cmd_deriv(args) -> int:
    from .derivdemo import OMEGA, polynomial_check, report

    rep = report(args.samples)
    value, d1, d2 = polynomial_check(3.0)
    print(f"f(t) = t**2 at t=3: f={value} f'={d1} f''={d2}")
    print(f"rotating point, omega={OMEGA}, {rep['samples']} samples over [0, 2pi]")
    for key, val in rep.items():
        if key != "samples":
            print(f"  {key:<32} {val:.3e}")
    worst = max(rep["max_rel_err_first_vs_fd"], rep["max_rel_err_second_vs_fd"])
    print(f"max relative error vs finite differences: {worst:.3e}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="sparsega", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)

    b = sub.add_parser("bench", help="time first call against warm calls")
    b.add_argument("--algebra", default="2,0,1", help="signature p,q,r")
    b.add_argument("--op", default="gp", help="operator name")
    b.add_argument("--case", default="vectors", choices=bm.CASES + bm.EXTRA_CASES)
    b.add_argument("--repeats", type=int, default=1000)
    b.add_argument("--trials", type=int, default=3, help="fresh algebras for the first-call minimum")
    b.add_argument("--n", type=int, default=10000, help="points for --case broadcast")
    b.add_argument("--json", action="store_true")
    b.set_defaults(func=cmd_bench)

    k = sub.add_parser("kernel", help="print the generated kernel for one type pair")
    k.add_argument("--algebra", default="2,0,0")
    k.add_argument("--op", required=True)
    k.add_argument("--lhs", required=True, help="vector, even, full, grades:0,2 or e,e12 ...")
    k.add_argument("--rhs")
    k.add_argument("--stats", action="store_true", help="also print the cache entry")
    k.set_defaults(func=cmd_kernel)

    d = sub.add_parser("demo", help="demos")
    dsub = d.add_subparsers(dest="demo", required=True)
    bo = dsub.add_parser("boids", help="flocking simulation")
    bo.add_argument("--n", type=int, default=100)
    bo.add_argument("--steps", type=int, default=100)
    bo.add_argument("--seed", type=int, default=0)
    bo.add_argument("--out", required=True, help="JSON file, or directory for SVG frames")
    bo.add_argument("--format", choices=("json", "svg"), default="json")
    from .boids import BoidParams

    for f in fields(BoidParams):
        flag = "--" + f.name.replace("_", "-")
        bo.add_argument(flag, dest=f.name, type=float, default=None, help=f"default {f.default}")
    bo.set_defaults(func=cmd_boids)

    dv = dsub.add_parser("deriv", help="derivatives via nested dual numbers")
    dv.add_argument("--samples", type=int, default=50)
    dv.set_defaults(func=cmd_deriv)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, GenerationError, BladeNameError, OSError, FloatingPointError) as exc:
        print(f"sparsega: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
