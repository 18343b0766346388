"""Straight-line kernels: a three-address IR, the CSE pass that builds it from
rational expressions, an interpreter over scalar domains and a printer that
renders the kernel as readable Python source.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .polynomial import Polynomial, RationalExpr, is_atom, radicand

OPS = ("load", "const", "add", "sub", "mul", "div", "neg", "sqrt")
ARITH = ("add", "sub", "mul", "div", "neg", "sqrt")


@dataclass(frozen=True)
class Instruction:
    op: str
    dst: int
    args: tuple

    def __str__(self):
        if self.op == "load":
            return f"r{self.dst} = load {self.args[0]}[{self.args[1]}]"
        if self.op == "const":
            return f"r{self.dst} = const {self.args[0]}"
        return f"r{self.dst} = {self.op} " + ", ".join(f"r{a}" for a in self.args)


@dataclass(frozen=True, repr=False)
class KernelIR:
    """An immutable straight-line program.

    ``inputs`` holds one tuple of symbol names per argument; ``outputs`` are
    the registers holding the result coefficients in order. ``temporaries``
    lists the registers that CSE hoisted (referenced at least twice).
    """

    name: str
    inputs: tuple[tuple[str, ...], ...]
    instructions: tuple[Instruction, ...]
    outputs: tuple[int, ...]
    temporaries: tuple[int, ...] = ()
    input_types: tuple[int, ...] = ()
    output_type: int = 0
    _plan: tuple = field(default=(), repr=False, compare=False)

    def __post_init__(self):
        loads, consts, steps = [], [], []
        for ins in self.instructions:
            if ins.op == "load":
                loads.append((ins.dst, ins.args[0], ins.args[1]))
            elif ins.op == "const":
                consts.append((ins.dst, ins.args[0]))
            else:
                a = ins.args
                steps.append((ins.op, ins.dst, a[0], a[1] if len(a) > 1 else None))
        nregs = 1 + max((i.dst for i in self.instructions), default=-1)
        object.__setattr__(self, "_plan", (nregs, tuple(loads), tuple(consts), tuple(steps)))

    def __len__(self):
        return len(self.instructions)

    def count(self, *ops: str) -> int:
        return sum(1 for i in self.instructions if i.op in ops)

    def execute(self, inputs: Sequence[Sequence], domain) -> list:
        nregs, loads, consts, steps = self._plan
        regs = [None] * nregs
        for dst, slot, pos in loads:
            regs[dst] = inputs[slot][pos]
        const = domain.const
        for dst, c in consts:
            regs[dst] = const(c)
        table = domain.table
        for op, dst, x, y in steps:
            if y is None:
                regs[dst] = table[op](regs[x])
            else:
                regs[dst] = table[op](regs[x], regs[y])
        return [regs[o] for o in self.outputs]

    def source(self) -> str:
        return format_kernel(self)

    def __str__(self):
        return self.source()

    def __repr__(self):
        params = ", ".join(_PARAMS[: len(self.inputs)])
        return f"<kernel {self.name}({params})>"


class _Dag:
    """Hash-consed expression DAG built from expanded rational expressions."""

    def __init__(self, inputs: Sequence[Sequence[str]]):
        self.slot = {}
        for i, names in enumerate(inputs):
            for j, name in enumerate(names):
                self.slot[name] = (i, j)
        self.ninputs = len(inputs)
        self.ids: dict[tuple, int] = {}
        self.nodes: list[tuple] = []

    def node(self, key: tuple) -> int:
        n = self.ids.get(key)
        if n is None:
            n = len(self.nodes)
            self.ids[key] = n
            self.nodes.append(key)
        return n

    def const(self, c) -> int:
        return self.node(("const", Fraction(c)))

    def symbol(self, name: str) -> int:
        if is_atom(name):
            return self.node(("sqrt", self.expr(radicand(name))))
        try:
            slot = self.slot[name]
        except KeyError:
            raise ValueError(f"symbol {name!r} is not a declared kernel input") from None
        return self.node(("load",) + slot)

    def _group(self, name: str) -> int:
        if is_atom(name):
            return self.ninputs
        return self.slot[name][0]

    def product(self, names: Sequence[str], coef=1) -> int:
        acc = None if coef == 1 else self.const(coef)
        for name in names:
            s = self.symbol(name)
            acc = s if acc is None else self.node(("mul", acc, s))
        if acc is None:
            acc = self.const(1)
        return acc

    def term(self, monomial: tuple, coef) -> int:
        # Split the monomial per input argument so factors drawn from one
        # argument form a reusable sub-product; the coefficient joins the first.
        groups: dict[int, list[str]] = {}
        for name in monomial:
            groups.setdefault(self._group(name), []).append(name)
        acc = None
        for g in sorted(groups):
            part = self.product(groups[g], coef if acc is None else 1)
            acc = part if acc is None else self.node(("mul", acc, part))
        return acc if acc is not None else self.const(coef)

    def poly(self, p: Polynomial) -> int:
        if p.is_zero():
            return self.const(0)
        terms = p.sorted_terms()
        # Start from the first positive term so no leading negation is needed.
        start = next((i for i, (_, c) in enumerate(terms) if c > 0), None)
        if start is None:
            acc = self.node(("neg", self.term(terms[0][0], -terms[0][1])))
            rest = terms[1:]
        else:
            acc = self.term(*terms[start])
            rest = terms[:start] + terms[start + 1:]
        for m, c in rest:
            if c > 0:
                acc = self.node(("add", acc, self.term(m, c)))
            else:
                acc = self.node(("sub", acc, self.term(m, -c)))
        return acc

    def expr(self, e: RationalExpr) -> int:
        n = self.poly(e.num)
        if e.den.is_one():
            return n
        return self.node(("div", n, self.poly(e.den)))


def cse(
    outputs: Sequence[RationalExpr],
    inputs: Sequence[Sequence[str]],
    name: str = "kernel",
    input_types: tuple[int, ...] = (),
    output_type: int = 0,
) -> KernelIR:
    dag = _Dag(inputs)
    roots = [dag.expr(RationalExpr.coerce(e)) for e in outputs]

    order: list[int] = []
    seen: set[int] = set()
    refs = [0] * len(dag.nodes)

    def visit(n: int):
        stack = [(n, False)]
        while stack:
            m, done = stack.pop()
            if done:
                order.append(m)
                continue
            if m in seen:
                continue
            seen.add(m)
            stack.append((m, True))
            key = dag.nodes[m]
            if key[0] in ARITH:
                for child in reversed(key[1:]):
                    if child not in seen:
                        stack.append((child, False))

    for r in roots:
        visit(r)
        refs[r] += 1
    for n in range(len(dag.nodes)):
        key = dag.nodes[n]
        if n in seen and key[0] in ARITH:
            for child in key[1:]:
                refs[child] += 1

    reg = {n: i for i, n in enumerate(order)}
    instructions = []
    for n in order:
        key = dag.nodes[n]
        op = key[0]
        if op == "load":
            args = key[1:]
        elif op == "const":
            args = (key[1],)
        else:
            args = tuple(reg[c] for c in key[1:])
        instructions.append(Instruction(op, reg[n], args))
    temps = tuple(
        reg[n] for n in order if dag.nodes[n][0] in ARITH and refs[n] >= 2
    )
    return KernelIR(
        name=name,
        inputs=tuple(tuple(x) for x in inputs),
        instructions=tuple(instructions),
        outputs=tuple(reg[r] for r in roots),
        temporaries=temps,
        input_types=tuple(input_types),
        output_type=output_type,
    )


def evaluate_ir(ir: KernelIR, inputs: Sequence[Sequence]) -> list:
    """Reference interpreter with Python's own arithmetic; used for checks."""
    regs = {}
    for ins in ir.instructions:
        a = ins.args
        if ins.op == "load":
            regs[ins.dst] = inputs[a[0]][a[1]]
        elif ins.op == "const":
            regs[ins.dst] = a[0]
        elif ins.op == "add":
            regs[ins.dst] = regs[a[0]] + regs[a[1]]
        elif ins.op == "sub":
            regs[ins.dst] = regs[a[0]] - regs[a[1]]
        elif ins.op == "mul":
            regs[ins.dst] = regs[a[0]] * regs[a[1]]
        elif ins.op == "div":
            regs[ins.dst] = regs[a[0]] / regs[a[1]]
        elif ins.op == "neg":
            regs[ins.dst] = -regs[a[0]]
        elif ins.op == "sqrt":
            regs[ins.dst] = regs[a[0]].sqrt() if hasattr(regs[a[0]], "sqrt") else regs[a[0]] ** 0.5
        else:
            raise ValueError(f"unknown op {ins.op!r}")
    return [regs[o] for o in ir.outputs]


# --- printing -------------------------------------------------------------

_PARAMS = "ABCDEFGHIJKLMNOPQRSTUVWXYZ"


def _fmt_const(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


class _Printer:
    def __init__(self, ir: KernelIR):
        self.ins = {i.dst: i for i in ir.instructions}
        self.names: dict[int, str] = {}
        for i in ir.instructions:
            if i.op == "load":
                self.names[i.dst] = ir.inputs[i.args[0]][i.args[1]]
        for k, t in enumerate(ir.temporaries):
            self.names[t] = f"x{k}"

    def factors(self, r: int, out: list, consts: list):
        """Flatten a product into factor strings and numeric constants."""
        if r in self.names:
            out.append(self.names[r])
            return
        ins = self.ins[r]
        if ins.op == "mul":
            for a in ins.args:
                self.factors(a, out, consts)
        elif ins.op == "const":
            consts.append(ins.args[0])
        else:
            s = self.expr(r)
            out.append(s if ins.op in ("sqrt", "div") else f"({s})")

    def product(self, r: int) -> str:
        fs: list[str] = []
        consts: list[Fraction] = []
        self.factors(r, fs, consts)
        k = Fraction(1)
        for c in consts:
            k *= c
        fs.sort()
        parts = []
        i = 0
        while i < len(fs):
            j = i
            while j < len(fs) and fs[j] == fs[i]:
                j += 1
            parts.append(fs[i] if j - i == 1 else f"{fs[i]}**{j - i}")
            i = j
        if k != 1 or not parts:
            parts.insert(0, _fmt_const(k))
        return "*".join(parts)

    def terms(self, r: int, sign: int, out: list):
        if r not in self.names:
            ins = self.ins[r]
            if ins.op == "add":
                self.terms(ins.args[0], sign, out)
                self.terms(ins.args[1], sign, out)
                return
            if ins.op == "sub":
                self.terms(ins.args[0], sign, out)
                self.terms(ins.args[1], -sign, out)
                return
            if ins.op == "neg":
                self.terms(ins.args[0], -sign, out)
                return
        out.append((self.product(r), sign))

    def expr(self, r: int) -> str:
        if r in self.names:
            return self.names[r]
        ins = self.ins[r]
        if ins.op == "const":
            return _fmt_const(ins.args[0])
        if ins.op == "sqrt":
            return f"sqrt({self.expr(ins.args[0])})"
        if ins.op == "div":
            num, den = (self.expr(a) for a in ins.args)
            return f"{self._wrap(ins.args[0], num)}/{self._wrap(ins.args[1], den)}"
        if ins.op == "mul":
            return self.product(r)
        terms: list = []
        self.terms(r, 1, terms)
        terms.sort()
        s = ""
        for body, sign in terms:
            if not s:
                s = body if sign > 0 else f"-{body}"
            else:
                s += f" + {body}" if sign > 0 else f" - {body}"
        return s

    def _wrap(self, r: int, s: str) -> str:
        if r in self.names:
            return s
        op = self.ins[r].op
        return s if op in ("const", "sqrt", "load") else f"({s})"


def format_kernel(ir: KernelIR) -> str:
    p = _Printer(ir)
    params = _PARAMS[: len(ir.inputs)]
    lines = [f"def {ir.name}({', '.join(params)}):"]
    for param, names in zip(params, ir.inputs):
        lines.append(f"    [{', '.join(names)}] = {param}")
    for t in ir.temporaries:
        name = p.names.pop(t)
        lines.append(f"    {name} = {p.expr(t)}")
        p.names[t] = name
    lines.append(f"    return [{', '.join(p.expr(o) for o in ir.outputs)}]")
    return "\n".join(lines)
