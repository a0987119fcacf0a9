"""Finitely valued step functions on [0,1], normal functions and normalization.

A step function is normal when every upper level set ``f^-1(up a)`` is regular
open.  Normalization replaces each upper level set by the interior of its
closure and reassembles the function; the normal functions with the
normalized operations and the level-set proximity form the de Vries power of
the scalar domain over [0,1].
"""
from __future__ import annotations

import operator
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable

from .domain import RATIONALS, DomainError, OrderedDomain, Value, format_value
from .intervals import (
    IntervalSyntaxError,
    PointSet,
    RegularOpenSet,
    cell_runs,
    parse_bracketed,
    step_from_intervals,
)
from .steps import PLMap, StepMap, combine


@dataclass(frozen=True, eq=False)
class PiecewiseFunction:
    step: StepMap

    def __post_init__(self):
        object.__setattr__(self, "step", self.step.simplified())

    def __eq__(self, other) -> bool:
        if not isinstance(other, PiecewiseFunction):
            return NotImplemented
        return self.step == other.step

    def __hash__(self) -> int:
        return hash(self.step)

    @classmethod
    def constant(cls, a: Value) -> PiecewiseFunction:
        return cls(StepMap.constant(a))

    @classmethod
    def indicator(cls, U, one: Value = 1, zero: Value = 0) -> PiecewiseFunction:
        m = U.step if isinstance(U, (RegularOpenSet, PointSet)) else U
        return cls(m.map(lambda flag: one if flag else zero))

    @classmethod
    def from_parts(cls, breakpoints, piece_values, point_values) -> PiecewiseFunction:
        """Build from breakpoints 0 = x_0 < ... < x_k = 1, one value per open piece and
        one value per breakpoint (including 0 and 1)."""
        return cls(StepMap(tuple(breakpoints), tuple(point_values), tuple(piece_values)))

    @property
    def breakpoints(self) -> tuple:
        return self.step.points

    @property
    def piece_values(self) -> tuple:
        return self.step.on

    @property
    def point_values(self) -> tuple:
        return self.step.at

    def __call__(self, x) -> Value:
        return self.step.value(x)

    def values(self) -> list:
        return sorted(self.step.values())

    def is_constant(self) -> bool:
        return len(self.step.values()) == 1

    def normalized(self) -> NormalFunction:
        return normalize(self)

    def format(self) -> str:
        return format_step_function(self)

    def __str__(self) -> str:
        return self.format()


@dataclass(frozen=True, eq=False)
class NormalFunction(PiecewiseFunction):
    def __post_init__(self):
        super().__post_init__()
        if not is_normal(self.step):
            raise ValueError("function is not normal")


def is_normal(f) -> bool:
    m = f.step if isinstance(f, PiecewiseFunction) else f
    for a in m.values():
        if not upset_level(m, a).is_regular_open():
            return False
    return True


def as_normal(f: PiecewiseFunction) -> NormalFunction:
    return f if isinstance(f, NormalFunction) else NormalFunction(f.step)


def upset_level(f, a) -> PointSet:
    """The set of x with f(x) >= a."""
    m = f.step if isinstance(f, PiecewiseFunction) else f
    return PointSet(m.map(lambda v: v >= a))


def normalize(f: PiecewiseFunction) -> NormalFunction:
    """f# built from U_i = Int(Cl(f^-1(up a_i))) for the values a_0 < ... < a_n of f."""
    values = f.values()
    levels = [upset_level(f, a).regular_open() for a in values]
    # f# is a_i on U_i minus U_{i+1}; U_0 is all of [0,1]
    merged = combine(
        lambda *flags: max(a for a, flag in zip(values, flags) if flag),
        *(U.step for U in levels),
    )
    return NormalFunction(merged)


_BINARY: dict[str, Callable] = {
    "add": operator.add,
    "+": operator.add,
    "sub": operator.sub,
    "-": operator.sub,
    "mul": operator.mul,
    "*": operator.mul,
    "meet": min,
    "&": min,
    "join": max,
    "|": max,
}
_UNARY: dict[str, Callable] = {
    "neg": operator.neg,
    "-": operator.neg,
    "abs": abs,
}


def _resolve(op, arity: int) -> Callable:
    if callable(op):
        return op
    table = _UNARY if arity == 1 else _BINARY
    if op not in table:
        raise ValueError(f"unknown {arity}-ary operation {op!r}")
    return table[op]


def pointwise_op(op, *args: PiecewiseFunction) -> PiecewiseFunction:
    fn = _resolve(op, len(args))
    return PiecewiseFunction(combine(fn, *(f.step for f in args)))


def lifted_op(op, *args: NormalFunction) -> NormalFunction:
    """The normalized operation lambda#(f_1, ..., f_m) = lambda(f_1, ..., f_m)#."""
    result = pointwise_op(op, *args)
    if op in ("meet", "&") and len(args) == 2:
        # the pointwise infimum of normal functions is already normal
        return NormalFunction(result.step)
    return normalize(result)


def scalar_mul(c: Value, f: PiecewiseFunction) -> PiecewiseFunction:
    return pointwise_op("mul", PiecewiseFunction.constant(c), f)


def pointwise_leq(f: PiecewiseFunction, g: PiecewiseFunction) -> bool:
    both = combine(lambda u, v: u <= v, f.step, g.step)
    return all(both.at) and all(both.on)


def prox(f: NormalFunction, g: NormalFunction) -> bool:
    """Cl(f^-1(up a)) inside g^-1(up a) at every value a of f or g."""
    for a in sorted(set(f.values()) | set(g.values())):
        if not upset_level(f, a).closure() <= upset_level(g, a):
            return False
    return True


def continuity_domain(f: NormalFunction) -> PointSet:
    """The union of U_i - Cl(U_{i+1}) for i < n, together with U_n."""
    levels = [upset_level(f, a) for a in f.values()]
    result = levels[-1]
    for U, V in zip(levels, levels[1:]):
        result = result | (U - V.closure())
    return result


def extend_from_dense(f: PiecewiseFunction, D: PointSet) -> NormalFunction:
    """The unique normal function agreeing with f on the open dense set D."""
    if not D.is_open() or not D.finite_complement():
        raise ValueError("D must be open with finite complement")
    grid = sorted(set(f.step.points) | set(D.step.points))
    m = f.step.refine(grid)
    dm = D.step.refine(grid)
    for i, p in enumerate(grid):
        if not dm.at[i]:
            continue
        near = []
        if i > 0:
            near.append(m.on[i - 1])
        if i < len(m.on):
            near.append(m.on[i])
        if any(v != m.at[i] for v in near):
            raise ValueError(f"f is not locally constant on D at {format_value(p)}")
    extended = normalize(f)
    for i, p in enumerate(grid):
        if dm.at[i] and extended(p) != m.at[i]:
            raise AssertionError("normal extension does not restrict to f")
    return extended


def pullback(phi: PLMap, f: PiecewiseFunction) -> PiecewiseFunction:
    """f composed with phi, without normalization."""
    return PiecewiseFunction(phi.pullback(f.step))


# the level-set proximity as a relation on normal functions


def from_levels(base: Value, steps: Iterable[tuple]) -> NormalFunction:
    """base + sum b_i chi_{U_i} for decreasing regular open U_i and b_i > 0."""
    total = PiecewiseFunction.constant(base)
    for b, U in steps:
        total = pointwise_op("add", total, PiecewiseFunction.indicator(U, b, 0))
    return NormalFunction(total.step)


def level_steps(f: NormalFunction, grid: Iterable | None = None) -> tuple:
    """(base, [(b_i, U_i)]) over ``grid`` (default: the values of f)."""
    grid = sorted(set(grid if grid is not None else f.values()))
    levels = [upset_level(f, a).regular_open() for a in grid[1:]]
    return grid[0], [(b - a, U) for a, b, U in zip(grid, grid[1:], levels)]


def interpolate_normal(f: NormalFunction, g: NormalFunction) -> NormalFunction | None:
    """Some h with f < h < g, or None when f < g fails."""
    from .intervals import interpolate

    if not prox(f, g):
        return None
    grid = set(f.values()) | set(g.values())
    base, fs = level_steps(f, grid)
    _, gs = level_steps(g, grid)
    acc = RegularOpenSet.full()
    steps = []
    for (b, U), (_, V) in zip(fs, gs):
        acc = acc & interpolate(U, V)
        steps.append((b, acc))
    return from_levels(base, steps)


def random_normal(rng, domain: OrderedDomain = RATIONALS, lo: int = -3, hi: int = 3) -> NormalFunction:
    """Normalization of a random step function with up to four cuts."""
    if rng.random() < 0.05:
        return NormalFunction.constant(domain.random(rng, lo, hi))
    q = rng.choice((2, 3, 4, 6, 8))
    cuts = sorted(rng.sample(range(1, q), min(q - 1, rng.randint(1, 4))))
    points = (Fraction(0), *(Fraction(c, q) for c in cuts), Fraction(1))
    palette = [domain.random(rng, lo, hi) for _ in range(rng.randint(1, 3))]
    on = tuple(rng.choice(palette) for _ in range(len(points) - 1))
    at = tuple(rng.choice(palette) for _ in points)
    return normalize(PiecewiseFunction(StepMap(points, at, on)))


def sample_normal_above(rng, f: NormalFunction) -> NormalFunction:
    from .intervals import INTERVAL

    base, steps = level_steps(f)
    acc = RegularOpenSet.full()
    out = []
    for b, U in steps:
        acc = acc & INTERVAL.sample_above(rng, U)
        out.append((b, acc))
    return from_levels(base, out)


def sample_normal_below(rng, f: NormalFunction) -> NormalFunction:
    from .intervals import INTERVAL

    base, steps = level_steps(f)
    shrunk = [INTERVAL.sample_below(rng, U) for _, U in steps]
    out = []
    for i, (b, _) in enumerate(steps):
        acc = RegularOpenSet.empty()
        for W in shrunk[i:]:
            acc = acc | W
        out.append((b, acc))
    return from_levels(base, out)


def prox_theorem_suite(
    samples: int = 500, seed: int = 0, domain: OrderedDomain = RATIONALS, constants: int = 50
):
    """Properties of the level-set proximity: T1 implies order, T2 sandwich, T3 meets,
    T4 joins, T5 interpolation, T6 reflexive elements are exactly the constants."""
    import random

    from .reports import AxiomReport, CheckResult

    rng = random.Random(seed)
    report = AxiomReport("prox-theorem")
    fmt = lambda inst: " | ".join(h.format() for h in inst)

    def run(name, draw, check, n=samples):
        hits = 0
        while hits < n:
            inst = draw()
            hits += 1
            if not check(*inst):
                return report.add(CheckResult(name, False, hits, fmt(inst)))
        return report.add(CheckResult(name, True, hits))

    def pair():
        f = random_normal(rng, domain)
        return f, sample_normal_above(rng, f)

    run("T1", pair, lambda f, g: prox(f, g) and pointwise_leq(f, g))

    def sandwich():
        g, h = pair()
        f = lifted_op("meet", g, random_normal(rng, domain))
        k = lifted_op("join", h, random_normal(rng, domain))
        return f, g, h, k

    run("T2", sandwich, lambda f, g, h, k: pointwise_leq(f, g) and prox(g, h) and pointwise_leq(h, k) and prox(f, k))

    def fork():
        f = random_normal(rng, domain)
        return f, sample_normal_above(rng, f), sample_normal_above(rng, f)

    run("T3", fork, lambda f, g, h: prox(f, lifted_op("meet", g, h)))

    def cone():
        h = random_normal(rng, domain)
        return sample_normal_below(rng, h), sample_normal_below(rng, h), h

    run("T4", cone, lambda f, g, h: prox(f, h) and prox(g, h) and prox(lifted_op("join", f, g), h))

    def interpolates(f, g):
        h = interpolate_normal(f, g)
        return h is not None and prox(f, h) and prox(h, g)

    run("T5", pair, interpolates)

    def nonconstant():
        while True:
            f = random_normal(rng, domain)
            if not f.is_constant():
                return (f,)

    run("T6-nonconstant", nonconstant, lambda f: not prox(f, f))
    run("T6-constant", lambda: (NormalFunction.constant(domain.random(rng, -5, 5)),), lambda f: prox(f, f), constants)
    return report


# level-set formulas


@dataclass(frozen=True)
class LevelFormulaReport:
    kind: str
    passed: bool
    thresholds: int
    counterexample: tuple | None = None


def _join(sets: Iterable[PointSet]) -> PointSet:
    total = PointSet.empty()
    for s in sets:
        total = total | s
    return total.regular_open().as_point_set()


def _thresholds(values: Iterable, domain: OrderedDomain) -> list:
    vals = sorted(set(values))
    extra = {vals[0] - 1, vals[-1] + 1}
    if domain.is_field:
        extra.update((a + b) / 2 for a, b in zip(vals, vals[1:]))
    return sorted(set(vals) | extra)


def _infer_domain(*fs: PiecewiseFunction) -> OrderedDomain:
    from .domain import INTEGERS

    for f in fs:
        if any(isinstance(v, Fraction) for v in f.step.values()):
            return RATIONALS
    return INTEGERS


def level_formula_check(
    f: NormalFunction,
    g: NormalFunction | None = None,
    kind: str = "sum",
    *,
    scalar: Value | None = None,
    domain: OrderedDomain | None = None,
) -> LevelFormulaReport:
    """Compare both sides of a level-set formula at every relevant threshold.

    kinds: ``sum``, ``product`` (f, g >= 0), ``scalar`` (c > 0, also checks that
    cf is pointwise), ``scalar_level`` (c > 0) and ``negation``.
    """
    domain = domain or _infer_domain(*(h for h in (f, g) if h is not None))
    fv = f.values()
    if kind == "sum":
        gv = g.values()
        total = lifted_op("add", f, g)
        for a in _thresholds([b + c for b in fv for c in gv], domain):
            lhs = upset_level(total, a)
            rhs = _join(
                upset_level(f, b) & upset_level(g, c) for b in fv for c in gv if b + c >= a
            )
            if lhs != rhs:
                return LevelFormulaReport(kind, False, 0, (a, lhs.format(), rhs.format()))
        return LevelFormulaReport(kind, True, len(_thresholds([b + c for b in fv for c in gv], domain)))
    if kind == "product":
        gv = g.values()
        if fv[0] < 0 or gv[0] < 0:
            raise ValueError("the product formula needs f, g >= 0")
        prod = lifted_op("mul", f, g)
        grid = _thresholds([b * c for b in fv for c in gv], domain)
        for a in grid:
            lhs = upset_level(prod, a)
            rhs = _join(
                upset_level(f, b) & upset_level(g, c) for b in fv for c in gv if b * c >= a
            )
            if lhs != rhs:
                return LevelFormulaReport(kind, False, 0, (a, lhs.format(), rhs.format()))
        return LevelFormulaReport(kind, True, len(grid))
    if kind in ("scalar", "scalar_level"):
        if scalar is None or not scalar > 0:
            raise ValueError("the scalar formulas need a positive scalar")
        c = scalar
        lifted = lifted_op("mul", NormalFunction.constant(c), f)
        if kind == "scalar":
            if lifted != scalar_mul(c, f):
                return LevelFormulaReport(kind, False, 0, ("pointwise", lifted.format()))
            grid = _thresholds([c * b for b in fv], domain)
            for a in grid:
                lhs = upset_level(lifted, a)
                candidates = [b for b in fv if b * c >= a]
                rhs = upset_level(f, candidates[0]) if candidates else PointSet.empty()
                if lhs != rhs:
                    return LevelFormulaReport(kind, False, 0, (a, lhs.format(), rhs.format()))
            return LevelFormulaReport(kind, True, len(grid))
        grid = _thresholds(fv, domain)
        for a in grid:
            lhs = upset_level(lifted, c * a)
            rhs = upset_level(f, a)
            if lhs != rhs:
                return LevelFormulaReport(kind, False, 0, (a, lhs.format(), rhs.format()))
        return LevelFormulaReport(kind, True, len(grid))
    if kind == "negation":
        neg = lifted_op("neg", f)
        grid = _thresholds([-b for b in fv], domain)
        for a in grid:
            lhs = upset_level(neg, a)
            larger = [b for b in fv if b > -a]
            if larger:
                rhs = upset_level(f, larger[0]).regular_open()
                rhs = (~rhs).as_point_set()
            else:
                rhs = PointSet.full()
            if lhs != rhs:
                return LevelFormulaReport(kind, False, 0, (a, lhs.format(), rhs.format()))
        return LevelFormulaReport(kind, True, len(grid))
    raise ValueError(f"unknown level formula {kind!r}")


# text syntax

_CLAUSE_RE = re.compile(r"^(\S+)\s+(on|at)\s+(.+)$|^(\S+)\s+elsewhere$")


class StepSyntaxError(ValueError):
    pass


def parse_step_function(text: str, domain: OrderedDomain = RATIONALS) -> PiecewiseFunction:
    """Parse ``0 on [0,1/4); 2 on (1/4,1/2); 1 at 1/2; 0 on (1/2,1]``.

    ``v elsewhere`` fills every uncovered cell.  Without it, an uncovered gap is
    an error while an uncovered breakpoint takes the smaller neighbouring value.
    """
    clauses = [c.strip() for c in text.split(";") if c.strip()]
    if not clauses:
        raise StepSyntaxError("empty step function")
    assigned: list[tuple[Value, StepMap]] = []
    default = None
    for clause in clauses:
        clause = re.sub(r"\s+", " ", clause)
        m = _CLAUSE_RE.match(clause)
        if not m:
            raise StepSyntaxError(f"cannot parse clause {clause!r}")
        try:
            if m.group(4) is not None:
                if default is not None:
                    raise StepSyntaxError("more than one 'elsewhere' clause")
                default = domain.parse(m.group(4))
                continue
            value = domain.parse(m.group(1))
            if m.group(2) == "at":
                pieces = parse_bracketed("{" + m.group(3).strip() + "}")
            else:
                pieces = parse_bracketed(m.group(3))
        except (DomainError, IntervalSyntaxError) as exc:
            raise StepSyntaxError(str(exc)) from None
        assigned.append((value, step_from_intervals(pieces)))
    grid = sorted(set().union({Fraction(0), Fraction(1)}, *(s.points for _, s in assigned)))
    refined = [(v, s.refine(grid)) for v, s in assigned]

    def cell_value(flags_at: list, where: str):
        hits = [v for v, flag in flags_at if flag]
        if len(hits) > 1:
            raise StepSyntaxError(f"overlapping clauses at {where}")
        return hits[0] if hits else default

    on = []
    for i in range(len(grid) - 1):
        v = cell_value([(val, s.on[i]) for val, s in refined], f"({grid[i]},{grid[i + 1]})")
        if v is None:
            raise StepSyntaxError(
                f"no value on ({format_value(grid[i])},{format_value(grid[i + 1])})"
            )
        on.append(v)
    at = []
    for i, p in enumerate(grid):
        v = cell_value([(val, s.at[i]) for val, s in refined], format_value(p))
        if v is None:
            near = [on[j] for j in (i - 1, i) if 0 <= j < len(on)]
            v = min(near)
        at.append(v)
    return PiecewiseFunction(StepMap(tuple(grid), tuple(at), tuple(on)))


def format_step_function(f: PiecewiseFunction) -> str:
    m = f.step
    values = sorted(m.values())
    if len(values) == 1:
        return f"{format_value(values[0])} on [0,1]"
    counts = {v: list(m.at).count(v) + list(m.on).count(v) for v in values}
    default = max(values, key=lambda v: (counts[v], -values.index(v)))
    clauses = []
    for v in values:
        if v == default:
            continue
        runs = cell_runs(m.points, [a == v for a in m.at], [o == v for o in m.on])
        spans = [r for r in runs if r[1] != r[2]]
        points = [r[1] for r in runs if r[1] == r[2]]
        text = format_value(v)
        if spans:
            pieces = " u ".join(
                f"{lb}{format_value(a)},{format_value(b)}{rb}" for lb, a, b, rb in spans
            )
            clauses.append(f"{text} on {pieces}")
        for p in points:
            clauses.append(f"{text} at {format_value(p)}")
    clauses.append(f"{format_value(default)} elsewhere")
    return "; ".join(clauses)
