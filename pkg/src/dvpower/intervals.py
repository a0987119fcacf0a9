"""Regular open subsets of [0,1] with rational endpoints.

``RegularOpenSet`` is a finite union of relatively open intervals whose
closures are pairwise disjoint.  Together with the proximity
``U < V iff Cl(U) is contained in V`` these form a dense proximity subalgebra of
the regular open algebra of [0,1].  Joins are interiors of closures of unions,
meets are intersections and the complement of U is the interior of [0,1] \\ U.

General subsets built from finitely many intervals and points (level sets,
domains of continuity) are ``PointSet`` values.
"""
from __future__ import annotations

import re
from bisect import bisect_left
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence

from .domain import DomainError, format_value, parse_rational
from .steps import ONE, ZERO, PLMap, StepMap, closure_bool, combine, gap_runs, interior_bool

__all__ = [
    "ClosedIntervalSet",
    "INTERVAL",
    "IntervalCarrier",
    "IntervalSyntaxError",
    "PointEnd",
    "PointSet",
    "RegularOpenSet",
    "below",
    "canonicalize",
    "complement",
    "end_member",
    "interpolate",
    "join",
    "meet",
    "parse_intervals",
    "parse_pl_map",
    "parse_point_set",
    "pl_hat",
    "proximity",
]


class IntervalSyntaxError(ValueError):
    pass


def _interval_text(lb: str, a, b, rb: str) -> str:
    return f"{lb}{format_value(a)},{format_value(b)}{rb}"


def cell_runs(points: Sequence, at: Sequence, on: Sequence) -> list[tuple]:
    """Maximal runs of true cells as (left bracket, a, b, right bracket)."""
    cells = []
    for i in range(len(points)):
        cells.append(bool(at[i]))
        if i < len(on):
            cells.append(bool(on[i]))
    runs = []
    j = 0
    while j < len(cells):
        if not cells[j]:
            j += 1
            continue
        start = j
        while j + 1 < len(cells) and cells[j + 1]:
            j += 1
        end = j
        lb = "[" if start % 2 == 0 else "("
        a = points[start // 2]
        rb = "]" if end % 2 == 0 else ")"
        b = points[end // 2] if end % 2 == 0 else points[end // 2 + 1]
        runs.append((lb, a, b, rb))
        j += 1
    return runs


def step_from_intervals(pieces: Iterable[tuple]) -> StepMap:
    """Boolean step map of a union of (lb, a, b, rb) intervals; a == b with brackets is a point."""
    pieces = list(pieces)
    grid = {ZERO, ONE}
    for lb, a, b, rb in pieces:
        if not (0 <= a <= b <= 1):
            raise DomainError(f"interval endpoints {a}, {b} are out of range")
        grid.update((a, b))
    grid = sorted(grid)

    def inside(x) -> bool:
        for lb, a, b, rb in pieces:
            if a < x < b or (x == a and lb == "[") or (x == b and rb == "]"):
                return True
        return False

    at = tuple(inside(p) for p in grid)
    on = tuple(inside((p + q) / 2) for p, q in zip(grid, grid[1:]))
    return StepMap(tuple(grid), at, on)


@dataclass(frozen=True)
class RegularOpenSet:
    """Canonical intervals (a, b): a == 0 means [0, b), b == 1 means (a, 1]."""

    intervals: tuple = ()

    def __post_init__(self):
        prev = None
        for a, b in self.intervals:
            if not (0 <= a < b <= 1):
                raise DomainError(f"bad interval endpoints {a}, {b}")
            if prev is not None and not prev < a:
                raise DomainError("intervals must be sorted with disjoint closures")
            prev = b

    @classmethod
    def empty(cls) -> RegularOpenSet:
        return cls(())

    @classmethod
    def full(cls) -> RegularOpenSet:
        return cls(((ZERO, ONE),))

    @classmethod
    def from_step(cls, m: StepMap) -> RegularOpenSet:
        """Int(Cl(S)) for the set S described by a boolean step map."""
        # for a finite union of intervals the regularization only depends on the gaps
        return cls(tuple((Fraction(a), Fraction(b)) for a, b in gap_runs(m.points, m.on)))

    @cached_property
    def step(self) -> StepMap:
        grid = [ZERO]
        for a, b in self.intervals:
            grid.extend((a, b))
        grid.append(ONE)
        grid = sorted(set(grid))
        at = tuple(self.contains(p) for p in grid)
        on = tuple(self.contains((p + q) / 2) for p, q in zip(grid, grid[1:]))
        return StepMap(tuple(grid), at, on)

    @property
    def is_empty(self) -> bool:
        return not self.intervals

    def contains(self, x) -> bool:
        for a, b in self.intervals:
            if a < x < b or (x == a == 0) or (x == b == 1):
                return True
        return False

    __contains__ = contains

    def closure(self) -> ClosedIntervalSet:
        return ClosedIntervalSet(tuple(self.intervals))

    def as_point_set(self) -> PointSet:
        return PointSet(self.step)

    def endpoints(self) -> set:
        return {p for iv in self.intervals for p in iv}

    # Boolean structure
    def __and__(self, other: RegularOpenSet) -> RegularOpenSet:
        return meet(self, other)

    def __or__(self, other: RegularOpenSet) -> RegularOpenSet:
        return join(self, other)

    def __invert__(self) -> RegularOpenSet:
        return complement(self)

    def __le__(self, other: RegularOpenSet) -> bool:
        both = combine(lambda u, v: (not u) or v, self.step, other.step)
        return all(both.on)

    def format(self) -> str:
        if not self.intervals:
            return "empty"
        parts = []
        for a, b in self.intervals:
            parts.append(_interval_text("[" if a == 0 else "(", a, b, "]" if b == 1 else ")"))
        return " u ".join(parts)

    def __str__(self) -> str:
        return self.format()

    def __repr__(self) -> str:
        return f"RegularOpenSet({self.format()!r})"


@dataclass(frozen=True)
class ClosedIntervalSet:
    intervals: tuple = ()  # closed [a, b], a <= b, sorted and disjoint

    def contains(self, x) -> bool:
        return any(a <= x <= b for a, b in self.intervals)

    __contains__ = contains

    def inside(self, U: RegularOpenSet) -> bool:
        """True iff every closed component lies in a single component of U."""
        comps = U.intervals
        starts = [c for c, _ in comps]
        for a, b in self.intervals:
            i = bisect_left(starts, a)
            # candidate components: the one starting at a (only legal at 0) or the one before
            ok = False
            for j in (i - 1, i):
                if 0 <= j < len(comps):
                    c, d = comps[j]
                    left = c < a or (c == 0 and a == 0)
                    right = b < d or (b == 1 and d == 1)
                    if left and right:
                        ok = True
            if not ok:
                return False
        return True

    def format(self) -> str:
        if not self.intervals:
            return "empty"
        return " u ".join(_interval_text("[", a, b, "]") for a, b in self.intervals)


@dataclass(frozen=True)
class PointSet:
    """An arbitrary finite union of intervals and points of [0,1]."""

    step: StepMap

    def __post_init__(self):
        object.__setattr__(self, "step", self.step.map(bool).simplified())

    @classmethod
    def from_intervals(cls, pieces: Iterable[tuple]) -> PointSet:
        return cls(step_from_intervals(pieces))

    @classmethod
    def full(cls) -> PointSet:
        return cls(StepMap.constant(True))

    @classmethod
    def empty(cls) -> PointSet:
        return cls(StepMap.constant(False))

    def contains(self, x) -> bool:
        return bool(self.step.value(x))

    __contains__ = contains

    def __and__(self, other: PointSet) -> PointSet:
        return PointSet(combine(lambda u, v: u and v, self.step, other.step))

    def __or__(self, other: PointSet) -> PointSet:
        return PointSet(combine(lambda u, v: u or v, self.step, other.step))

    def __sub__(self, other: PointSet) -> PointSet:
        return PointSet(combine(lambda u, v: u and not v, self.step, other.step))

    def __le__(self, other: PointSet) -> bool:
        both = combine(lambda u, v: (not u) or v, self.step, other.step)
        return all(both.at) and all(both.on)

    def complement(self) -> PointSet:
        return PointSet(self.step.map(lambda u: not u))

    def closure(self) -> PointSet:
        return PointSet(closure_bool(self.step))

    def interior(self) -> PointSet:
        return PointSet(interior_bool(self.step))

    def is_open(self) -> bool:
        return self.interior() == self

    def is_dense(self) -> bool:
        return self.closure() == PointSet.full()

    def regular_open(self) -> RegularOpenSet:
        return RegularOpenSet.from_step(self.step)

    def is_regular_open(self) -> bool:
        return self.closure().interior() == self

    def finite_complement(self) -> bool:
        return all(self.step.on)

    def format(self) -> str:
        runs = cell_runs(self.step.points, self.step.at, self.step.on)
        if not runs:
            return "empty"
        parts = []
        for lb, a, b, rb in runs:
            parts.append("{" + format_value(a) + "}" if a == b else _interval_text(lb, a, b, rb))
        return " u ".join(parts)

    def __str__(self) -> str:
        return self.format()


@dataclass(frozen=True)
class PointEnd:
    """The end of the interval algebra determined by a point of [0,1]."""

    point: Fraction

    def __post_init__(self):
        if not 0 <= self.point <= 1:
            raise DomainError(f"point {self.point} is outside [0,1]")


# operations


def canonicalize(raw: Iterable[tuple]) -> RegularOpenSet:
    """Int(Cl(union)) of open intervals (a, b), or of (lb, a, b, rb) bracketed intervals."""
    pieces = []
    for item in raw:
        if len(item) == 2:
            a, b = Fraction(item[0]), Fraction(item[1])
            pieces.append(("(", a, b, ")"))
        else:
            lb, a, b, rb = item
            pieces.append((lb, Fraction(a), Fraction(b), rb))
    return RegularOpenSet.from_step(step_from_intervals(pieces))


def meet(U: RegularOpenSet, V: RegularOpenSet) -> RegularOpenSet:
    return RegularOpenSet.from_step(combine(lambda u, v: u and v, U.step, V.step))


def join(U: RegularOpenSet, V: RegularOpenSet) -> RegularOpenSet:
    return RegularOpenSet.from_step(combine(lambda u, v: u or v, U.step, V.step))


def complement(U: RegularOpenSet) -> RegularOpenSet:
    return RegularOpenSet.from_step(U.step.map(lambda u: not u))


def proximity(U: RegularOpenSet, V: RegularOpenSet) -> bool:
    return U.closure().inside(V)


def interpolate(U: RegularOpenSet, V: RegularOpenSet) -> RegularOpenSet:
    """Some W with U < W < V: each closed component of U is widened halfway to V's boundary."""
    if not proximity(U, V):
        raise ValueError(f"{U} is not well inside {V}")
    grown = []
    for a, b in U.intervals:
        for c, d in V.intervals:
            if (c < a or c == a == 0) and (b < d or b == d == 1):
                lo = a if a == 0 else a - (a - c) / 2
                hi = b if b == 1 else b + (d - b) / 2
                grown.append((lo, hi))
                break
    return canonicalize(grown)


def below(U: RegularOpenSet) -> RegularOpenSet:
    """A nonempty W with Cl(W) inside U: the middle third of the widest component."""
    if U.is_empty:
        raise ValueError("the empty set has no nonzero element well inside it")
    a, b = max(U.intervals, key=lambda iv: iv[1] - iv[0])
    third = (b - a) / 3
    return RegularOpenSet(((a + third, b - third),))


def end_member(e: PointEnd, U: RegularOpenSet) -> bool:
    return not U.closure().contains(e.point)


def pl_hat(phi: PLMap, U: RegularOpenSet) -> RegularOpenSet:
    """Int(Cl(phi^-1(U)))."""
    return RegularOpenSet.from_step(phi.pullback(U.step))


# text syntax

_PIECE_RE = re.compile(r"^([\[(])([^,]+),([^\])]+)([\])])$")
_POINT_RE = re.compile(r"^\{([^}]+)\}$")


def _split_union(text: str) -> list[str]:
    compact = re.sub(r"\s+", "", text)
    if compact in ("", "empty"):
        return []
    return compact.split("u")


def parse_bracketed(text: str, allow_points: bool = True) -> list[tuple]:
    """Parse a union of bracketed intervals (and ``{x}`` points) without normalizing it."""
    pieces = []
    for token in _split_union(text):
        m = _PIECE_RE.match(token)
        if m:
            lb, a, b, rb = m.group(1), m.group(2), m.group(3), m.group(4)
            try:
                a, b = parse_rational(a), parse_rational(b)
            except DomainError as exc:
                raise IntervalSyntaxError(str(exc)) from None
            if not (0 <= a <= 1 and 0 <= b <= 1):
                raise IntervalSyntaxError(f"endpoint outside [0,1] in {token!r}")
            if a > b or (a == b and not (lb == "[" and rb == "]")):
                raise IntervalSyntaxError(f"empty or reversed interval {token!r}")
            pieces.append((lb, a, b, rb))
            continue
        m = _POINT_RE.match(token)
        if m and allow_points:
            try:
                x = parse_rational(m.group(1))
            except DomainError as exc:
                raise IntervalSyntaxError(str(exc)) from None
            if not 0 <= x <= 1:
                raise IntervalSyntaxError(f"point {token!r} outside [0,1]")
            pieces.append(("[", x, x, "]"))
            continue
        raise IntervalSyntaxError(f"cannot parse interval {token!r}")
    return pieces


def parse_intervals(text: str, canonical: bool = True) -> RegularOpenSet:
    """Parse ``[0,1/2) u (3/4,7/8)``.

    With ``canonical=True`` the text must already be the canonical form of a
    regular open set; otherwise it is routed through ``canonicalize``.
    """
    pieces = parse_bracketed(text, allow_points=not canonical)
    if not canonical:
        return canonicalize(pieces)
    for lb, a, b, rb in pieces:
        if a == b:
            raise IntervalSyntaxError("a regular open set has no isolated points")
        if (lb == "[") != (a == 0) or (rb == "]") != (b == 1):
            raise IntervalSyntaxError(
                f"{_interval_text(lb, a, b, rb)} is not relatively open in canonical form"
            )
    intervals = tuple((a, b) for _, a, b, _ in pieces)
    try:
        return RegularOpenSet(intervals)
    except DomainError as exc:
        raise IntervalSyntaxError(str(exc)) from None


def parse_point_set(text: str) -> PointSet:
    return PointSet.from_intervals(parse_bracketed(text))


def parse_pl_map(text: str) -> PLMap:
    """Parse knots ``x0:y0, x1:y1, ...``."""
    knots = []
    for item in re.sub(r"\s+", "", text).split(","):
        if not item:
            continue
        if ":" not in item:
            raise IntervalSyntaxError(f"bad PL knot {item!r}")
        x, y = item.split(":", 1)
        try:
            knots.append((parse_rational(x), parse_rational(y)))
        except DomainError as exc:
            raise IntervalSyntaxError(str(exc)) from None
    try:
        return PLMap.from_knots(knots)
    except ValueError as exc:
        raise IntervalSyntaxError(str(exc)) from None


# carrier

_DENOMINATORS = (2, 3, 4, 6, 8)


def random_regular_open(rng, max_cuts: int = 4) -> RegularOpenSet:
    q = rng.choice(_DENOMINATORS)
    cuts = sorted(rng.sample(range(1, q), min(q - 1, rng.randint(0, max_cuts))))
    points = (ZERO, *(Fraction(c, q) for c in cuts), ONE)
    on = tuple(rng.random() < 0.5 for _ in range(len(points) - 1))
    return RegularOpenSet.from_step(StepMap(points, (False,) * len(points), on))


def random_margin(rng, limit) -> Fraction:
    """A positive rational below ``limit``."""
    k = rng.choice((2, 3, 4))
    return Fraction(limit) / k


class IntervalCarrier:
    """Regular open sets of [0,1] with the closure proximity, as an idempotent carrier."""

    name = "interval"
    is_finite = False

    zero = RegularOpenSet.empty()
    one = RegularOpenSet.full()

    def __eq__(self, other) -> bool:
        return isinstance(other, IntervalCarrier)

    def __hash__(self) -> int:
        return hash("interval-carrier")

    def __repr__(self) -> str:
        return "IntervalCarrier()"

    def meet(self, a, b):
        return meet(a, b)

    def join(self, a, b):
        return join(a, b)

    def neg(self, a):
        return complement(a)

    def leq(self, a, b) -> bool:
        return a <= b

    def prox(self, a, b) -> bool:
        return proximity(a, b)

    def interpolate(self, a, b):
        return interpolate(a, b)

    def below(self, a):
        return below(a)

    def format(self, a) -> str:
        return a.format()

    def parse(self, text: str):
        return parse_intervals(text)

    def sample(self, rng) -> RegularOpenSet:
        r = rng.random()
        if r < 0.04:
            return self.zero
        if r < 0.08:
            return self.one
        return random_regular_open(rng)

    def sample_partition(self, rng, parts: int) -> list[RegularOpenSet]:
        """Pairwise disjoint nonzero sets whose join is [0,1]."""
        q = rng.choice(_DENOMINATORS)
        cuts = sorted(rng.sample(range(1, q), min(q - 1, rng.randint(0, 4))))
        points = (ZERO, *(Fraction(c, q) for c in cuts), ONE)
        labels = [rng.randrange(parts) for _ in range(len(points) - 1)]
        blocks = []
        for label in sorted(set(labels)):
            on = tuple(lab == label for lab in labels)
            blocks.append(RegularOpenSet.from_step(StepMap(points, (False,) * len(points), on)))
        return blocks

    def sample_above(self, rng, U: RegularOpenSet) -> RegularOpenSet:
        """A random W with U < W."""
        if U.is_empty:
            return self.sample(rng)
        grown = []
        for a, b in U.intervals:
            lo = ZERO if a == 0 else a - random_margin(rng, a)
            hi = ONE if b == 1 else b + random_margin(rng, 1 - b)
            grown.append((lo, hi))
        W = canonicalize(grown)
        if rng.random() < 0.3:
            W = W | self.sample(rng)
        return W

    def sample_below(self, rng, U: RegularOpenSet) -> RegularOpenSet:
        """A random W with W < U."""
        shrunk = []
        for a, b in U.intervals:
            if rng.random() < 0.2:
                continue
            width = b - a
            lo = a if a == 0 and rng.random() < 0.5 else a + random_margin(rng, width / 2)
            hi = b if b == 1 and rng.random() < 0.5 else b - random_margin(rng, width / 2)
            if lo < hi:
                shrunk.append((lo, hi))
        return canonicalize(shrunk)


INTERVAL = IntervalCarrier()
