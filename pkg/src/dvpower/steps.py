"""Finitely valued maps on [0,1] with rational breakpoints.

A ``StepMap`` records a value at each breakpoint and a value on each open gap
between consecutive breakpoints.  It is the common substrate for point sets
(boolean values), regular open sets and step functions (domain values).
"""
from __future__ import annotations

from bisect import bisect_left
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Callable, Iterable, Sequence

ZERO = Fraction(0)
ONE = Fraction(1)


@dataclass(frozen=True)
class StepMap:
    points: tuple  # 0 = p_0 < ... < p_k = 1
    at: tuple  # value at each point
    on: tuple  # value on each gap (p_i, p_{i+1})

    def __post_init__(self):
        k = len(self.points)
        if k < 2 or self.points[0] != 0 or self.points[-1] != 1:
            raise ValueError("breakpoints must start at 0 and end at 1")
        if len(self.at) != k or len(self.on) != k - 1:
            raise ValueError("value arrays do not match breakpoints")
        for left, right in zip(self.points, self.points[1:]):
            if not left < right:
                raise ValueError("breakpoints must be strictly increasing")

    @classmethod
    def constant(cls, value) -> StepMap:
        return cls((ZERO, ONE), (value, value), (value,))

    def value(self, x) -> Any:
        i = bisect_left(self.points, x)
        if i < len(self.points) and self.points[i] == x:
            return self.at[i]
        if i == 0 or i == len(self.points):
            raise ValueError(f"{x} is outside [0,1]")
        return self.on[i - 1]

    def refine(self, points: Iterable) -> StepMap:
        extra = sorted(set(points) - set(self.points))
        if not extra:
            return self
        new_points = sorted(set(self.points).union(extra))
        at = tuple(self.value(p) for p in new_points)
        on = tuple(self.value((a + b) / 2) for a, b in zip(new_points, new_points[1:]))
        return StepMap(tuple(new_points), at, on)

    def map(self, fn: Callable) -> StepMap:
        return StepMap(self.points, tuple(map(fn, self.at)), tuple(map(fn, self.on)))

    def simplified(self) -> StepMap:
        """Drop interior breakpoints where nothing changes."""
        keep = [0] + [
            i
            for i in range(1, len(self.points) - 1)
            if not (self.on[i - 1] == self.at[i] == self.on[i])
        ] + [len(self.points) - 1]
        points = tuple(self.points[i] for i in keep)
        at = tuple(self.at[i] for i in keep)
        # the gap right of a kept point carries on up to the next kept point
        on = tuple(self.on[i] for i in keep[:-1])
        return StepMap(points, at, on)

    def values(self) -> set:
        return set(self.at) | set(self.on)

    def cells(self):
        """Yield (kind, index, value) in left-to-right order: point, gap, point, ..."""
        for i, p in enumerate(self.points):
            yield "point", i, self.at[i]
            if i < len(self.on):
                yield "gap", i, self.on[i]


def combine(fn: Callable, *maps: StepMap) -> StepMap:
    """Pointwise combination over the common refinement."""
    grid = sorted(set().union(*(m.points for m in maps)))
    refined = [m.refine(grid) for m in maps]
    at = tuple(fn(*vals) for vals in zip(*(m.at for m in refined)))
    on = tuple(fn(*vals) for vals in zip(*(m.on for m in refined)))
    return StepMap(tuple(grid), at, on)


def closure_bool(m: StepMap) -> StepMap:
    at = list(m.at)
    for i in range(len(at)):
        if i > 0 and m.on[i - 1]:
            at[i] = True
        if i < len(m.on) and m.on[i]:
            at[i] = True
    return StepMap(m.points, tuple(bool(v) for v in at), tuple(bool(v) for v in m.on))


def interior_bool(m: StepMap) -> StepMap:
    # relative topology of [0,1]: the endpoints only have a one-sided neighbourhood
    at = list(m.at)
    for i in range(len(at)):
        if i > 0 and not m.on[i - 1]:
            at[i] = False
        if i < len(m.on) and not m.on[i]:
            at[i] = False
    return StepMap(m.points, tuple(bool(v) for v in at), tuple(bool(v) for v in m.on))


def gap_runs(points: Sequence, on: Sequence) -> list[tuple[Fraction, Fraction]]:
    """Maximal runs of true gaps, as (start, end) endpoint pairs."""
    runs = []
    start = None
    for i, flag in enumerate(on):
        if flag and start is None:
            start = points[i]
        if not flag and start is not None:
            runs.append((start, points[i]))
            start = None
    if start is not None:
        runs.append((start, points[-1]))
    return runs


@dataclass(frozen=True)
class PLMap:
    """A continuous piecewise-linear self-map of [0,1], given by its knots."""

    xs: tuple
    ys: tuple

    def __post_init__(self):
        if len(self.xs) != len(self.ys) or len(self.xs) < 2:
            raise ValueError("a PL map needs at least two knots")
        if self.xs[0] != 0 or self.xs[-1] != 1:
            raise ValueError("knots must start at 0 and end at 1")
        for a, b in zip(self.xs, self.xs[1:]):
            if not a < b:
                raise ValueError("knot abscissae must be strictly increasing")
        for y in self.ys:
            if not 0 <= y <= 1:
                raise ValueError(f"PL map value {y} leaves [0,1]")

    @classmethod
    def from_knots(cls, knots: Iterable[tuple]) -> PLMap:
        pairs = [(Fraction(x), Fraction(y)) for x, y in knots]
        return cls(tuple(p[0] for p in pairs), tuple(p[1] for p in pairs))

    @classmethod
    def identity(cls) -> PLMap:
        return cls((ZERO, ONE), (ZERO, ONE))

    @classmethod
    def constant(cls, y) -> PLMap:
        y = Fraction(y)
        return cls((ZERO, ONE), (y, y))

    def __call__(self, x):
        i = bisect_left(self.xs, x)
        if i < len(self.xs) and self.xs[i] == x:
            return self.ys[i]
        if i == 0 or i == len(self.xs):
            raise ValueError(f"{x} is outside [0,1]")
        x0, x1 = self.xs[i - 1], self.xs[i]
        y0, y1 = self.ys[i - 1], self.ys[i]
        return y0 + (y1 - y0) * (x - x0) / (x1 - x0)

    def preimage_points(self, targets: Iterable) -> set:
        """Abscissae, inside non-constant pieces, mapped onto one of ``targets``."""
        found = set()
        targets = sorted(set(targets))
        for (x0, x1), (y0, y1) in zip(zip(self.xs, self.xs[1:]), zip(self.ys, self.ys[1:])):
            if y0 == y1:
                continue
            lo, hi = min(y0, y1), max(y0, y1)
            for t in targets:
                if lo < t < hi:
                    found.add(x0 + (t - y0) * (x1 - x0) / (y1 - y0))
        return found

    def pullback(self, m: StepMap) -> StepMap:
        """The step map x -> m(self(x))."""
        grid = sorted(set(self.xs) | self.preimage_points(m.points))
        at = tuple(m.value(self(p)) for p in grid)
        # each open gap of the grid maps into a single cell of m
        on = tuple(m.value(self((a + b) / 2)) for a, b in zip(grid, grid[1:]))
        return StepMap(tuple(grid), at, on)

    def compose(self, inner: PLMap) -> PLMap:
        """self after inner."""
        grid = sorted(set(inner.xs) | inner.preimage_points(self.xs))
        return PLMap(tuple(grid), tuple(self(inner(x)) for x in grid))

    def format(self) -> str:
        from .domain import format_value

        return ", ".join(f"{format_value(x)}:{format_value(y)}" for x, y in zip(self.xs, self.ys))
