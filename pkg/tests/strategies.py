"""Hypothesis strategies for sets, step functions and finite relations."""
from __future__ import annotations

from fractions import Fraction

from hypothesis import strategies as st

from dvpower.intervals import RegularOpenSet
from dvpower.normal import PiecewiseFunction, normalize
from dvpower.steps import StepMap

DENOMS = (2, 3, 4, 6, 8, 12)


@st.composite
def grids(draw, max_cuts: int = 5):
    q = draw(st.sampled_from(DENOMS))
    cuts = draw(st.sets(st.integers(1, q - 1), max_size=min(max_cuts, q - 1)))
    return (Fraction(0), *(Fraction(c, q) for c in sorted(cuts)), Fraction(1))


@st.composite
def regular_open_sets(draw):
    points = draw(grids())
    on = tuple(draw(st.booleans()) for _ in range(len(points) - 1))
    return RegularOpenSet.from_step(StepMap(points, (False,) * len(points), on))


values_int = st.integers(-4, 4)
values_rat = st.builds(lambda p, q: Fraction(p, q), st.integers(-8, 8), st.sampled_from((1, 2, 3, 4)))


@st.composite
def step_functions(draw, values=values_int):
    points = draw(grids(4))
    on = tuple(draw(values) for _ in range(len(points) - 1))
    at = tuple(draw(values) for _ in points)
    return PiecewiseFunction(StepMap(points, at, on))


@st.composite
def normal_functions(draw, values=values_int):
    return normalize(draw(step_functions(values)))
