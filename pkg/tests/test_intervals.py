import random
from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from dvpower.intervals import (
    INTERVAL,
    IntervalSyntaxError,
    PointEnd,
    PointSet,
    RegularOpenSet,
    below,
    canonicalize,
    complement,
    end_member,
    interpolate,
    join,
    meet,
    parse_intervals,
    parse_pl_map,
    parse_point_set,
    pl_hat,
    proximity,
)
from dvpower.steps import PLMap, StepMap

import oracles
from strategies import grids, regular_open_sets


def R(text):
    return parse_intervals(text)


# canonicalization


def test_canonicalize_examples():
    assert canonicalize([(0, F(1, 4)), (F(1, 4), F(1, 2))]) == R("[0,1/2)")
    assert canonicalize([(F(1, 4), F(1, 2))]) == R("(1/4,1/2)")
    assert canonicalize([(0, F(1, 2))]) == R("[0,1/2)")


def test_boolean_examples():
    assert meet(R("[0,1/2)"), R("(1/4,3/4)")) == R("(1/4,1/2)")
    assert join(R("[0,1/2)"), R("(1/2,1]")) == R("[0,1]")
    assert complement(R("(1/4,1/2)")) == R("[0,1/4) u (1/2,1]")


def test_proximity_examples():
    assert proximity(R("(1/4,1/2)"), R("(1/8,3/4)"))
    assert not proximity(R("(1/4,1/2)"), R("(1/4,1/2)"))
    assert proximity(R("[0,1/2)"), R("[0,3/4)"))
    assert proximity(R("[0,1]"), R("[0,1]"))
    assert proximity(RegularOpenSet.empty(), RegularOpenSet.empty())


def test_interpolate_examples():
    U, V = R("(1/4,1/2)"), R("(1/8,3/4)")
    W = interpolate(U, V)
    assert W == R("(3/16,5/8)")
    assert proximity(U, W) and proximity(W, V)
    assert interpolate(RegularOpenSet.empty(), V) == RegularOpenSet.empty()
    assert interpolate(R("[0,1]"), R("[0,1]")) == R("[0,1]")
    with pytest.raises(ValueError):
        interpolate(U, U)


def test_below_examples():
    # any nonempty W with Cl(W) inside U is acceptable
    W = below(R("(1/4,1/2)"))
    assert W == R("(1/3,5/12)") and proximity(W, R("(1/4,1/2)"))
    assert below(R("[0,1]")) == R("(1/3,2/3)")
    with pytest.raises(ValueError):
        below(RegularOpenSet.empty())


def test_point_ends():
    assert not end_member(PointEnd(F(0)), R("[0,1/2)"))
    assert end_member(PointEnd(F(3, 4)), R("[0,1/2)"))
    assert not end_member(PointEnd(F(1, 2)), R("(1/4,1/2)"))


def test_pl_hat_examples():
    U = R("(1/3,1/2) u (2/3,1]")
    assert pl_hat(PLMap.identity(), U) == U
    assert pl_hat(PLMap.from_knots([(0, 0), (1, F(1, 2))]), R("[0,1/2)")) == R("[0,1]")
    half = PLMap.constant(F(1, 2))
    assert pl_hat(half, R("(1/4,3/4)")) == R("[0,1]")
    assert pl_hat(half, R("(3/4,1]")) == RegularOpenSet.empty()


# parsing


def test_parse_rejects_non_canonical_text():
    for bad in ("[1/4,1/2)", "(0,1/2)", "(1/2,1)", "(1/2,1/4)", "(0,2]", "x", "(1/4,1/2) u (1/2,3/4)"):
        with pytest.raises(IntervalSyntaxError):
            parse_intervals(bad)
    assert parse_intervals("(0,1/4] u [1/4,1/2)", canonical=False) == R("[0,1/2)")
    assert parse_intervals("empty") == RegularOpenSet.empty()


def test_point_sets():
    P = parse_point_set("(1/4,1/2] u {3/4}")
    assert F(1, 2) in P and F(3, 4) in P and F(1, 4) not in P
    assert P.closure() == parse_point_set("[1/4,1/2] u {3/4}")
    assert P.interior() == parse_point_set("(1/4,1/2)")
    assert P.regular_open() == R("(1/4,1/2)")
    assert not P.is_open()
    assert parse_point_set("[0,1/2) u (1/2,1]").is_dense()
    assert R("(1/4,1/2)").as_point_set().is_regular_open()


def test_parse_pl_map():
    phi = parse_pl_map("0:0, 1/2:1, 1:0")
    assert phi(F(1, 4)) == F(1, 2)
    with pytest.raises(IntervalSyntaxError):
        parse_pl_map("0:0, 1:3")


@given(regular_open_sets())
def test_format_parse_roundtrip(U):
    assert parse_intervals(U.format()) == U


# oracle comparisons on a sample grid


@given(regular_open_sets(), regular_open_sets())
def test_meet_join_match_grid_oracle(U, V):
    L = oracles.resolution(U, V)
    u, v = oracles.membership(U, L), oracles.membership(V, L)
    assert oracles.membership(meet(U, V), L) == oracles.regularize([a and b for a, b in zip(u, v)])
    assert oracles.membership(join(U, V), L) == oracles.regularize([a or b for a, b in zip(u, v)])
    assert oracles.membership(complement(U), L) == oracles.regularize([not a for a in u])


@given(regular_open_sets(), regular_open_sets())
def test_proximity_matches_grid_oracle(U, V):
    L = oracles.resolution(U, V)
    cl = oracles.closure(oracles.membership(U, L))
    v = oracles.membership(V, L)
    assert proximity(U, V) == all(b for a, b in zip(cl, v) if a)


@given(grids(), st.data())
def test_regularization_matches_grid_oracle(points, data):
    at = tuple(data.draw(st.booleans()) for _ in points)
    on = tuple(data.draw(st.booleans()) for _ in range(len(points) - 1))
    P = PointSet(StepMap(points, at, on))
    U = P.regular_open()
    L = oracles.resolution(U) * max(p.denominator for p in points)
    bits = [P.contains(x) for x in oracles.samples(L)]
    assert oracles.membership(U, L) == oracles.regularize(bits)


@given(regular_open_sets())
def test_regular_open_is_fixed_under_int_cl(U):
    L = oracles.resolution(U)
    u = oracles.membership(U, L)
    assert oracles.regularize(u) == u


@given(regular_open_sets(), regular_open_sets())
def test_boolean_laws(U, V):
    assert ~~U == U
    assert meet(U, ~U).is_empty
    assert join(U, ~U) == RegularOpenSet.full()
    assert ~(U & V) == (~U) | (~V)
    assert (U <= V) == (meet(U, V) == U)


def test_interpolation_and_below_produce_witnesses():
    rng = random.Random(3)
    for _ in range(300):
        U = INTERVAL.sample(rng)
        V = INTERVAL.sample_above(rng, U)
        assert proximity(U, V)
        W = interpolate(U, V)
        assert proximity(U, W) and proximity(W, V)
        if not V.is_empty:
            B = below(V)
            assert not B.is_empty and proximity(B, V)
        D = INTERVAL.sample_below(rng, U)
        assert proximity(D, U)


def test_sample_partition_is_a_partition():
    rng = random.Random(4)
    for _ in range(100):
        blocks = INTERVAL.sample_partition(rng, rng.randint(1, 4))
        total = RegularOpenSet.empty()
        for i, a in enumerate(blocks):
            assert not a.is_empty
            for b in blocks[i + 1:]:
                assert meet(a, b).is_empty
            total = total | a
        assert total == RegularOpenSet.full()
