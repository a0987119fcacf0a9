import random
from fractions import Fraction as F

import pytest
from hypothesis import given

from dvpower.domain import INTEGERS, RATIONALS
from dvpower.intervals import parse_intervals, parse_point_set
from dvpower.normal import (
    NormalFunction,
    PiecewiseFunction,
    StepSyntaxError,
    continuity_domain,
    extend_from_dense,
    from_levels,
    interpolate_normal,
    is_normal,
    level_formula_check,
    level_steps,
    lifted_op,
    normalize,
    parse_step_function,
    pointwise_leq,
    pointwise_op,
    prox,
    prox_theorem_suite,
    random_normal,
    sample_normal_above,
    sample_normal_below,
    scalar_mul,
    upset_level,
)

import oracles
from strategies import normal_functions, step_functions, values_rat


def S(text):
    return parse_step_function(text, RATIONALS)


def ind(text):
    return PiecewiseFunction.indicator(parse_point_set(text))


def normal(text):
    return NormalFunction(parse_intervals(text).step.map(lambda b: 1 if b else 0))


# level sets and normalization


def test_upset_level_examples():
    assert upset_level(ind("(1/4,1/2]"), 1) == parse_point_set("(1/4,1/2]")
    assert upset_level(PiecewiseFunction.constant(3), 2) == parse_point_set("[0,1]")
    assert upset_level(ind("(1/4,1/2)"), 2) == parse_point_set("empty")


def test_normalize_examples():
    assert normalize(ind("(1/4,1/2]")) == normal("(1/4,1/2)")
    total = pointwise_op("add", normal("[0,1/2)"), normal("(1/2,1]"))
    assert normalize(total) == NormalFunction.constant(1)


def test_normalize_is_identity_on_normal_functions():
    rng = random.Random(0)
    for _ in range(200):
        f = random_normal(rng)
        assert normalize(f) == f


@given(step_functions())
def test_normalize_matches_closed_form(f):
    g = normalize(f)
    form = oracles.normalize_closed_form(f)
    for x in oracles.function_grid(f):
        assert g(x) == oracles.evaluate_closed_form(form, x)
    assert is_normal(g)


def test_is_normal_rejects_point_defects():
    assert not is_normal(ind("(1/4,1/2]"))
    assert not is_normal(ind("[1/4,1/4]"))
    assert is_normal(normal("(1/4,1/2)"))
    with pytest.raises(ValueError):
        NormalFunction(ind("{1/2}").step)


# normalized operations


def test_lifted_sum_example():
    f, g = normal("[0,1/2)"), normal("(1/4,1]")
    expected = S("1 on [0,1/4]; 2 on (1/4,1/2); 1 on [1/2,1]")
    assert lifted_op("add", f, g) == expected
    assert expected == normalize(pointwise_op("add", NormalFunction.constant(1), normal("(1/4,1/2)")))


def test_lifted_examples():
    assert lifted_op("mul", NormalFunction.constant(3), NormalFunction.constant(-2)) == NormalFunction.constant(-6)
    f = normal("(1/4,1/2)")
    assert lifted_op("meet", f, f) == f
    assert lifted_op("join", normal("[0,1/2)"), normal("(1/2,1]")) == NormalFunction.constant(1)


@given(normal_functions(values_rat), normal_functions(values_rat))
def test_lifted_ops_match_closed_form_oracle(f, g):
    for op in ("add", "mul", "join", "meet"):
        h = lifted_op(op, f, g)
        form = oracles.normalize_closed_form(pointwise_op(op, f, g))
        for x in oracles.function_grid(f, g):
            assert h(x) == oracles.evaluate_closed_form(form, x)


@given(normal_functions(), normal_functions())
def test_meet_of_normal_functions_is_pointwise(f, g):
    assert lifted_op("meet", f, g) == pointwise_op("meet", f, g)


# proximity


def test_prox_examples():
    for a in (F(-3), F(0), F(5, 2)):
        assert prox(NormalFunction.constant(a), NormalFunction.constant(a))
    assert prox(normal("(1/4,1/2)"), normal("(1/8,3/4)"))
    assert not prox(normal("(1/4,1/2)"), normal("(1/4,1/2)"))


def test_prox_implies_pointwise_order():
    rng = random.Random(2)
    for _ in range(300):
        f = random_normal(rng)
        g = sample_normal_above(rng, f)
        assert prox(f, g) and pointwise_leq(f, g)
        h = sample_normal_below(rng, f)
        assert prox(h, f)
        w = interpolate_normal(f, g)
        assert prox(f, w) and prox(w, g)
    assert interpolate_normal(normal("(1/4,1/2)"), normal("(1/4,1/2)")) is None


def test_prox_theorem_suite_passes():
    report = prox_theorem_suite(samples=100, seed=1, constants=20)
    assert report.passed, report.text()
    assert report["T6-constant"].samples == 20


# continuity and dense extensions


def test_continuity_domain_examples():
    assert continuity_domain(normal("(1/4,1/2)")) == parse_point_set("[0,1/4) u (1/4,1/2) u (1/2,1]")
    assert continuity_domain(NormalFunction.constant(4)) == parse_point_set("[0,1]")
    assert continuity_domain(normal("[0,1/2)")) == parse_point_set("[0,1/2) u (1/2,1]")


def test_extend_from_dense():
    D = parse_point_set("[0,1/2) u (1/2,1]")
    f = PiecewiseFunction.indicator(D)
    assert extend_from_dense(f, D) == NormalFunction.constant(1)
    g = normal("(1/4,1/2)")
    assert extend_from_dense(g, continuity_domain(g)) == g
    with pytest.raises(ValueError):
        extend_from_dense(g, parse_point_set("[0,1]"))


# level-set formulas


def test_level_formula_examples():
    f, g = normal("[0,1/2)"), normal("(1/4,1]")
    assert level_formula_check(f, g, "sum").passed
    total = lifted_op("add", f, g)
    assert upset_level(total, 2) == parse_point_set("(1/4,1/2)")
    h = normal("(1/4,3/4)")
    assert upset_level(lifted_op("mul", NormalFunction.constant(2), h), 2) == upset_level(h, 1)
    assert level_formula_check(h, kind="negation").passed
    neg = lifted_op("neg", normal("(1/4,1/2)"))
    assert upset_level(neg, 0) == parse_point_set("[0,1/4) u (1/2,1]")


def test_level_formula_checks_on_random_pairs():
    rng = random.Random(5)
    for kind in ("sum", "product", "scalar", "scalar_level", "negation"):
        for _ in range(60):
            lo = 0 if kind == "product" else -3
            f, g = random_normal(rng, lo=lo), random_normal(rng, lo=lo)
            c = RATIONALS.random_positive(rng) if kind.startswith("scalar") else None
            assert level_formula_check(f, g, kind, scalar=c).passed


def test_level_formula_argument_checks():
    f = normal("(1/4,1/2)")
    with pytest.raises(ValueError):
        level_formula_check(f, lifted_op("neg", f), "product")
    with pytest.raises(ValueError):
        level_formula_check(f, kind="scalar", scalar=-1)
    with pytest.raises(ValueError):
        level_formula_check(f, kind="nonsense")


@given(normal_functions())
def test_level_steps_roundtrip(f):
    base, steps = level_steps(f)
    assert from_levels(base, steps) == f
    sets = [U for _, U in steps]
    assert all(V <= U for U, V in zip(sets, sets[1:]))


# text syntax


def test_parse_step_function_examples():
    f = S("1 on (1/4,1/2]; 0 elsewhere")
    assert f(F(1, 2)) == 1 and f(F(1, 4)) == 0
    assert normalize(f).format() == "1 on (1/4,1/2); 0 elsewhere"
    g = S("0 on [0,1/4); 2 on (1/4,1/2); 1 at 1/2; 0 on (1/2,1]")
    # an uncovered breakpoint takes the smaller neighbouring value
    assert g(F(1, 4)) == 0 and g(F(1, 2)) == 1


def test_parse_step_function_errors():
    for bad in ("", "1 on (1/4,1/2)", "1 on [0,1]; 2 on (1/4,1/2)", "x on [0,1]", "1 near 1/2", "1 elsewhere; 2 elsewhere"):
        with pytest.raises(StepSyntaxError):
            parse_step_function(bad)
    with pytest.raises(StepSyntaxError):
        parse_step_function("1/2 on [0,1]", INTEGERS)


@given(step_functions(values_rat))
def test_format_parse_roundtrip(f):
    assert parse_step_function(f.format(), RATIONALS) == f


def test_scalar_mul_is_pointwise():
    f = normal("(1/4,1/2)")
    assert scalar_mul(3, f)(F(1, 3)) == 3
    assert lifted_op("mul", NormalFunction.constant(3), f) == scalar_mul(3, f)
