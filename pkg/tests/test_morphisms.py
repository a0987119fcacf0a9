import random
from fractions import Fraction as F

import pytest

from dvpower.boolean import DeVriesMap, FiniteProximityAlgebra, all_devries_morphisms
from dvpower.domain import INTEGERS, RATIONALS
from dvpower.intervals import INTERVAL, PointEnd, parse_intervals
from dvpower.morphisms import (
    SpaceMap,
    SpeckerEnd,
    check_phi_star,
    check_proximity_morphism,
    compose_prox,
    extend_morphism,
    identity_prox,
    idempotent_of,
    kernel,
    phi_star,
    phi_star_pointwise,
    restriction,
    support,
    termwise_pushforward,
)
from dvpower.reports import ScaleError
from dvpower.specker import SpeckerAlgebra, atom_values
from dvpower.steps import PLMap


def carrier(n):
    return FiniteProximityAlgebra.with_order(n)


def R(text):
    return parse_intervals(text)


def projection(domain=INTEGERS):
    # dual to the inclusion of r as p in {p, q}: e -> 1 iff p in e
    two, one = carrier(2), carrier(1)
    return extend_morphism(DeVriesMap.from_function(two, one, lambda e: e & 1), domain)


def test_projection_extension():
    alpha = projection()
    S = alpha.source
    s = S.element([(2, 0b01), (3, 0b10)])
    assert atom_values(alpha(s)) == (2,)
    assert check_proximity_morphism(alpha, samples=100).passed


def test_identity_extends_to_identity():
    rng = random.Random(0)
    for S in (SpeckerAlgebra(carrier(2), INTEGERS), SpeckerAlgebra(INTERVAL, RATIONALS)):
        ident = identity_prox(S)
        for _ in range(50):
            s = S.sample(rng)
            assert ident(s) == s


def test_constant_pl_map_is_all_or_nothing():
    alpha = phi_star(PLMap.constant(F(1, 2)))
    S = alpha.source
    assert alpha(S.chi(R("(1/4,3/4)"))) == S.one
    assert alpha(S.chi(R("(3/4,1]"))) == S.zero


def test_extensions_pass_all_clauses():
    for src in (carrier(1), carrier(2)):
        for dst in (carrier(1), carrier(2)):
            for sigma in all_devries_morphisms(src, dst):
                for d in (INTEGERS, RATIONALS):
                    alpha = extend_morphism(sigma, d)
                    report = check_proximity_morphism(alpha, samples=60, seed=1)
                    assert report.passed, report.text()
                    assert restriction(alpha) == sigma


def test_extend_rejects_non_morphisms():
    two = carrier(2)
    with pytest.raises(ValueError):
        extend_morphism(DeVriesMap(two, two, (3, 3, 3, 3)))


def test_pl_phi_star_clauses():
    alpha = phi_star(PLMap.from_knots([(0, 0), (1, F(1, 2))]))
    report = check_proximity_morphism(alpha, samples=100, seed=2)
    assert report.passed, report.text()
    assert report["D4"].status == "skip" and report["D4"].note


def test_termwise_pushforward_is_rejected():
    alpha = phi_star(PLMap.constant(F(1, 2)))
    report = check_proximity_morphism(alpha, samples=100, seed=3, element_map=termwise_pushforward(alpha))
    failed = {r.name for r in report.failures()}
    assert "D2" in failed and all(report[r.name].counterexample for r in report.failures())


def test_phi_star_examples():
    S = SpeckerAlgebra(INTERVAL, INTEGERS)
    ident = phi_star(PLMap.identity())
    s = S.sample(random.Random(4))
    assert ident(s) == s
    half = phi_star(PLMap.from_knots([(0, 0), (1, F(1, 2))]))
    assert half(S.chi(R("[0,1/2)"))) == S.one
    # finite: r -> p sends (a, b) to a
    inclusion = phi_star(SpaceMap(1, 2, (0,)))
    T = inclusion.source
    assert atom_values(inclusion(T.element([(5, 0b01), (-1, 0b10)]))) == (5,)


@pytest.mark.parametrize(
    "knots",
    [
        [(0, 0), (1, F(1, 2))],
        [(0, 0), (F(1, 2), 1), (1, 0)],
        [(0, F(1, 3)), (1, F(2, 3))],
        [(0, 1), (1, 0)],
    ],
)
def test_phi_star_matches_pointwise_route(knots):
    phi = PLMap.from_knots(knots)
    report = check_phi_star(phi, samples=80, seed=5)
    assert report.passed, report.text()
    S = SpeckerAlgebra(INTERVAL, INTEGERS)
    alpha = phi_star(phi)
    rng = random.Random(6)
    for _ in range(30):
        s = S.sample(rng)
        assert alpha(s) == phi_star_pointwise(phi, s)


def test_functoriality_for_pl_maps_on_idempotents():
    phi = PLMap.from_knots([(0, 0), (1, F(1, 2))])
    psi = PLMap.from_knots([(0, 0), (F(1, 2), 1), (1, 0)])
    both = phi_star(psi.compose(phi))
    S = both.source
    rng = random.Random(7)
    for _ in range(30):
        s = S.sample(rng)
        assert both(s) == phi_star(phi)(phi_star(psi)(s))


def test_composition_matches_plain_composition_on_finite_order():
    two = carrier(2)
    fs = [extend_morphism(sg) for sg in all_devries_morphisms(two, two)]
    S = fs[0].source
    rng = random.Random(8)
    for f in fs:
        for g in fs:
            gf = compose_prox(g, f)
            s = S.sample(rng)
            assert gf(s) == g(f(s))
    interval = phi_star(PLMap.identity())
    with pytest.raises(ScaleError):
        compose_prox(interval, interval)


def test_kernels():
    alpha = projection()
    assert kernel(alpha).components(2) == "0+A"
    ident = identity_prox(SpeckerAlgebra(carrier(1), INTEGERS))
    assert kernel(ident).components(1) == "0"
    three, one = carrier(3), carrier(1)
    middle = extend_morphism(DeVriesMap.from_function(three, one, lambda e: e >> 1 & 1))
    assert kernel(middle).components(3) == "A+0+A"
    with pytest.raises(ScaleError):
        kernel(phi_star(PLMap.identity()))


def test_idempotent_of_and_support():
    S = SpeckerAlgebra(carrier(2), INTEGERS)
    assert idempotent_of(S.chi(0b10)) == 0b10
    with pytest.raises(ValueError):
        idempotent_of(S.const(2))
    assert support(S.element([(0, 0b01), (3, 0b10)])) == 0b10


def test_point_end_membership():
    S = SpeckerAlgebra(INTERVAL, INTEGERS)
    end = SpeckerEnd(PointEnd(F(3, 4)))
    assert S.chi(R("[0,1/2)")) in end
    assert S.chi(R("(1/2,1]")) not in end
    assert end.format(INTERVAL) == "point 3/4"


def test_space_maps():
    phi = SpaceMap(3, 2, (0, 1, 1))
    assert phi.preimage(0b10) == 0b110
    psi = SpaceMap(2, 2, (1, 0))
    assert psi.compose(phi).images == (1, 0, 0)
    assert len(SpaceMap.all_maps(2, 3)) == 9
    with pytest.raises(ValueError):
        SpaceMap(2, 1, (0, 1))
