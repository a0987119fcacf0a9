import random

import pytest

from dvpower.boolean import DeVriesMap, FiniteProximityAlgebra
from dvpower.domain import INTEGERS, RATIONALS
from dvpower.duality import (
    END_METHODS,
    algebra_roundtrip,
    boolean_power_subalgebra,
    category_laws,
    dual_of_morphism,
    end_space_of_specker,
    ends_of_specker,
    evaluate_at_end,
    functoriality,
    space_roundtrip,
    specker_ends,
)
from dvpower.intervals import INTERVAL, parse_intervals
from dvpower.morphisms import extend_morphism, identity_prox, phi_star, SpaceMap
from dvpower.reports import ScaleError
from dvpower.specker import SpeckerAlgebra, atom_values


def algebra(n, domain=INTEGERS):
    return SpeckerAlgebra(FiniteProximityAlgebra.with_order(n), domain)


@pytest.mark.parametrize("n", [1, 2, 3])
@pytest.mark.parametrize("domain", [INTEGERS, RATIONALS], ids=lambda d: d.name)
def test_five_methods_agree_with_vanishing_ideals(n, domain):
    S = algebra(n, domain)
    comp = ends_of_specker(S)
    assert set(comp.by_method) == set(END_METHODS)
    assert comp.agree
    # over a discrete space the ends are the functions vanishing at one point
    expected = {
        frozenset(i for i, s in enumerate(comp.elements) if atom_values(s)[u] == 0) for u in range(n)
    }
    for method, found in comp.by_method.items():
        assert found == expected, method


def test_end_examples():
    assert [I.generator for I in specker_ends(algebra(1))] == [0]
    two = specker_ends(algebra(2))
    assert sorted(I.components(2) for I in two) == ["0+A", "A+0"]
    space = end_space_of_specker(algebra(2))
    assert len(space.points) == 2
    assert all(frozenset({i}) in space.opens for i in range(2))
    three = end_space_of_specker(algebra(3))
    S = algebra(3)
    s = S.element([(1, 0b011), (0, 0b100)])
    index = next(i for i, t in enumerate(three.elements) if t == s)
    # U(s) is the set of ends containing s; only the end at the third atom does
    assert [three.points[j].generator for j in three.basis[index]] == [0b011]


def test_scale_limits():
    with pytest.raises(ScaleError):
        ends_of_specker(algebra(4))
    with pytest.raises(ScaleError):
        ends_of_specker(SpeckerAlgebra(INTERVAL, INTEGERS))
    with pytest.raises(ScaleError):
        space_roundtrip(7)


def test_evaluate_at_end():
    S = algebra(2)
    s = S.element([(3, 0b01), (-2, 0b10)])
    ends = specker_ends(S)
    assert sorted(evaluate_at_end(S, s, I) for I in ends) == [-2, 3]


@pytest.mark.parametrize("points", [1, 2, 3, 4, 5])
def test_space_roundtrip(points):
    report = space_roundtrip(points)
    assert report.passed, report.text()


@pytest.mark.parametrize("n", [1, 2, 3])
def test_algebra_roundtrip(n):
    report = algebra_roundtrip(algebra(n))
    assert report.passed, report.text()
    assert report["bijection"].samples == 5**n


def test_dual_of_projection():
    two, one = FiniteProximityAlgebra.with_order(2), FiniteProximityAlgebra.with_order(1)
    alpha = extend_morphism(DeVriesMap.from_function(two, one, lambda e: e & 1))
    images, report = dual_of_morphism(alpha)
    assert report.passed, report.text()
    # the single end of A goes to the end at the first atom, generated by the second
    assert specker_ends(alpha.source)[images[0]].generator == 0b10


def test_dual_of_identity_is_identity():
    for n in (1, 2, 3):
        images, report = dual_of_morphism(identity_prox(algebra(n)))
        assert report.passed and images == tuple(range(n))


def test_dual_of_induced_maps_recovers_the_space_map():
    # (phi*)_* agrees with phi under the point <-> end identification
    for phi in SpaceMap.all_maps(3, 2):
        alpha = phi_star(phi)
        images, report = dual_of_morphism(alpha)
        assert report.passed
        src_ends = specker_ends(alpha.source)
        dst_ends = specker_ends(alpha.target)
        for x in range(3):
            j = next(j for j, J in enumerate(dst_ends) if not J.generator >> x & 1)
            assert not src_ends[images[j]].generator >> phi(x) & 1


def test_category_laws_and_functoriality():
    laws = category_laws(2)
    assert laws.passed and laws["associativity"].samples > 0
    func = functoriality(2)
    assert func.passed and func["composition"].samples == 36


def test_boolean_power_part():
    S = SpeckerAlgebra(INTERVAL, INTEGERS)
    part = boolean_power_subalgebra(S)
    assert S.chi(parse_intervals("(1/4,1/2)")) not in part
    assert S.const(5) in part
    assert part.closure_report(samples=50).passed
    F = algebra(2)
    rng = random.Random(0)
    assert all(F.sample(rng) in boolean_power_subalgebra(F) for _ in range(50))
