"""Proximity morphisms between Specker algebras and the ends they determine.

A proximity morphism is stored by its action on idempotents (a de Vries
morphism) and applied to an element through its decreasing form,
``alpha(a_0 + sum b_i k_i) = a_0 + sum b_i sigma(k_i)``.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Callable, Iterable

from .boolean import (
    DeVriesMap,
    FiniteProximityAlgebra,
    RoundIdeal,
    _draw,
    check_devries_morphism,
    compose_devries,
    ends,
    identity_devries,
    related_pair,
)
from .domain import INTEGERS, OrderedDomain, format_value
from .intervals import INTERVAL, IntervalCarrier, PointEnd, end_member, pl_hat
from .normal import normalize, pullback, upset_level
from .reports import AxiomReport, CheckResult, ScaleError
from .specker import SpeckerAlgebra, SpeckerElement, box, from_normal, to_normal
from .steps import PLMap

DEF_CLAUSES = tuple(f"D{i}" for i in range(1, 8))


@dataclass(frozen=True)
class PLHat:
    """U -> Int Cl(phi^-1(U)) on regular open subsets of [0,1]."""

    phi: PLMap
    source: Any = INTERVAL
    target: Any = INTERVAL

    def __call__(self, U):
        return pl_hat(self.phi, U)


@dataclass(frozen=True)
class SpaceMap:
    """A map between finite discrete spaces {0..n-1} -> {0..m-1}."""

    domain_size: int
    codomain_size: int
    images: tuple

    def __post_init__(self):
        if len(self.images) != self.domain_size or any(
            not 0 <= y < self.codomain_size for y in self.images
        ):
            raise ValueError("images must list one codomain point per domain point")

    def __call__(self, x: int) -> int:
        return self.images[x]

    def compose(self, inner: SpaceMap) -> SpaceMap:
        """self after inner."""
        return SpaceMap(inner.domain_size, self.codomain_size, tuple(self.images[y] for y in inner.images))

    def preimage(self, mask: int) -> int:
        out = 0
        for x, y in enumerate(self.images):
            if mask >> y & 1:
                out |= 1 << x
        return out

    @classmethod
    def all_maps(cls, n: int, m: int) -> list[SpaceMap]:
        from itertools import product

        return [cls(n, m, imgs) for imgs in product(range(m), repeat=n)]


@dataclass(frozen=True)
class ProximityMorphism:
    source: SpeckerAlgebra
    target: SpeckerAlgebra
    idempotent_map: Any

    def __post_init__(self):
        if self.source.domain != self.target.domain:
            raise ValueError("source and target must share the scalar domain")

    def __call__(self, s: SpeckerElement) -> SpeckerElement:
        T = self.target
        d = self.source.to_decreasing(s)
        total = T.const(d.base)
        for b, k in d.steps:
            total = T.add(total, T.scalar_mul(b, T.chi(self.idempotent_map(k))))
        return total

    def on_idempotent(self, e):
        return self.idempotent_map(e)

    def format_lines(self) -> list[str]:
        if isinstance(self.idempotent_map, DeVriesMap):
            return self.idempotent_map.format_lines()
        if isinstance(self.idempotent_map, PLHat):
            return [f"pl: {self.idempotent_map.phi.format()}"]
        return [repr(self.idempotent_map)]


def idempotent_of(s: SpeckerElement):
    """The e with s = chi_e; raises if s is not idempotent."""
    alg = s.algebra
    if not alg.is_idempotent(s):
        raise ValueError(f"{s.format()} is not idempotent")
    return alg.upset(s, 1)


def extend_morphism(
    sigma, domain: OrderedDomain = INTEGERS, validate: bool = True, samples: int = 200, seed: int = 0
) -> ProximityMorphism:
    """The unique proximity morphism restricting to the de Vries morphism sigma."""
    if validate:
        finite = isinstance(sigma.source, FiniteProximityAlgebra)
        report = check_devries_morphism(sigma, sigma.source, sigma.target, None if finite else samples, seed)
        if not report.passed:
            bad = report.failures()[0]
            raise ValueError(f"not a de Vries morphism: {bad.name} fails at {bad.counterexample}")
    return ProximityMorphism(SpeckerAlgebra(sigma.source, domain), SpeckerAlgebra(sigma.target, domain), sigma)


def identity_prox(S: SpeckerAlgebra) -> ProximityMorphism:
    if isinstance(S.carrier, FiniteProximityAlgebra):
        return ProximityMorphism(S, S, identity_devries(S.carrier))
    return ProximityMorphism(S, S, PLHat(PLMap.identity()))


@dataclass(frozen=True)
class _Restricted:
    alpha: ProximityMorphism

    @property
    def source(self):
        return self.alpha.source.carrier

    @property
    def target(self):
        return self.alpha.target.carrier

    def __call__(self, e):
        return idempotent_of(self.alpha(self.alpha.source.chi(e)))


def restriction(alpha: ProximityMorphism):
    """alpha on idempotents: a table between finite carriers, otherwise a callable."""
    src, dst = alpha.source.carrier, alpha.target.carrier
    if isinstance(src, FiniteProximityAlgebra) and isinstance(dst, FiniteProximityAlgebra):
        return DeVriesMap.from_function(src, dst, lambda e: idempotent_of(alpha(alpha.source.chi(e))))
    return _Restricted(alpha)


def compose_prox(beta: ProximityMorphism, alpha: ProximityMorphism) -> ProximityMorphism:
    """beta * alpha: the extension of the de Vries composite of the restrictions."""
    if alpha.target != beta.source:
        raise ValueError("morphisms are not composable")
    if not isinstance(beta.target.carrier, FiniteProximityAlgebra) or not isinstance(
        alpha.source.carrier, FiniteProximityAlgebra
    ):
        raise ScaleError("composition needs the join over a complete finite carrier")
    sigma = compose_devries(restriction(beta), restriction(alpha))
    return ProximityMorphism(alpha.source, beta.target, sigma)


def phi_star(phi, domain: OrderedDomain = INTEGERS) -> ProximityMorphism:
    """The morphism induced by a continuous map, reversing direction.

    A PLMap of [0,1] gives an endomorphism of the interval algebra acting on
    idempotents by ``pl_hat``; a SpaceMap X -> Y gives FN(Y) -> FN(X) acting
    by preimage.
    """
    if isinstance(phi, PLMap):
        S = SpeckerAlgebra(INTERVAL, domain)
        return ProximityMorphism(S, S, PLHat(phi))
    if isinstance(phi, SpaceMap):
        src = FiniteProximityAlgebra.with_order(phi.codomain_size)
        dst = FiniteProximityAlgebra.with_order(phi.domain_size)
        sigma = DeVriesMap.from_function(src, dst, phi.preimage)
        return ProximityMorphism(SpeckerAlgebra(src, domain), SpeckerAlgebra(dst, domain), sigma)
    raise TypeError(f"cannot induce a morphism from {type(phi).__name__}")


def phi_star_pointwise(phi: PLMap, s: SpeckerElement) -> SpeckerElement:
    """(f o phi)# through normal functions; an independent route to phi_star."""
    return from_normal(s.algebra, normalize(pullback(phi, to_normal(s))))


def termwise_pushforward(alpha: ProximityMorphism) -> Callable:
    """sum a_i sigma(e_i) of the orthogonal terms, with no normalization of the result.

    Used as a deliberately faulty element map: it is generally not a proximity morphism.
    """
    T = alpha.target

    def apply(s: SpeckerElement) -> SpeckerElement:
        total = T.zero
        for a, e in s.terms:
            total = T.add(total, T.scalar_mul(a, T.chi(alpha.idempotent_map(e))))
        return total

    return apply


def check_proximity_morphism(
    alpha: ProximityMorphism, samples: int = 200, seed: int = 0, element_map: Callable | None = None
) -> AxiomReport:
    """Clauses D1-D7 of a proximity morphism plus derived facts, on seeded samples.

    ``element_map`` replaces alpha's own action, so independently defined maps
    can be tested against the clauses.
    """
    f = element_map or alpha
    S, T = alpha.source, alpha.target
    rng = random.Random(seed)
    report = AxiomReport("proximity-morphism")
    fmt = lambda inst: " | ".join(x.format() if isinstance(x, SpeckerElement) else format_value(x) for x in inst)
    dom = S.domain

    ok = f(S.zero) == T.zero
    report.add(CheckResult("D1", ok, 1, None if ok else "0"))
    report.add(
        _draw(rng, samples, lambda r: (S.sample(r), S.sample(r)), lambda s, t: f(S.meet(s, t)) == T.meet(f(s), f(t)), fmt, "D2")
    )

    def proximal(r):
        s, t = related_pair(S, r)
        return (s, t) if S.prox(s, t) else None

    report.add(_draw(rng, samples, proximal, lambda s, t: T.prox(T.neg(f(S.neg(s))), f(t)), fmt, "D3"))
    if isinstance(S.carrier, FiniteProximityAlgebra) and isinstance(T.carrier, FiniteProximityAlgebra):

        def lub(s):
            vals = set(s.values) | {min(s.values) - 1}
            acc = None
            for t in box(S, vals):
                if S.prox(t, s):
                    acc = f(t) if acc is None else T.join(acc, f(t))
            return acc == f(s)

        res = _draw(rng, min(samples, 100), lambda r: (S.sample(r),), lub, fmt, "D4")
        res.note = "join over elements valued in s's values or one below"
        report.add(res)
    else:
        report.add(CheckResult("D4", None, 0, None, "target is not complete; least upper bound not decidable"))
    report.add(
        _draw(rng, samples, lambda r: (S.sample(r), dom.random(r)), lambda s, a: f(S.add(s, a)) == T.add(f(s), a), fmt, "D5")
    )
    report.add(
        _draw(
            rng,
            samples,
            lambda r: (S.sample(r), dom.random_positive(r)),
            lambda s, a: f(S.scalar_mul(a, s)) == T.scalar_mul(a, f(s)),
            fmt,
            "D6",
        )
    )
    report.add(
        _draw(rng, samples, lambda r: (S.sample(r), dom.random(r)), lambda s, a: f(S.join(s, a)) == T.join(f(s), a), fmt, "D7")
    )
    report.add(
        _draw(rng, samples, lambda r: (dom.random(r, -5, 5),), lambda a: f(S.const(a)) == T.const(a), fmt, "constants")
    )

    def ordered(r):
        s = S.sample(r)
        return s, S.join(s, S.sample(r))

    report.add(_draw(rng, samples, ordered, lambda s, t: T.leq(f(s), f(t)), fmt, "monotone"))
    report.add(
        _draw(rng, samples, lambda r: (S.sample(r),), lambda s: T.leq(f(s), T.neg(f(S.neg(s)))), fmt, "dual-bound")
    )

    def two_pairs(r):
        a, b = proximal(r), proximal(r)
        return None if a is None or b is None else (a[0], a[1], b[0], b[1])

    report.add(
        _draw(rng, samples, two_pairs, lambda s, u, t, v: T.prox(f(S.add(s, t)), T.add(f(u), f(v))), fmt, "sum-prox")
    )
    return report


def check_phi_star(phi: PLMap, samples: int = 200, seed: int = 0, domain: OrderedDomain = INTEGERS) -> AxiomReport:
    """phi_star against (f o phi)# and against the level-set identity with pl_hat."""
    alpha = phi_star(phi, domain)
    S = alpha.source
    rng = random.Random(seed)
    report = AxiomReport("phi-star")
    fmt = lambda inst: " | ".join(x.format() for x in inst)
    report.add(
        _draw(rng, samples, lambda r: (S.sample(r),), lambda s: alpha(s) == phi_star_pointwise(phi, s), fmt, "pointwise")
    )

    def levels(s):
        g, f = to_normal(alpha(s)), to_normal(s)
        for a in set(f.values()) | set(g.values()):
            if upset_level(g, a).regular_open() != pl_hat(phi, upset_level(f, a).regular_open()):
                return False
        return True

    report.add(_draw(rng, samples, lambda r: (S.sample(r),), levels, fmt, "level-sets"))
    return report


# ends at finite scale


def default_box_values(domain: OrderedDomain) -> tuple:
    if domain.is_field:
        return (Fraction(-1), Fraction(-1, 2), Fraction(0), Fraction(1, 2), Fraction(1))
    return (-2, -1, 0, 1, 2)


def support(s: SpeckerElement):
    """The join of the idempotents carrying a nonzero value."""
    c = s.algebra.carrier
    out = c.zero
    for a, e in s.terms:
        if a != 0:
            out = c.join(out, e)
    return out


@dataclass(frozen=True)
class SpeckerEnd:
    """An end of a Specker algebra, represented by its trace on the idempotents.

    Over a finite carrier the trace is a Boolean end E and the end is the ideal
    generated by E; over the interval carrier it is a point end of [0,1].
    """

    representation: Any

    def __contains__(self, s: SpeckerElement) -> bool:
        supp = support(s)
        if isinstance(self.representation, RoundIdeal):
            return supp in self.representation.members
        if isinstance(self.representation, PointEnd):
            return end_member(self.representation, supp)
        raise TypeError("unknown end representation")

    @property
    def generator(self):
        return self.representation.generator

    def components(self, atoms: int) -> str:
        """The generated ideal of A^n written as a direct sum, e.g. ``0+A``."""
        g = self.generator
        return "+".join("A" if g >> i & 1 else "0" for i in range(atoms))

    def format(self, carrier) -> str:
        if isinstance(self.representation, PointEnd):
            return f"point {format_value(self.representation.point)}"
        return f"generated by {carrier.format(self.generator)}"


def witness_box(S: SpeckerAlgebra, values: Iterable) -> list[SpeckerElement]:
    return box(S, sorted({abs(v) for v in values}))


def round_closure(S: SpeckerAlgebra, member: Callable, witnesses: list, s: SpeckerElement) -> bool:
    """s lies in the round closure of a set: |s| < t for some member t."""
    a = S.abs(s)
    if S.prox(a, a) and member(a):
        return True
    return any(member(t) and S.prox(a, t) for t in witnesses)


def signature(elements: list, member: Callable) -> frozenset:
    return frozenset(i for i, s in enumerate(elements) if member(s))


def kernel(alpha: ProximityMorphism, values: Iterable | None = None) -> SpeckerEnd:
    """The end ker(alpha) = round closure of alpha^-1(0), for alpha into A."""
    S, T = alpha.source, alpha.target
    if not isinstance(S.carrier, FiniteProximityAlgebra) or not isinstance(T.carrier, FiniteProximityAlgebra):
        raise ScaleError("kernels are computed over finite carriers")
    if T.carrier.atom_count != 1:
        raise ValueError("kernel needs a morphism into A itself")
    values = tuple(values) if values is not None else default_box_values(S.domain)
    wit = witness_box(S, values)
    zero = lambda t: alpha(t) == T.zero
    if all(zero(t) for t in wit):
        raise ValueError("alpha is zero; its kernel is all of S")
    trace = frozenset(e for e in S.carrier.elements() if round_closure(S, zero, wit, S.chi(e)))
    result = SpeckerEnd(RoundIdeal(trace))
    if RoundIdeal(trace) not in ends(S.carrier):
        raise AssertionError("kernel trace is not an end of the idempotents")
    elems = box(S, values)
    if signature(elems, lambda s: round_closure(S, zero, wit, s)) != signature(elems, result.__contains__):
        raise AssertionError("kernel is not generated by its idempotent trace")
    return result
