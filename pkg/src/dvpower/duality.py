"""Ends of Specker algebras over finite carriers, dual maps and the duality roundtrips.

Ends are infinite subsets of the algebra; here each candidate is compared by its
membership signature on a finite box of elements (all atom-wise values drawn
from a small value set), and round closures are searched over a box of
nonnegative witnesses that contains every ``|s|`` of the element box.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Iterable

from .boolean import (
    FiniteProximityAlgebra,
    RoundIdeal,
    _draw,
    all_devries_morphisms,
    end_space,
    ends,
    generated_topology,
)
from .domain import INTEGERS, OrderedDomain
from .morphisms import (
    ProximityMorphism,
    SpaceMap,
    SpeckerEnd,
    compose_prox,
    default_box_values,
    extend_morphism,
    identity_prox,
    phi_star,
    restriction,
    round_closure,
    signature,
    support,
    witness_box,
)
from .reports import AxiomReport, CheckResult, ScaleError
from .specker import SpeckerAlgebra, SpeckerElement, atom_values, box

MAX_FIVE_WAY_ATOMS = 3
MAX_SPACE_POINTS = 6
END_METHODS = ("maximal-round", "kernels", "minimal-primes", "trace", "generated")


def _require_finite(S: SpeckerAlgebra, limit: int) -> FiniteProximityAlgebra:
    c = S.carrier
    if not isinstance(c, FiniteProximityAlgebra):
        raise ScaleError("end computations need a finite carrier")
    if c.atom_count > limit:
        raise ScaleError(f"exhaustive end computations are limited to {limit} atoms")
    return c


@dataclass
class EndComputation:
    """Ends found by each method, as membership signatures on a shared box."""

    algebra: SpeckerAlgebra
    elements: list
    by_method: dict = field(default_factory=dict)
    ends: list = field(default_factory=list)

    @property
    def agree(self) -> bool:
        sets = [frozenset(v) for v in self.by_method.values()]
        return all(s == sets[0] for s in sets)


def _generated(S: SpeckerAlgebra, E: RoundIdeal):
    """Membership in the ideal of S generated by a set E of idempotents (closed under joins)."""
    top = E.generator
    return lambda s: S.mul(s, S.chi(top)) == s


def ends_of_specker(S: SpeckerAlgebra, values: Iterable | None = None) -> EndComputation:
    """Ends computed five independent ways.

    1. maximal proper round l-ideals among the coordinate ideals I_m = {s : supp s <= m};
    2. kernels of extensions of all de Vries morphisms Id(S) -> 2;
    3. round closures of the minimal primes {s : s(u) = 0}, one per ultrafilter;
    4. coordinate ideals whose idempotent trace is a Boolean end and generates them;
    5. ideals generated by the Boolean ends.
    """
    c = _require_finite(S, MAX_FIVE_WAY_ATOMS)
    values = tuple(values) if values is not None else default_box_values(S.domain)
    elems = box(S, values)
    wit = witness_box(S, values)
    result = EndComputation(S, elems)
    zero_const = [S.const(v) for v in values if v != 0]

    def coordinate(m):
        return lambda s: c.leq(support(s), m)

    # 1
    round_ms = []
    for m in c.elements():
        member = coordinate(m)
        if any(member(a) for a in zero_const):
            continue
        if all(round_closure(S, member, wit, s) for s in elems if member(s)):
            round_ms.append(m)
    maximal = [m for m in round_ms if not any(m != n and c.leq(m, n) for n in round_ms)]
    result.by_method["maximal-round"] = {signature(elems, coordinate(m)) for m in maximal}

    # 2
    two = FiniteProximityAlgebra.with_order(1)
    kernels = set()
    for sigma in all_devries_morphisms(c, two):
        alpha = extend_morphism(sigma, S.domain, validate=False)
        zero = alpha.target.zero
        in_preimage = lambda t, alpha=alpha, zero=zero: alpha(t) == zero
        kernels.add(signature(elems, lambda s: round_closure(S, in_preimage, wit, s)))
    result.by_method["kernels"] = kernels

    # 3
    primes = set()
    for u in range(c.atom_count):
        prime = lambda t, u=u: atom_values(t)[u] == 0
        primes.add(signature(elems, lambda s: round_closure(S, prime, wit, s)))
    result.by_method["minimal-primes"] = primes

    # 4
    boolean_ends = ends(c)
    traced = set()
    for m in c.elements():
        member = coordinate(m)
        trace = RoundIdeal(frozenset(e for e in c.elements() if member(S.chi(e))))
        if trace in boolean_ends and signature(elems, _generated(S, trace)) == signature(elems, member):
            traced.add(signature(elems, member))
    result.by_method["trace"] = traced

    # 5
    result.by_method["generated"] = {signature(elems, _generated(S, E)) for E in boolean_ends}
    result.ends = [SpeckerEnd(E) for E in boolean_ends]
    return result


def specker_ends(S: SpeckerAlgebra) -> list[SpeckerEnd]:
    """Ends as ideals generated by Boolean ends; valid up to six atoms."""
    return [SpeckerEnd(E) for E in ends(S.carrier)]


@dataclass
class SpeckerEndSpace:
    points: list
    elements: list
    basis: dict  # element index -> frozenset of end indices, U(s) = {I : s in I}
    opens: set


def end_space_of_specker(S: SpeckerAlgebra, values: Iterable | None = None) -> SpeckerEndSpace:
    """Ends of S with the basis U(s); checked homeomorphic to the end space of Id(S).

    The comparison uses I -> I cap Id(S), and the hom-space basis
    V(s) = {alpha : alpha(t) = 0 for some t > |s|} is compared through kernels.
    """
    c = _require_finite(S, MAX_FIVE_WAY_ATOMS)
    values = tuple(values) if values is not None else default_box_values(S.domain)
    pts = specker_ends(S)
    elems = box(S, values)
    basis = {i: frozenset(j for j, I in enumerate(pts) if s in I) for i, s in enumerate(elems)}
    opens = generated_topology(len(pts), basis.values())
    boolean = end_space(c)
    # I -> I cap Id(S) must match the points of the Boolean end space in order
    traces = [RoundIdeal(frozenset(e for e in c.elements() if S.chi(e) in I)) for I in pts]
    if traces != list(boolean.points):
        raise AssertionError("ends do not restrict to the Boolean ends")
    if opens != boolean.opens:
        raise AssertionError("U(s) topology differs from the end space of the idempotents")
    # hom space: alpha -> ker alpha carries V(s) onto U(s)
    two = FiniteProximityAlgebra.with_order(1)
    wit = witness_box(S, values)
    homs = [extend_morphism(sg, S.domain, validate=False) for sg in all_devries_morphisms(c, two)]
    kernel_index = []
    for alpha in homs:
        zero = alpha.target.zero
        sig = signature(elems, lambda s, a=alpha, z=zero: round_closure(S, lambda t: a(t) == z, wit, s))
        kernel_index.append(next(j for j, I in enumerate(pts) if signature(elems, I.__contains__) == sig))
    for i, s in enumerate(elems):
        a = S.abs(s)
        V = {k for k, alpha in enumerate(homs) if any(S.prox(a, t) and alpha(t) == alpha.target.zero for t in wit)}
        if {kernel_index[k] for k in V} != basis[i]:
            raise AssertionError("kernel map does not carry V(s) onto U(s)")
    return SpeckerEndSpace(pts, elems, basis, opens)


# dual maps


def dual_of_morphism(alpha: ProximityMorphism, values: Iterable | None = None) -> tuple:
    """alpha_*: ends of the target -> ends of the source, I -> round closure of alpha^-1(I).

    Returns the point map as a tuple of source-end indices plus a report of
    the continuity identity, the agreement with the de Vries dual on Boolean
    ends and the commuting square with the representation maps.
    """
    S, T = alpha.source, alpha.target
    _require_finite(S, MAX_FIVE_WAY_ATOMS)
    _require_finite(T, MAX_FIVE_WAY_ATOMS)
    values = tuple(values) if values is not None else default_box_values(S.domain)
    src_ends, dst_ends = specker_ends(S), specker_ends(T)
    elems = box(S, values)
    wit = witness_box(S, values)
    src_sigs = [signature(elems, I.__contains__) for I in src_ends]
    images = []
    for J in dst_ends:
        sig = signature(elems, lambda s: round_closure(S, lambda t: alpha(t) in J, wit, s))
        if sig not in src_sigs:
            raise AssertionError("alpha_* does not send an end to an end")
        images.append(src_sigs.index(sig))
    report = AxiomReport("dual-map")

    # alpha_*^-1(U(s)) = union of U(alpha(t)) over |s| < t
    bad = None
    for s in elems:
        lhs = {j for j, i in enumerate(images) if s in src_ends[i]}
        a = S.abs(s)
        rhs = set()
        for t in wit:
            if S.prox(a, t):
                image = alpha(t)
                rhs |= {j for j, J in enumerate(dst_ends) if image in J}
        if lhs != rhs:
            bad = s.format()
            break
    report.add(CheckResult("continuity", bad is None, len(elems), bad))

    # de Vries dual of the restriction on Boolean ends
    sigma = restriction(alpha)
    bc, tc = S.carrier, T.carrier
    bad = None
    for j, J in enumerate(dst_ends):
        pulled = frozenset(
            e for e in bc.elements() if any(bc.prox(e, k) and sigma(k) in J.representation.members for k in bc.elements())
        )
        if pulled != src_ends[images[j]].representation.members:
            bad = tc.format(J.generator)
            break
    report.add(CheckResult("de-vries-dual", bad is None, len(dst_ends), bad))

    # eta_T(alpha(s))(J) = eta_S(s)(alpha_*(J))
    bad = None
    for s in elems:
        image = alpha(s)
        if any(evaluate_at_end(T, image, J) != evaluate_at_end(S, s, src_ends[images[j]]) for j, J in enumerate(dst_ends)):
            bad = s.format()
            break
    report.add(CheckResult("commuting-square", bad is None, len(elems), bad))
    return tuple(images), report


def evaluate_at_end(S: SpeckerAlgebra, s: SpeckerElement, end: SpeckerEnd):
    """The unique a in A with s - a in the end."""
    for a in s.values:
        if S.sub(s, a) in end:
            return a
    raise AssertionError("no value of s at this end")


# roundtrips


def space_roundtrip(points: int, domain: OrderedDomain = INTEGERS) -> AxiomReport:
    """(X*)_* against X for the discrete space with ``points`` points."""
    if not 1 <= points <= MAX_SPACE_POINTS:
        raise ScaleError(f"space roundtrips are limited to {MAX_SPACE_POINTS} points")
    c = FiniteProximityAlgebra.with_order(points)
    S = SpeckerAlgebra(c, domain)
    report = AxiomReport("space-roundtrip")
    pts = specker_ends(S)
    # x -> the end of functions vanishing near x
    point_of = {}
    for x in range(points):
        matches = [i for i, I in enumerate(pts) if S.chi(1 << x) not in I and S.chi(c.neg(1 << x)) in I]
        if len(matches) != 1:
            report.add(CheckResult("bijection", False, points, f"point {x}"))
            return report
        point_of[x] = matches[0]
    ok = sorted(point_of.values()) == list(range(len(pts)))
    report.add(CheckResult("bijection", ok, points, None if ok else "not onto"))
    bad = None
    for e in c.elements():
        # U(not e) = {I : not e in I} corresponds to the points of e
        U = {i for i, I in enumerate(pts) if S.chi(c.neg(e)) in I}
        if U != {point_of[x] for x in range(points) if e >> x & 1}:
            bad = c.format(e)
            break
    report.add(CheckResult("basis", bad is None, c.algebra.size, bad))
    opens = generated_topology(len(pts), [frozenset({i}) for i in range(len(pts))])
    report.add(CheckResult("discrete", len(opens) == 1 << len(pts), 1))
    return report


def algebra_roundtrip(S: SpeckerAlgebra, values: Iterable | None = None) -> AxiomReport:
    """(S_*)* against S through eta(s)(I) = the value of s at the end I."""
    c = _require_finite(S, MAX_FIVE_WAY_ATOMS)
    values = tuple(values) if values is not None else default_box_values(S.domain)
    pts = specker_ends(S)
    T = SpeckerAlgebra(FiniteProximityAlgebra.with_order(len(pts)), S.domain)
    atoms = T.carrier.atoms()

    cache: dict = {}

    def eta(s):
        if s not in cache:
            cache[s] = T._merge((evaluate_at_end(S, s, I), atoms[j]) for j, I in enumerate(pts))
        return cache[s]

    report = AxiomReport("algebra-roundtrip")
    elems = box(S, values)
    images = [eta(s) for s in elems]
    targets = set(box(T, values))
    ok = len(set(images)) == len(elems) and set(images) == targets
    report.add(CheckResult("bijection", ok, len(elems), None if ok else "eta is not a bijection of the box"))
    pairs = list(itertools.product(range(len(elems)), repeat=2))
    checks = {
        "add": lambda s, t: eta(S.add(s, t)) == T.add(eta(s), eta(t)),
        "mul": lambda s, t: eta(S.mul(s, t)) == T.mul(eta(s), eta(t)),
        "prox": lambda s, t: S.prox(s, t) == T.prox(eta(s), eta(t)),
    }
    for name, check in checks.items():
        bad = next(((i, j) for i, j in pairs if not check(elems[i], elems[j])), None)
        report.add(CheckResult(name, bad is None, len(pairs), None if bad is None else f"{elems[bad[0]].format()} | {elems[bad[1]].format()}"))
    bad = next((v for v in values if eta(S.const(v)) != T.const(v)), None)
    report.add(CheckResult("scalars", bad is None, len(values), None if bad is None else str(bad)))
    idem = all(T.is_idempotent(eta(S.chi(e))) for e in c.elements())
    order = all(
        T.leq(eta(S.chi(e)), eta(S.chi(k))) == c.leq(e, k) for e in c.elements() for k in c.elements()
    )
    report.add(CheckResult("idempotents", idem and order, c.algebra.size ** 2))
    return report


def category_laws(max_atoms: int = 2, domain: OrderedDomain = INTEGERS) -> AxiomReport:
    """Associativity and unit laws of * over all morphisms between small algebras."""
    algs = [SpeckerAlgebra(FiniteProximityAlgebra.with_order(n), domain) for n in range(1, max_atoms + 1)]
    homs = {
        (i, j): [extend_morphism(sg, domain, validate=False) for sg in all_devries_morphisms(a.carrier, b.carrier)]
        for i, a in enumerate(algs)
        for j, b in enumerate(algs)
    }
    report = AxiomReport("category")
    count = 0
    bad = None
    for (i, j), fs in homs.items():
        for f in fs:
            count += 1
            if compose_prox(identity_prox(algs[j]), f) != f or compose_prox(f, identity_prox(algs[i])) != f:
                bad = bad or " ; ".join(f.format_lines())
    report.add(CheckResult("unit", bad is None, count, bad))
    count = 0
    bad = None
    for i, j, k, l in itertools.product(range(len(algs)), repeat=4):
        for f in homs[(i, j)]:
            for g in homs[(j, k)]:
                gf = compose_prox(g, f)
                for h in homs[(k, l)]:
                    count += 1
                    if compose_prox(h, gf) != compose_prox(compose_prox(h, g), f):
                        bad = bad or f"{i}->{j}->{k}->{l}"
    report.add(CheckResult("associativity", bad is None, count, bad))
    return report


def functoriality(max_points: int = 3, domain: OrderedDomain = INTEGERS) -> AxiomReport:
    """(psi o phi)* = phi* * psi* for all maps between small discrete spaces."""
    report = AxiomReport("functoriality")
    count = 0
    bad = None
    sizes = range(1, max_points + 1)
    for n, m, k in itertools.product(sizes, repeat=3):
        for phi in SpaceMap.all_maps(n, m):
            for psi in SpaceMap.all_maps(m, k):
                count += 1
                if phi_star(psi.compose(phi), domain) != compose_prox(phi_star(phi, domain), phi_star(psi, domain)):
                    bad = bad or f"{phi.images} then {psi.images}"
    report.add(CheckResult("composition", bad is None, count, bad))
    return report


# reflexive elements


@dataclass(frozen=True)
class BooleanPowerPart:
    """The elements s with s < s."""

    algebra: SpeckerAlgebra

    def __contains__(self, s: SpeckerElement) -> bool:
        return self.algebra.prox(s, s)

    def closure_report(self, samples: int = 200, seed: int = 0) -> AxiomReport:
        S = self.algebra
        rng = random.Random(seed)
        report = AxiomReport("boolean-power")

        def member(r):
            s = S.const(S.domain.random(r)) if r.random() < 0.5 else S.sample(r)
            return s if s in self else None

        def pair(r):
            s, t = member(r), member(r)
            return None if s is None or t is None else (s, t)

        fmt = lambda inst: " | ".join(x.format() for x in inst)
        for name, op in (("add", S.add), ("mul", S.mul), ("meet", S.meet), ("join", S.join)):
            report.add(_draw(rng, samples, pair, lambda s, t, op=op: op(s, t) in self, fmt, name))
        report.add(
            _draw(
                rng,
                samples,
                lambda r: (lambda s: None if s is None else (s, S.domain.random(r)))(member(r)),
                lambda s, a: S.scalar_mul(a, s) in self,
                lambda inst: inst[0].format(),
                "scalar",
            )
        )
        return report


def boolean_power_subalgebra(S: SpeckerAlgebra) -> BooleanPowerPart:
    return BooleanPowerPart(S)
