"""Finite Boolean algebras with proximities, de Vries axioms, round ideals and ends.

Elements of the algebra with ``n`` atoms are bitmasks; in text they are
bitstrings whose i-th character is 1 iff atom i lies below the element.
Every checker here takes a *carrier*: an object exposing ``zero``, ``one``,
``meet``, ``join``, ``neg``, ``leq``, ``prox``, ``interpolate``, ``below``,
``format`` and random samplers.  ``FiniteProximityAlgebra`` and the interval
carrier both qualify.
"""
from __future__ import annotations

import itertools
import random
import re
from dataclasses import dataclass, field
from typing import Callable, Iterable

from . import kernels
from .reports import AxiomReport, CheckResult, ScaleError

MAX_ATOMS = 6
MAX_IDEAL_ATOMS = 4

DV_AXIOMS = ("DV1", "DV2", "DV3", "DV4", "DV5", "DV6", "DV7")
M_AXIOMS = ("M1", "M2", "M3", "M4")


class BooleanSyntaxError(ValueError):
    pass


@dataclass(frozen=True)
class FiniteBooleanAlgebra:
    atom_count: int

    def __post_init__(self):
        if not 0 <= self.atom_count <= MAX_ATOMS:
            raise ScaleError(f"finite algebras are limited to {MAX_ATOMS} atoms")

    @property
    def size(self) -> int:
        return 1 << self.atom_count

    @property
    def zero(self) -> int:
        return 0

    @property
    def one(self) -> int:
        return self.size - 1

    def elements(self) -> range:
        return range(self.size)

    def atoms(self) -> list[int]:
        return [1 << i for i in range(self.atom_count)]

    def meet(self, a: int, b: int) -> int:
        return a & b

    def join(self, a: int, b: int) -> int:
        return a | b

    def neg(self, a: int) -> int:
        return self.one & ~a

    def leq(self, a: int, b: int) -> bool:
        return a & ~b == 0

    def format(self, a: int) -> str:
        return "".join("1" if (a >> i) & 1 else "0" for i in range(self.atom_count))

    def parse(self, text: str) -> int:
        text = text.strip()
        if len(text) != self.atom_count or set(text) - {"0", "1"}:
            raise BooleanSyntaxError(f"{text!r} is not a {self.atom_count}-atom bitstring")
        return sum(1 << i for i, ch in enumerate(text) if ch == "1")


@dataclass(frozen=True)
class ProximityRelation:
    algebra: FiniteBooleanAlgebra
    rows: tuple  # bit b of rows[a] set iff a < b

    @classmethod
    def order(cls, algebra: FiniteBooleanAlgebra) -> ProximityRelation:
        rows = tuple(
            sum(1 << b for b in algebra.elements() if algebra.leq(a, b)) for a in algebra.elements()
        )
        return cls(algebra, rows)

    @classmethod
    def from_pairs(cls, algebra: FiniteBooleanAlgebra, pairs: Iterable[tuple]) -> ProximityRelation:
        rows = [0] * algebra.size
        for a, b in pairs:
            rows[a] |= 1 << b
        return cls(algebra, tuple(rows))

    @classmethod
    def from_predicate(cls, algebra: FiniteBooleanAlgebra, pred: Callable) -> ProximityRelation:
        return cls.from_pairs(
            algebra, ((a, b) for a in algebra.elements() for b in algebra.elements() if pred(a, b))
        )

    def __call__(self, a: int, b: int) -> bool:
        return (self.rows[a] >> b) & 1 == 1

    def pairs(self) -> list[tuple]:
        return [(a, b) for a in self.algebra.elements() for b in self.algebra.elements() if self(a, b)]

    def is_order(self) -> bool:
        return self == ProximityRelation.order(self.algebra)


@dataclass(frozen=True)
class FiniteProximityAlgebra:
    """A finite Boolean algebra together with a relation, usable as a carrier."""

    algebra: FiniteBooleanAlgebra
    relation: ProximityRelation

    is_finite = True

    @classmethod
    def with_order(cls, atoms: int) -> FiniteProximityAlgebra:
        B = FiniteBooleanAlgebra(atoms)
        return cls(B, ProximityRelation.order(B))

    @property
    def name(self) -> str:
        return f"finite:{self.algebra.atom_count}"

    @property
    def atom_count(self) -> int:
        return self.algebra.atom_count

    @property
    def zero(self) -> int:
        return 0

    @property
    def one(self) -> int:
        return self.algebra.one

    def elements(self) -> range:
        return self.algebra.elements()

    def atoms(self) -> list[int]:
        return self.algebra.atoms()

    def meet(self, a, b):
        return a & b

    def join(self, a, b):
        return a | b

    def neg(self, a):
        return self.algebra.one & ~a

    def leq(self, a, b) -> bool:
        return a & ~b == 0

    def prox(self, a, b) -> bool:
        return self.relation(a, b)

    def interpolate(self, a, b):
        for c in self.elements():
            if self.prox(a, c) and self.prox(c, b):
                return c
        return None

    def below(self, a):
        for b in range(1, self.algebra.size):
            if self.prox(b, a):
                return b
        return None

    def format(self, a) -> str:
        return self.algebra.format(a)

    def parse(self, text: str) -> int:
        return self.algebra.parse(text)

    def sample(self, rng) -> int:
        return rng.randrange(self.algebra.size)

    def sample_partition(self, rng, parts: int) -> list[int]:
        blocks: dict[int, int] = {}
        for atom in self.atoms():
            label = rng.randrange(parts)
            blocks[label] = blocks.get(label, 0) | atom
        if not blocks:
            return [0]
        return [blocks[k] for k in sorted(blocks)]

    def sample_above(self, rng, a):
        options = [b for b in self.elements() if self.prox(a, b)]
        return rng.choice(options) if options else self.sample(rng)

    def sample_below(self, rng, a):
        options = [b for b in self.elements() if self.prox(b, a)]
        return rng.choice(options) if options else self.zero


class _CarrierWrapper:
    """Delegates everything to a base carrier; subclasses override the relation."""

    def __init__(self, base):
        self.base = base

    def __getattr__(self, name):
        return getattr(self.base, name)


class ReflexiveClosureMutation(_CarrierWrapper):
    """The relation a < b or a = b: it violates DV3 on carriers with non-clopen elements."""

    @property
    def name(self) -> str:
        return f"{self.base.name}+reflexive"

    def prox(self, a, b) -> bool:
        return a == b or self.base.prox(a, b)

    def interpolate(self, a, b):
        if a == b:
            return a
        return self.base.interpolate(a, b)


class WitnessFreeMutation(_CarrierWrapper):
    """The same relation with interpolation witnesses dropped."""

    @property
    def name(self) -> str:
        return f"{self.base.name}+no-witness"

    def interpolate(self, a, b):
        return None


# checkers


def _draw(rng, n: int, draw: Callable, check: Callable, fmt: Callable, name: str) -> CheckResult:
    """Draw until ``n`` instances satisfy the hypothesis; stop at the first failure."""
    hits = 0
    attempts = 0
    while hits < n and attempts < 50 * n:
        attempts += 1
        inst = draw(rng)
        if inst is None:
            continue
        hits += 1
        if not check(*inst):
            return CheckResult(name, False, hits, fmt(inst))
    note = None if hits >= n else f"only {hits} instances satisfied the hypothesis"
    return CheckResult(name, hits >= n if n else True, hits, None, note)


def related_pair(carrier, rng) -> tuple:
    """A pair biased towards a < b, with occasional equal and unrelated pairs."""
    a = carrier.sample(rng)
    r = rng.random()
    if r < 0.6:
        b = carrier.sample_above(rng, a)
    elif r < 0.75:
        b = a
    elif r < 0.85:
        b = a
        a = carrier.sample_below(rng, b)
    else:
        b = carrier.sample(rng)
    return a, b


def check_devries_axioms(carrier, samples: int | None = None, seed: int = 0) -> AxiomReport:
    """DV1-DV7.  Finite carriers are checked exhaustively unless ``samples`` is given."""
    report = AxiomReport("dv-axioms")
    if getattr(carrier, "is_finite", False) and samples is None and isinstance(
        carrier, FiniteProximityAlgebra
    ):
        n = carrier.atom_count
        found = kernels.dv_counterexamples(n, list(carrier.relation.rows))
        size = 1 << n
        for name, cx in zip(DV_AXIOMS, found):
            text = None if cx is None else " ".join(carrier.format(x) for x in cx)
            report.add(CheckResult(name, cx is None, size * size, text, "exhaustive"))
        return report
    if samples is None:
        samples = 1000
    rng = random.Random(seed)
    fmt_tuple = lambda inst: " ".join(carrier.format(x) for x in inst)
    report.add(
        CheckResult(
            "DV1",
            carrier.prox(carrier.one, carrier.one),
            1,
            None if carrier.prox(carrier.one, carrier.one) else fmt_tuple((carrier.one, carrier.one)),
        )
    )

    def prox_pair(rng):
        a, b = related_pair(carrier, rng)
        return (a, b) if carrier.prox(a, b) else None

    report.add(_draw(rng, samples, prox_pair, carrier.leq, fmt_tuple, "DV2"))

    def chain(rng):
        b, c = related_pair(carrier, rng)
        if not carrier.prox(b, c):
            return None
        a = carrier.meet(b, carrier.sample(rng)) if rng.random() < 0.8 else b
        d = carrier.join(c, carrier.sample(rng)) if rng.random() < 0.8 else c
        return a, b, c, d

    report.add(_draw(rng, samples, chain, lambda a, b, c, d: carrier.prox(a, d), fmt_tuple, "DV3"))

    def fork(rng):
        a = carrier.sample(rng)
        b = carrier.sample_above(rng, a)
        c = carrier.sample_above(rng, a) if rng.random() < 0.8 else carrier.sample(rng)
        if carrier.prox(a, b) and carrier.prox(a, c):
            return a, b, c
        return None

    report.add(
        _draw(rng, samples, fork, lambda a, b, c: carrier.prox(a, carrier.meet(b, c)), fmt_tuple, "DV4")
    )
    report.add(
        _draw(
            rng,
            samples,
            prox_pair,
            lambda a, b: carrier.prox(carrier.neg(b), carrier.neg(a)),
            fmt_tuple,
            "DV5",
        )
    )

    def interpolates(a, b):
        c = carrier.interpolate(a, b)
        return c is not None and carrier.prox(a, c) and carrier.prox(c, b)

    report.add(_draw(rng, samples, prox_pair, interpolates, fmt_tuple, "DV6"))

    def nonzero(rng):
        a = carrier.sample(rng)
        return None if a == carrier.zero else (a,)

    def has_below(a):
        b = carrier.below(a)
        return b is not None and b != carrier.zero and carrier.prox(b, a)

    report.add(_draw(rng, samples, nonzero, has_below, fmt_tuple, "DV7"))
    return report


@dataclass(frozen=True)
class RigidityReport:
    atoms: int
    relations: int
    passing: int
    unique_is_order: bool

    @property
    def passed(self) -> bool:
        return self.passing == 1 and self.unique_is_order


def finite_proximity_rigidity(atoms: int) -> RigidityReport:
    """Enumerate every sub-relation of <= and count those satisfying DV1-DV7."""
    limit = 3 if kernels.IMPLEMENTATION == "compiled" else 2
    if atoms > limit:
        raise ScaleError(f"rigidity enumeration is limited to {limit} atoms here")
    total, passing = kernels.rigid_relations(atoms)
    order = ProximityRelation.order(FiniteBooleanAlgebra(atoms)).rows
    unique = len(passing) == 1 and tuple(passing[0]) == tuple(order)
    return RigidityReport(atoms, total, len(passing), unique)


# round ideals and ends


@dataclass(frozen=True)
class RoundIdeal:
    members: frozenset

    @property
    def generator(self) -> int:
        top = 0
        for m in self.members:
            top |= m
        return top

    def __contains__(self, a) -> bool:
        return a in self.members

    def __le__(self, other: RoundIdeal) -> bool:
        return self.members <= other.members

    def __lt__(self, other: RoundIdeal) -> bool:
        return self.members < other.members


def _antichains(elements: list[int], leq: Callable) -> Iterable[tuple]:
    def extend(start: int, chosen: tuple):
        yield chosen
        for i in range(start, len(elements)):
            x = elements[i]
            if all(not leq(x, y) and not leq(y, x) for y in chosen):
                yield from extend(i + 1, chosen + (x,))

    yield from extend(0, ())


def is_ideal(carrier, members: frozenset) -> bool:
    if carrier.zero not in members:
        return False
    for a in members:
        for b in carrier.elements():
            if carrier.leq(b, a) and b not in members:
                return False
    return all(carrier.join(a, b) in members for a in members for b in members)


def is_round(carrier, members: frozenset) -> bool:
    return all(any(carrier.prox(a, b) for b in members) for a in members)


def round_ideals(carrier) -> list[RoundIdeal]:
    """All round ideals, found by enumerating antichain-generated downsets."""
    if carrier.atom_count > MAX_IDEAL_ATOMS:
        raise ScaleError(f"ideal enumeration is limited to {MAX_IDEAL_ATOMS} atoms")
    elements = list(carrier.elements())
    found = []
    for chain in _antichains(elements, carrier.leq):
        if not chain:
            continue
        down = frozenset(b for b in elements if any(carrier.leq(b, a) for a in chain))
        if is_ideal(carrier, down) and is_round(carrier, down):
            found.append(RoundIdeal(down))
    return sorted(found, key=lambda I: (len(I.members), sorted(I.members)))


def _maximal_proper(ideals: list[RoundIdeal], one) -> list[RoundIdeal]:
    proper = [I for I in ideals if one not in I.members]
    return [I for I in proper if not any(I < J for J in proper)]


def ends(carrier, method: str = "auto") -> list[RoundIdeal]:
    """Maximal proper round ideals.

    ``antichain`` filters ``round_ideals``; ``principal`` uses that every ideal
    of a finite algebra is principal and that a principal ideal of m is round
    iff m < m.  ``auto`` picks the first up to four atoms and the second beyond.
    """
    if method == "auto":
        method = "antichain" if carrier.atom_count <= MAX_IDEAL_ATOMS else "principal"
    if method == "antichain":
        ideals = round_ideals(carrier)
    elif method == "principal":
        gens = kernels.principal_round_generators(carrier.atom_count, list(carrier.relation.rows))
        ideals = [
            RoundIdeal(frozenset(b for b in carrier.elements() if carrier.leq(b, m))) for m in gens
        ]
    else:
        raise ValueError(f"unknown method {method!r}")
    found = _maximal_proper(ideals, carrier.one)
    return sorted(found, key=lambda I: sorted(I.members))


def generated_topology(points: int, basis: Iterable[frozenset]) -> set[frozenset]:
    opens = {frozenset(), frozenset(range(points))}
    opens.update(basis)
    changed = True
    while changed:
        changed = False
        for u, v in itertools.combinations(list(opens), 2):
            w = u | v
            if w not in opens:
                opens.add(w)
                changed = True
    return opens


class EmbeddingError(AssertionError):
    pass


@dataclass
class FiniteEndSpace:
    points: list
    basis: dict  # carrier element -> frozenset of point indices
    opens: set = field(default_factory=set)

    def interior(self, s: frozenset) -> frozenset:
        inner = frozenset()
        for u in self.opens:
            if u <= s:
                inner |= u
        return inner

    def closure(self, s: frozenset) -> frozenset:
        everything = frozenset(range(len(self.points)))
        return everything - self.interior(everything - s)

    def is_hausdorff(self) -> bool:
        n = len(self.points)
        for i, j in itertools.combinations(range(n), 2):
            if not any(
                i in u and j in v and not (u & v) for u in self.opens for v in self.opens
            ):
                return False
        return True

    def is_discrete(self) -> bool:
        return all(frozenset({i}) in self.opens for i in range(len(self.points)))


def end_space(carrier) -> FiniteEndSpace:
    """Ends with the basis O(a) = {I : not-a in I}; verifies Hausdorff and the embedding."""
    pts = ends(carrier)
    basis = {
        a: frozenset(i for i, I in enumerate(pts) if carrier.neg(a) in I.members)
        for a in carrier.elements()
    }
    space = FiniteEndSpace(pts, basis)
    space.opens = generated_topology(len(pts), basis.values())
    if not space.is_hausdorff():
        raise EmbeddingError("end space is not Hausdorff")
    everything = frozenset(range(len(pts)))
    if len(set(basis.values())) != len(basis):
        raise EmbeddingError("a -> O(a) is not injective")
    if basis[carrier.one] != everything or basis[carrier.zero]:
        raise EmbeddingError("O does not preserve 0 and 1")
    for a in carrier.elements():
        if basis[carrier.neg(a)] != space.interior(everything - basis[a]):
            raise EmbeddingError(f"O does not preserve the complement of {carrier.format(a)}")
        for b in carrier.elements():
            if basis[carrier.meet(a, b)] != basis[a] & basis[b]:
                raise EmbeddingError("O does not preserve meets")
            if basis[carrier.join(a, b)] != space.interior(space.closure(basis[a] | basis[b])):
                raise EmbeddingError("O does not preserve joins")
    return space


# de Vries morphisms


@dataclass(frozen=True)
class DeVriesMap:
    """An element map between finite carriers, given as a table indexed by source elements."""

    source: FiniteProximityAlgebra
    target: FiniteProximityAlgebra
    table: tuple

    def __call__(self, a: int) -> int:
        return self.table[a]

    @classmethod
    def from_function(cls, source, target, fn: Callable) -> DeVriesMap:
        return cls(source, target, tuple(fn(a) for a in source.elements()))

    def format_lines(self) -> list[str]:
        return [
            f"{self.source.format(a)} -> {self.target.format(self.table[a])}"
            for a in self.source.elements()
        ]


def identity_devries(carrier: FiniteProximityAlgebra) -> DeVriesMap:
    return DeVriesMap(carrier, carrier, tuple(carrier.elements()))


def check_devries_morphism(sigma, source=None, target=None, samples: int | None = None, seed: int = 0) -> AxiomReport:
    """M1-M4.  Exhaustive over finite sources; sampled (and M4 skipped) otherwise."""
    source = source if source is not None else sigma.source
    target = target if target is not None else sigma.target
    report = AxiomReport("morphism")
    fmt = lambda *xs: " ".join(source.format(x) for x in xs)
    zero_ok = sigma(source.zero) == target.zero
    report.add(CheckResult("M1", zero_ok, 1, None if zero_ok else source.format(source.zero)))
    if getattr(source, "is_finite", False) and samples is None:
        elems = list(source.elements())
        pairs = [(a, b) for a in elems for b in elems]
        finite = True
    else:
        rng = random.Random(seed)
        pairs = [related_pair(source, rng) for _ in range(samples or 500)]
        finite = False
    cx = next(
        (p for p in pairs if sigma(source.meet(*p)) != target.meet(sigma(p[0]), sigma(p[1]))), None
    )
    report.add(CheckResult("M2", cx is None, len(pairs), None if cx is None else fmt(*cx)))
    tested = [p for p in pairs if source.prox(*p)]
    cx = next(
        (
            (a, b)
            for a, b in tested
            if not target.prox(target.neg(sigma(source.neg(a))), sigma(b))
        ),
        None,
    )
    report.add(CheckResult("M3", cx is None, len(tested), None if cx is None else fmt(*cx)))
    if finite and getattr(target, "is_finite", False):
        cx = None
        for a in source.elements():
            lub = target.zero
            for b in source.elements():
                if source.prox(b, a):
                    lub = target.join(lub, sigma(b))
            if lub != sigma(a):
                cx = a
                break
        report.add(
            CheckResult("M4", cx is None, source.algebra.size, None if cx is None else source.format(cx))
        )
    else:
        report.add(CheckResult("M4", None, 0, None, "target is not complete; join clause not decidable"))
    return report


def is_devries_morphism(sigma) -> bool:
    return check_devries_morphism(sigma).passed


def compose_devries(rho: DeVriesMap, sigma: DeVriesMap) -> DeVriesMap:
    """(rho * sigma)(a) = join of rho(sigma(b)) over b < a."""
    src, dst = sigma.source, rho.target
    table = []
    for a in src.elements():
        acc = dst.zero
        for b in src.elements():
            if src.prox(b, a):
                acc = dst.join(acc, rho(sigma(b)))
        table.append(acc)
    return DeVriesMap(src, dst, tuple(table))


def all_devries_morphisms(source: FiniteProximityAlgebra, target: FiniteProximityAlgebra) -> list[DeVriesMap]:
    """Every map passing M1-M4, by brute force over tables fixing 0."""
    n = source.algebra.size
    if target.algebra.size ** (n - 1) > 1 << 16:
        raise ScaleError("morphism enumeration is limited to small algebras")
    found = []
    for rest in itertools.product(range(target.algebra.size), repeat=n - 1):
        sigma = DeVriesMap(source, target, (0,) + rest)
        if check_devries_morphism(sigma).passed:
            found.append(sigma)
    return found


# topology-flavoured predicates


@dataclass(frozen=True)
class Verdict:
    value: bool
    witness: str | None = None

    def __bool__(self) -> bool:
        return self.value


def _interval_candidates(a, b) -> list:
    from .intervals import RegularOpenSet
    from .steps import StepMap

    grid = sorted({0, 1} | a.endpoints() | b.endpoints())
    grid = sorted(set(grid) | {(p + q) / 2 for p, q in zip(grid, grid[1:])})
    gaps = len(grid) - 1
    out = []
    for flags in itertools.product((False, True), repeat=gaps):
        out.append(RegularOpenSet.from_step(StepMap(tuple(grid), (False,) * len(grid), flags)))
    return out


def is_zero_dimensional(carrier, samples: int = 50, seed: int = 0) -> Verdict:
    """Whether every a < b admits c with c < c and a < c < b."""
    if getattr(carrier, "is_finite", False):
        for a in carrier.elements():
            for b in carrier.elements():
                if carrier.prox(a, b) and not any(
                    carrier.prox(c, c) and carrier.prox(a, c) and carrier.prox(c, b)
                    for c in carrier.elements()
                ):
                    return Verdict(False, f"{carrier.format(a)} {carrier.format(b)}")
        return Verdict(True)
    from .intervals import parse_intervals

    rng = random.Random(seed)
    pairs = [(parse_intervals("(1/4,1/2)"), parse_intervals("(1/8,3/4)"))]
    for _ in range(samples):
        a = carrier.sample(rng)
        pairs.append((a, carrier.sample_above(rng, a)))
    for a, b in pairs:
        if not carrier.prox(a, b) or len(_interval_candidates(a, b)) > 1 << 12:
            continue
        if not any(
            carrier.prox(c, c) and carrier.prox(a, c) and carrier.prox(c, b)
            for c in _interval_candidates(a, b)
        ):
            return Verdict(False, f"{carrier.format(a)} {carrier.format(b)}")
    return Verdict(True)


def is_extremally_disconnected(carrier, samples: int = 200, seed: int = 0) -> Verdict:
    """Whether a <= b implies a < b."""
    if getattr(carrier, "is_finite", False):
        for a in carrier.elements():
            for b in carrier.elements():
                if carrier.leq(a, b) and not carrier.prox(a, b):
                    return Verdict(False, f"{carrier.format(a)} {carrier.format(b)}")
        return Verdict(True)
    from .intervals import parse_intervals

    witness = parse_intervals("(1/4,1/2)")
    if not carrier.prox(witness, witness):
        return Verdict(False, f"{carrier.format(witness)} {carrier.format(witness)}")
    rng = random.Random(seed)
    for _ in range(samples):
        a = carrier.sample(rng)
        b = carrier.join(a, carrier.sample(rng))
        if not carrier.prox(a, b):
            return Verdict(False, f"{carrier.format(a)} {carrier.format(b)}")
    return Verdict(True)


# file format


def parse_algebra_file(text: str) -> FiniteProximityAlgebra:
    """``atoms: n`` then optionally ``prox: explicit`` and lines ``e < f`` (or ``e ≺ f``)."""
    atoms = None
    explicit = False
    pairs = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        m = re.match(r"^atoms\s*:\s*(\d+)$", line)
        if m:
            if atoms is not None:
                raise BooleanSyntaxError("duplicate atoms line")
            atoms = int(m.group(1))
            continue
        m = re.match(r"^prox\s*:\s*(\w+)$", line)
        if m:
            if m.group(1) == "explicit":
                explicit = True
            elif m.group(1) in ("order", "leq"):
                explicit = False
            else:
                raise BooleanSyntaxError(f"unknown proximity kind {m.group(1)!r}")
            continue
        m = re.match(r"^([01]+)\s*(?:<|≺|\\prec)\s*([01]+)$", line)
        if m and explicit:
            pairs.append((m.group(1), m.group(2)))
            continue
        raise BooleanSyntaxError(f"cannot parse line {raw!r}")
    if atoms is None:
        raise BooleanSyntaxError("missing 'atoms: n' line")
    if atoms < 1:
        raise BooleanSyntaxError("an algebra file needs at least one atom")
    B = FiniteBooleanAlgebra(atoms)
    if not explicit:
        return FiniteProximityAlgebra(B, ProximityRelation.order(B))
    rel = ProximityRelation.from_pairs(B, ((B.parse(a), B.parse(b)) for a, b in pairs))
    return FiniteProximityAlgebra(B, rel)


def format_algebra_file(carrier: FiniteProximityAlgebra) -> str:
    lines = [f"atoms: {carrier.atom_count}"]
    if not carrier.relation.is_order():
        lines.append("prox: explicit")
        for a, b in carrier.relation.pairs():
            lines.append(f"{carrier.format(a)} < {carrier.format(b)}")
    return "\n".join(lines) + "\n"
