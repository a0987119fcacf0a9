"""Specker algebras over an idempotent carrier, in full orthogonal canonical form.

An element is a finite sum ``a_1 e_1 + ... + a_n e_n`` with distinct sorted
values and pairwise disjoint nonzero idempotents joining to 1.  Ring and
lattice operations refine the two partitions and merge equal values; order
and proximity are read off compatible decreasing forms.
"""
from __future__ import annotations

import random
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Callable, Iterable

from .boolean import FiniteProximityAlgebra, _draw, related_pair
from .domain import DomainError, OrderedDomain, Value, format_value
from .intervals import IntervalCarrier, IntervalSyntaxError, RegularOpenSet
from .normal import NormalFunction, PiecewiseFunction, pointwise_op, upset_level
from .reports import AxiomReport, CheckResult

P_AXIOMS = tuple(f"P{i}" for i in range(1, 11))


class SpeckerSyntaxError(ValueError):
    pass


@dataclass(frozen=True)
class DecreasingForm:
    base: Value
    steps: tuple  # ((b_1, k_1), ..., (b_n, k_n))

    @property
    def idempotents(self) -> tuple:
        return tuple(k for _, k in self.steps)

    @property
    def sizes(self) -> tuple:
        return tuple(b for b, _ in self.steps)

    def is_strict(self, carrier) -> bool:
        ks = [carrier.one] + list(self.idempotents) + [carrier.zero]
        if any(b <= 0 for b in self.sizes):
            return False
        return all(carrier.leq(k1, k0) and k1 != k0 for k0, k1 in zip(ks, ks[1:]))


@dataclass(frozen=True)
class SpeckerAlgebra:
    carrier: Any
    domain: OrderedDomain

    @property
    def name(self) -> str:
        return f"{self.carrier.name}/{self.domain.name}"

    # construction
    def _make(self, terms: Iterable[tuple]) -> SpeckerElement:
        return SpeckerElement(self, tuple(terms))

    def _merge(self, pairs: Iterable[tuple]) -> SpeckerElement:
        c = self.carrier
        acc: dict = {}
        for v, e in pairs:
            if e == c.zero:
                continue
            acc[v] = c.join(acc[v], e) if v in acc else e
        return self._make(sorted(acc.items(), key=lambda t: t[0]))

    def element(self, terms: Iterable[tuple]) -> SpeckerElement:
        """Validate and canonicalize (value, idempotent) pairs forming a partition of 1."""
        c = self.carrier
        pairs = [(self.domain.coerce(v), e) for v, e in terms]
        nonzero = [(v, e) for v, e in pairs if e != c.zero]
        for i, (_, e) in enumerate(nonzero):
            for _, k in nonzero[i + 1 :]:
                if c.meet(e, k) != c.zero:
                    raise ValueError("idempotents of an orthogonal form must be disjoint")
        total = c.zero
        for _, e in nonzero:
            total = c.join(total, e)
        if total != c.one:
            raise ValueError("idempotents of a full orthogonal form must join to 1")
        return self._merge(nonzero)

    def const(self, a) -> SpeckerElement:
        return self._make(((self.domain.coerce(a), self.carrier.one),))

    def chi(self, e) -> SpeckerElement:
        return self._merge(((self.domain.one, e), (self.domain.zero, self.carrier.neg(e))))

    @property
    def zero(self) -> SpeckerElement:
        return self.const(0)

    @property
    def one(self) -> SpeckerElement:
        return self.const(1)

    def lift(self, x) -> SpeckerElement:
        if isinstance(x, SpeckerElement):
            if x.algebra != self:
                raise ValueError("elements belong to different algebras")
            return x
        return self.const(x)

    # ring and lattice operations
    def _binary(self, s, t, fn: Callable) -> SpeckerElement:
        s, t = self.lift(s), self.lift(t)
        c = self.carrier
        pieces = []
        for a, e in s.terms:
            for b, k in t.terms:
                m = c.meet(e, k)
                if m != c.zero:
                    pieces.append((fn(a, b), m))
        return self._merge(pieces)

    def _unary(self, s, fn: Callable) -> SpeckerElement:
        return self._merge((fn(a), e) for a, e in self.lift(s).terms)

    def add(self, s, t):
        return self._binary(s, t, lambda a, b: a + b)

    def sub(self, s, t):
        return self._binary(s, t, lambda a, b: a - b)

    def mul(self, s, t):
        return self._binary(s, t, lambda a, b: a * b)

    def meet(self, s, t):
        return self._binary(s, t, lambda a, b: a if a <= b else b)

    def join(self, s, t):
        return self._binary(s, t, lambda a, b: a if a >= b else b)

    def neg(self, s):
        return self._unary(s, lambda a: -a)

    def abs(self, s):
        return self._unary(s, lambda a: -a if a < 0 else a)

    def scalar_mul(self, a, s):
        a = self.domain.coerce(a)
        return self._unary(s, lambda v: a * v)

    # decreasing forms
    def to_decreasing(self, s) -> DecreasingForm:
        s = self.lift(s)
        c = self.carrier
        values = [a for a, _ in s.terms]
        steps = []
        for i in range(1, len(s.terms)):
            k = c.zero
            for _, e in s.terms[i:]:
                k = c.join(k, e)
            steps.append((values[i] - values[i - 1], k))
        return DecreasingForm(values[0], tuple(steps))

    def to_orthogonal(self, d: DecreasingForm) -> SpeckerElement:
        c = self.carrier
        ks = [c.one] + list(d.idempotents) + [c.zero]
        value = d.base
        pieces = []
        for i in range(len(ks) - 1):
            if i > 0:
                value = value + d.steps[i - 1][0]
            pieces.append((value, c.meet(ks[i], c.neg(ks[i + 1]))))
        return self._merge(pieces)

    def from_decreasing(self, base, steps) -> SpeckerElement:
        return self.to_orthogonal(DecreasingForm(self.domain.coerce(base), tuple(steps)))

    def upset(self, s, a):
        """The idempotent join of the e_i with a_i >= a."""
        c = self.carrier
        k = c.zero
        for v, e in self.lift(s).terms:
            if v >= a:
                k = c.join(k, e)
        return k

    def compatible_decreasing(self, s, t) -> tuple[DecreasingForm, DecreasingForm]:
        """Both elements over the merged value grid, sharing base and step sizes."""
        s, t = self.lift(s), self.lift(t)
        grid = sorted({a for a, _ in s.terms} | {a for a, _ in t.terms})
        sizes = [b - a for a, b in zip(grid, grid[1:])]
        ks = tuple((b, self.upset(s, v)) for b, v in zip(sizes, grid[1:]))
        kt = tuple((b, self.upset(t, v)) for b, v in zip(sizes, grid[1:]))
        return DecreasingForm(grid[0], ks), DecreasingForm(grid[0], kt)

    def leq(self, s, t) -> bool:
        ds, dt = self.compatible_decreasing(s, t)
        return all(self.carrier.leq(e, k) for e, k in zip(ds.idempotents, dt.idempotents))

    def positive(self, s) -> bool:
        """0 <= s, read off the base of the decreasing form."""
        return self.to_decreasing(s).base >= 0

    def prox(self, s, t) -> bool:
        ds, dt = self.compatible_decreasing(s, t)
        return all(self.carrier.prox(e, k) for e, k in zip(ds.idempotents, dt.idempotents))

    def interpolate(self, s, t):
        """Some r with s < r < t, built from carrier witnesses, or None."""
        c = self.carrier
        ds, dt = self.compatible_decreasing(s, t)
        acc = c.one
        steps = []
        for (b, e), (_, k) in zip(ds.steps, dt.steps):
            w = c.interpolate(e, k)
            if w is None:
                return None
            acc = c.meet(acc, w)
            steps.append((b, acc))
        return self.to_orthogonal(DecreasingForm(ds.base, tuple(steps)))

    def below(self, s):
        """For s > 0, some 0 < t < s: the top value times an idempotent well inside the top piece."""
        s = self.lift(s)
        a, e = s.terms[-1]
        if a <= 0:
            return None
        w = self.carrier.below(e)
        if w is None:
            return None
        return self.scalar_mul(a, self.chi(w))

    def is_idempotent(self, s) -> bool:
        s = self.lift(s)
        return self.mul(s, s) == s

    # sampling
    def _values(self, rng, count: int, lo: int, hi: int) -> list:
        if self.domain.is_field:
            q = rng.choice((1, 2, 3, 4))
            pool = [Fraction(i, q) for i in range(lo * q, hi * q + 1)]
        else:
            pool = list(range(lo, hi + 1))
        return rng.sample(pool, min(count, len(pool)))

    def sample(self, rng, lo: int = -3, hi: int = 3) -> SpeckerElement:
        blocks = self.carrier.sample_partition(rng, rng.randint(1, 4))
        values = self._values(rng, len(blocks), lo, hi)
        return self._merge(zip(values, blocks))

    def sample_nonneg(self, rng, hi: int = 3) -> SpeckerElement:
        return self.sample(rng, 0, hi)

    def sample_idempotent(self, rng):
        return self.carrier.sample(rng)

    def sample_above(self, rng, s) -> SpeckerElement:
        """A random t with s < t."""
        c = self.carrier
        d = self.to_decreasing(s)
        acc = c.one
        steps = []
        for b, k in d.steps:
            acc = c.meet(acc, c.sample_above(rng, k))
            steps.append((b, acc))
        t = self.to_orthogonal(DecreasingForm(d.base, tuple(steps)))
        if rng.random() < 0.3:
            t = self.add(t, self.const(rng.choice((0, 1, 2))))
        return t

    def sample_below(self, rng, s) -> SpeckerElement:
        """A random t with t < s."""
        c = self.carrier
        d = self.to_decreasing(s)
        shrunk = [c.sample_below(rng, k) for _, k in d.steps]
        steps = []
        for i, (b, _) in enumerate(d.steps):
            acc = c.zero
            for w in shrunk[i:]:
                acc = c.join(acc, w)
            steps.append((b, acc))
        t = self.to_orthogonal(DecreasingForm(d.base, tuple(steps)))
        if rng.random() < 0.3:
            t = self.sub(t, self.const(rng.choice((0, 1, 2))))
        return t

    # text
    def format(self, s) -> str:
        s = self.lift(s)
        if isinstance(self.carrier, FiniteProximityAlgebra):
            d = self.to_decreasing(s)
            parts = [format_value(d.base)]
            parts += [f"{format_value(b)}*{self.carrier.format(k)}" for b, k in d.steps]
            return " + ".join(parts)
        return " ; ".join(f"{format_value(a)} on {self.carrier.format(e)}" for a, e in s.terms)

    def parse(self, text: str) -> SpeckerElement:
        text = text.strip()
        if not text:
            raise SpeckerSyntaxError("empty element")
        try:
            if " on " in f" {text} ":
                terms = []
                for clause in text.split(";"):
                    m = re.match(r"^\s*(\S+)\s+on\s+(.+?)\s*$", clause)
                    if not m:
                        raise SpeckerSyntaxError(f"cannot parse term {clause!r}")
                    terms.append((self.domain.parse(m.group(1)), self.carrier.parse(m.group(2))))
                return self.element(terms)
            if not isinstance(self.carrier, FiniteProximityAlgebra):
                return self.const(self.domain.parse(text))
            total = self.zero
            for chunk in re.sub(r"\s+", "", text).replace("-", "+-").split("+"):
                if not chunk:
                    continue
                if "*" in chunk:
                    coef, bits = chunk.split("*", 1)
                    coef = "-1" if coef == "-" else coef
                    total = self.add(
                        total, self.scalar_mul(self.domain.parse(coef), self.chi(self.carrier.parse(bits)))
                    )
                else:
                    total = self.add(total, self.const(self.domain.parse(chunk)))
            return total
        except (DomainError, IntervalSyntaxError, ValueError) as exc:
            if isinstance(exc, SpeckerSyntaxError):
                raise
            raise SpeckerSyntaxError(str(exc)) from None


@dataclass(frozen=True)
class SpeckerElement:
    algebra: SpeckerAlgebra
    terms: tuple  # ((a_1, e_1), ..., (a_n, e_n)), a_1 < ... < a_n

    @property
    def values(self) -> tuple:
        return tuple(a for a, _ in self.terms)

    @property
    def idempotents(self) -> tuple:
        return tuple(e for _, e in self.terms)

    def is_constant(self) -> bool:
        return len(self.terms) == 1

    def __add__(self, other):
        return self.algebra.add(self, other)

    __radd__ = __add__

    def __sub__(self, other):
        return self.algebra.sub(self, other)

    def __rsub__(self, other):
        return self.algebra.sub(self.algebra.lift(other), self)

    def __mul__(self, other):
        if isinstance(other, SpeckerElement):
            return self.algebra.mul(self, other)
        return self.algebra.scalar_mul(other, self)

    __rmul__ = __mul__

    def __neg__(self):
        return self.algebra.neg(self)

    def __abs__(self):
        return self.algebra.abs(self)

    def __and__(self, other):
        return self.algebra.meet(self, other)

    __rand__ = __and__

    def __or__(self, other):
        return self.algebra.join(self, other)

    __ror__ = __or__

    def __le__(self, other) -> bool:
        return self.algebra.leq(self, self.algebra.lift(other))

    def __ge__(self, other) -> bool:
        return self.algebra.leq(self.algebra.lift(other), self)

    def prox(self, other) -> bool:
        return self.algebra.prox(self, other)

    def format(self) -> str:
        return self.algebra.format(self)

    def __str__(self) -> str:
        return self.format()

    def __repr__(self) -> str:
        return f"SpeckerElement({self.format()!r})"


# representation by normal functions on [0,1]


def to_normal(s: SpeckerElement) -> NormalFunction:
    """The normal function a_0 + sum b_i chi_{k_i} of an element over the interval carrier."""
    alg = s.algebra
    if not isinstance(alg.carrier, IntervalCarrier):
        raise ValueError("normal functions represent the interval carrier only")
    d = alg.to_decreasing(s)
    total = PiecewiseFunction.constant(d.base)
    for b, k in d.steps:
        total = pointwise_op("add", total, PiecewiseFunction.indicator(k, b, 0))
    return NormalFunction(total.step)


def from_normal(alg: SpeckerAlgebra, f: NormalFunction) -> SpeckerElement:
    values = f.values()
    levels = [upset_level(f, a).regular_open() for a in values]
    c = alg.carrier
    pieces = []
    for i, a in enumerate(values):
        nxt = levels[i + 1] if i + 1 < len(levels) else RegularOpenSet.empty()
        pieces.append((alg.domain.coerce(a), c.meet(levels[i], c.neg(nxt))))
    return alg._merge(pieces)


# property suites


def _fmt(alg: SpeckerAlgebra):
    return lambda inst: " | ".join(x.format() if isinstance(x, SpeckerElement) else format_value(x) for x in inst)


def _run(rng, n: int, name: str, draw: Callable, check: Callable, fmt: Callable) -> CheckResult:
    return _draw(rng, n, draw, check, fmt, name)


def prox_axiom_suite(alg: SpeckerAlgebra, samples: int = 500, seed: int = 0) -> AxiomReport:
    """P1-P10 on seeded random elements; P7 is compared in both directions."""
    rng = random.Random(seed)
    report = AxiomReport("prox-axioms")
    fmt = _fmt(alg)
    p = alg.prox
    ok1 = p(alg.zero, alg.zero) and p(alg.one, alg.one)
    report.add(CheckResult("P1", ok1, 1, None if ok1 else "0 | 1"))

    def pair(rng):
        s, t = related_pair(alg, rng)
        return (s, t) if p(s, t) else None

    report.add(_run(rng, samples, "P2", pair, alg.leq, fmt))

    def chain(rng):
        got = pair(rng)
        if got is None:
            return None
        t, r = got
        s = alg.meet(t, alg.sample(rng)) if rng.random() < 0.8 else t
        u = alg.join(r, alg.sample(rng)) if rng.random() < 0.8 else r
        return s, t, r, u

    report.add(_run(rng, samples, "P3", chain, lambda s, t, r, u: p(s, u), fmt))

    def fork(rng):
        s = alg.sample(rng)
        t, r = alg.sample_above(rng, s), alg.sample_above(rng, s)
        return (s, t, r) if p(s, t) and p(s, r) else None

    report.add(_run(rng, samples, "P4", fork, lambda s, t, r: p(s, alg.meet(t, r)), fmt))
    report.add(_run(rng, samples, "P5", pair, lambda s, t: p(alg.neg(t), alg.neg(s)), fmt))

    def two_pairs(rng):
        a, b = pair(rng) or (None, None), pair(rng) or (None, None)
        if a[0] is None or b[0] is None:
            return None
        return a[0], a[1], b[0], b[1]

    report.add(
        _run(rng, samples, "P6", two_pairs, lambda s, t, r, u: p(alg.add(s, r), alg.add(t, u)), fmt)
    )

    counts = {"holds": 0, "fails": 0}

    def scaled(rng):
        s, t = related_pair(alg, rng)
        return s, t, alg.domain.random_positive(rng)

    def both_ways(s, t, a):
        before = p(s, t)
        after = p(alg.scalar_mul(a, s), alg.scalar_mul(a, t))
        counts["holds" if before else "fails"] += 1
        return before == after

    res = _run(rng, samples, "P7", scaled, both_ways, fmt)
    res.note = f"forward={counts['holds']} reflection={counts['fails']}"
    if res.passed and (counts["holds"] == 0 or counts["fails"] == 0):
        res.passed = False
        res.note += "; one direction was never exercised"
    report.add(res)

    def nonneg_pairs(rng):
        s, r = alg.sample_nonneg(rng), alg.sample_nonneg(rng)
        t, u = alg.sample_above(rng, s), alg.sample_above(rng, r)
        if p(s, t) and p(r, u):
            return s, t, r, u
        return None

    report.add(
        _run(rng, samples, "P8", nonneg_pairs, lambda s, t, r, u: p(alg.mul(s, r), alg.mul(t, u)), fmt)
    )

    def interpolates(s, t):
        r = alg.interpolate(s, t)
        return r is not None and p(s, r) and p(r, t)

    report.add(_run(rng, samples, "P9", pair, interpolates, fmt))

    def strictly_positive(rng):
        s = alg.sample_nonneg(rng)
        return None if s == alg.zero else (s,)

    def has_below(s):
        t = alg.below(s)
        return t is not None and alg.positive(t) and t != alg.zero and p(t, s)

    report.add(_run(rng, samples, "P10", strictly_positive, has_below, fmt))
    return report


def fring_property_suite(alg: SpeckerAlgebra, samples: int = 1000, seed: int = 0) -> AxiomReport:
    """Idempotent lemma clauses, truncation identity and f-ring laws on random samples."""
    rng = random.Random(seed)
    report = AxiomReport("fring")
    fmt = _fmt(alg)
    c = alg.carrier
    dom = alg.domain

    def idem(rng):
        return alg.chi(c.sample(rng))

    report.add(
        _run(rng, samples, "L1", lambda r: (idem(r),), lambda e: alg.leq(alg.zero, e) and alg.leq(e, alg.one), fmt)
    )

    def idem_pair(rng):
        e = c.sample(rng)
        k = c.join(e, c.sample(rng)) if rng.random() < 0.5 else c.sample(rng)
        return e, k

    report.add(
        _run(
            rng,
            samples,
            "L2",
            idem_pair,
            lambda e, k: alg.leq(alg.chi(e), alg.chi(k)) == c.leq(e, k)
            and alg.is_idempotent(alg.chi(e)),
            lambda inst: " | ".join(c.format(x) for x in inst),
        )
    )

    def unit_scalar(rng):
        if dom.is_field:
            q = rng.randint(1, 4)
            return Fraction(rng.randint(0, q), q)
        return rng.randint(0, 1)

    report.add(
        _run(
            rng,
            samples,
            "L3",
            lambda r: (unit_scalar(r), idem(r)),
            lambda a, e: alg.meet(alg.const(a), e) == alg.scalar_mul(a, e),
            fmt,
        )
    )
    report.add(
        _run(
            rng,
            samples,
            "L4",
            lambda r: (dom.coerce(1) + dom.random(r, 0, 3), idem(r)),
            lambda a, e: alg.meet(alg.scalar_mul(a, e), alg.one) == e,
            fmt,
        )
    )

    def nonzero_idem(rng):
        e = c.sample(rng)
        return None if e == c.zero else alg.chi(e)

    def clause5(rng):
        e = nonzero_idem(rng)
        return None if e is None else (dom.random(rng), e)

    report.add(
        _run(
            rng,
            samples,
            "L5",
            clause5,
            lambda a, e: (not alg.positive(alg.scalar_mul(a, e))) or a >= 0,
            fmt,
        )
    )

    def clause6(rng):
        e, k = c.sample(rng), c.sample(rng)
        if rng.random() < 0.5:
            k = c.join(k, e)
        if e == c.zero or k == c.zero:
            return None
        return dom.random_positive(rng), dom.random_positive(rng), alg.chi(e), alg.chi(k)

    report.add(
        _run(
            rng,
            samples,
            "L6",
            clause6,
            lambda a, b, e, k: alg.leq(alg.scalar_mul(a, e), alg.scalar_mul(b, k))
            == (a <= b and alg.leq(e, k)),
            fmt,
        )
    )

    def truncation(rng):
        a, b = sorted(dom.random(rng) for _ in range(2))
        if a == b:
            b = a + 1
        return alg.sample(rng), a, b

    report.add(
        _run(
            rng,
            samples,
            "truncation",
            truncation,
            lambda s, a, b: alg.sub(alg.meet(s, b), alg.meet(s, a))
            == alg.meet(alg.join(alg.sub(s, a), alg.zero), alg.const(b - a)),
            fmt,
        )
    )

    def disjoint(rng):
        e = c.sample(rng)
        s = alg.mul(alg.abs(alg.sample(rng)), alg.chi(e))
        t = alg.mul(alg.abs(alg.sample(rng)), alg.chi(c.neg(e)))
        return s, t, alg.abs(alg.sample(rng))

    report.add(
        _run(
            rng,
            samples,
            "f-ring",
            disjoint,
            lambda s, t, r: alg.meet(s, t) != alg.zero or alg.meet(alg.mul(r, s), t) == alg.zero,
            fmt,
        )
    )
    report.add(
        _run(
            rng,
            samples,
            "decomposition",
            lambda r: (alg.sample(r),),
            lambda s: s == alg.add(alg.join(s, alg.zero), alg.meet(s, alg.zero)),
            fmt,
        )
    )
    report.add(
        _run(
            rng,
            samples,
            "abs-product",
            lambda r: (alg.sample(r), alg.sample(r)),
            lambda s, t: alg.abs(alg.mul(s, t)) == alg.mul(alg.abs(s), alg.abs(t)),
            fmt,
        )
    )
    if getattr(c, "is_finite", False):
        report.add(
            _run(rng, min(samples, 200), "least-upper-bound", lambda r: (alg.sample(r),), lambda s: _lub_check(alg, s), fmt)
        )
    else:
        report.add(
            CheckResult("least-upper-bound", None, 0, None, "needs a complete idempotent algebra")
        )
    return report


def box(alg: SpeckerAlgebra, values: Iterable) -> list[SpeckerElement]:
    """All elements of a finite-carrier algebra whose atom values lie in ``values``."""
    from itertools import product

    atoms = alg.carrier.atoms()
    out = []
    for combo in product(sorted(set(values)), repeat=len(atoms)):
        out.append(alg._merge(zip((alg.domain.coerce(v) for v in combo), atoms)))
    return out


def atom_values(s: SpeckerElement) -> tuple:
    """Values of a finite-carrier element at each atom."""
    out = []
    for atom in s.algebra.carrier.atoms():
        for a, e in s.terms:
            if e & atom:
                out.append(a)
                break
    return tuple(out)


def _lub_check(alg: SpeckerAlgebra, s: SpeckerElement) -> bool:
    """s is the join of every t < s among elements valued in s's values or one below."""
    vals = set(s.values) | {min(s.values) - 1}
    acc = None
    for t in box(alg, vals):
        if alg.prox(t, s):
            acc = t if acc is None else alg.join(acc, t)
    return acc == s
