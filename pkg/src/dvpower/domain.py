"""Totally ordered integral domains used as scalars: the integers and the rationals.

Values are plain Python ``int`` (for ``INTEGERS``) or ``fractions.Fraction``
(for ``RATIONALS``).  Both are immutable and exact.  No division is part of the
domain interface; the integer instance would not support it.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

Value = Union[int, Fraction]

LESS, EQUAL, GREATER = -1, 0, 1

_INT_RE = re.compile(r"^[+-]?\d+$")
_RAT_RE = re.compile(r"^[+-]?\d+(/\d+)?$")


class DomainError(ValueError):
    pass


@dataclass(frozen=True)
class OrderedDomain:
    name: str

    @property
    def is_field(self) -> bool:
        return self.name == "rational"

    def coerce(self, x) -> Value:
        if isinstance(x, bool):
            raise DomainError(f"not a domain value: {x!r}")
        if self.name == "int":
            if isinstance(x, int):
                return x
            if isinstance(x, Fraction) and x.denominator == 1:
                return x.numerator
            raise DomainError(f"{x!r} is not an integer")
        if isinstance(x, (int, Fraction)):
            return Fraction(x)
        raise DomainError(f"not a domain value: {x!r}")

    # arithmetic substrate
    def add(self, a: Value, b: Value) -> Value:
        return a + b

    def mul(self, a: Value, b: Value) -> Value:
        return a * b

    def negate(self, a: Value) -> Value:
        return -a

    def min(self, a: Value, b: Value) -> Value:
        return a if a <= b else b

    def max(self, a: Value, b: Value) -> Value:
        return a if a >= b else b

    def abs(self, a: Value) -> Value:
        return -a if a < 0 else a

    def compare(self, a: Value, b: Value) -> int:
        if a < b:
            return LESS
        if a > b:
            return GREATER
        return EQUAL

    @property
    def zero(self) -> Value:
        return self.coerce(0)

    @property
    def one(self) -> Value:
        return self.coerce(1)

    def parse(self, text: str) -> Value:
        text = text.strip()
        pattern = _INT_RE if self.name == "int" else _RAT_RE
        if not pattern.match(text):
            raise DomainError(f"cannot parse {text!r} as a {self.name} value")
        return self.coerce(Fraction(text))

    def format(self, a: Value) -> str:
        return format_value(a)

    def random(self, rng, lo: int = -3, hi: int = 3) -> Value:
        """A random value in [lo, hi]; rationals get a small denominator."""
        if self.name == "int":
            return rng.randint(lo, hi)
        q = rng.choice((1, 1, 2, 3, 4))
        return Fraction(rng.randint(lo * q, hi * q), q)

    def random_positive(self, rng, hi: int = 3) -> Value:
        if self.name == "int":
            return rng.randint(1, hi)
        q = rng.choice((1, 2, 3))
        return Fraction(rng.randint(1, hi * q), q)


def format_value(a: Value) -> str:
    if isinstance(a, Fraction):
        if a.denominator == 1:
            return str(a.numerator)
        return f"{a.numerator}/{a.denominator}"
    return str(a)


def parse_rational(text: str) -> Fraction:
    text = text.strip()
    if not _RAT_RE.match(text):
        raise DomainError(f"cannot parse {text!r} as a rational")
    return Fraction(text)


INTEGERS = OrderedDomain("int")
RATIONALS = OrderedDomain("rational")


def get_domain(name: str) -> OrderedDomain:
    if name in ("int", "integer", "Z"):
        return INTEGERS
    if name in ("rational", "Q"):
        return RATIONALS
    raise DomainError(f"unknown domain {name!r}")
