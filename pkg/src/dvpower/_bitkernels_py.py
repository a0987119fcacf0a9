"""Pure-Python bitset kernels for proximity relations on finite Boolean algebras.

An algebra with ``n`` atoms has elements ``0 .. 2**n - 1`` (bitmasks).  A
relation is given by rows: bit ``b`` of ``rows[a]`` is set iff ``a < b``.
The compiled module ``_bitkernels`` exposes the same functions.
"""
from __future__ import annotations

IMPLEMENTATION = "python"


def _has(rows, a: int, b: int) -> bool:
    return (rows[a] >> b) & 1 == 1


def dv_counterexamples(n: int, rows) -> list:
    """First counterexample for each of DV1..DV7 (None where the axiom holds)."""
    size = 1 << n
    top = size - 1
    out = [None] * 7
    if not _has(rows, top, top):
        out[0] = (top, top)
    for a in range(size):
        for b in range(size):
            if not _has(rows, a, b):
                continue
            if out[1] is None and a & ~b:
                out[1] = (a, b)
            if out[4] is None and not _has(rows, top & ~b, top & ~a):
                out[4] = (a, b)
            if out[5] is None and not any(
                _has(rows, a, c) and _has(rows, c, b) for c in range(size)
            ):
                out[5] = (a, b)
    # DV3, reduced to closure downward in the first and upward in the second argument
    for b in range(size):
        for c in range(size):
            if out[2] is not None:
                break
            if not _has(rows, b, c):
                continue
            for a in range(size):
                if a & ~b == 0 and not _has(rows, a, c):
                    out[2] = (a, b, c, c)
                    break
            if out[2] is not None:
                break
            for d in range(size):
                if c & ~d == 0 and not _has(rows, b, d):
                    out[2] = (b, b, c, d)
                    break
    for a in range(size):
        if out[3] is not None:
            break
        for b in range(size):
            if out[3] is not None:
                break
            if not _has(rows, a, b):
                continue
            for c in range(size):
                if _has(rows, a, c) and not _has(rows, a, b & c):
                    out[3] = (a, b, c)
                    break
    for a in range(1, size):
        if not any(_has(rows, b, a) for b in range(1, size)):
            out[6] = (a,)
            break
    return out


def dv_passes(n: int, rows) -> bool:
    size = 1 << n
    top = size - 1
    if not _has(rows, top, top):
        return False
    for a in range(size):
        row = rows[a]
        for b in range(size):
            if not (row >> b) & 1:
                continue
            if a & ~b:
                return False
            if not _has(rows, top & ~b, top & ~a):
                return False
            # downward in the first argument, upward in the second
            for x in range(size):
                if x & ~a == 0 and not _has(rows, x, b):
                    return False
                if b & ~x == 0 and not (row >> x) & 1:
                    return False
                if (row >> x) & 1 and not (row >> (b & x)) & 1:
                    return False
            if not any((row >> c) & 1 and _has(rows, c, b) for c in range(size)):
                return False
    for a in range(1, size):
        if not any(_has(rows, b, a) for b in range(1, size)):
            return False
    return True


def order_pairs(n: int) -> list:
    """All pairs a <= b in the Boolean order, in lexicographic order."""
    size = 1 << n
    return [(a, b) for a in range(size) for b in range(size) if a & ~b == 0]


def rigid_relations(n: int) -> tuple:
    """Enumerate every sub-relation of <=; return (count, passing relations as row tuples)."""
    pairs = order_pairs(n)
    size = 1 << n
    passing = []
    total = 1 << len(pairs)
    for mask in range(total):
        rows = [0] * size
        for i, (a, b) in enumerate(pairs):
            if (mask >> i) & 1:
                rows[a] |= 1 << b
        if dv_passes(n, rows):
            passing.append(tuple(rows))
    return total, passing


def principal_round_generators(n: int, rows) -> list:
    """Elements m with m < m, i.e. generators of the round principal ideals."""
    return [m for m in range(1 << n) if _has(rows, m, m)]
