# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled bitset kernels; same interface as ``_bitkernels_py``."""

from libc.stdint cimport uint64_t

IMPLEMENTATION = "compiled"

DEF MAXSIZE = 64


cdef inline bint has(uint64_t* rows, int a, int b) nogil:
    return (rows[a] >> b) & 1


cdef int load(n, rows_in, uint64_t* rows) except -1:
    cdef int size = 1 << n
    cdef int i
    if n < 0 or n > 6:
        raise ValueError("bit kernels support at most 6 atoms")
    for i in range(size):
        rows[i] = <uint64_t>rows_in[i]
    return size


cdef bint passes(int size, uint64_t* rows) nogil:
    cdef int top = size - 1
    cdef int a, b, x, c
    cdef uint64_t row
    cdef bint found
    if not has(rows, top, top):
        return False
    for a in range(size):
        row = rows[a]
        for b in range(size):
            if not (row >> b) & 1:
                continue
            if a & ~b:
                return False
            if not has(rows, top & ~b, top & ~a):
                return False
            for x in range(size):
                if x & ~a == 0 and not has(rows, x, b):
                    return False
                if b & ~x == 0 and not (row >> x) & 1:
                    return False
                if (row >> x) & 1 and not (row >> (b & x)) & 1:
                    return False
            found = False
            for c in range(size):
                if (row >> c) & 1 and has(rows, c, b):
                    found = True
                    break
            if not found:
                return False
    for a in range(1, size):
        found = False
        for b in range(1, size):
            if has(rows, b, a):
                found = True
                break
        if not found:
            return False
    return True


def dv_passes(n, rows_in):
    cdef uint64_t rows[MAXSIZE]
    cdef int size = load(n, rows_in, rows)
    return bool(passes(size, rows))


def dv_counterexamples(n, rows_in):
    cdef uint64_t rows[MAXSIZE]
    cdef int size = load(n, rows_in, rows)
    cdef int top = size - 1
    cdef int a, b, c, d
    cdef bint found
    out = [None] * 7
    if not has(rows, top, top):
        out[0] = (top, top)
    for a in range(size):
        for b in range(size):
            if not has(rows, a, b):
                continue
            if out[1] is None and a & ~b:
                out[1] = (a, b)
            if out[4] is None and not has(rows, top & ~b, top & ~a):
                out[4] = (a, b)
            if out[5] is None:
                found = False
                for c in range(size):
                    if has(rows, a, c) and has(rows, c, b):
                        found = True
                        break
                if not found:
                    out[5] = (a, b)
    for b in range(size):
        if out[2] is not None:
            break
        for c in range(size):
            if out[2] is not None:
                break
            if not has(rows, b, c):
                continue
            for a in range(size):
                if a & ~b == 0 and not has(rows, a, c):
                    out[2] = (a, b, c, c)
                    break
            if out[2] is not None:
                break
            for d in range(size):
                if c & ~d == 0 and not has(rows, b, d):
                    out[2] = (b, b, c, d)
                    break
    for a in range(size):
        if out[3] is not None:
            break
        for b in range(size):
            if out[3] is not None:
                break
            if not has(rows, a, b):
                continue
            for c in range(size):
                if has(rows, a, c) and not has(rows, a, b & c):
                    out[3] = (a, b, c)
                    break
    for a in range(1, size):
        found = False
        for b in range(1, size):
            if has(rows, b, a):
                found = True
                break
        if not found:
            out[6] = (a,)
            break
    return out


def order_pairs(n):
    size = 1 << n
    return [(a, b) for a in range(size) for b in range(size) if a & ~b == 0]


def rigid_relations(n):
    if n > 3:
        raise ValueError("exhaustive relation enumeration is limited to 3 atoms")
    pairs = order_pairs(n)
    cdef int npairs = len(pairs)
    cdef int size = 1 << n
    cdef int pa[64]
    cdef int pb[64]
    cdef uint64_t rows[MAXSIZE]
    cdef uint64_t mask, total
    cdef int i
    for i in range(npairs):
        pa[i] = pairs[i][0]
        pb[i] = pairs[i][1]
    total = (<uint64_t>1) << npairs
    passing = []
    mask = 0
    while mask < total:
        for i in range(size):
            rows[i] = 0
        for i in range(npairs):
            if (mask >> i) & 1:
                rows[pa[i]] |= (<uint64_t>1) << pb[i]
        if passes(size, rows):
            passing.append(tuple(int(rows[i]) for i in range(size)))
        mask += 1
    return int(total), passing


def principal_round_generators(n, rows_in):
    cdef uint64_t rows[MAXSIZE]
    cdef int size = load(n, rows_in, rows)
    return [m for m in range(size) if has(rows, m, m)]
