# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled search kernels; same contracts as ``_pykernels``."""

from libc.stdint cimport uint64_t
from libc.stdlib cimport malloc, free


cdef extern from *:
    int popcount64 "__builtin_popcountll"(unsigned long long) nogil
    int ctz64 "__builtin_ctzll"(unsigned long long) nogil


def bad_masks(masks, int lam):
    cdef Py_ssize_t n = len(masks), i, j
    cdef int nbits = max([x.bit_length() for x in masks], default=0)
    if n > 64 or nbits > 64:
        from ._pykernels import bad_masks as slow
        return slow(masks, lam)
    cdef uint64_t *m = <uint64_t *> malloc(max(n, 1) * sizeof(uint64_t))
    cdef uint64_t *bad = <uint64_t *> malloc(max(n, 1) * sizeof(uint64_t))
    try:
        for i in range(n):
            m[i] = masks[i]
            bad[i] = 0
        for i in range(n):
            for j in range(i + 1, n):
                if popcount64(m[i] & m[j]) != lam:
                    bad[i] |= (<uint64_t> 1) << j
                    bad[j] |= (<uint64_t> 1) << i
        return [int(bad[i]) for i in range(n)]
    finally:
        free(m)
        free(bad)


cdef inline bint _lex_less(uint64_t a, uint64_t b) noexcept nogil:
    cdef uint64_t diff = a ^ b
    return (diff & (~diff + 1) & a) != 0


def brute_force_max(bad, int k):
    cdef int n = len(bad)
    if n > 24:
        raise ValueError("brute force supports at most 24 candidates")
    cdef uint64_t *b = <uint64_t *> malloc(max(n, 1) * sizeof(uint64_t))
    cdef uint64_t s, rest, low, best = 0, total = (<uint64_t> 1) << n
    cdef int size, best_size = 0, i
    cdef bint ok
    for i in range(n):
        b[i] = bad[i]
    with nogil:
        s = 0
        while s < total:
            size = popcount64(s)
            if size >= best_size:
                ok = True
                rest = s
                while rest:
                    i = ctz64(rest)
                    if popcount64(b[i] & s) > k:
                        ok = False
                        break
                    rest &= rest - 1
                if ok and (size > best_size or _lex_less(s, best)):
                    best = s
                    best_size = size
            s += 1
    free(b)
    return int(best), best_size, int(total)


cdef struct Ctx:
    uint64_t *bad
    int *counts
    int k
    int cap
    long long budget
    long long nodes
    uint64_t best
    int best_size
    bint stop


cdef inline uint64_t _available(Ctx *c, uint64_t pool, uint64_t chosen, uint64_t sat) noexcept nogil:
    cdef uint64_t out = 0, rest = pool, bj
    cdef int j
    while rest:
        j = ctz64(rest)
        bj = c.bad[j]
        if (bj & sat) == 0 and popcount64(bj & chosen) <= c.k:
            out |= (<uint64_t> 1) << j
        rest &= rest - 1
    return out


cdef void _rec(Ctx *c, uint64_t chosen, uint64_t sat, int size, uint64_t avail) noexcept nogil:
    cdef uint64_t low, touched, new_sat, rest, lb
    cdef int j, i, cj
    c.nodes += 1
    if c.nodes > c.budget:
        c.stop = True
        return
    if size > c.best_size:
        c.best = chosen
        c.best_size = size
        if size >= c.cap:
            c.stop = True
            return
    while avail:
        if size + popcount64(avail) <= c.best_size:
            return
        j = ctz64(avail)
        low = (<uint64_t> 1) << j
        avail ^= low
        touched = c.bad[j] & chosen
        new_sat = sat
        rest = touched
        while rest:
            i = ctz64(rest)
            c.counts[i] += 1
            if c.counts[i] == c.k:
                new_sat |= (<uint64_t> 1) << i
            rest &= rest - 1
        cj = popcount64(touched)
        c.counts[j] = cj
        if cj == c.k:
            new_sat |= low
        _rec(c, chosen | low, new_sat, size + 1, _available(c, avail, chosen | low, new_sat))
        rest = touched
        while rest:
            i = ctz64(rest)
            c.counts[i] -= 1
            rest &= rest - 1
        c.counts[j] = 0
        if c.stop:
            return


def branch_max(bad, int k, int root, int cap, long long budget):
    cdef int n = len(bad), i
    if n > 64:
        raise ValueError("branch kernel supports at most 64 candidates")
    cdef Ctx c
    c.bad = <uint64_t *> malloc(max(n, 1) * sizeof(uint64_t))
    c.counts = <int *> malloc(max(n, 1) * sizeof(int))
    for i in range(n):
        c.bad[i] = bad[i]
        c.counts[i] = 0
    c.k = k
    c.cap = cap
    c.budget = budget
    c.nodes = 0
    c.stop = False
    cdef uint64_t root_bit = (<uint64_t> 1) << root
    cdef uint64_t full = (<uint64_t> 0) - 1 if n == 64 else ((<uint64_t> 1) << n) - 1
    cdef uint64_t pool = full & ~(root_bit | (root_bit - 1))
    cdef uint64_t sat = root_bit if k == 0 else 0
    c.best = root_bit
    c.best_size = 1
    with nogil:
        _rec(&c, root_bit, sat, 1, _available(&c, pool, root_bit, sat))
    free(c.bad)
    free(c.counts)
    return int(c.best), c.best_size, int(c.nodes), c.nodes <= c.budget
