"""Pure-Python search kernels; the reference the compiled kernels must match.

Candidate sets are indexed ``0..N-1`` and families are bit-vectors over
those indices.  ``bad[i]`` is the set of candidates ``j != i`` whose
intersection with candidate ``i`` is not ``lambda``.
"""

from __future__ import annotations

from typing import Sequence


def bad_masks(masks: Sequence[int], lam: int) -> list[int]:
    n = len(masks)
    bad = [0] * n
    for i in range(n):
        mi = masks[i]
        for j in range(i + 1, n):
            if (mi & masks[j]).bit_count() != lam:
                bad[i] |= 1 << j
                bad[j] |= 1 << i
    return bad


def _lex_less(a: int, b: int) -> bool:
    diff = a ^ b
    return bool(diff & -diff & a)


def brute_force_max(bad: Sequence[int], k: int) -> tuple[int, int, int]:
    """Scan every candidate subset; return ``(best, size, scanned)``.

    Among maximum families the lexicographically least (as a sorted index
    list) wins.
    """
    n = len(bad)
    best, best_size = 0, 0
    for s in range(1 << n):
        size = s.bit_count()
        if size < best_size:
            continue
        rest = s
        ok = True
        while rest:
            low = rest & -rest
            i = low.bit_length() - 1
            if (bad[i] & s).bit_count() > k:
                ok = False
                break
            rest ^= low
        if not ok:
            continue
        if size > best_size or _lex_less(s, best):
            best, best_size = s, size
    return best, best_size, 1 << n


class _Stop(Exception):
    pass


def branch_max(bad: Sequence[int], k: int, root: int, cap: int, budget: int) -> tuple[int, int, int, bool]:
    """Largest valid family whose least candidate index is ``root``.

    Include-first depth-first search over candidates ``> root``, keeping
    per-member bad counts and the set of saturated members (count ``== k``).
    A candidate stays available while it has no bad saturated partner and at
    most ``k`` bad chosen partners.  Returns ``(best, size, nodes, completed)``;
    the first family found at each new size is the lexicographically least.
    Stops early once ``cap`` is reached and gives up after ``budget`` nodes.
    """
    n = len(bad)
    counts = [0] * n
    best = [1 << root, 1]
    nodes = 0

    def available(pool: int, chosen: int, sat: int) -> int:
        out = 0
        rest = pool
        while rest:
            low = rest & -rest
            j = low.bit_length() - 1
            bj = bad[j]
            if not bj & sat and (bj & chosen).bit_count() <= k:
                out |= low
            rest ^= low
        return out

    def rec(chosen: int, sat: int, size: int, avail: int) -> None:
        nonlocal nodes
        nodes += 1
        if nodes > budget:
            raise _Stop
        if size > best[1]:
            best[0], best[1] = chosen, size
            if size >= cap:
                raise _Stop
        while avail:
            if size + avail.bit_count() <= best[1]:
                return
            low = avail & -avail
            j = low.bit_length() - 1
            avail ^= low
            bj = bad[j]
            touched = bj & chosen
            new_sat = sat
            rest = touched
            while rest:
                lb = rest & -rest
                i = lb.bit_length() - 1
                counts[i] += 1
                if counts[i] == k:
                    new_sat |= lb
                rest ^= lb
            cj = touched.bit_count()
            counts[j] = cj
            if cj == k:
                new_sat |= low
            new_chosen = chosen | low
            rec(new_chosen, new_sat, size + 1, available(avail, new_chosen, new_sat))
            rest = touched
            while rest:
                lb = rest & -rest
                counts[lb.bit_length() - 1] -= 1
                rest ^= lb
            counts[j] = 0

    root_bit = 1 << root
    sat = root_bit if k == 0 else 0
    pool = ((1 << n) - 1) & ~((root_bit << 1) - 1)
    completed = True
    try:
        rec(root_bit, sat, 1, available(pool, root_bit, sat))
    except _Stop:
        completed = nodes <= budget
    return best[0], best[1], nodes, completed
