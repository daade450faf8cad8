"""Exact values of f(n, k, lambda) at desk scale, with witnesses.

Candidates are all subsets of ``[n]`` (the empty set included) in canonical
order: by size, then lexicographically.  A family is a bit-vector over
candidate indices, and ties between maximum families go to the
lexicographically least one in that order.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from itertools import permutations, product
from typing import Iterator

from .bounds import bound_trivial
from .errors import BudgetExhausted, ParameterError
from .family import SetFamily, build_auxiliary_graph, canonical_key, verify_almost_fisher
from .kernels import get_backend
from .linalg import determinant, exact_rank, intersection_matrix

ROOT_REDUCTION = "least member fixed to {1..s} for s = 0..n (ground-permutation canonical root)"
BRUTE_MAX_N = 4
BRANCH_MAX_N = 6


@dataclass(frozen=True)
class SearchResult:
    n: int
    k: int
    lam: int
    max_size: int
    witness: SetFamily
    method: str
    nodes_explored: int
    exhaustive_certificate: bool
    reduction: str
    witness_id: int

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "k": self.k,
            "lambda": self.lam,
            "max_size": self.max_size,
            "witness": self.witness.members(),
            "method": self.method,
            "nodes_explored": self.nodes_explored,
            "exhaustive_certificate": self.exhaustive_certificate,
            "reduction": self.reduction,
            "witness_id": format(self.witness_id, "x"),
        }


def candidate_sets(n: int) -> list[int]:
    """All subsets of ``[n]`` as bit-vectors in canonical order."""
    return sorted(range(1 << n), key=canonical_key)


def _witness(n: int, cands: list[int], chosen: int) -> SetFamily:
    return SetFamily(n, tuple(c for i, c in enumerate(cands) if chosen >> i & 1))


def _check_params(n: int, k: int, lam: int, cap: int) -> None:
    if n < 1 or n > cap:
        raise ParameterError(f"n must lie in [1..{cap}], got {n}")
    if k < 0 or lam < 0:
        raise ParameterError("k and lambda must be non-negative")


def brute_force_max_family(n: int, k: int, lam: int, backend: str | None = None) -> SearchResult:
    """Scan every subfamily of ``2^[n]`` (``n <= 4``)."""
    _check_params(n, k, lam, BRUTE_MAX_N)
    kern = get_backend(backend)
    cands = candidate_sets(n)
    bad = kern.bad_masks(cands, lam)
    best, size, scanned = kern.brute_force_max(bad, k)
    return SearchResult(n, k, lam, size, _witness(n, cands, best), "exhaustive", scanned, True, "none", best)


def _run_branch(args):
    bad, k, root, cap, budget, backend = args
    return get_backend(backend).branch_max(bad, k, root, cap, budget)


def branch_and_bound_max_family(n: int, k: int, lam: int, budget: int | None = None,
                                workers: int = 1, backend: str | None = None) -> SearchResult:
    """Depth-first branch and bound over canonical candidates (``n <= 6``).

    The search splits into ``n + 1`` independent root branches, one per
    possible least member ``{1..s}``; every family is equivalent under a
    ground permutation to one in some branch.  ``budget`` caps the total
    node count (shared evenly between branches); if any branch runs out the
    best family found is returned with ``exhaustive_certificate`` false.
    With ``workers > 1`` branches run in separate processes; the merge
    (largest size, then lexicographically least) makes the result
    independent of scheduling.
    """
    _check_params(n, k, lam, BRANCH_MAX_N)
    if workers < 1:
        raise ParameterError("workers must be positive")
    if budget is not None and budget < 1:
        raise ParameterError("budget must be positive")
    cands = candidate_sets(n)
    index = {m: i for i, m in enumerate(cands)}
    bad = get_backend(backend).bad_masks(cands, lam)
    cap = bound_trivial(n, k, lam).floor_value
    roots = [index[(1 << s) - 1] for s in range(n + 1)]
    per_branch = -(-budget // len(roots)) if budget is not None else 1 << 62
    jobs = [(bad, k, r, cap, per_branch, backend) for r in roots]
    if workers == 1:
        results = [_run_branch(j) for j in jobs]
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_run_branch, jobs))
    best, best_size, nodes, complete = 0, 0, 0, True
    for mask, size, used, done in results:
        nodes += used
        complete = complete and done
        diff = mask ^ best
        if size > best_size or (size == best_size and diff & -diff & mask):
            best, best_size = mask, size
    return SearchResult(n, k, lam, best_size, _witness(n, cands, best), "branch_and_bound",
                        nodes, complete, ROOT_REDUCTION, best)


# Rank-3 five-cycles ---------------------------------------------------------

_CYCLE_BAD = {(0, 1), (1, 2), (2, 3), (3, 4), (0, 4)}


def _atom_counts(masks: tuple[int, ...]) -> dict[int, int]:
    counts: dict[int, int] = {}
    union = 0
    for m in masks:
        union |= m
    x = 0
    while union >> x:
        if union >> x & 1:
            pattern = sum(1 << t for t, m in enumerate(masks) if m >> x & 1)
            counts[pattern] = counts.get(pattern, 0) + 1
        x += 1
    return counts


def family_shape_key(family: SetFamily) -> tuple[int, ...]:
    """Invariant of a family under member reordering and ground relabelling.

    The least, over member orderings, of the Venn-region sizes (elements in
    no member are ignored).  Two families have equal keys iff they are
    isomorphic.
    """
    m = len(family)
    counts = _atom_counts(family.masks)
    best = None
    for perm in permutations(range(m)):
        mapped = [0] * (1 << m)
        for pattern, c in counts.items():
            q = 0
            for new, old in enumerate(perm):
                if pattern >> old & 1:
                    q |= 1 << new
            mapped[q] = c
        key = tuple(mapped[1:])
        if best is None or key < best:
            best = key
    return best


def _family_from_atoms(atoms: dict[int, int], ground: int) -> SetFamily:
    masks = [0] * 5
    x = 0
    for pattern in sorted(atoms):
        for _ in range(atoms[pattern]):
            for t in range(5):
                if pattern >> t & 1:
                    masks[t] |= 1 << x
            x += 1
    return SetFamily(ground, tuple(masks))


def _splits(atoms: dict[int, int], free: int) -> Iterator[tuple[dict[int, int], int]]:
    """Every way to pick the next member from existing regions plus new elements."""
    keys = sorted(atoms)
    ranges = [range(atoms[p] + 1) for p in keys]
    for take in product(*ranges):
        for new in range(free + 1):
            yield dict(zip(keys, take)), new


def search_rank3_c5(n_max: int, lam: int, budget: int | None = 10_000_000,
                    sizes_above_lambda: bool = True) -> list[SetFamily]:
    """All rank-3 five-cycles on at most ``n_max`` ground elements, up to isomorphism.

    Members are built one at a time as counts over the Venn regions of the
    previous members, so ground relabellings are never enumerated.  The
    cycle is ``F1-F2-F3-F4-F5-F1``; each new member must meet the earlier
    ones correctly, the first four must have a singular intersection
    matrix, and the full matrix must have rank 3.  Each result lists its
    members in cycle order on ground ``[n_max]``.

    Raises
    ------
    BudgetExhausted
        After ``budget`` candidate members; ``partial`` holds the families
        found so far.
    """
    if not 1 <= n_max <= 10:
        raise ParameterError(f"n_max must lie in [1..10], got {n_max}")
    if lam < 0:
        raise ParameterError("lambda must be non-negative")
    limit = budget if budget is not None else 1 << 62
    found: dict[tuple[int, ...], SetFamily] = {}
    nodes = 0
    min_size = lam + 1 if sizes_above_lambda else 0

    def inter(atoms: dict[int, int], i: int, j: int) -> int:
        both = (1 << i) | (1 << j)
        return sum(c for p, c in atoms.items() if p & both == both)

    def extend(atoms: dict[int, int], used: int, t: int) -> None:
        nonlocal nodes
        for take, new in _splits(atoms, n_max - used):
            nodes += 1
            if nodes > limit:
                raise BudgetExhausted(f"budget of {limit} candidate members exhausted",
                                      partial=list(found.values()))
            size = sum(take.values()) + new
            if size < min_size:
                continue
            ok = True
            for i in range(t):
                both = 1 << i
                meet = sum(c for p, c in take.items() if p & both)
                should_be_bad = (min(i, t), max(i, t)) in _CYCLE_BAD
                if (meet != lam) != should_be_bad:
                    ok = False
                    break
                mi = sum(c for p, c in atoms.items() if p & both)
                if meet == mi == size:
                    ok = False
                    break
            if not ok:
                continue
            bit = 1 << t
            nxt: dict[int, int] = {}
            for p, c in atoms.items():
                if take[p]:
                    nxt[p | bit] = take[p]
                if c - take[p]:
                    nxt[p] = c - take[p]
            if new:
                nxt[bit] = new
            if t >= 3:
                gram = [[inter(nxt, i, j) - lam if i != j else
                         sum(c for p, c in nxt.items() if p >> i & 1) - lam
                         for j in range(t + 1)] for i in range(t + 1)]
                if t == 3 and determinant(gram) != 0:
                    continue
                if t == 4:
                    if exact_rank(gram).rank != 3:
                        continue
                    fam = _family_from_atoms(nxt, n_max)
                    key = family_shape_key(fam)
                    if key not in found:
                        found[key] = fam
                    continue
            extend(nxt, used + new, t + 1)

    extend({}, 0, 0)
    return [found[key] for key in sorted(found)]


def is_c5_rank3(family: SetFamily, lam: int) -> bool:
    graph = build_auxiliary_graph(family, lam)
    if len(family) != 5 or len(graph.edges) != 5 or any(d != 2 for d in graph.degrees):
        return False
    return exact_rank(intersection_matrix(family, lam)).rank == 3


def verify_result(result: SearchResult) -> bool:
    """The witness is valid and has the claimed size."""
    return (len(result.witness) == result.max_size
            and verify_almost_fisher(result.witness, result.k, result.lam).valid)
