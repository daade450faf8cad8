"""Set families over ``[n]`` and the k-almost lambda-Fisher check.

Member sets are stored as integer bit-vectors: element ``j`` of the ground
set ``{1..n}`` is bit ``j - 1``.  Member indices are 0-based positions in the
family, ground elements are 1-based everywhere.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Iterator, Sequence

from .errors import FamilyError, ParameterError


def mask_of(elements: Iterable[int]) -> int:
    mask = 0
    for e in elements:
        mask |= 1 << (e - 1)
    return mask


def elements_of(mask: int) -> tuple[int, ...]:
    """Sorted 1-based elements of a bit-vector."""
    out = []
    j = 1
    while mask:
        if mask & 1:
            out.append(j)
        mask >>= 1
        j += 1
    return tuple(out)


def canonical_key(mask: int) -> tuple[int, tuple[int, ...]]:
    """Sort key for the canonical set order: by size, then lexicographic."""
    return (mask.bit_count(), elements_of(mask))


@dataclass(frozen=True)
class SetFamily:
    """An ordered family of distinct subsets of ``{1..ground_size}``."""

    ground_size: int
    masks: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.ground_size < 1:
            raise FamilyError(f"ground size must be positive, got {self.ground_size}")
        object.__setattr__(self, "masks", tuple(self.masks))
        full = (1 << self.ground_size) - 1
        seen: dict[int, int] = {}
        for i, m in enumerate(self.masks):
            if m < 0 or m & ~full:
                raise FamilyError(f"set {i} has elements outside [1..{self.ground_size}]", (i,))
            if m in seen:
                raise FamilyError(f"duplicate member set at indices {seen[m]} and {i}", (seen[m], i))
            seen[m] = i

    def __len__(self) -> int:
        return len(self.masks)

    def __iter__(self) -> Iterator[tuple[int, ...]]:
        return (elements_of(m) for m in self.masks)

    def member(self, i: int) -> tuple[int, ...]:
        return elements_of(self.masks[i])

    def members(self) -> list[list[int]]:
        return [list(elements_of(m)) for m in self.masks]

    def sizes(self) -> list[int]:
        return [m.bit_count() for m in self.masks]

    def intersection_size(self, i: int, j: int) -> int:
        return (self.masks[i] & self.masks[j]).bit_count()

    def subfamily(self, indices: Iterable[int]) -> "SetFamily":
        return SetFamily(self.ground_size, tuple(self.masks[i] for i in indices))

    def with_ground(self, ground_size: int) -> "SetFamily":
        return SetFamily(ground_size, self.masks)

    def canonical(self) -> "SetFamily":
        """Same family with members sorted into canonical set order."""
        return SetFamily(self.ground_size, tuple(sorted(self.masks, key=canonical_key)))


def build_family(n: int, sets: Sequence[Iterable[int]]) -> SetFamily:
    """Build a :class:`SetFamily` from 1-based element lists.

    Raises
    ------
    FamilyError
        If an element lies outside ``{1..n}`` or two listed sets coincide.
    """
    if n < 1:
        raise FamilyError(f"ground size must be positive, got {n}")
    masks = []
    for i, s in enumerate(sets):
        items = list(s)
        for e in items:
            if not isinstance(e, int) or isinstance(e, bool) or e < 1 or e > n:
                raise FamilyError(f"element {e!r} of set {i} out of range [1..{n}]", (i,))
        masks.append(mask_of(items))
    return SetFamily(n, tuple(masks))


@dataclass(frozen=True)
class AuxiliaryGraph:
    """Graph on family members, edge ``{i, j}`` iff ``|F_i & F_j| != lambda``."""

    vertex_count: int
    edges: frozenset[tuple[int, int]]
    degrees: tuple[int, ...]
    lam: int = 0
    adjacency: tuple[frozenset[int], ...] = field(default=(), compare=False, repr=False)

    def __post_init__(self) -> None:
        if not self.adjacency:
            adj: list[set[int]] = [set() for _ in range(self.vertex_count)]
            for i, j in self.edges:
                adj[i].add(j)
                adj[j].add(i)
            object.__setattr__(self, "adjacency", tuple(frozenset(a) for a in adj))

    @property
    def max_degree(self) -> int:
        return max(self.degrees, default=0)

    def neighbors(self, v: int) -> frozenset[int]:
        return self.adjacency[v]


def build_auxiliary_graph(family: SetFamily, lam: int) -> AuxiliaryGraph:
    m = len(family)
    masks = family.masks
    edges = set()
    degrees = [0] * m
    for i, j in combinations(range(m), 2):
        if (masks[i] & masks[j]).bit_count() != lam:
            edges.add((i, j))
            degrees[i] += 1
            degrees[j] += 1
    return AuxiliaryGraph(m, frozenset(edges), tuple(degrees), lam)


@dataclass(frozen=True)
class VerificationReport:
    valid: bool
    lam: int
    k: int
    violations: tuple[tuple[int, int], ...]
    max_bad_degree: int

    def to_dict(self) -> dict:
        return {
            "valid": self.valid,
            "lambda": self.lam,
            "k": self.k,
            "max_bad_degree": self.max_bad_degree,
            "violations": [list(v) for v in self.violations],
        }


def verify_almost_fisher(family: SetFamily, k: int, lam: int) -> VerificationReport:
    """Check that every member has at most ``k`` intersections of size != ``lam``.

    An invalid family is reported, not raised: ``violations`` lists
    ``(index, bad_count)`` for every member over the limit.
    """
    if k < 0 or lam < 0:
        raise ParameterError("k and lambda must be non-negative")
    graph = build_auxiliary_graph(family, lam)
    violations = tuple((i, d) for i, d in enumerate(graph.degrees) if d > k)
    return VerificationReport(
        valid=not violations,
        lam=lam,
        k=k,
        violations=violations,
        max_bad_degree=graph.max_degree,
    )


def restricted_size(member: Iterable[int], window: Iterable[int], n: int) -> int:
    """Size of ``member`` restricted to ``window``, both subsets of ``[n]``."""
    w = list(window)
    for e in w:
        if e < 1 or e > n:
            raise ParameterError(f"window element {e} out of range [1..{n}]")
    f = list(member)
    for e in f:
        if e < 1 or e > n:
            raise ParameterError(f"set element {e} out of range [1..{n}]")
    return (mask_of(f) & mask_of(w)).bit_count()
