"""Explicit families: Hadamard, almost-disjoint, adjoined, k = 3 and sunflowers."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import ParameterError
from .family import SetFamily, canonical_key, mask_of, verify_almost_fisher


@dataclass(frozen=True, eq=False)
class HadamardMatrix:
    """Square ``{+1, -1}`` matrix with ``H H^T = n I``, checked on construction."""

    entries: np.ndarray

    def __post_init__(self) -> None:
        a = np.asarray(self.entries, dtype=np.int64)
        if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] == 0:
            raise ParameterError(f"Hadamard matrix must be square and non-empty, got shape {a.shape}")
        if not np.all((a == 1) | (a == -1)):
            raise ParameterError("Hadamard matrix entries must be +1 or -1")
        n = a.shape[0]
        if not np.array_equal(a @ a.T, n * np.eye(n, dtype=np.int64)):
            raise ParameterError("rows are not pairwise orthogonal")
        a.setflags(write=False)
        object.__setattr__(self, "entries", a)

    @property
    def order(self) -> int:
        return int(self.entries.shape[0])

    def rows(self) -> list[list[int]]:
        return self.entries.tolist()

    def __eq__(self, other) -> bool:
        return isinstance(other, HadamardMatrix) and np.array_equal(self.entries, other.entries)

    def __hash__(self) -> int:
        return hash(self.entries.tobytes())


def hadamard_sylvester(order: int) -> HadamardMatrix:
    """Sylvester matrix of a power-of-two order via ``H_2n = [[H, H], [H, -H]]``."""
    if order < 1 or order & (order - 1):
        raise ParameterError(f"Sylvester order must be a power of two, got {order}")
    h = np.ones((1, 1), dtype=np.int64)
    while h.shape[0] < order:
        h = np.block([[h, h], [h, -h]])
    return HadamardMatrix(h)


def _normalized(h: HadamardMatrix) -> np.ndarray:
    a = h.entries.copy()
    a *= a[:, -1:]
    a *= a[0:1, :]
    return a


def _hadamard_pairs(h: HadamardMatrix) -> list[tuple[int, int]]:
    n = h.order
    if n < 4 or n % 4:
        raise ParameterError(f"Hadamard family needs order >= 4 divisible by 4, got {n}")
    a = _normalized(h)
    full = (1 << n) - 1
    firsts = []
    for j in range(n - 1):
        firsts.append(mask_of(i + 1 for i in range(n) if a[i, j] == 1))
    firsts.sort(key=canonical_key)
    return [(f, full & ~f) for f in firsts]


def hadamard_family(h: HadamardMatrix) -> SetFamily:
    """The ``2n - 2`` sets given by the non-constant columns of ``h`` and their complements.

    ``h`` is normalized so its last column and first row are all ones; each
    remaining column ``j`` gives ``{i : H_ij = 1}``, which always contains 1.
    These are listed in canonical order, each followed by its complement.
    The result is 1-almost ``(n/4)``-Fisher.
    """
    masks = [m for pair in _hadamard_pairs(h) for m in pair]
    return SetFamily(h.order, tuple(masks))


def _regular_graph(n: int, d: int) -> list[tuple[int, int]]:
    # Havel-Hakimi: largest residual degree first, ties to the smaller label.
    residual = {v: d for v in range(1, n + 1)}
    edges = []
    while residual:
        v = min(residual, key=lambda x: (-residual[x], x))
        need = residual.pop(v)
        others = sorted(residual, key=lambda x: (-residual[x], x))[:need]
        if len(others) < need or any(residual[u] == 0 for u in others):
            raise ParameterError(f"no {d}-regular graph on {n} vertices")
        for u in others:
            residual[u] -= 1
            edges.append((min(u, v), max(u, v)))
        residual = {x: r for x, r in residual.items() if r > 0}
    return sorted(edges)


def almost_disjoint_family(n: int, k: int) -> SetFamily:
    """Tight k-almost disjoint family: ``{}``, all singletons and the edges of a graph.

    For even ``k`` the graph is a ``k/2``-regular graph built greedily
    (needs ``4 | kn`` and ``k/2 <= n - 1``); for odd ``k`` it is a disjoint
    union of ``K_{(k-1)/2,(k+1)/2}`` on consecutive blocks ``[1..k]``,
    ``[k+1..2k]``, ... with the smaller side first (needs ``k | n``).  The
    size is ``(n/k) floor(k^2/4) + n + 1``.
    """
    if n < 1 or k < 1:
        raise ParameterError("n and k must be positive")
    if k % 2 == 0:
        if (k * n) % 4 or k // 2 > n - 1:
            raise ParameterError(f"k even needs 4 | kn and k/2 <= n-1, got n={n}, k={k}")
        edges = _regular_graph(n, k // 2)
    else:
        if n % k:
            raise ParameterError(f"k odd needs k | n, got n={n}, k={k}")
        small = (k - 1) // 2
        edges = []
        for start in range(1, n + 1, k):
            left = range(start, start + small)
            right = range(start + small, start + k)
            edges.extend((u, v) for u in left for v in right)
    masks = [0] + [1 << (v - 1) for v in range(1, n + 1)] + [mask_of(e) for e in edges]
    fam = SetFamily(n, tuple(masks))
    if not verify_almost_fisher(fam, k, 0).valid:
        raise RuntimeError("almost-disjoint construction failed its own verification")
    return fam


def adjoined_family(base: SetFamily, extra: int) -> SetFamily:
    """Add ``extra`` new ground elements to every member; intersections all grow by ``extra``."""
    if extra < 1:
        raise ParameterError("extra must be positive")
    n0 = base.ground_size
    add = ((1 << extra) - 1) << n0
    return SetFamily(n0 + extra, tuple(m | add for m in base.masks))


def k3_family(m: int, t: int, hadamard: HadamardMatrix | None = None) -> SetFamily:
    """3-almost ``m``-Fisher family of ``2n - 2`` sets on ``n = 4m + t``.

    Starts from the Hadamard family on ``[4m]`` and adds, for each of the
    first ``t`` set/complement pairs, both sets extended by the new element
    ``4m + i``.
    """
    if m < 1:
        raise ParameterError("m must be positive")
    order = 4 * m
    if not 1 <= t <= order - 1:
        raise ParameterError(f"t must lie in [1..{order - 1}], got {t}")
    if hadamard is None:
        if order & (order - 1):
            raise ParameterError(f"no Hadamard matrix of order {order} available; supply one")
        hadamard = hadamard_sylvester(order)
    elif hadamard.order != order:
        raise ParameterError(f"Hadamard matrix has order {hadamard.order}, need {order}")
    pairs = _hadamard_pairs(hadamard)
    base = [x for pair in pairs for x in pair]
    ext = []
    for i in range(1, t + 1):
        bit = 1 << (order + i - 1)
        a, b = pairs[i - 1]
        ext.extend((a | bit, b | bit))
    return SetFamily(order + t, tuple(base + ext))


def fisher_sunflower(n: int, lam: int) -> SetFamily:
    """Sets ``{1..lam} + {j}`` for ``j > lam``: an exact ``lam``-Fisher family."""
    if n < 1 or lam < 0:
        raise ParameterError("need n >= 1 and lambda >= 0")
    if lam >= n:
        raise ParameterError(f"lambda must be below n, got lambda={lam}, n={n}")
    core = (1 << lam) - 1
    return SetFamily(n, tuple(core | (1 << (j - 1)) for j in range(lam + 1, n + 1)))


def hadamard_from_rows(rows: Sequence[Sequence[int]]) -> HadamardMatrix:
    return HadamardMatrix(np.array(rows, dtype=np.int64))
