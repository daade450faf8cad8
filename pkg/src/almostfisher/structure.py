"""Component structure of almost-Fisher families.

Components of the auxiliary graph are classified by the exact rank of their
block of the intersection matrix; the low-rank ones (rank-1 single edges,
rank-2 four-cycles, rank-3 five-cycles) carry rigid set structure that the
functions here recover and check.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, permutations
from math import comb, lcm
from typing import Iterable, Sequence

from .errors import HypothesisViolation, ParameterError, StructureError
from .family import AuxiliaryGraph, SetFamily, build_auxiliary_graph, elements_of, mask_of
from .linalg import exact_rank, intersection_matrix

RANK1_P1 = "rank1_P1"
RANK2_C4 = "rank2_C4"
RANK3_C5_TYPE_I = "rank3_C5_typeI"
RANK3_C5_TYPE_II = "rank3_C5_typeII"
OTHER = "other"

TYPE_I_PARAMS = frozenset({(1, 1, 3), (2, 2, 2)})


@dataclass(frozen=True)
class C5Decomposition:
    """Labelling ``F1..F5`` of a five-cycle and the disjoint parts ``X0..X4``.

    ``labelling[t]`` is the family index playing the role of ``F_{t+1}``;
    ``parts`` are bit-vectors.  Under the labelling
    ``F1 = X0|X1|X2``, ``F2 = X0|X3|X4``, ``F3 = X0|X2|X3``, ``F4 = X0|X1|X4``.
    """

    labelling: tuple[int, int, int, int, int]
    parts: tuple[int, int, int, int, int]
    c5_type: str
    typeI_params: tuple[int, int, int] | None = None

    @property
    def typeI_admissible(self) -> bool | None:
        if self.typeI_params is None:
            return None
        return self.typeI_params in TYPE_I_PARAMS

    def part(self, i: int) -> tuple[int, ...]:
        return elements_of(self.parts[i])

    def to_dict(self) -> dict:
        return {
            "labelling": list(self.labelling),
            "X": [list(self.part(i)) for i in range(5)],
            "type": self.c5_type,
            "typeI_params": list(self.typeI_params) if self.typeI_params else None,
            "typeI_admissible": self.typeI_admissible,
        }


@dataclass(frozen=True)
class ComponentReport:
    """One connected component of the auxiliary graph.

    For paths and cycles ``members`` is listed in traversal order.
    """

    members: tuple[int, ...]
    shape: str
    rank: int
    classification: str
    c5: C5Decomposition | None = None

    @property
    def size(self) -> int:
        return len(self.members)

    def to_dict(self) -> dict:
        d = {
            "members": list(self.members),
            "shape": self.shape,
            "size": self.size,
            "rank": self.rank,
            "classification": self.classification,
        }
        if self.c5 is not None:
            d["c5"] = self.c5.to_dict()
        return d


def _components(graph: AuxiliaryGraph) -> list[list[int]]:
    seen = [False] * graph.vertex_count
    out = []
    for s in range(graph.vertex_count):
        if seen[s]:
            continue
        comp = []
        queue = deque([s])
        seen[s] = True
        while queue:
            v = queue.popleft()
            comp.append(v)
            for u in sorted(graph.neighbors(v)):
                if not seen[u]:
                    seen[u] = True
                    queue.append(u)
        out.append(sorted(comp))
    return out


def _shape_and_order(graph: AuxiliaryGraph, comp: list[int]) -> tuple[str, tuple[int, ...]]:
    if len(comp) == 1:
        return "isolated", tuple(comp)
    degs = [len(graph.neighbors(v)) for v in comp]
    if max(degs) > 2:
        return "other", tuple(comp)
    edges = sum(degs) // 2
    if edges == len(comp) - 1:
        start = min(v for v, d in zip(comp, degs) if d == 1)
    else:
        start = comp[0]
    order = [start]
    prev, cur = None, start
    while True:
        nxt = sorted(u for u in graph.neighbors(cur) if u != prev and u not in order)
        if not nxt:
            break
        prev, cur = cur, nxt[0]
        order.append(cur)
    shape = "path" if edges == len(comp) - 1 else "cycle"
    return shape, tuple(order)


def _find_c5(masks: Sequence[int], indices: Sequence[int], lam: int) -> C5Decomposition | None:
    """Brute-force the labelling of a five-cycle into the ``X0..X4`` form.

    Labellings are tried in lexicographic order of ``indices`` positions;
    the first whose parts are disjoint and whose cycle order matches the
    type (``|X0| == lam`` or ``< lam``) is returned.
    """

    def bad(a: int, b: int) -> bool:
        return (a & b).bit_count() != lam

    for p in permutations(range(5)):
        f1, f2, f3, f4, f5 = (masks[i] for i in p)
        x0 = f1 & f2
        if f3 & f4 != x0:
            continue
        x1 = (f1 & f4) & ~x0
        x2 = (f1 & f3) & ~x0
        x3 = (f2 & f3) & ~x0
        x4 = (f2 & f4) & ~x0
        if x1 & x2 or x1 & x3 or x1 & x4 or x2 & x3 or x2 & x4 or x3 & x4:
            continue
        if (f1 != x0 | x1 | x2 or f2 != x0 | x3 | x4
                or f3 != x0 | x2 | x3 or f4 != x0 | x1 | x4):
            continue
        core = x0.bit_count()
        if core == lam:
            cycle = ((f1, f3), (f3, f2), (f2, f4), (f4, f5), (f5, f1))
            kind = "I"
        elif core < lam:
            cycle = ((f1, f2), (f2, f3), (f3, f4), (f4, f5), (f5, f1))
            kind = "II"
        else:
            continue
        if not all(bad(a, b) for a, b in cycle):
            continue
        params = None
        if kind == "I":
            params = (x2.bit_count(), x4.bit_count(), f5.bit_count() - lam)
        return C5Decomposition(
            labelling=tuple(indices[i] for i in p),
            parts=(x0, x1, x2, x3, x4),
            c5_type=kind,
            typeI_params=params,
        )
    return None


def decompose_components(family: SetFamily, lam: int) -> list[ComponentReport]:
    """Split the family along auxiliary-graph components and classify each.

    The block rank is always computed exactly; a five-cycle of rank 3 is
    typed I/II only when its ``X0..X4`` decomposition exists, and is
    reported as ``other`` otherwise.
    """
    graph = build_auxiliary_graph(family, lam)
    mat = intersection_matrix(family, lam)
    reports = []
    for comp in _components(graph):
        shape, order = _shape_and_order(graph, comp)
        rank = exact_rank(mat.block(order)).rank
        s = len(order)
        cls = OTHER
        c5 = None
        if shape == "path" and s == 2 and rank == 1:
            cls = RANK1_P1
        elif shape == "cycle" and s == 4 and rank == 2:
            cls = RANK2_C4
        elif shape == "cycle" and s == 5 and rank == 3:
            c5 = _find_c5([family.masks[i] for i in order], order, lam)
            if c5 is not None:
                cls = RANK3_C5_TYPE_I if c5.c5_type == "I" else RANK3_C5_TYPE_II
        reports.append(ComponentReport(order, shape, rank, cls, c5))
    return reports


def check_component_rank_bounds(report: ComponentReport, family: SetFamily, lam: int) -> bool:
    """Lower bounds on component ranks.

    An ``s``-vertex path has rank ``>= s - 1``, an ``s``-cycle rank
    ``>= s - 2``, and a triangle has rank ``>= 2`` whenever some set outside
    it meets all three members in exactly ``lam`` elements.
    """
    if report.shape == "isolated":
        s = 1
        return report.rank >= s - 1
    if report.shape not in ("path", "cycle"):
        raise ParameterError(f"rank bounds apply to paths and cycles, not {report.shape!r}")
    s = report.size
    if report.shape == "path":
        return report.rank >= s - 1
    ok = report.rank >= s - 2
    if s == 3:
        inside = set(report.members)
        masks = family.masks
        witness = any(
            all((masks[o] & masks[i]).bit_count() == lam for i in report.members)
            for o in range(len(masks)) if o not in inside
        )
        if witness:
            ok = ok and report.rank >= 2
    return ok


@dataclass(frozen=True)
class LowRankCounts:
    p: int
    q: int
    r: int


def count_low_rank_structures(family: SetFamily, lam: int) -> LowRankCounts:
    """Numbers of rank-1 single edges, rank-2 four-cycles and rank-3 five-cycles."""
    graph = build_auxiliary_graph(family, lam)
    if graph.max_degree > 2:
        raise ParameterError(f"auxiliary graph has maximum degree {graph.max_degree} > 2")
    p = q = r = 0
    for rep in decompose_components(family, lam):
        if rep.classification == RANK1_P1:
            p += 1
        elif rep.classification == RANK2_C4:
            q += 1
        elif rep.shape == "cycle" and rep.size == 5 and rep.rank == 3:
            r += 1
    return LowRankCounts(p, q, r)


@dataclass(frozen=True)
class CoreDecomposition:
    """Common core ``V``, support ``U`` and remainder ``W`` of rank-1 edges.

    ``V``, ``U``, ``W`` are bit-vectors partitioning ``[ground_size]`` with
    ``|V| = nu``, ``|U| = 4 mu`` and ``mu = lam - nu``.
    """

    ground_size: int
    lam: int
    V: int
    U: int
    W: int
    pairs: tuple[tuple[int, int], ...] = ()

    def __post_init__(self) -> None:
        full = (1 << self.ground_size) - 1
        if self.V & self.U or self.V & self.W or self.U & self.W or (self.V | self.U | self.W) != full:
            raise StructureError("V, U, W do not partition the ground set")
        if self.mu < 0 or self.U.bit_count() != 4 * self.mu:
            raise StructureError(f"|U| = {self.U.bit_count()} is not 4*mu = {4 * self.mu}")

    @classmethod
    def from_sets(cls, ground_size: int, lam: int, V: Iterable[int], U: Iterable[int]) -> "CoreDecomposition":
        v, u = mask_of(V), mask_of(U)
        full = (1 << ground_size) - 1
        return cls(ground_size, lam, v, u, full & ~(v | u))

    @property
    def nu(self) -> int:
        return self.V.bit_count()

    @property
    def mu(self) -> int:
        return self.lam - self.nu

    @property
    def gamma(self) -> int:
        return self.W.bit_count()

    def to_dict(self) -> dict:
        return {
            "V": list(elements_of(self.V)),
            "U": list(elements_of(self.U)),
            "W": list(elements_of(self.W)),
            "mu": self.mu,
            "nu": self.nu,
            "gamma": self.gamma,
            "pairs": [list(p) for p in self.pairs],
        }


def rank1_p1_structure(family: SetFamily, lam: int) -> CoreDecomposition:
    """Recover ``V``, ``U``, ``W`` shared by all rank-1 single-edge components.

    Requires at least two rank-1 edges and every member larger than ``lam``.
    Each rank-1 pair is checked for the determinant condition
    ``(|F1|-lam)(|F2|-lam) == (|F1 & F2|-lam)^2``, for meeting exactly in
    ``V``, and for splitting ``U`` into halves of size ``2 mu``.
    """
    if any(s <= lam for s in family.sizes()):
        raise ParameterError("every member set must have more than lambda elements")
    pairs = [r.members for r in decompose_components(family, lam) if r.classification == RANK1_P1]
    if len(pairs) < 2:
        raise ParameterError(f"need at least two rank-1 edges, found {len(pairs)}")
    masks = family.masks
    pairs = [tuple(sorted(p)) for p in pairs]
    core_pair = min(pairs, key=lambda p: ((masks[p[0]] & masks[p[1]]).bit_count(), p))
    a, b = masks[core_pair[0]], masks[core_pair[1]]
    V = a & b
    U = (a | b) & ~V
    nu = V.bit_count()
    mu = lam - nu
    for i, j in pairs:
        fi, fj = masks[i], masks[j]
        lhs = (fi.bit_count() - lam) * (fj.bit_count() - lam)
        rhs = ((fi & fj).bit_count() - lam) ** 2
        if lhs != rhs:
            raise StructureError(f"pair ({i}, {j}) fails the rank-1 determinant condition")
        if fi & fj != V:
            raise StructureError(f"pair ({i}, {j}) does not meet exactly in the common core")
        if (fi | fj) & ~V != U:
            raise StructureError(f"pair ({i}, {j}) does not cover the common support")
        if (fi & U).bit_count() != 2 * mu or (fj & U).bit_count() != 2 * mu:
            raise StructureError(f"pair ({i}, {j}) does not split the support evenly")
    if U.bit_count() != 4 * mu:
        raise StructureError(f"support has {U.bit_count()} elements, expected 4*mu = {4 * mu}")
    full = (1 << family.ground_size) - 1
    return CoreDecomposition(family.ground_size, lam, V, U, full & ~(V | U), tuple(pairs))


def one_per_edge_subfamily(family: SetFamily, lam: int) -> SetFamily:
    """Keep the lower-indexed set of every edge plus all isolated sets.

    Only meaningful for 1-almost families, where the result is lam-Fisher.
    """
    graph = build_auxiliary_graph(family, lam)
    if graph.max_degree > 1:
        raise ParameterError("one-per-edge subfamily needs a 1-almost family")
    drop = {max(e) for e in graph.edges}
    return family.subfamily(i for i in range(len(family)) if i not in drop)


@dataclass(frozen=True)
class DifferenceIdentity:
    lhs: int
    rhs: int
    holds: bool


def symmetric_difference_identity(F: Iterable[int], F2: Iterable[int],
                                  decomposition: CoreDecomposition, lam: int) -> DifferenceIdentity:
    """Evaluate ``|F ^ F'|_U`` against ``2mu + 2|~F & ~F'|_V + 2|F & F'|_W``."""
    n = decomposition.ground_size
    a, b = mask_of(F), mask_of(F2)
    full = (1 << n) - 1
    if (a | b) & ~full:
        raise ParameterError(f"sets must lie in [1..{n}]")
    if (a & b).bit_count() != lam:
        raise HypothesisViolation(f"|F & F'| = {(a & b).bit_count()} != lambda = {lam}")
    d = decomposition
    lhs = ((a ^ b) & d.U).bit_count()
    rhs = 2 * d.mu + 2 * (~a & ~b & d.V).bit_count() + 2 * (a & b & d.W).bit_count()
    return DifferenceIdentity(lhs, rhs, lhs == rhs)


@dataclass(frozen=True)
class DyadicLevel:
    level: int
    p: int
    q: int
    r: int
    s: int
    p_bound: bool
    r_bound: bool
    q_bound: bool
    s_bound: bool

    @property
    def holds(self) -> bool:
        return self.p_bound and self.r_bound and self.q_bound and self.s_bound


@dataclass(frozen=True)
class DyadicDiagnostics:
    levels: tuple[DyadicLevel, ...]

    @property
    def inequalities_hold(self) -> bool:
        return all(lv.holds for lv in self.levels)

    @property
    def all_zero(self) -> bool:
        return all(lv.p == lv.q == lv.r == lv.s == 0 for lv in self.levels)

    def to_dict(self) -> dict:
        return {
            "inequalities_hold": self.inequalities_hold,
            "levels": [
                {
                    "i": lv.level, "p": lv.p, "q": lv.q, "r": lv.r, "s": lv.s,
                    "p_bound": lv.p_bound, "r_bound": lv.r_bound,
                    "q_bound": lv.q_bound, "s_bound": lv.s_bound,
                }
                for lv in self.levels
            ],
        }


def dyadic_diagnostics(g_subfamily: SetFamily, decomposition: CoreDecomposition, lam: int) -> DyadicDiagnostics:
    """Count pairs by dyadic scale of their uncovered core and shared remainder.

    At level ``i``, ``p`` counts pairs missing between ``2^i`` and
    ``2^(i+1) - 1`` elements of ``V`` together, ``r`` the sets involved; ``q``
    and ``s`` do the same for common elements in ``W``.  Each level reports
    ``p <= mu r / 2^(i+1)``, ``r 2^i <= 4 mu sqrt(2 nu)``,
    ``q <= mu s / 2^(i+1)`` and ``s 2^i <= 4 mu sqrt(2 gamma)``.
    """
    d = decomposition
    if g_subfamily.ground_size != d.ground_size:
        raise HypothesisViolation("subfamily and decomposition live on different ground sets")
    masks = g_subfamily.masks
    for i, j in combinations(range(len(masks)), 2):
        if (masks[i] & masks[j]).bit_count() != lam:
            raise HypothesisViolation(f"subfamily is not lambda-Fisher: sets {i} and {j}")
    top = max(d.nu, d.gamma)
    nlev = (top - 1).bit_length() + 1 if top >= 1 else 1
    p = [0] * nlev
    q = [0] * nlev
    rsets: list[set[int]] = [set() for _ in range(nlev)]
    ssets: list[set[int]] = [set() for _ in range(nlev)]
    for i, j in combinations(range(len(masks)), 2):
        a, b = masks[i], masks[j]
        missed = (~a & ~b & d.V).bit_count()
        shared = (a & b & d.W).bit_count()
        if missed:
            lv = missed.bit_length() - 1
            p[lv] += 1
            rsets[lv].update((i, j))
        if shared:
            lv = shared.bit_length() - 1
            q[lv] += 1
            ssets[lv].update((i, j))
    mu = d.mu
    levels = []
    for i in range(nlev):
        r, s = len(rsets[i]), len(ssets[i])
        levels.append(DyadicLevel(
            level=i, p=p[i], q=q[i], r=r, s=s,
            p_bound=p[i] * 2 ** (i + 1) <= mu * r,
            r_bound=(r * 2 ** i) ** 2 <= 32 * mu * mu * d.nu,
            q_bound=q[i] * 2 ** (i + 1) <= mu * s,
            s_bound=(s * 2 ** i) ** 2 <= 32 * mu * mu * d.gamma,
        ))
    return DyadicDiagnostics(tuple(levels))


def _nested_ok(masks: Sequence[int]) -> bool:
    for a, b in permutations(masks, 2):
        if a & b == a and a != b and (b & ~a).bit_count() != 1:
            return False
    return True


def classify_c5(five_sets: SetFamily, lam: int) -> C5Decomposition:
    """Find the ``X0..X4`` decomposition of a rank-3 five-cycle and its type.

    Type I has ``|X0| == lam``; its ``(x2, x4, f)`` with ``f = |F5| - lam``
    must be ``(1, 1, 3)`` or ``(2, 2, 2)``.  Type II has ``|X0| < lam``.

    Raises
    ------
    ParameterError
        If the input is not five sets of size above ``lam`` forming a
        five-cycle of rank 3, or has nested members differing in more than
        one element.
    StructureError
        If no labelling yields the decomposition.
    """
    if len(five_sets) != 5:
        raise ParameterError(f"expected exactly 5 sets, got {len(five_sets)}")
    graph = build_auxiliary_graph(five_sets, lam)
    if len(graph.edges) != 5 or any(d != 2 for d in graph.degrees):
        raise ParameterError("auxiliary graph is not a five-cycle")
    if any(s <= lam for s in five_sets.sizes()):
        raise ParameterError("every set must have more than lambda elements")
    rank = exact_rank(intersection_matrix(five_sets, lam)).rank
    if rank != 3:
        raise ParameterError(f"intersection matrix has rank {rank}, not 3")
    if not _nested_ok(five_sets.masks):
        raise ParameterError("nested members must differ by exactly one element")
    dec = _find_c5(five_sets.masks, range(5), lam)
    if dec is None:
        raise StructureError("no labelling gives the five-cycle decomposition")
    return dec


@dataclass(frozen=True)
class PlotkinReport:
    m: int
    n: int
    total_difference: int
    delta: Fraction
    bound: Fraction | None
    applicable: bool
    holds: bool | None

    def to_dict(self) -> dict:
        return {
            "m": self.m,
            "n": self.n,
            "total_difference": self.total_difference,
            "delta": str(self.delta),
            "bound": str(self.bound) if self.bound is not None else None,
            "applicable": self.applicable,
            "holds": self.holds,
        }


def plotkin_check(family: SetFamily) -> PlotkinReport:
    """Average-distance bound: with excess ``delta > 0`` over ``n/2``, ``m <= n/(2 delta) + 1``."""
    m = len(family)
    if m < 2:
        raise ParameterError("need at least two sets")
    n = family.ground_size
    masks = family.masks
    total = 0
    for x in range(n):
        inside = sum((mk >> x) & 1 for mk in masks)
        total += inside * (m - inside)
    delta = Fraction(total, comb(m, 2)) - Fraction(n, 2)
    if delta <= 0:
        return PlotkinReport(m, n, total, delta, None, False, None)
    bound = Fraction(n) / (2 * delta) + 1
    return PlotkinReport(m, n, total, delta, bound, True, m <= bound)


@dataclass(frozen=True)
class Multigraph:
    """Multigraph on vertices ``1..vertex_count``; ``edges`` may repeat."""

    vertex_count: int
    edges: tuple[tuple[int, int], ...]
    degrees: tuple[int, ...] = field(default=(), compare=False)

    def __post_init__(self) -> None:
        norm = []
        deg = [0] * (self.vertex_count + 1)
        for u, v in self.edges:
            if u == v or not (1 <= u <= self.vertex_count and 1 <= v <= self.vertex_count):
                raise ParameterError(f"invalid edge ({u}, {v})")
            norm.append((min(u, v), max(u, v)))
            deg[u] += 1
            deg[v] += 1
        object.__setattr__(self, "edges", tuple(norm))
        object.__setattr__(self, "degrees", tuple(deg))

    def degree(self, v: int) -> int:
        return self.degrees[v]


def heavy_edge_threshold(n: int, k: int) -> Fraction:
    return Fraction(n, k) * (k * k // 4)


def find_heavy_edge(graph: Multigraph, k: int) -> tuple[int, int] | None:
    """First edge (lexicographic) with endpoint degree sum at least ``k + 1``.

    Such an edge always exists once the edge count exceeds
    ``(n/k) * floor(k^2/4)``; below that the result may be ``None``.
    """
    if k < 1:
        raise ParameterError("k must be positive")
    for u, v in sorted(set(graph.edges)):
        if graph.degrees[u] + graph.degrees[v] >= k + 1:
            return (u, v)
    return None


@dataclass(frozen=True)
class SimpleGraph:
    """Simple graph on ``0..vertex_count-1``."""

    vertex_count: int
    edges: frozenset[tuple[int, int]]

    def __post_init__(self) -> None:
        norm = set()
        for u, v in self.edges:
            if u == v or not (0 <= u < self.vertex_count and 0 <= v < self.vertex_count):
                raise ParameterError(f"invalid edge ({u}, {v})")
            norm.add((min(u, v), max(u, v)))
        object.__setattr__(self, "edges", frozenset(norm))

    @property
    def max_degree(self) -> int:
        deg = [0] * self.vertex_count
        for u, v in self.edges:
            deg[u] += 1
            deg[v] += 1
        return max(deg, default=0)


@dataclass(frozen=True)
class Partition:
    parts: tuple[tuple[int, ...], ...]
    targets: tuple[int, ...]
    moves: int

    def to_dict(self) -> dict:
        return {"parts": [list(p) for p in self.parts], "targets": list(self.targets), "moves": self.moves}


def lovasz_partition(graph, targets: Sequence[int]) -> Partition:
    """Partition vertices so part ``i`` induces maximum degree ``<= targets[i]``.

    Local improvement: a vertex with more than ``targets[i]`` neighbours in
    its part ``i`` moves to the first part ``j`` where it has at most
    ``targets[j]`` neighbours.  Each move strictly lowers
    ``sum_i e(G[V_i]) / (targets[i] + 1)``, so the loop terminates.  Needs
    ``sum(targets[i] + 1) >= max_degree + 1``.
    """
    targets = tuple(int(t) for t in targets)
    if not targets or any(t < 0 for t in targets):
        raise ParameterError("targets must be a non-empty list of non-negative integers")
    nv = graph.vertex_count
    adj: list[set[int]] = [set() for _ in range(nv)]
    for u, v in graph.edges:
        adj[u].add(v)
        adj[v].add(u)
    delta = max((len(a) for a in adj), default=0)
    if sum(t + 1 for t in targets) < delta + 1:
        raise ParameterError(f"sum of (target + 1) is below max degree + 1 = {delta + 1}")
    scale = lcm(*(t + 1 for t in targets))
    weight = [scale // (t + 1) for t in targets]
    part = [0] * nv

    def potential() -> int:
        inside = [0] * len(targets)
        for u, v in graph.edges:
            if part[u] == part[v]:
                inside[part[u]] += 1
        return sum(w * e for w, e in zip(weight, inside))

    moves = 0
    current = potential()
    changed = True
    while changed:
        changed = False
        for v in range(nv):
            counts = [0] * len(targets)
            for u in adj[v]:
                counts[part[u]] += 1
            i = part[v]
            if counts[i] <= targets[i]:
                continue
            j = next(j for j in range(len(targets)) if counts[j] <= targets[j])
            part[v] = j
            moves += 1
            changed = True
            new = potential()
            if new >= current:
                raise RuntimeError("partition potential failed to decrease")
            current = new
    parts = tuple(tuple(v for v in range(nv) if part[v] == i) for i in range(len(targets)))
    return Partition(parts, targets, moves)
