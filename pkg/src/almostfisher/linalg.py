"""Exact integer/rational linear algebra for incidence and intersection matrices.

Everything here runs on Python integers and :class:`fractions.Fraction`;
floating point never enters a rank decision.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, permutations
from math import lcm
from typing import Sequence

from .errors import HypothesisViolation
from .family import SetFamily

Matrix = list[list[int]]


@dataclass(frozen=True)
class IncidenceMatrix:
    rows: int
    cols: int
    entries: tuple[tuple[int, ...], ...]

    def as_lists(self) -> Matrix:
        return [list(r) for r in self.entries]


@dataclass(frozen=True)
class IntersectionMatrix:
    dim: int
    entries: tuple[tuple[int, ...], ...]
    lam: int

    def as_lists(self) -> Matrix:
        return [list(r) for r in self.entries]

    def block(self, indices: Sequence[int]) -> Matrix:
        return [[self.entries[i][j] for j in indices] for i in indices]


@dataclass(frozen=True)
class RankCertificate:
    """Rank plus the rows/columns of a nonsingular pivot submatrix."""

    rank: int
    pivot_rows: tuple[int, ...]
    pivot_cols: tuple[int, ...]


def incidence_matrix(family: SetFamily) -> IncidenceMatrix:
    n, masks = family.ground_size, family.masks
    entries = tuple(tuple((m >> j) & 1 for m in masks) for j in range(n))
    return IncidenceMatrix(n, len(masks), entries)


def intersection_matrix(family: SetFamily, lam: int) -> IntersectionMatrix:
    masks = family.masks
    m = len(masks)
    rows = [[0] * m for _ in range(m)]
    for i in range(m):
        for j in range(i, m):
            v = (masks[i] & masks[j]).bit_count() - lam
            rows[i][j] = rows[j][i] = v
    return IntersectionMatrix(m, tuple(tuple(r) for r in rows), lam)


def _as_int_rows(matrix) -> Matrix:
    if hasattr(matrix, "as_lists"):
        return matrix.as_lists()
    return [[int(x) for x in row] for row in matrix]


def exact_rank(matrix) -> RankCertificate:
    """Rank over the rationals by fraction-free (Bareiss) elimination.

    Rational input is scaled row-wise to integers first.  Every entry met
    during elimination is a minor of the original matrix, so all divisions
    are exact.
    """
    rows = _scaled_rows(matrix)
    nrows = len(rows)
    ncols = len(rows[0]) if rows else 0
    order = list(range(nrows))
    a = [r[:] for r in rows]
    prev = 1
    r = 0
    pivot_cols = []
    for c in range(ncols):
        if r == nrows:
            break
        p = next((i for i in range(r, nrows) if a[i][c] != 0), None)
        if p is None:
            continue
        if p != r:
            a[r], a[p] = a[p], a[r]
            order[r], order[p] = order[p], order[r]
        piv = a[r][c]
        for i in range(r + 1, nrows):
            aic = a[i][c]
            row_i, row_r = a[i], a[r]
            for j in range(c + 1, ncols):
                row_i[j] = (piv * row_i[j] - aic * row_r[j]) // prev
            row_i[c] = 0
        prev = piv
        pivot_cols.append(c)
        r += 1
    return RankCertificate(r, tuple(sorted(order[:r])), tuple(pivot_cols))


def _scaled_rows(matrix) -> Matrix:
    rows = []
    for row in (matrix.as_lists() if hasattr(matrix, "as_lists") else matrix):
        fr = [Fraction(x) for x in row]
        d = lcm(*(f.denominator for f in fr)) if fr else 1
        rows.append([int(f * d) for f in fr])
    return rows


def determinant(matrix) -> int:
    """Exact determinant of a square integer matrix (Bareiss)."""
    a = _as_int_rows(matrix)
    n = len(a)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            p = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if p is None:
                return 0
            a[k], a[p] = a[p], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[k][k] * a[i][j] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def spans_all_ones(matrix) -> bool:
    """True iff the all-ones column lies in the column span of ``matrix``."""
    rows = _scaled_rows(matrix)
    if not rows:
        return True
    augmented = [r + [1] for r in rows]
    return exact_rank(augmented).rank == exact_rank(rows).rank


def transpose(matrix: Matrix) -> Matrix:
    return [list(c) for c in zip(*matrix)]


def gram(matrix: Matrix) -> Matrix:
    """``A^T A`` for an integer matrix ``A``."""
    cols = transpose(matrix)
    return [[sum(x * y for x, y in zip(ci, cj)) for cj in cols] for ci in cols]


@dataclass(frozen=True)
class RankSandwichReport:
    rank_A: int
    rank_M: int
    holds: bool
    spans_all_ones: bool
    equality_condition_consistent: bool

    def to_dict(self) -> dict:
        return {
            "rank_A": self.rank_A,
            "rank_M": self.rank_M,
            "holds": self.holds,
            "spans_all_ones": self.spans_all_ones,
            "equality_condition_consistent": self.equality_condition_consistent,
        }


def check_rank_sandwich(family: SetFamily, lam: int) -> RankSandwichReport:
    """Compare rank(A) and rank(M) for the family's incidence/intersection matrices.

    ``holds`` is ``rank(A) - 1 <= rank(M) <= rank(A) + 1``; a False value
    means a bug, not a property of the input.  The upper bound can only be
    attained when M spans the all-ones vector.
    """
    a = incidence_matrix(family)
    m = intersection_matrix(family, lam)
    ra = exact_rank(a).rank if len(family) else 0
    rm = exact_rank(m).rank if len(family) else 0
    spans = spans_all_ones(m) if len(family) else True
    return RankSandwichReport(
        rank_A=ra,
        rank_M=rm,
        holds=ra - 1 <= rm <= ra + 1,
        spans_all_ones=spans,
        equality_condition_consistent=(rm != ra + 1) or spans,
    )


@dataclass(frozen=True)
class VectorLemmaReport:
    """Outcome of the four {0,1}-vector clauses.

    Clauses that need more vectors than were supplied are ``None``.
    ``c_relation`` is a permutation ``p`` with ``v[p0] + v[p1] == v[p2] + v[p3]``
    when the first four vectors are dependent, else ``None``.
    """

    count: int
    a_holds: bool | None
    b_holds: bool | None
    c_dependent: bool | None
    c_relation: tuple[int, int, int, int] | None
    c_holds: bool | None
    d_basis: tuple[int, ...] | None
    d_holds: bool | None

    @property
    def all_hold(self) -> bool:
        return all(x is not False for x in (self.a_holds, self.b_holds, self.c_holds, self.d_holds))


def _rank_of_vectors(vectors: Sequence[Sequence]) -> int:
    return exact_rank([list(v) for v in vectors]).rank


def check_vector_lemma(vectors: Sequence[Sequence[int]], witness: Sequence, lam) -> VectorLemmaReport:
    """Check the {0,1}-vector lemma clauses on up to five vectors.

    Hypothesis: the vectors are distinct, non-zero and in ``{0,1}^n``, and
    ``witness . v_i == lam`` for every ``i`` with ``lam != 0`` (rational).

    Clauses: (a) any three are independent; (b) ``v1 - v2`` and ``v1 - v3``
    are independent; (c) if the first four are dependent, some relabelling
    gives ``v1 + v2 == v3 + v4`` (the lexicographically least permutation is
    returned); (d) with five vectors, four of them are independent.
    """
    vecs = [tuple(int(x) for x in v) for v in vectors]
    lam = Fraction(lam)
    w = [Fraction(x) for x in witness]
    if lam == 0:
        raise HypothesisViolation("lambda must be non-zero")
    if not 1 <= len(vecs) <= 5:
        raise HypothesisViolation("between one and five vectors are required")
    n = len(w)
    for i, v in enumerate(vecs):
        if len(v) != n:
            raise HypothesisViolation(f"vector {i} has length {len(v)}, witness has {n}")
        if any(x not in (0, 1) for x in v):
            raise HypothesisViolation(f"vector {i} is not a {{0,1}}-vector")
        if not any(v):
            raise HypothesisViolation(f"vector {i} is zero")
        if sum(wi * x for wi, x in zip(w, v)) != lam:
            raise HypothesisViolation(f"witness . v{i + 1} != lambda")
    for i, j in combinations(range(len(vecs)), 2):
        if vecs[i] == vecs[j]:
            raise HypothesisViolation(f"vectors {i + 1} and {j + 1} coincide")

    count = len(vecs)
    a_holds = b_holds = c_dep = c_holds = d_holds = None
    c_rel = d_basis = None
    if count >= 3:
        a_holds = all(_rank_of_vectors([vecs[i] for i in t]) == 3 for t in combinations(range(count), 3))
        v1, v2, v3 = vecs[:3]
        b_holds = _rank_of_vectors([
            [x - y for x, y in zip(v1, v2)],
            [x - y for x, y in zip(v1, v3)],
        ]) == 2
    if count >= 4:
        c_dep = _rank_of_vectors(vecs[:4]) < 4
        if c_dep:
            for p in permutations(range(4)):
                lhs = [x + y for x, y in zip(vecs[p[0]], vecs[p[1]])]
                rhs = [x + y for x, y in zip(vecs[p[2]], vecs[p[3]])]
                if lhs == rhs:
                    c_rel = p
                    break
            c_holds = c_rel is not None
        else:
            c_holds = True
    if count == 5:
        for t in combinations(range(5), 4):
            if _rank_of_vectors([vecs[i] for i in t]) == 4:
                d_basis = t
                break
        d_holds = d_basis is not None
    return VectorLemmaReport(count, a_holds, b_holds, c_dep, c_rel, c_holds, d_basis, d_holds)
