"""Exact evaluation of the upper bounds on f(n, k, lambda).

Values are :class:`fractions.Fraction`.  Bounds whose published statement
carries an ``o(.)`` term, or holds only for sufficiently large ``n``, are
flagged ``asymptotic`` and must never be used to prune a search.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import floor, isqrt

from .errors import ParameterError


@dataclass(frozen=True)
class BoundReport:
    theorem_id: str
    n: int
    k: int
    lam: int
    value: Fraction
    asymptotic: bool
    applicable: bool = True
    reason: str = ""
    floor_value: int = field(init=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "value", Fraction(self.value))
        object.__setattr__(self, "floor_value", floor(self.value))

    def to_dict(self) -> dict:
        return {
            "theorem_id": self.theorem_id,
            "n": self.n,
            "k": self.k,
            "lambda": self.lam,
            "value": str(self.value),
            "floor_value": self.floor_value,
            "asymptotic": self.asymptotic,
            "applicable": self.applicable,
            "reason": self.reason,
        }


def ceil_sqrt(x: int) -> int:
    """Smallest integer ``s`` with ``s * s >= x``."""
    if x < 0:
        raise ParameterError("square root of a negative number")
    s = isqrt(x)
    return s if s * s == x else s + 1


def _min_term(n: int, lam: int) -> Fraction:
    return min(Fraction(lam), Fraction(n - lam, 3))


def _ceil_div(a: int, b: int) -> int:
    return -(-a // b)


def bound_trivial(n: int, k: int, lam: int) -> BoundReport:
    """``(k + 1) n + 1``, or ``(k + 1) n`` when ``lam != 0``."""
    if n < 1:
        raise ParameterError("n must be positive")
    value = (k + 1) * n + (1 if lam == 0 else 0)
    return BoundReport("trivial", n, k, lam, Fraction(value), asymptotic=False)


def bound_almost_disjoint(n: int, k: int) -> BoundReport:
    """``(n/k) floor(k^2/4) + n + 1`` for ``lam = 0``; tight when ``4 | kn`` (k even) or ``k | n`` (k odd)."""
    if n < 1 or k < 1:
        raise ParameterError("n and k must be positive")
    value = Fraction(n, k) * (k * k // 4) + n + 1
    return BoundReport("almost-disjoint", n, k, 0, value, asymptotic=False)


def bound_k1_vu(n: int, lam: int) -> BoundReport:
    """``2(n - 1)`` for 1-almost families, valid for ``n >= 3``."""
    if n < 3:
        return BoundReport("k1-vu", n, 1, lam, Fraction(2 * (n - 1)), asymptotic=False,
                           applicable=False, reason="requires n >= 3")
    return BoundReport("k1-vu", n, 1, lam, Fraction(2 * (n - 1)), asymptotic=False)


def bound_k1_refined(n: int, lam: int) -> BoundReport:
    """Leading term ``max{n + 2, 8 min{lam, (n - lam)/3}}``; the ``o(lam)`` error is dropped."""
    value = max(Fraction(n + 2), 8 * _min_term(n, lam))
    return BoundReport("k1-refined", n, 1, lam, value, asymptotic=True,
                       reason="o(lambda) term dropped")


@dataclass(frozen=True)
class K1Bounds:
    vu: BoundReport
    refined: BoundReport


def bound_k1(n: int, lam: int) -> K1Bounds:
    return K1Bounds(bound_k1_vu(n, lam), bound_k1_refined(n, lam))


def k1_edge_count_bound(n: int, r: int) -> int:
    """``m <= n + r + 1`` where ``r`` is the number of rank-1 edges."""
    return n + r + 1


def k1_support_bound(mu: int) -> int:
    """``m <= 16 mu`` once two rank-1 edges exist."""
    return 16 * mu


def k1_pure_edge_bound(mu: int) -> int:
    """``m <= 8 mu`` when every set lies in a rank-1 edge."""
    return 8 * mu


_LARGE_N = "guaranteed only for n sufficiently large"


def bound_k2_linear(n: int, lam: int) -> BoundReport:
    """``2n - 2`` for 2-almost families."""
    if n < 1:
        raise ParameterError("n must be positive")
    return BoundReport("k2-linear", n, 2, lam, Fraction(2 * n - 2), asymptotic=True, reason=_LARGE_N)


def bound_k2_min(n: int, lam: int) -> BoundReport:
    """``(5n + 4 min{lam, (n - lam)/3} + 7) / 3``."""
    if n < 1:
        raise ParameterError("n must be positive")
    value = (5 * n + 4 * _min_term(n, lam) + 7) / 3
    return BoundReport("k2-min", n, 2, lam, value, asymptotic=True, reason=_LARGE_N)


def bound_k2_effective(n: int, lam: int) -> BoundReport:
    """``(3/2) n + 3 lam + (1/2) sqrt(lam n) + 90`` with the root rounded up."""
    if n < 1:
        raise ParameterError("n must be positive")
    value = Fraction(3 * n, 2) + 3 * lam + Fraction(ceil_sqrt(lam * n), 2) + 90
    return BoundReport("k2-effective", n, 2, lam, value, asymptotic=True, reason=_LARGE_N)


@dataclass(frozen=True)
class K2Bounds:
    linear: BoundReport
    min_form: BoundReport
    effective: BoundReport


def bound_k2(n: int, lam: int) -> K2Bounds:
    return K2Bounds(bound_k2_linear(n, lam), bound_k2_min(n, lam), bound_k2_effective(n, lam))


def bound_largek(n: int, k: int, lam: int) -> BoundReport:
    """``(2n - 2) ceil((k + 1)/3)``."""
    if k < 1:
        raise ParameterError("k must be positive")
    value = Fraction((2 * n - 2) * _ceil_div(k + 1, 3))
    return BoundReport("large-k", n, k, lam, value, asymptotic=True, reason=_LARGE_N)


def bound_largek_small_lambda(n: int, k: int, lam: int) -> BoundReport:
    """Leading term ``(3/2) n ceil((k + 1)/3)`` for ``lam = o(n)``."""
    if k < 1:
        raise ParameterError("k must be positive")
    value = Fraction(3 * n, 2) * _ceil_div(k + 1, 3)
    return BoundReport("large-k-small-lambda", n, k, lam, value, asymptotic=True,
                       reason="o(1) term dropped; needs lambda = o(n)")


@dataclass(frozen=True)
class StructureCountBounds:
    p_max: Fraction
    q_max: int
    r_max: Fraction
    r_max_floor: int
    r_max_exact: bool

    def to_dict(self) -> dict:
        return {
            "p_max": str(self.p_max),
            "q_max": self.q_max,
            "r_max": str(self.r_max),
            "r_max_floor": self.r_max_floor,
            "r_max_exact": self.r_max_exact,
        }


def bound_structure_counts(n: int, lam: int) -> StructureCountBounds:
    """Caps on rank-1 edges, rank-2 four-cycles and rank-3 five-cycles of a 2-almost family.

    ``r_max = 2 lam + sqrt(lam n) + 175`` uses the rounded-up root;
    ``r_max_exact`` says whether ``lam n`` is a perfect square.
    """
    if lam < 1:
        raise ParameterError("structure-count bounds need lambda >= 1")
    if lam > n:
        raise ParameterError("lambda cannot exceed n")
    root = ceil_sqrt(lam * n)
    r_max = Fraction(2 * lam + root + 175)
    return StructureCountBounds(4 * _min_term(n, lam), 1, r_max, floor(r_max), root * root == lam * n)


@dataclass(frozen=True)
class CountCheck:
    coarse_rhs: Fraction
    coarse_holds: bool
    fine_rhs: Fraction
    fine_holds: bool

    def to_dict(self) -> dict:
        return {
            "coarse_rhs": str(self.coarse_rhs),
            "coarse_holds": self.coarse_holds,
            "fine_rhs": str(self.fine_rhs),
            "fine_holds": self.fine_holds,
        }


def combine_counts(n: int, m: int, p: int, q: int, r: int) -> CountCheck:
    """``m <= (5n + p + 2q + 5)/3`` and ``m <= (3n + p + 2q + r + 3)/2``."""
    if min(n, m, p, q, r) < 0:
        raise ParameterError("counts must be non-negative")
    coarse = Fraction(5 * n + p + 2 * q + 5, 3)
    fine = Fraction(3 * n + p + 2 * q + r + 3, 2)
    return CountCheck(coarse, m <= coarse, fine, m <= fine)


def _almost_disjoint_at(n: int, k: int, lam: int) -> BoundReport:
    rep = bound_almost_disjoint(n, k)
    if lam == 0:
        return rep
    return BoundReport(rep.theorem_id, n, k, lam, rep.value, asymptotic=False,
                       applicable=False, reason="holds only for lambda = 0")


def _evaluators():
    return {
        "trivial": lambda n, k, lam: bound_trivial(n, k, lam),
        "almost-disjoint": _almost_disjoint_at,
        "k1-vu": lambda n, k, lam: bound_k1_vu(n, lam),
        "k1-refined": lambda n, k, lam: bound_k1_refined(n, lam),
        "k2-linear": lambda n, k, lam: bound_k2_linear(n, lam),
        "k2-min": lambda n, k, lam: bound_k2_min(n, lam),
        "k2-effective": lambda n, k, lam: bound_k2_effective(n, lam),
        "large-k": bound_largek,
        "large-k-small-lambda": bound_largek_small_lambda,
    }


BOUND_IDS = tuple(_evaluators())


def evaluate_bound(theorem_id: str, n: int, k: int, lam: int) -> BoundReport:
    """Dispatch by identifier; ``k`` is ignored by the fixed-k bounds."""
    table = _evaluators()
    if theorem_id not in table:
        raise ParameterError(f"unknown bound {theorem_id!r}; choose from {', '.join(BOUND_IDS)}")
    return table[theorem_id](n, k, lam)


def exact_bounds(n: int, k: int, lam: int) -> list[BoundReport]:
    """Every applicable non-asymptotic bound for ``f(n, k, lam)``."""
    out = [bound_trivial(n, k, lam)]
    if lam == 0 and k >= 1:
        out.append(bound_almost_disjoint(n, k))
    if k == 1:
        vu = bound_k1_vu(n, lam)
        if vu.applicable:
            out.append(vu)
    return out
