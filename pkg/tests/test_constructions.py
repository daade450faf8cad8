import numpy as np
import pytest
from hypothesis import given, strategies as st

from almostfisher.bounds import bound_almost_disjoint
from almostfisher.constructions import (
    HadamardMatrix,
    adjoined_family,
    almost_disjoint_family,
    fisher_sunflower,
    hadamard_family,
    hadamard_from_rows,
    hadamard_sylvester,
    k3_family,
)
from almostfisher.errors import ParameterError
from almostfisher.family import build_auxiliary_graph, build_family, verify_almost_fisher


def test_sylvester_orthogonal():
    for order in (1, 2, 4, 8, 16, 32):
        h = hadamard_sylvester(order)
        a = np.array(h.rows())
        assert (a @ a.T == order * np.eye(order)).all()


def test_sylvester_rejects_non_power():
    with pytest.raises(ParameterError):
        hadamard_sylvester(12)


def test_hadamard_matrix_is_read_only():
    h = hadamard_sylvester(4)
    with pytest.raises(ValueError):
        h.entries[0, 0] = -1


def test_hadamard_from_rows_validates():
    with pytest.raises(ParameterError, match="orthogonal"):
        hadamard_from_rows([[1, 1], [1, 1]])
    with pytest.raises(ParameterError, match=r"\+1 or -1"):
        hadamard_from_rows([[1, 0], [1, -1]])
    with pytest.raises(ParameterError, match="square"):
        hadamard_from_rows([[1, 1]])
    assert hadamard_from_rows([[1, 1], [1, -1]]) == hadamard_sylvester(2)


def test_hadamard4_family(h4):
    assert h4.members() == [[1, 2], [3, 4], [1, 3], [2, 4], [1, 4], [2, 3]]
    assert verify_almost_fisher(h4, 1, 1).valid


@pytest.mark.parametrize("order", [4, 8, 16])
def test_hadamard_family_size_and_matching(order):
    fam = hadamard_family(hadamard_sylvester(order))
    assert len(fam) == 2 * order - 2
    assert verify_almost_fisher(fam, 1, order // 4).valid
    g = build_auxiliary_graph(fam, order // 4)
    assert set(g.edges) == {(2 * i, 2 * i + 1) for i in range(order - 1)}
    full = (1 << order) - 1
    assert all(fam.masks[2 * i] ^ fam.masks[2 * i + 1] == full for i in range(order - 1))


def test_hadamard_family_from_order_12_file():
    # Order-12 matrix from quadratic residues mod 11; accepted and validated, never constructed.
    chi = [[1 if i == j or (j - i) % 11 in (1, 3, 4, 5, 9) else -1 for j in range(11)]
           for i in range(11)]
    core = [[1] * 12] + [[-1] + chi[i] for i in range(11)]
    h = hadamard_from_rows(core)
    fam = hadamard_family(h)
    assert len(fam) == 22
    assert verify_almost_fisher(fam, 1, 3).valid


def test_hadamard_family_rejects_order_2():
    with pytest.raises(ParameterError):
        hadamard_family(hadamard_sylvester(2))


@pytest.mark.parametrize("n,k,size", [(4, 2, 7), (8, 2, 13), (6, 3, 11), (12, 3, 21), (5, 1, 6),
                                      (6, 4, 13), (9, 3, 16)])
def test_almost_disjoint_sizes(n, k, size):
    fam = almost_disjoint_family(n, k)
    assert len(fam) == size == bound_almost_disjoint(n, k).value
    assert verify_almost_fisher(fam, k, 0).valid


def test_almost_disjoint_examples():
    assert almost_disjoint_family(4, 2).members() == [[], [1], [2], [3], [4], [1, 2], [3, 4]]
    fam = almost_disjoint_family(6, 3)
    assert fam.members()[7:] == [[1, 2], [1, 3], [4, 5], [4, 6]]


@pytest.mark.parametrize("n,k", [(4, 3), (3, 2), (2, 4), (0, 2), (5, 0)])
def test_almost_disjoint_errors(n, k):
    with pytest.raises(ParameterError):
        almost_disjoint_family(n, k)


@given(st.integers(1, 12), st.integers(1, 8))
def test_almost_disjoint_tight_when_defined(n, k):
    try:
        fam = almost_disjoint_family(n, k)
    except ParameterError:
        return
    assert len(fam) == bound_almost_disjoint(n, k).value


def test_adjoin_examples(h4):
    fam = adjoined_family(h4, 1)
    assert fam.ground_size == 5 and len(fam) == 6
    assert verify_almost_fisher(fam, 1, 2).valid
    h8 = hadamard_family(hadamard_sylvester(8))
    fam = adjoined_family(h8, 2)
    assert fam.ground_size == 10 and len(fam) == 14
    assert verify_almost_fisher(fam, 1, 4).valid


def test_adjoin_rejects_zero(h4):
    with pytest.raises(ParameterError):
        adjoined_family(h4, 0)


@given(st.lists(st.integers(0, 63), min_size=1, max_size=8, unique=True),
       st.integers(0, 4), st.integers(1, 3))
def test_adjoin_preserves_auxiliary_graph(masks, lam, extra):
    from almostfisher.family import SetFamily
    base = SetFamily(6, tuple(masks))
    before = build_auxiliary_graph(base, lam)
    after = build_auxiliary_graph(adjoined_family(base, extra), lam + extra)
    assert before.edges == after.edges


def test_k3_examples():
    fam = k3_family(1, 1)
    assert fam.ground_size == 5 and len(fam) == 8
    assert fam.members()[6:] == [[1, 2, 5], [3, 4, 5]]
    assert verify_almost_fisher(fam, 3, 1).valid
    g = build_auxiliary_graph(fam, 1)
    assert sorted(g.neighbors(0)) == [1, 6, 7]
    fam = k3_family(2, 3)
    assert fam.ground_size == 11 and len(fam) == 20
    assert verify_almost_fisher(fam, 3, 2).valid


@pytest.mark.parametrize("m,t", [(1, t) for t in range(1, 4)] + [(2, t) for t in range(1, 8)]
                         + [(4, 1), (4, 15)])
def test_k3_sizes(m, t):
    fam = k3_family(m, t)
    assert len(fam) == 2 * (4 * m + t) - 2
    assert verify_almost_fisher(fam, 3, m).valid


def test_k3_errors():
    with pytest.raises(ParameterError):
        k3_family(1, 4)
    with pytest.raises(ParameterError):
        k3_family(1, 0)
    with pytest.raises(ParameterError):
        k3_family(3, 1)
    with pytest.raises(ParameterError):
        k3_family(2, 1, hadamard=hadamard_sylvester(4))


def test_sunflower():
    assert fisher_sunflower(5, 2).members() == [[1, 2, 3], [1, 2, 4], [1, 2, 5]]
    assert fisher_sunflower(4, 0).members() == [[1], [2], [3], [4]]
    assert verify_almost_fisher(fisher_sunflower(7, 3), 0, 3).valid
    with pytest.raises(ParameterError):
        fisher_sunflower(3, 3)


def test_constructions_distinct_members():
    for fam in (k3_family(2, 7), almost_disjoint_family(12, 3), hadamard_family(hadamard_sylvester(16))):
        assert len(set(fam.masks)) == len(fam)
        assert build_family(fam.ground_size, fam.members()).masks == fam.masks
