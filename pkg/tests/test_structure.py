import random
from fractions import Fraction
from itertools import product

import pytest

from almostfisher.constructions import adjoined_family, hadamard_family, hadamard_sylvester
from almostfisher.errors import HypothesisViolation, ParameterError, StructureError
from almostfisher.family import SetFamily, build_auxiliary_graph, build_family, verify_almost_fisher
from almostfisher.linalg import exact_rank, intersection_matrix, spans_all_ones
from almostfisher.structure import (
    RANK1_P1,
    RANK2_C4,
    RANK3_C5_TYPE_I,
    RANK3_C5_TYPE_II,
    CoreDecomposition,
    Multigraph,
    SimpleGraph,
    check_component_rank_bounds,
    classify_c5,
    count_low_rank_structures,
    decompose_components,
    dyadic_diagnostics,
    find_heavy_edge,
    heavy_edge_threshold,
    lovasz_partition,
    one_per_edge_subfamily,
    plotkin_check,
    rank1_p1_structure,
    symmetric_difference_identity,
)

from conftest import greedy_family, random_family


def test_decompose_hadamard(h4):
    comps = decompose_components(h4, 1)
    assert [c.members for c in comps] == [(0, 1), (2, 3), (4, 5)]
    assert all(c.classification == RANK1_P1 and c.rank == 1 for c in comps)


def test_decompose_pairs(pairs5):
    comps = decompose_components(pairs5, 2)
    assert [c.classification for c in comps] == [RANK1_P1, RANK1_P1]
    assert [c.members for c in comps] == [(0, 1), (2, 3)]


def test_decompose_type1(type1):
    (comp,) = decompose_components(type1, 2)
    assert comp.shape == "cycle" and comp.rank == 3
    assert comp.classification == RANK3_C5_TYPE_I
    assert comp.members == (0, 1, 2, 3, 4)


def test_decompose_high_degree_is_other():
    fam = build_family(3, [[1], [2], [3], [1, 2, 3]])
    comps = decompose_components(fam, 5)
    assert len(comps) == 1 and comps[0].shape == "other"
    assert comps[0].rank == exact_rank(intersection_matrix(fam, 5)).rank


def test_four_cycle_of_full_rank_is_other():
    # No four-cycle on n <= 6 has a rank-2 block; this one has rank 3.
    fam = build_family(4, [[1, 2], [1, 3], [3, 4], [2, 4]])
    (comp,) = decompose_components(fam, 0)
    assert comp.shape == "cycle" and comp.rank == 3
    assert comp.classification != RANK2_C4


def test_component_rank_bounds_examples(h4):
    comp = decompose_components(h4, 1)[0]
    assert check_component_rank_bounds(comp, h4, 1)
    fam = build_family(4, [[1, 2], [1, 3], [3, 4], [2, 4]])
    assert check_component_rank_bounds(decompose_components(fam, 0)[0], fam, 0)


def test_component_rank_bounds_rejects_other():
    fam = build_family(3, [[1], [2], [3], [1, 2, 3]])
    with pytest.raises(ParameterError):
        check_component_rank_bounds(decompose_components(fam, 5)[0], fam, 5)


def test_rank1_structure_pairs(pairs5):
    core = rank1_p1_structure(pairs5, 2)
    assert core.to_dict() == {"V": [1], "U": [2, 3, 4, 5], "W": [], "mu": 1, "nu": 1, "gamma": 0,
                              "pairs": [[0, 1], [2, 3]]}


def test_rank1_structure_hadamard(h4):
    core = rank1_p1_structure(h4, 1)
    assert (core.V, core.U, core.W) == (0, 0b1111, 0)
    assert (core.mu, core.nu, core.gamma) == (1, 0, 0)


def test_rank1_structure_needs_two_edges():
    with pytest.raises(ParameterError, match="at least two"):
        rank1_p1_structure(build_family(5, [[1, 2, 3], [1, 4, 5]]), 2)


def test_rank1_structure_adjoined_hadamard():
    fam = adjoined_family(hadamard_family(hadamard_sylvester(8)), 2)
    core = rank1_p1_structure(fam, 4)
    assert (core.mu, core.nu, core.gamma) == (2, 2, 0)


def test_core_decomposition_validates_partition():
    with pytest.raises(StructureError):
        CoreDecomposition(4, 1, 0b0001, 0b0011, 0b1100)
    with pytest.raises(StructureError):
        CoreDecomposition.from_sets(5, 2, [1], [2, 3])


def test_symmetric_difference_identity(pairs5, h4):
    core = rank1_p1_structure(pairs5, 2)
    res = symmetric_difference_identity([1, 2, 3], [1, 2, 4], core, 2)
    assert (res.lhs, res.rhs, res.holds) == (2, 2, True)
    hcore = rank1_p1_structure(h4, 1)
    res = symmetric_difference_identity([1, 2], [1, 3], hcore, 1)
    assert (res.lhs, res.rhs, res.holds) == (2, 2, True)
    with pytest.raises(HypothesisViolation):
        symmetric_difference_identity([1, 2, 3], [1, 4, 5], core, 2)


def test_symmetric_difference_identity_holds_on_hadamard_8():
    fam = hadamard_family(hadamard_sylvester(8))
    core = rank1_p1_structure(fam, 2)
    g = one_per_edge_subfamily(fam, 2)
    for i in range(len(g)):
        for j in range(i + 1, len(g)):
            assert symmetric_difference_identity(g.member(i), g.member(j), core, 2).holds


def test_dyadic_zero_cases(pairs5, h4):
    core = rank1_p1_structure(pairs5, 2)
    diag = dyadic_diagnostics(one_per_edge_subfamily(pairs5, 2), core, 2)
    assert diag.all_zero and diag.inequalities_hold
    assert [lv.level for lv in diag.levels] == [0]
    hcore = rank1_p1_structure(h4, 1)
    diag = dyadic_diagnostics(one_per_edge_subfamily(h4, 1), hcore, 1)
    assert diag.all_zero and diag.inequalities_hold


def test_dyadic_nonzero_q():
    core = CoreDecomposition.from_sets(6, 2, [1], [2, 3, 4, 5])
    g = build_family(6, [[1, 2, 3], [1, 2, 4, 6], [1, 3, 5, 6]])
    diag = dyadic_diagnostics(g, core, 2)
    (lv,) = diag.levels
    assert (lv.p, lv.q, lv.r, lv.s) == (0, 1, 0, 2)
    assert diag.inequalities_hold


def test_dyadic_rejects_non_fisher(pairs5):
    core = rank1_p1_structure(pairs5, 2)
    with pytest.raises(HypothesisViolation):
        dyadic_diagnostics(pairs5, core, 2)


def test_classify_type1(type1):
    dec = classify_c5(type1, 2)
    assert dec.c5_type == "I"
    assert dec.typeI_params == (1, 1, 3) and dec.typeI_admissible
    assert dec.labelling == (0, 2, 1, 3, 4)
    assert [dec.part(i) for i in range(5)] == [(1, 2), (), (3,), (5,), (4,)]


def test_classify_type2(type2):
    dec = classify_c5(type2, 2)
    assert dec.c5_type == "II" and dec.typeI_params is None
    assert [dec.part(i) for i in range(5)] == [(1,), (2,), (3,), (5, 6), (4,)]


@pytest.mark.parametrize("fam_c5", ["type1", "type2"])
def test_classify_reconstructs_sets(fam_c5, request):
    fam = request.getfixturevalue(fam_c5)
    dec = classify_c5(fam, 2)
    x = dec.parts
    f = [fam.masks[i] for i in dec.labelling]
    assert f[0] == x[0] | x[1] | x[2]
    assert f[1] == x[0] | x[3] | x[4]
    assert f[2] == x[0] | x[2] | x[3]
    assert f[3] == x[0] | x[1] | x[4]


def test_classify_rejects_path():
    fam = build_family(8, [[1, 2, 3], [1, 2, 3, 5], [1, 2, 4, 5], [1, 2, 4], [1, 2, 6, 7]])
    with pytest.raises(ParameterError):
        classify_c5(fam, 2)


def test_classify_rejects_wrong_count(type1):
    with pytest.raises(ParameterError):
        classify_c5(type1.subfamily(range(4)), 2)


def test_plotkin_examples(h4):
    rep = plotkin_check(h4)
    assert rep.total_difference == 36 and rep.delta == Fraction(2, 5)
    assert rep.bound == 6 and rep.m == 6 and rep.holds
    rep = plotkin_check(build_family(2, [[1], [2]]))
    assert (rep.total_difference, rep.delta, rep.bound, rep.holds) == (2, 1, 2, True)
    with pytest.raises(ParameterError):
        plotkin_check(build_family(2, [[1]]))


def test_plotkin_inapplicable():
    rep = plotkin_check(build_family(3, [[1], [1, 2]]))
    assert not rep.applicable and rep.bound is None


def test_plotkin_random_families():
    rng = random.Random(5)
    applicable = 0
    for _ in range(300):
        n = rng.randint(1, 8)
        fam = random_family(rng, n, rng.randint(2, 10))
        if len(fam) < 2:
            continue
        rep = plotkin_check(fam)
        if rep.applicable:
            applicable += 1
            assert rep.holds
    assert applicable >= 50


def test_heavy_edge_examples():
    assert find_heavy_edge(Multigraph(3, ((1, 2), (2, 3))), 2) == (1, 2)
    assert find_heavy_edge(Multigraph(2, ((1, 2),)), 2) is None
    g = Multigraph(3, ((1, 2), (1, 2), (2, 3)))
    assert g.degrees[1:] == (2, 3, 1)
    assert find_heavy_edge(g, 2) == (1, 2)
    assert heavy_edge_threshold(3, 2) == Fraction(3, 2)


def test_multigraph_rejects_loops():
    with pytest.raises(ParameterError):
        Multigraph(2, ((1, 1),))


def _assert_partition(graph, targets, part):
    seen = sorted(v for p in part.parts for v in p)
    assert seen == list(range(graph.vertex_count))
    for p, t in zip(part.parts, targets):
        inside = set(p)
        for v in p:
            assert sum(1 for e in graph.edges if v in e and (set(e) - {v}) <= inside) <= t


def test_lovasz_k4():
    g = SimpleGraph(4, frozenset((i, j) for i in range(4) for j in range(i + 1, 4)))
    part = lovasz_partition(g, [1, 1])
    _assert_partition(g, [1, 1], part)
    assert sorted(len(p) for p in part.parts) == [2, 2]


def test_lovasz_single_part_identity():
    g = SimpleGraph(5, frozenset({(0, 1), (1, 2), (3, 4)}))
    part = lovasz_partition(g, [2])
    assert part.parts == ((0, 1, 2, 3, 4),) and part.moves == 0


def test_lovasz_c5_three_colouring():
    g = SimpleGraph(5, frozenset((i, (i + 1) % 5) for i in range(5)))
    part = lovasz_partition(g, [0, 0, 0])
    _assert_partition(g, [0, 0, 0], part)


def test_lovasz_precondition():
    g = SimpleGraph(4, frozenset((i, j) for i in range(4) for j in range(i + 1, 4)))
    with pytest.raises(ParameterError):
        lovasz_partition(g, [0, 0])


def test_count_low_rank_examples(h4, type1):
    c = count_low_rank_structures(h4, 1)
    assert (c.p, c.q, c.r) == (3, 0, 0)
    c = count_low_rank_structures(type1, 2)
    assert (c.p, c.q, c.r) == (0, 0, 1)
    c = count_low_rank_structures(build_family(5, [[1, 2, 3], [1, 2, 4], [1, 2, 5]]), 2)
    assert (c.p, c.q, c.r) == (0, 0, 0)
    with pytest.raises(ParameterError):
        count_low_rank_structures(build_family(3, [[1], [2], [3], [1, 2, 3]]), 5)


def _degree2_families(seed, count, strict=False):
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        n = rng.randint(3, 9)
        lam = rng.randint(1 if strict else 0, n - 1)
        fam = greedy_family(rng, n, lam, 2, min_size=lam + 1 if strict else 0, tries=150)
        if len(fam) >= 2:
            out.append((fam, lam))
    return out


def test_block_rank_additivity():
    for fam, lam in _degree2_families(31, 200):
        total = sum(c.rank for c in decompose_components(fam, lam))
        assert total == exact_rank(intersection_matrix(fam, lam)).rank


def test_component_rank_bounds_random():
    for fam, lam in _degree2_families(32, 200):
        for c in decompose_components(fam, lam):
            assert check_component_rank_bounds(c, fam, lam), (fam, lam, c)


def test_rank1_edges_satisfy_determinant_condition():
    for fam, lam in _degree2_families(33, 200, strict=True):
        for c in decompose_components(fam, lam):
            if c.shape == "path" and c.size == 2:
                a, b = (fam.masks[i] for i in c.members)
                det_zero = (a.bit_count() - lam) * (b.bit_count() - lam) == ((a & b).bit_count() - lam) ** 2
                assert (c.rank == 1) == det_zero
                if c.rank == 1:
                    assert (a & b).bit_count() < lam


def test_low_rank_counts_within_lemma_bounds():
    checked = 0
    for fam, lam in _degree2_families(34, 200, strict=True) + _planted_p1_families(37, 100):
        if len(fam) < 6 or lam < 1:
            continue
        c = count_low_rank_structures(fam, lam)
        n = fam.ground_size
        assert c.p <= 4 * min(Fraction(lam), Fraction(n - lam, 3))
        assert c.q <= 1
        checked += 1
    assert checked >= 150


def _planted_p1_families(seed, count):
    """Random subfamilies of adjoined Hadamard families, grown greedily."""
    rng = random.Random(seed)
    bases = [hadamard_family(hadamard_sylvester(8)), hadamard_family(hadamard_sylvester(16))]
    out = []
    while len(out) < count:
        base = rng.choice(bases)
        extra = rng.randint(0, 2)
        fam = adjoined_family(base, extra) if extra else base
        lam = base.ground_size // 4 + extra
        pairs = rng.sample(range(len(fam) // 2), rng.randint(2, 4))
        seed_masks = [fam.masks[2 * i + t] for i in pairs for t in (0, 1)]
        grown = greedy_family(rng, fam.ground_size, lam, 2, min_size=lam + 1, tries=60,
                              seed_masks=seed_masks)
        out.append((grown, lam))
    return out


def test_low_rank_blocks_do_not_span_all_ones():
    checked = 0
    families = _degree2_families(35, 200, strict=True) + _planted_p1_families(36, 200)
    for fam, lam in families:
        if len(fam) < 5:
            continue
        mat = intersection_matrix(fam, lam)
        for c in decompose_components(fam, lam):
            if c.classification in (RANK1_P1, RANK2_C4):
                assert not spans_all_ones(mat.block(c.members))
                checked += 1
    assert checked >= 200


def test_seeded_p1_blocks_do_not_span_all_ones(h4, pairs5):
    for fam, lam in ((h4, 1), (pairs5, 2)):
        mat = intersection_matrix(fam, lam)
        for c in decompose_components(fam, lam):
            assert not spans_all_ones(mat.block(c.members))
