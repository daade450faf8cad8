import random

import pytest
from hypothesis import settings

from almostfisher.constructions import hadamard_family, hadamard_sylvester
from almostfisher.family import SetFamily, build_auxiliary_graph, build_family

settings.register_profile("default", deadline=None, max_examples=100)
settings.load_profile("default")


def greedy_family(rng: random.Random, n: int, lam: int, k: int, min_size: int = 0,
                  tries: int = 200, seed_masks=()) -> SetFamily:
    """Random k-almost lam-Fisher family grown by rejection."""
    masks = list(seed_masks)
    for _ in range(tries):
        m = rng.getrandbits(n)
        if m in masks or m.bit_count() < min_size:
            continue
        cand = masks + [m]
        if build_auxiliary_graph(SetFamily(n, tuple(cand)), lam).max_degree <= k:
            masks = cand
    return SetFamily(n, tuple(masks))


def random_family(rng: random.Random, n: int, m: int) -> SetFamily:
    masks = rng.sample(range(1 << n), min(m, 1 << n))
    return SetFamily(n, tuple(masks))


@pytest.fixture
def h4():
    return hadamard_family(hadamard_sylvester(4))


@pytest.fixture
def pairs5():
    return build_family(5, [[1, 2, 3], [1, 4, 5], [1, 2, 4], [1, 3, 5]])


@pytest.fixture
def type1():
    return build_family(8, [[1, 2, 3], [1, 2, 3, 5], [1, 2, 4, 5], [1, 2, 4], [1, 5, 6, 7, 8]])


@pytest.fixture
def type2():
    return build_family(9, [[1, 2, 3], [1, 4, 5, 6], [1, 3, 5, 6], [1, 2, 4], [1, 5, 7, 8, 9]])
