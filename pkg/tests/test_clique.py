import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from packidx.clique import (
    clique_of_size,
    exhaustive_max_clique_size,
    exists_clique,
    first_max_clique,
    max_clique_size,
)


def random_graph(rng, n, p):
    adj = [0] * n
    for i in range(n):
        for j in range(i + 1, n):
            if rng.random() < p:
                adj[i] |= 1 << j
                adj[j] |= 1 << i
    return adj


def combinations_oracle(adj):
    """Third route: check every vertex combination directly."""
    n = len(adj)
    best = 0
    for r in range(1, n + 1):
        hit = False
        for combo in itertools.combinations(range(n), r):
            if all(adj[u] >> v & 1 for u, v in itertools.combinations(combo, 2)):
                hit = True
                break
        if hit:
            best = r
        else:
            break
    return best


@pytest.mark.parametrize("seed", range(30))
def test_solver_matches_both_oracles(seed):
    rng = random.Random(seed)
    n = rng.randint(1, 13)
    adj = random_graph(rng, n, rng.choice([0.2, 0.5, 0.8]))
    size, witness = first_max_clique(adj)
    assert size == exhaustive_max_clique_size(adj) == combinations_oracle(adj)
    assert len(witness) == size
    assert all(adj[u] >> v & 1 for u, v in itertools.combinations(witness, 2))


def test_empty_and_edgeless():
    assert max_clique_size([]) == 0
    assert first_max_clique([0, 0, 0]) == (1, [0])


def test_complete_graph():
    n = 6
    full = (1 << n) - 1
    adj = [full & ~(1 << v) for v in range(n)]
    size, witness = first_max_clique(adj)
    assert size == n and witness == list(range(n))


def test_witness_is_lexicographically_first():
    # two maximum cliques {0,2,4} and {1,3,5}; extraction must take {0,2,4}
    edges = [(0, 2), (0, 4), (2, 4), (1, 3), (1, 5), (3, 5)]
    adj = [0] * 6
    for u, v in edges:
        adj[u] |= 1 << v
        adj[v] |= 1 << u
    assert first_max_clique(adj) == (3, [0, 2, 4])


def test_exists_clique_thresholds():
    rng = random.Random(7)
    adj = random_graph(rng, 11, 0.5)
    size = max_clique_size(adj)
    full = (1 << 11) - 1
    assert exists_clique(adj, full, size)
    assert not exists_clique(adj, full, size + 1)
    assert exists_clique(adj, full, 0)


def test_clique_of_size_none_when_too_big():
    adj = [0b10, 0b01, 0]
    assert clique_of_size(adj, 3) is None
    assert clique_of_size(adj, 2) == [0, 1]


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10_000), st.integers(2, 10))
def test_determinism_across_repeats(seed, n):
    rng = random.Random(seed)
    adj = random_graph(rng, n, 0.5)
    assert first_max_clique(adj) == first_max_clique(adj)


def test_oracle_vertex_cap():
    with pytest.raises(ValueError):
        exhaustive_max_clique_size([0] * 21)
