import itertools

import pytest

from packidx.errors import PreconditionError, SearchBudgetExceededError
from packidx.pairmap import (
    PairMap,
    codomain_pairs,
    common_point,
    domain_pairs,
    iter_valid_maps,
    search_pairmap,
    validate_pairmap,
)


def brute_force_validate(f):
    """Literal quantifier translation of both predicates; stays independent
    of the table-index bookkeeping inside validate_pairmap."""
    sep = all(
        f.image(x, a) != f.image(y, a)
        for a in range(f.size_a)
        for x in range(f.size_a)
        for y in range(f.size_a)
        if len({x, y, a}) == 3
    )
    pres = all(
        set(f.image(a0, a1)) & set(f.image(a0, a2))
        for a0 in range(f.size_a)
        for a1 in range(f.size_a)
        for a2 in range(f.size_a)
        if len({a0, a1, a2}) == 3
    )
    return sep, pres


class TestValidate:
    def test_identity_map(self):
        f = PairMap.from_function(5, 5, lambda i, j: (i, j))
        v = validate_pairmap(f)
        assert v.separately_injective and v.preserves_intersections

    def test_constant_map(self):
        f = PairMap.from_function(3, 4, lambda i, j: (1, 2))
        v = validate_pairmap(f)
        assert not v.separately_injective
        assert v.preserves_intersections

    def test_disjoint_images(self):
        images = {(0, 1): (0, 1), (0, 2): (2, 3), (1, 2): (4, 5)}
        f = PairMap.from_function(3, 6, lambda i, j: images[(i, j)])
        v = validate_pairmap(f)
        assert v.separately_injective
        assert not v.preserves_intersections

    @pytest.mark.parametrize("size_a,size_b", [(3, 3), (4, 3), (3, 2), (4, 2)])
    def test_consistent_with_brute_force_on_all_maps(self, size_a, size_b):
        pairs = domain_pairs(size_a)
        images = codomain_pairs(size_b)
        for table in itertools.product(images, repeat=len(pairs)):
            f = PairMap(size_a, size_b, table)
            v = validate_pairmap(f)
            assert (v.separately_injective, v.preserves_intersections) == brute_force_validate(f)

    def test_malformed_tables_rejected(self):
        with pytest.raises(PreconditionError):
            PairMap(3, 3, ((0, 1), (0, 2)))  # one pair short
        with pytest.raises(PreconditionError):
            PairMap(3, 3, ((0, 1), (0, 2), (0, 3)))  # image out of range
        with pytest.raises(PreconditionError):
            PairMap(1, 3, ())


class TestSearch:
    def test_unique_two_by_two_map(self):
        found, _ = search_pairmap(2, 2)
        assert found is not None and found.table == ((0, 1),)

    def test_boundary_is_empty(self):
        assert search_pairmap(5, 4)[0] is None
        assert search_pairmap(5, 3)[0] is None

    def test_square_case_has_witness(self):
        found, _ = search_pairmap(5, 5)
        assert found is not None
        assert validate_pairmap(found).valid

    def test_four_three_outcome_is_reported_not_presumed(self):
        # below the size-5 threshold; whatever comes back must self-validate
        found, _ = search_pairmap(4, 3)
        if found is not None:
            assert validate_pairmap(found).valid

    def test_found_maps_are_canonical_and_deterministic(self):
        a, _ = search_pairmap(5, 5)
        b, _ = search_pairmap(5, 5)
        assert a == b

    def test_every_enumerated_witness_is_valid(self):
        maps = iter_valid_maps(5, 5, limit=20)
        assert maps
        for f in maps:
            assert validate_pairmap(f).valid

    def test_budget_is_enforced(self):
        with pytest.raises(SearchBudgetExceededError):
            search_pairmap(5, 5, node_budget=10)

    def test_sizes_below_two_rejected(self):
        with pytest.raises(PreconditionError):
            search_pairmap(1, 5)


class TestCommonPoint:
    def test_identity_map_pivot(self):
        f = PairMap.from_function(5, 5, lambda i, j: (i, j))
        assert common_point(f, 2) == 2

    def test_nonempty_for_all_found_maps_at_size_5(self):
        for f in iter_valid_maps(5, 5, limit=20):
            for a0 in range(5):
                b0 = common_point(f, a0)
                assert b0 is not None
                # the residual assignment a -> image({a, a0}) minus the pivot
                # must inject the remaining points into distinct codomain points
                residual = []
                for a in range(5):
                    if a == a0:
                        continue
                    rest = set(f.image(a, a0)) - {b0}
                    assert len(rest) == 1
                    residual.append(rest.pop())
                assert len(set(residual)) == 4

    def test_small_maps_may_have_empty_intersection(self):
        images = {(0, 1): (0, 1), (0, 2): (1, 2), (1, 2): (0, 2)}
        f = PairMap.from_function(3, 3, lambda i, j: images[(i, j)])
        assert validate_pairmap(f).valid
        # at size 3 the pivot intersection may vanish without invalidating f
        assert common_point(f, 1) in (None, 0, 1, 2)

    def test_bad_index_rejected(self):
        f = PairMap.from_function(3, 3, lambda i, j: (i, j))
        with pytest.raises(PreconditionError):
            common_point(f, 3)
