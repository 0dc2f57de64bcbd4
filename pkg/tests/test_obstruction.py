import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from packidx.errors import (
    NotApplicableError,
    PreconditionError,
)
from packidx.groups import Window, enumerate_window, parse_group
from packidx.obstruction import (
    OPPOSITE_G,
    ORDER_TWO,
    SAME_G,
    classify_triple,
    exhaustive_no_index_check,
    extend_pair_exponent3,
    extend_triple,
)
from packidx.packing import ElementSet, max_packing_family, translates_disjoint

Z9 = parse_group("Z_3 + Z_3")
Z42 = parse_group("Z_4 + Z_2")
Z23 = parse_group("Z_2^3")


class TestExtendPair:
    def test_two_point_base(self):
        A = ElementSet.parse(Z9, ["(0,0)", "(1,1)"])
        family = extend_pair_exponent3(A, Z9.element(1, 0))
        assert set(family.to_texts()) == {"(0,0)", "(1,0)", "(2,0)"}
        shifts = list(family)
        for u, v in itertools.combinations(shifts, 2):
            assert translates_disjoint(A, u, v)

    def test_singleton_base(self):
        A = ElementSet.parse(Z9, ["(0,0)"])
        family = extend_pair_exponent3(A, Z9.element(0, 1))
        assert set(family.to_texts()) == {"(0,0)", "(0,1)", "(0,2)"}

    def test_rejects_wrong_order(self):
        Z = parse_group("Z")
        with pytest.raises(PreconditionError):
            extend_pair_exponent3(ElementSet.parse(Z, ["0"]), Z.element(1))

    def test_rejects_intersecting_pair(self):
        A = ElementSet.parse(Z9, ["(0,0)", "(1,0)"])
        with pytest.raises(PreconditionError):
            extend_pair_exponent3(A, Z9.element(1, 0))

    def test_rejects_zero_shift(self):
        with pytest.raises(PreconditionError):
            extend_pair_exponent3(ElementSet.parse(Z9, ["(0,0)"]), Z9.zero())


class TestExtendTriple:
    def test_case_order_two(self):
        A = ElementSet.parse(Z23, ["(0,0,0)"])
        b3 = extend_triple(A, Z23.element(1, 0, 0), Z23.element(0, 1, 0))
        assert b3 == Z23.element(1, 1, 0)

    def test_case_same_four_coordinate(self):
        A = ElementSet.parse(Z42, ["(0,0)"])
        b3 = extend_triple(A, Z42.element(1, 0), Z42.element(1, 1))
        assert b3 == Z42.element(0, 1)

    def test_case_opposite_four_coordinate(self):
        A = ElementSet.parse(Z42, ["(0,0)"])
        b3 = extend_triple(A, Z42.element(1, 0), Z42.element(3, 1))
        assert b3 == Z42.element(2, 1)

    def test_swap_rule_puts_order_two_first(self):
        case = classify_triple(Z42, Z42.element(1, 0), Z42.element(2, 1))
        assert case.variant == ORDER_TWO and case.swapped
        assert case.b1.order() == 2

    def test_not_applicable_outside_family(self):
        g = parse_group("Z_8")
        A = ElementSet.parse(g, ["0"])
        with pytest.raises(NotApplicableError):
            extend_triple(A, g.element(1), g.element(2))
        g2 = parse_group("Z_4 + Z_4")
        with pytest.raises(NotApplicableError):
            extend_triple(
                ElementSet.parse(g2, ["(0,0)"]), g2.element(1, 0), g2.element(0, 1)
            )

    def test_rejects_non_disjoint_triple(self):
        A = ElementSet.parse(Z42, ["(0,0)", "(1,0)"])
        with pytest.raises(PreconditionError):
            extend_triple(A, Z42.element(1, 0), Z42.element(1, 1))

    def test_fourth_translate_always_disjoint(self):
        # every disjoint triple over every nonempty subset of Z_4 + Z_2
        zero = Z42.zero()
        elements = list(enumerate_window(Window.for_group(Z42)))
        nonzero = [e for e in elements if not e.is_zero()]
        tried = 0
        for r in range(1, 4):
            for combo in itertools.combinations(elements, r):
                A = ElementSet.of(Z42, combo)
                for b1, b2 in itertools.permutations(nonzero, 2):
                    ok = all(
                        translates_disjoint(A, u, v)
                        for u, v in [(zero, b1), (zero, b2), (b1, b2)]
                    )
                    if not ok:
                        continue
                    tried += 1
                    b3 = extend_triple(A, b1, b2)
                    for u, v in itertools.combinations([zero, b1, b2, b3], 2):
                        assert translates_disjoint(A, u, v)
        assert tried > 100


class TestClassification:
    @pytest.mark.parametrize("m", [0, 1, 2, 3])
    def test_total_and_unambiguous(self, m):
        text = "Z_4" + " + Z_2" * m if m else "Z_4"
        g = parse_group(text)
        elements = [e for e in enumerate_window(Window.for_group(g)) if not e.is_zero()]
        for b1, b2 in itertools.permutations(elements, 2):
            case = classify_triple(g, b1, b2)
            assert case.variant in (ORDER_TWO, SAME_G, OPPOSITE_G)
            if case.variant == ORDER_TWO:
                assert case.b1.order() == 2
            else:
                assert b1.order() == b2.order() == 4
                if case.variant == SAME_G:
                    assert case.g1 == case.g2
                else:
                    assert (case.g1 + case.g2) % 4 == 0

    def test_rejects_degenerate_pairs(self):
        with pytest.raises(PreconditionError):
            classify_triple(Z42, Z42.zero(), Z42.element(1, 0))
        with pytest.raises(PreconditionError):
            classify_triple(Z42, Z42.element(1, 0), Z42.element(1, 0))


class TestSweeps:
    def test_exponent3_exhaustive(self):
        report = exhaustive_no_index_check(Z9, 3)
        assert report.subsets_examined == 511
        assert not report.violations
        assert report.families_found + report.no_family == 511

    def test_k4_small_group_full_cross_check(self):
        # stride 1 cross-checks the structural claim against the exact
        # solver on every one of the 255 subsets
        report = exhaustive_no_index_check(Z42, 4, stride=1)
        assert report.subsets_examined == report.cross_checks == 255
        assert not report.violations
        assert dict(report.case_counts)[ORDER_TWO] > 0
        assert dict(report.case_counts)[SAME_G] > 0
        assert dict(report.case_counts)[OPPOSITE_G] > 0

    def test_sampled_mode_is_seeded(self):
        g = parse_group("Z_3^3")
        a = exhaustive_no_index_check(g, 3, mode="sampled", sample=300, seed=11)
        b = exhaustive_no_index_check(g, 3, mode="sampled", sample=300, seed=11)
        c = exhaustive_no_index_check(g, 3, mode="sampled", sample=300, seed=12)
        assert a == b
        assert a != c
        assert not a.violations

    def test_exhaustive_refuses_large_groups(self):
        with pytest.raises(NotApplicableError):
            exhaustive_no_index_check(parse_group("Z_3^3"), 3)

    def test_threads_do_not_change_the_report(self):
        one = exhaustive_no_index_check(Z42, 4, threads=1)
        eight = exhaustive_no_index_check(Z42, 4, threads=8)
        assert one == eight

    def test_family_checks(self):
        with pytest.raises(NotApplicableError):
            exhaustive_no_index_check(parse_group("Z_5"), 3)
        with pytest.raises(NotApplicableError):
            exhaustive_no_index_check(parse_group("Z_3 + Z_3"), 4)
        with pytest.raises(NotApplicableError):
            exhaustive_no_index_check(parse_group("Z_2"), 5)


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 255))
def test_sweep_agrees_with_solver_on_any_subset(mask):
    elements = list(enumerate_window(Window.for_group(Z42)))
    A = ElementSet.of(Z42, [elements[i] for i in range(8) if mask >> i & 1])
    size = max_packing_family(A, Window.for_group(Z42)).size
    # the sweep's dichotomy: a found triple forces size >= 4, none forces <= 2
    zero = Z42.zero()
    nonzero = [e for e in elements if not e.is_zero()]
    has_triple = any(
        all(
            translates_disjoint(A, u, v)
            for u, v in [(zero, b1), (zero, b2), (b1, b2)]
        )
        for b1, b2 in itertools.combinations(nonzero, 2)
    )
    assert (size >= 4) == has_triple
    assert size != 3
