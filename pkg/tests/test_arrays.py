import pytest

from heflab.arrays import (
    PartiallyFilledArray,
    Skeleton,
    SkeletonError,
    cyclic_diagonal_skeleton,
    random_fill,
    row_major_fill,
    transpose,
    validate_nh,
    validate_qh,
)
from heflab.prng import subseed
from heflab.rings import Ring, default_support


class TestCyclicDiagonalSkeleton:
    def test_single_diagonal(self):
        assert cyclic_diagonal_skeleton(5, 1).cells == frozenset(
            {(1, 1), (2, 2), (3, 3), (4, 4), (5, 5)}
        )

    def test_three_diagonals_on_five(self):
        skel = cyclic_diagonal_skeleton(5, 3)
        assert len(skel.cells) == 15
        assert skel.row_cells(1) == [(1, 1), (1, 4), (1, 5)]
        assert skel.h == 3 and skel.k == 3

    def test_full_square(self):
        skel = cyclic_diagonal_skeleton(3, 3)
        assert skel.cells == frozenset((i, j) for i in range(1, 4) for j in range(1, 4))

    def test_k_larger_than_n(self):
        with pytest.raises(SkeletonError):
            cyclic_diagonal_skeleton(4, 5)

    def test_nonuniform_rejected(self):
        with pytest.raises(SkeletonError):
            Skeleton(2, 2, frozenset({(1, 1), (1, 2), (2, 1)}))


class TestRowMajorFixture:
    def test_values_row_major(self, rm53):
        assert rm53.entries[(1, 1)] == 1
        assert rm53.entries[(1, 4)] == 2
        assert rm53.entries[(1, 5)] == 3
        assert rm53.entries[(5, 5)] == 15

    def test_is_quasi_heffter(self, rm53):
        assert validate_qh(rm53).ok

    def test_line_sums(self, rm53):
        assert [rm53.row_sum(i) for i in range(1, 6)] == [6, 15, 24, 2, 11]
        assert [rm53.col_sum(j) for j in range(1, 6)] == [12, 23, 2, 28, 24]

    def test_nonzero_sums(self, rm53):
        assert validate_nh(rm53).ok

    def test_size_mismatch(self, ring31):
        with pytest.raises(SkeletonError):
            row_major_fill(cyclic_diagonal_skeleton(5, 1), ring31)


class TestValidateQH:
    def test_duplicate_coverage_detected(self, rm53):
        bad = rm53.with_entries({(1, 1): 2})
        verdict = validate_qh(bad)
        assert not verdict.ok and verdict.condition == "support"
        assert "2" in verdict.message

    def test_cleared_cell_breaks_fill_counts(self, rm53):
        bad = rm53.with_entries({(1, 1): None})
        verdict = validate_qh(bad)
        assert not verdict.ok and verdict.condition == "fill_counts"
        assert "row 1" in verdict.message

    def test_j_entry_detected(self, rm53):
        verdict = validate_qh(rm53.with_entries({(1, 1): 0}))
        assert not verdict.ok and verdict.condition == "support"

    def test_negated_entries_still_valid(self, rm53, ring31):
        resigned = rm53.with_entries(
            {cell: ring31.neg(val) for cell, val in rm53.entries.items() if val % 2 == 0}
        )
        assert validate_qh(resigned).ok


class TestValidateNH:
    def test_zero_sum_array_is_qh_but_not_nh(self, heffter33):
        assert validate_qh(heffter33).ok
        verdict = validate_nh(heffter33)
        assert not verdict.ok and verdict.condition == "zero_sum"

    def test_failure_names_the_row(self, rm53, ring31):
        # row 1 holds 1, 2, 3; re-signing the first two gives -1 - 2 + 3 = 0
        bad = rm53.with_entries({(1, 1): ring31.neg(1), (1, 4): ring31.neg(2)})
        assert validate_qh(bad).ok
        verdict = validate_nh(bad)
        assert not verdict.ok and verdict.condition == "zero_sum"
        assert "row 1" in verdict.message

    def test_qh_failure_propagates(self, rm53):
        verdict = validate_nh(rm53.with_entries({(1, 1): 2}))
        assert not verdict.ok and verdict.condition == "support"


class TestTranspose:
    def test_involution(self, rm53):
        assert transpose(transpose(rm53)) == rm53

    def test_moves_entry(self, rm53):
        assert transpose(rm53).entries[(4, 1)] == 2

    def test_swaps_parameters(self, heffter33, rm53):
        tr = transpose(rm53)
        assert (tr.m, tr.n) == (rm53.n, rm53.m)
        assert validate_qh(tr).ok
        skel = tr.skeleton()
        assert (skel.h, skel.k) == (rm53.skeleton().k, rm53.skeleton().h)

    def test_rectangular_array(self):
        # 3x9 with three entries per row and one per column over Z_19
        ring = Ring(19, 1)
        entries = {
            (i, 3 * (i - 1) + c): 3 * (i - 1) + c
            for i in range(1, 4)
            for c in range(1, 4)
        }
        arr = PartiallyFilledArray(ring, 3, 9, entries)
        assert validate_qh(arr).ok
        assert (arr.skeleton().h, arr.skeleton().k) == (3, 1)
        tr = transpose(arr)
        assert validate_qh(tr).ok
        assert (tr.skeleton().h, tr.skeleton().k) == (1, 3)
        assert tr.m == 9 and tr.n == 3


class TestRandomFill:
    def test_deterministic(self, ring31):
        skel = cyclic_diagonal_skeleton(5, 3)
        omega = default_support(ring31)
        assert random_fill(skel, omega, 7) == random_fill(skel, omega, 7)
        assert random_fill(skel, omega, 7) != random_fill(skel, omega, 8)

    def test_always_quasi_heffter(self, ring31):
        skel = cyclic_diagonal_skeleton(5, 3)
        omega = default_support(ring31)
        for i in range(100):
            assert validate_qh(random_fill(skel, omega, subseed(3, i))).ok

    def test_size_mismatch(self, ring31):
        with pytest.raises(SkeletonError):
            random_fill(cyclic_diagonal_skeleton(5, 1), default_support(ring31), 0)


class TestPositionIndex:
    def test_pairs_share_a_cell(self, rm53, ring31):
        for cell, val in rm53.entries.items():
            assert rm53.position(val) == cell
            assert rm53.position(ring31.neg(val)) == cell

    def test_undefined_exactly_on_j(self, rm53):
        assert rm53.position(0) is None
        for x in range(1, 31):
            assert rm53.position(x) is not None

    def test_pair_sum_cancels(self, rm53, ring31):
        total = sum(val + ring31.neg(val) for val in rm53.entries.values())
        assert total % 31 == 0
        signed = set(rm53.entries.values()) | {ring31.neg(v) for v in rm53.entries.values()}
        assert len(signed) == 30
