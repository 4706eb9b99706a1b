import itertools

import pytest

from heflab.arrays import PartiallyFilledArray, cyclic_diagonal_skeleton, row_major_fill
from heflab.embedding import DifferenceRotation
from heflab.orderings import solve_knight
from heflab.rings import Ring


@pytest.fixture(scope="session")
def ring31():
    return Ring(31, 1)


@pytest.fixture(scope="session")
def rm53(ring31):
    """5x5 cyclically 3-diagonal array filled row-major with 1..15 over Z_31."""
    return row_major_fill(cyclic_diagonal_skeleton(5, 3), ring31)


@pytest.fixture(scope="session")
def orient53():
    return solve_knight(cyclic_diagonal_skeleton(5, 3))


@pytest.fixture(scope="session")
def k7():
    """The torus embedding of K_7: rotation at 0 is the cycle (4,6,2,3,1,5)."""
    cyc = [4, 6, 2, 3, 1, 5]
    return DifferenceRotation(Ring(7, 1), {a: b for a, b in zip(cyc, cyc[1:] + cyc[:1])})


def zero_sum_heffter_3x3():
    """Backtracking search for a full 3x3 array over Z_19 with every row and
    column summing to zero, entries covering {x,-x} classes 1..9 once.

    Independent oracle: rows 1 and 2 are enumerated, row 3 is forced by the
    column sums and checked against the remaining classes.
    """
    v = 19
    classes = list(range(1, 10))
    for r1_cls in itertools.permutations(classes, 3):
        for s1 in itertools.product((1, -1), repeat=3):
            row1 = [(c * s) % v for c, s in zip(r1_cls, s1)]
            if sum(row1) % v:
                continue
            rest = [c for c in classes if c not in r1_cls]
            for r2_cls in itertools.permutations(rest, 3):
                for s2 in itertools.product((1, -1), repeat=3):
                    row2 = [(c * s) % v for c, s in zip(r2_cls, s2)]
                    if sum(row2) % v:
                        continue
                    row3 = [(-a - b) % v for a, b in zip(row1, row2)]
                    if sum(row3) % v:
                        continue
                    if len({min(x, v - x) for x in row1 + row2 + row3}) == 9:
                        entries = {
                            (i, j): val
                            for i, row in enumerate((row1, row2, row3), start=1)
                            for j, val in enumerate(row, start=1)
                        }
                        return PartiallyFilledArray(Ring(v, 1), 3, 3, entries)
    raise AssertionError("no zero-sum 3x3 array found")


@pytest.fixture(scope="session")
def heffter33():
    return zero_sum_heffter_3x3()
