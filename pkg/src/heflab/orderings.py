"""Row/column orderings, orientation vectors, and the alternating walk solver.

An orientation assigns a direction to every row (+1 left-to-right) and
column (+1 top-to-bottom).  It induces one cyclic ordering per row and per
column; their compositions omega_r and omega_c act on the entry set.  The
orderings are compatible when omega_c after omega_r is a single full cycle,
which is exactly the condition for the alternating row-step/column-step walk
on the skeleton to cover every filled cell.

Lines with a single filled cell are accepted but make the corresponding
step the identity, so skeletons with h = 1 or k = 1 are never compatible
once they hold more than one cell.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

from . import perms
from .arrays import Cell, PartiallyFilledArray, Skeleton


@dataclass(frozen=True)
class Orientation:
    """Per-row and per-column directions, each +1 or -1."""

    rows: tuple[int, ...]
    cols: tuple[int, ...]

    def __post_init__(self):
        if any(r not in (1, -1) for r in self.rows) or any(c not in (1, -1) for c in self.cols):
            raise ValueError("orientation entries must be +1 or -1")

    @staticmethod
    def all_positive(m: int, n: int) -> "Orientation":
        return Orientation((1,) * m, (1,) * n)

    def reversed(self) -> "Orientation":
        return Orientation(tuple(-r for r in self.rows), tuple(-c for c in self.cols))


@dataclass(frozen=True)
class OrderingPair:
    """omega_r and omega_c as permutations of the entry set."""

    omega_r: Dict[int, int]
    omega_c: Dict[int, int]
    orientation: Optional[Orientation] = None

    def domain(self) -> frozenset[int]:
        return frozenset(self.omega_r)


def _line_cycle(values: List[int], direction: int) -> List[Tuple[int, int]]:
    seq = values if direction == 1 else values[::-1]
    return list(zip(seq, seq[1:] + seq[:1]))


def orderings_from_orientation(array: PartiallyFilledArray, orientation: Orientation) -> OrderingPair:
    """Cyclic row orderings (left-to-right when r_i=+1, reversed otherwise) and
    dually for columns; returned as permutations of the entries."""
    if len(orientation.rows) != array.m or len(orientation.cols) != array.n:
        raise ValueError(
            f"orientation shape {len(orientation.rows)}x{len(orientation.cols)} "
            f"does not match array {array.m}x{array.n}"
        )
    omega_r: Dict[int, int] = {}
    for i in range(1, array.m + 1):
        for a, b in _line_cycle(array.row_values(i), orientation.rows[i - 1]):
            omega_r[a] = b
    omega_c: Dict[int, int] = {}
    for j in range(1, array.n + 1):
        for a, b in _line_cycle(array.col_values(j), orientation.cols[j - 1]):
            omega_c[a] = b
    return OrderingPair(omega_r, omega_c, orientation)


def is_compatible(pair: OrderingPair) -> bool:
    """True iff omega_c after omega_r is one cycle through all entries."""
    return perms.is_single_cycle(perms.compose(pair.omega_c, pair.omega_r))


def _line_successors(lines: List[List[Cell]], signs: tuple[int, ...]) -> Dict[Cell, Cell]:
    nxt: Dict[Cell, Cell] = {}
    for line, sign in zip(lines, signs):
        seq = line if sign == 1 else line[::-1]
        for a, b in zip(seq, seq[1:] + seq[:1]):
            nxt[a] = b
    return nxt


def composite_step(skeleton: Skeleton, orientation: Orientation) -> Dict[Cell, Cell]:
    """The walk's one-step map on filled cells: next cell along the row
    (direction r_i, wrapping), then next along the new column (direction c_j,
    wrapping).  A bijection, being a composition of two bijections."""
    if len(orientation.rows) != skeleton.m or len(orientation.cols) != skeleton.n:
        raise ValueError("orientation shape does not match skeleton")
    row_lines = [skeleton.row_cells(i) for i in range(1, skeleton.m + 1)]
    col_lines = [skeleton.col_cells(j) for j in range(1, skeleton.n + 1)]
    row_next = _line_successors(row_lines, orientation.rows)
    col_next = _line_successors(col_lines, orientation.cols)
    return {cell: col_next[row_next[cell]] for cell in skeleton.cells}


def knight_walk(skeleton: Skeleton, orientation: Orientation, start: Cell) -> List[Cell]:
    """Orbit of `start` under the composite step, recorded at the
    post-column-move cells; stops on first return to start."""
    if start not in skeleton.cells:
        raise ValueError(f"start cell {start} is not filled")
    step = composite_step(skeleton, orientation)
    walk = [start]
    cur = step[start]
    while cur != start:
        walk.append(cur)
        cur = step[cur]
    return walk


def solve_knight(skeleton: Skeleton) -> Optional[Orientation]:
    """First orientation whose walk covers the whole skeleton, or None.

    Scans row vectors in lexicographic order with +1 before -1 (so the
    all-positive rows, the shape of all known solutions, come first) and,
    within each, all 2^n column vectors in the same order.  Each candidate
    is settled by one O(nk) orbit walk.
    """
    total = len(skeleton.cells)
    start = min(skeleton.cells)
    row_lines = [skeleton.row_cells(i) for i in range(1, skeleton.m + 1)]
    col_lines = [skeleton.col_cells(j) for j in range(1, skeleton.n + 1)]
    for rows in itertools.product((1, -1), repeat=skeleton.m):
        row_next = _line_successors(row_lines, rows)
        for cols in itertools.product((1, -1), repeat=skeleton.n):
            col_next = _line_successors(col_lines, cols)
            count = 1
            cur = col_next[row_next[start]]
            while cur != start:
                count += 1
                cur = col_next[row_next[cur]]
            if count == total:
                return Orientation(rows, cols)
    return None
