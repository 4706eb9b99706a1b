"""Partially filled arrays over Z_v: skeletons, fills, and validity checks.

Cells are 1-based (i, j) pairs.  A quasi-Heffter array needs uniform fill
counts (h per row, k per column) and entries forming a support; the
non-zero-sum variant additionally forbids any row or column summing to 0.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Optional

from .prng import SplitMix64
from .rings import Ring, Support, default_support

Cell = tuple[int, int]


class SkeletonError(ValueError):
    pass


@dataclass(frozen=True)
class Skeleton:
    """A set of filled positions with uniform row count h and column count k."""

    m: int
    n: int
    cells: frozenset[Cell]

    def __post_init__(self):
        object.__setattr__(self, "cells", frozenset(self.cells))
        if not self.cells:
            raise SkeletonError("skeleton has no cells")
        for (i, j) in self.cells:
            if not (1 <= i <= self.m and 1 <= j <= self.n):
                raise SkeletonError(f"cell {(i, j)} outside the {self.m}x{self.n} grid")
        row_counts = {i: 0 for i in range(1, self.m + 1)}
        col_counts = {j: 0 for j in range(1, self.n + 1)}
        for (i, j) in self.cells:
            row_counts[i] += 1
            col_counts[j] += 1
        if len(set(row_counts.values())) != 1 or len(set(col_counts.values())) != 1:
            raise SkeletonError("fill counts are not uniform across rows/columns")

    @property
    def h(self) -> int:
        return len(self.cells) // self.m

    @property
    def k(self) -> int:
        return len(self.cells) // self.n

    def row_cells(self, i: int) -> list[Cell]:
        """Cells of row i, left to right."""
        return sorted(c for c in self.cells if c[0] == i)

    def col_cells(self, j: int) -> list[Cell]:
        """Cells of column j, top to bottom."""
        return sorted((c for c in self.cells if c[1] == j), key=lambda c: c[0])

    def sorted_cells(self) -> list[Cell]:
        """All cells in row-major order."""
        return sorted(self.cells)


def cyclic_diagonal_skeleton(n: int, k: int) -> Skeleton:
    """n x n skeleton made of k consecutive cyclic diagonals, the first one
    starting at (1, 1)."""
    if not (1 <= k <= n):
        raise SkeletonError(f"need 1 <= k <= n, got k={k}, n={n}")
    cells = set()
    for d in range(k):
        for col in range(1, n + 1):
            row = (d + col - 1) % n + 1
            cells.add((row, col))
    return Skeleton(n, n, frozenset(cells))


@dataclass(frozen=True)
class ArrayVerdict:
    """Outcome of a validity check; `condition` names the first violated rule."""

    ok: bool
    condition: Optional[str] = None  # "fill_counts" | "support" | "zero_sum"
    message: Optional[str] = None

    def __bool__(self):
        return self.ok


_OK = ArrayVerdict(True)


class PartiallyFilledArray:
    """An m x n grid over Z_v with values on a subset of cells.

    Instances are immutable; derived views (entry set, position index) are
    computed once.  The position index maps x and -x to the cell holding the
    pair and is only meaningful when the array is a valid quasi-Heffter.
    """

    __slots__ = ("ring", "m", "n", "entries", "_positions", "_cells")

    def __init__(self, ring: Ring, m: int, n: int, entries: Mapping[Cell, int]):
        self.ring = ring
        self.m = m
        self.n = n
        canon = {}
        for (i, j), val in entries.items():
            if not (1 <= i <= m and 1 <= j <= n):
                raise SkeletonError(f"cell {(i, j)} outside the {m}x{n} grid")
            canon[(i, j)] = val % ring.v
        self.entries = canon
        self._cells = frozenset(canon)
        positions = {}
        for cell in sorted(canon):
            x = canon[cell]
            positions[x] = cell
            positions[ring.neg(x)] = cell
        self._positions = positions

    @property
    def cells(self) -> frozenset[Cell]:
        return self._cells

    def value_at(self, cell: Cell) -> int:
        return self.entries[cell]

    def entry_set(self) -> frozenset[int]:
        return frozenset(self.entries.values())

    def position(self, x: int) -> Optional[Cell]:
        """Cell holding x or -x; None when neither appears."""
        return self._positions.get(x % self.ring.v)

    def skeleton(self) -> Skeleton:
        return Skeleton(self.m, self.n, self._cells)

    def row_values(self, i: int) -> list[int]:
        return [self.entries[c] for c in sorted(self._cells) if c[0] == i]

    def col_values(self, j: int) -> list[int]:
        cells = sorted((c for c in self._cells if c[1] == j), key=lambda c: c[0])
        return [self.entries[c] for c in cells]

    def row_sum(self, i: int) -> int:
        return sum(self.row_values(i)) % self.ring.v

    def col_sum(self, j: int) -> int:
        return sum(self.col_values(j)) % self.ring.v

    def with_entries(self, patch: Mapping[Cell, Optional[int]]) -> "PartiallyFilledArray":
        """Copy with cells overwritten (value) or cleared (None)."""
        entries = dict(self.entries)
        for cell, val in patch.items():
            if val is None:
                entries.pop(cell, None)
            else:
                entries[cell] = val
        return PartiallyFilledArray(self.ring, self.m, self.n, entries)

    def __eq__(self, other):
        return (
            isinstance(other, PartiallyFilledArray)
            and self.ring == other.ring
            and self.m == other.m
            and self.n == other.n
            and self.entries == other.entries
        )

    def __hash__(self):
        return hash((self.ring, self.m, self.n, tuple(sorted(self.entries.items()))))

    def __repr__(self):
        return (
            f"PartiallyFilledArray(v={self.ring.v}, t={self.ring.t}, "
            f"{self.m}x{self.n}, {len(self.entries)} cells)"
        )


def validate_qh(array: PartiallyFilledArray) -> ArrayVerdict:
    """Check the quasi-Heffter conditions: uniform fill counts, then support coverage."""
    ring = array.ring
    total = len(array.entries)
    if total == 0:
        return ArrayVerdict(False, "fill_counts", "array has no filled cells")
    row_counts = {i: 0 for i in range(1, array.m + 1)}
    col_counts = {j: 0 for j in range(1, array.n + 1)}
    for (i, j) in array.cells:
        row_counts[i] += 1
        col_counts[j] += 1
    h = max(row_counts.values())
    k = max(col_counts.values())
    for i in range(1, array.m + 1):
        if row_counts[i] != h:
            return ArrayVerdict(False, "fill_counts", f"row {i} has {row_counts[i]} < {h} entries")
    for j in range(1, array.n + 1):
        if col_counts[j] != k:
            return ArrayVerdict(False, "fill_counts", f"column {j} has {col_counts[j]} < {k} entries")
    if ring.v != 2 * total + ring.t:
        return ArrayVerdict(
            False, "support", f"v={ring.v} != 2*{total}+{ring.t}; entries cannot cover Z_v \\ J"
        )
    seen: dict[int, Cell] = {}
    for cell in sorted(array.cells):
        x = array.entries[cell]
        if ring.in_j(x):
            return ArrayVerdict(False, "support", f"entry {x} at {cell} lies in the subgroup J")
        for y in (x, ring.neg(x)):
            if y in seen:
                return ArrayVerdict(
                    False, "support", f"{y} covered twice (cells {seen[y]} and {cell})"
                )
        seen[x] = cell
        seen[ring.neg(x)] = cell
    return _OK


def validate_nh(array: PartiallyFilledArray) -> ArrayVerdict:
    """Check the non-zero-sum condition on top of validate_qh."""
    qh = validate_qh(array)
    if not qh:
        return qh
    for i in range(1, array.m + 1):
        if array.row_sum(i) == 0:
            return ArrayVerdict(False, "zero_sum", f"row {i} sums to 0 (mod {array.ring.v})")
    for j in range(1, array.n + 1):
        if array.col_sum(j) == 0:
            return ArrayVerdict(False, "zero_sum", f"column {j} sums to 0 (mod {array.ring.v})")
    return _OK


def row_major_fill(
    skeleton: Skeleton, ring: Ring, omega: Optional[Support] = None
) -> PartiallyFilledArray:
    """Fill the skeleton row-major with a support in ascending order.

    With the default support and t=1 this writes 1, 2, ..., nk left to
    right, top to bottom: the canonical hand-checkable fixture.
    """
    if omega is None:
        omega = default_support(ring)
    cells = skeleton.sorted_cells()
    if len(cells) != len(omega):
        raise SkeletonError(
            f"skeleton holds {len(cells)} cells but the support has {len(omega)} elements"
        )
    return PartiallyFilledArray(ring, skeleton.m, skeleton.n, dict(zip(cells, omega.elements)))


def random_fill(skeleton: Skeleton, omega: Support, seed: int) -> PartiallyFilledArray:
    """Uniform random bijection cells -> support via a seeded shuffle.

    The support is shuffled in its canonical (ascending) order and assigned
    to cells sorted row-major, so the draw has no hidden order dependence.
    """
    cells = skeleton.sorted_cells()
    if len(cells) != len(omega):
        raise SkeletonError(
            f"skeleton holds {len(cells)} cells but the support has {len(omega)} elements"
        )
    values = list(omega.elements)
    SplitMix64(seed).shuffle(values)
    return PartiallyFilledArray(omega.ring, skeleton.m, skeleton.n, dict(zip(cells, values)))


def transpose(array: PartiallyFilledArray) -> PartiallyFilledArray:
    """Swap rows and columns; exchanges the roles of h and k."""
    entries = {(j, i): val for (i, j), val in array.entries.items()}
    return PartiallyFilledArray(array.ring, array.n, array.m, entries)
