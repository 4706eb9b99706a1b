"""Vertex-transitive rotation systems on K_{(v/t) x t} and their face structure.

The whole embedding is compressed into one permutation rho0 of Z_v \\ J:
the rotation at vertex x sends neighbor y to x + rho0(y - x).  Faces are
orbits of the successor map (x, y) -> (y, y + rho0(x - y)) on directed
edges; the census of face lengths is predicted line-by-line from the row
and column sums of the source array.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from . import perms
from .arrays import PartiallyFilledArray, validate_qh
from .orderings import OrderingPair
from .rings import Ring, nonsubgroup_elements

Edge = Tuple[int, int]


class EmbeddingError(ValueError):
    pass


@dataclass(frozen=True)
class DifferenceRotation:
    """A permutation rho0 of Z_v \\ J; the compact form of a Z_v-regular embedding.

    `anchor` fixes where the single cycle is conventionally written to start:
    for array-backed rotations it is the entry at the lexicographically
    smallest filled cell, otherwise the smallest element of the domain.
    """

    ring: Ring
    rho0: Dict[int, int]
    anchor: int = field(default=-1)

    def __post_init__(self):
        domain = set(nonsubgroup_elements(self.ring))
        if set(self.rho0) != domain or set(self.rho0.values()) != domain:
            raise EmbeddingError("rho0 must permute Z_v \\ J")
        if self.anchor == -1:
            object.__setattr__(self, "anchor", min(domain))
        elif self.anchor not in domain:
            raise EmbeddingError(f"anchor {self.anchor} is not in the domain")

    def cycle(self) -> List[int]:
        """The orbit of the anchor under rho0 (the full cycle when single)."""
        return perms.cycle_from(self.rho0, self.anchor)

    def inverse(self) -> "DifferenceRotation":
        return DifferenceRotation(self.ring, perms.inverse(self.rho0), self.anchor)

    def rotation_at(self, x: int, y: int) -> int:
        """Successor of neighbor y in the rotation at vertex x."""
        return (x + self.rho0[(y - x) % self.ring.v]) % self.ring.v

    def canonical_pairs(self) -> Tuple[Tuple[int, int], ...]:
        return tuple(sorted(self.rho0.items()))

    def __eq__(self, other):
        return (
            isinstance(other, DifferenceRotation)
            and self.ring == other.ring
            and self.rho0 == other.rho0
        )

    def __hash__(self):
        return hash((self.ring, self.canonical_pairs()))


def build_rho0(array: PartiallyFilledArray, pair: OrderingPair) -> DifferenceRotation:
    """Glue the row and column orderings into the difference rotation:
    entries map to minus their row successor, negated entries to the column
    successor of their negation."""
    verdict = validate_qh(array)
    if not verdict:
        raise EmbeddingError(f"array is not quasi-Heffter: {verdict.message}")
    ring = array.ring
    entries = array.entry_set()
    if frozenset(pair.omega_r) != entries or frozenset(pair.omega_c) != entries:
        raise EmbeddingError("ordering pair does not act on this array's entries")
    rho0: Dict[int, int] = {}
    for a in entries:
        rho0[a] = ring.neg(pair.omega_r[a])
        rho0[ring.neg(a)] = pair.omega_c[a]
    anchor = array.entries[min(array.cells)]
    return DifferenceRotation(ring, rho0, anchor)


def is_single_cycle(rot: DifferenceRotation) -> bool:
    """True iff rho0 is one (v-t)-cycle, i.e. the source orderings were compatible."""
    return perms.is_single_cycle(rot.rho0)


@dataclass(frozen=True)
class RotationSystem:
    """Explicit per-vertex cyclic neighbor lists over the vertex set Z_v."""

    ring: Ring
    rotations: Dict[int, Tuple[int, ...]]

    def neighbors(self, x: int) -> frozenset[int]:
        return frozenset(self.rotations[x])

    def validate(self) -> None:
        """Check the combinatorial-embedding conditions: every vertex carries
        one cycle through its full neighborhood."""
        ring = self.ring
        diffs = set(nonsubgroup_elements(ring))
        if set(self.rotations) != set(range(ring.v)):
            raise EmbeddingError("rotation system must cover every vertex of Z_v")
        for x, cyc in self.rotations.items():
            expected = {(x + d) % ring.v for d in diffs}
            if len(cyc) != len(expected) or set(cyc) != expected:
                raise EmbeddingError(f"rotation at {x} is not a full cycle on N({x})")


def expand(rot: DifferenceRotation) -> RotationSystem:
    """Translate the rho0 cycle to every vertex; only defined when rho0 is a
    single cycle (otherwise the per-vertex rotations would split)."""
    if not is_single_cycle(rot):
        raise EmbeddingError("rho0 is not a single cycle; per-vertex rotations would split")
    base = rot.cycle()
    v = rot.ring.v
    rotations = {x: tuple((x + d) % v for d in base) for x in range(v)}
    return RotationSystem(rot.ring, rotations)


def face_successor(rot: DifferenceRotation, edge: Edge) -> Edge:
    """Next directed edge of the face containing `edge`: (x,y) -> (y, y+rho0(x-y))."""
    x, y = edge
    ring = rot.ring
    d = (y - x) % ring.v
    if ring.in_j(d):
        raise EmbeddingError(f"({x},{y}) is not an edge: difference {d} lies in J")
    return (y, (y + rot.rho0[(x - y) % ring.v]) % ring.v)


@dataclass(frozen=True)
class Face:
    """A face boundary as a canonical cyclic vertex sequence.

    Canonical form rotates the cycle so the minimal vertex comes first
    (lexicographically smallest rotation when that vertex repeats); the
    traversal direction is preserved (orientation is data).
    """

    vertices: Tuple[int, ...]

    @staticmethod
    def from_walk(walk: List[int]) -> "Face":
        lowest = min(walk)
        best = None
        for pivot, vertex in enumerate(walk):
            if vertex != lowest:
                continue
            candidate = tuple(walk[pivot:] + walk[:pivot])
            if best is None or candidate < best:
                best = candidate
        return Face(best)

    @property
    def length(self) -> int:
        return len(self.vertices)

    def directed_edges(self) -> List[Edge]:
        verts = self.vertices
        return [(verts[i], verts[(i + 1) % len(verts)]) for i in range(len(verts))]

    def shift(self, g: int, v: int) -> "Face":
        return Face.from_walk([(x + g) % v for x in self.vertices])


@dataclass(frozen=True)
class FaceCensus:
    """Multiset of face lengths; `lengths` maps length -> count."""

    lengths: Dict[int, int]
    faces: Optional[Tuple[Face, ...]] = None

    @property
    def face_count(self) -> int:
        return sum(self.lengths.values())

    @property
    def total_boundary(self) -> int:
        return sum(length * count for length, count in self.lengths.items())

    def __eq__(self, other):
        return isinstance(other, FaceCensus) and dict(self.lengths) == dict(other.lengths)

    def __hash__(self):
        return hash(tuple(sorted(self.lengths.items())))


def trace_face(rot: DifferenceRotation, edge: Edge) -> Face:
    """Follow face successors from `edge` until the orbit closes."""
    walk = [edge[0]]
    cur = face_successor(rot, edge)
    while cur != edge:
        walk.append(cur[0])
        cur = face_successor(rot, cur)
    return Face.from_walk(walk)


def all_faces(rot: DifferenceRotation, keep_faces: bool = False) -> FaceCensus:
    """Trace every face of the embedding by partitioning the v(v-t) directed
    edges into successor orbits."""
    if not is_single_cycle(rot):
        raise EmbeddingError("embedding undefined: rho0 is not a single cycle")
    ring = rot.ring
    rho0 = rot.rho0
    v = ring.v
    seen: set[Edge] = set()
    lengths: Counter[int] = Counter()
    faces: List[Face] = []
    diffs = sorted(rho0)
    for x in range(v):
        for d in diffs:
            edge = (x, (x + d) % v)
            if edge in seen:
                continue
            walk = [x]
            cur = edge
            while True:
                cur = (cur[1], (cur[1] + rho0[(cur[0] - cur[1]) % v]) % v)
                if cur == edge:
                    break
                seen.add(cur)
                walk.append(cur[0])
            seen.add(edge)
            lengths[len(walk)] += 1
            if keep_faces:
                faces.append(Face.from_walk(walk))
    return FaceCensus(dict(lengths), tuple(faces) if keep_faces else None)


def lambda_of(line_sum: int, v: int) -> int:
    """Order of a line sum in Z_v: the least q > 0 with q*sum = 0."""
    return v // math.gcd(line_sum % v, v)


def face_multiset_formula(array: PartiallyFilledArray) -> FaceCensus:
    """Predicted face-length census: each column C yields v/lambda_C faces of
    length k*lambda_C, each row R yields v/lambda_R faces of length h*lambda_R,
    where lambda is the order of the line's sum in Z_v."""
    verdict = validate_qh(array)
    if not verdict:
        raise EmbeddingError(f"array is not quasi-Heffter: {verdict.message}")
    ring = array.ring
    skeleton = array.skeleton()
    h, k = skeleton.h, skeleton.k
    lengths: Counter[int] = Counter()
    for j in range(1, array.n + 1):
        lam = lambda_of(array.col_sum(j), ring.v)
        lengths[k * lam] += ring.v // lam
    for i in range(1, array.m + 1):
        lam = lambda_of(array.row_sum(i), ring.v)
        lengths[h * lam] += ring.v // lam
    return FaceCensus(dict(lengths))


def generating_line(array: PartiallyFilledArray, edge: Edge) -> Tuple[str, int]:
    """Which line of the array traces the face through this directed edge:
    a positive difference is consumed by its column, a negated one by the
    row of its negation."""
    ring = array.ring
    d = (edge[1] - edge[0]) % ring.v
    if ring.in_j(d):
        raise EmbeddingError(f"{edge} is not an edge of the graph")
    if d in array.entry_set():
        return ("col", array.position(d)[1])
    return ("row", array.position(ring.neg(d))[0])


def euler_genus(census: FaceCensus, ring: Ring) -> int:
    """Genus of the closed orientable surface via Euler's formula
    chi = V - E + F with V = v and E = v(v-t)/2."""
    v, t = ring.v, ring.t
    edges = v * (v - t) // 2
    if census.total_boundary != v * (v - t):
        raise EmbeddingError(
            f"face boundaries cover {census.total_boundary} directed edges, expected {v * (v - t)}"
        )
    chi = v - edges + census.face_count
    if chi % 2 != 0 or chi > 2:
        raise EmbeddingError(f"Euler characteristic {chi} is not that of an orientable surface")
    return (2 - chi) // 2
