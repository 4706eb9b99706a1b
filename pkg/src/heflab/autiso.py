"""Automorphism groups and isomorphism tests for Z_v-regular embeddings.

Any 0-fixing automorphism is pinned down by its values on the neighbors of
0, where it must act as a power of rho0 (orientation preserving) or as a
reflection of the rho0 cycle (orientation reversing).  Candidate maps are
therefore generated from those finitely many seeds, grown over the whole
vertex set by propagating rotation cycles, and finally re-verified edge by
edge.  The returned witnesses are explicit vertex tables, so verification
never depends on how a map was produced.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from . import perms
from .arrays import PartiallyFilledArray, cyclic_diagonal_skeleton
from .embedding import DifferenceRotation, EmbeddingError, is_single_cycle
from .orderings import OrderingPair, Orientation

PRESERVING = "preserving"
REVERSING = "reversing"


@dataclass(frozen=True)
class VertexMap:
    """A total map on Z_v as an image table, tagged with its orientation behavior."""

    table: Tuple[int, ...]
    orientation: str

    def __call__(self, x: int) -> int:
        return self.table[x]

    def is_identity(self) -> bool:
        return all(self.table[x] == x for x in range(len(self.table)))

    def compose(self, other: "VertexMap") -> "VertexMap":
        """self after other; orientations multiply like signs."""
        table = tuple(self.table[other.table[x]] for x in range(len(self.table)))
        flag = PRESERVING if (self.orientation == other.orientation) else REVERSING
        return VertexMap(table, flag)

    def inverse(self) -> "VertexMap":
        inv = [0] * len(self.table)
        for x, y in enumerate(self.table):
            inv[y] = x
        return VertexMap(tuple(inv), self.orientation)


def translation(v: int, g: int) -> VertexMap:
    return VertexMap(tuple((x + g) % v for x in range(v)), PRESERVING)


def unit_multiplier(v: int, u: int, orientation: str = PRESERVING) -> VertexMap:
    return VertexMap(tuple((u * x) % v for x in range(v)), orientation)


@dataclass(frozen=True)
class MorphismVerdict:
    ok: bool
    orientation: Optional[str] = None
    reason: Optional[str] = None

    def __bool__(self):
        return self.ok


def verify_morphism(
    pi: DifferenceRotation, pi2: DifferenceRotation, candidate: Sequence[int] | VertexMap
) -> MorphismVerdict:
    """Accept iff the table is a bijective graph map commuting with the
    rotations on every directed edge, either directly (preserving) or against
    the inverse rotation (reversing)."""
    table = candidate.table if isinstance(candidate, VertexMap) else tuple(candidate)
    ring = pi.ring
    v = ring.v
    if pi2.ring != ring:
        return MorphismVerdict(False, None, "mismatched rings")
    if len(table) != v or set(table) != set(range(v)):
        return MorphismVerdict(False, None, "not a bijection on Z_v")
    step = v // ring.t
    for x in range(v):
        for j in range(0, v, step):
            # same-part vertices must stay same-part (and neighbors neighbors)
            if (table[(x + j) % v] - table[x]) % step != 0:
                return MorphismVerdict(
                    False, None, f"part structure broken at ({x},{(x + j) % v})"
                )
    rho = pi.rho0
    rho2 = pi2.rho0
    rho2_inv = perms.inverse(rho2)
    preserving = True
    reversing = True
    witness = None
    for x in range(v):
        for d in rho:
            y = (x + d) % v
            lhs = table[(x + rho[d]) % v]
            sx, sy = table[x], table[y]
            if preserving and lhs != (sx + rho2[(sy - sx) % v]) % v:
                preserving = False
                witness = (x, y)
            if reversing and lhs != (sx + rho2_inv[(sy - sx) % v]) % v:
                reversing = False
                witness = (x, y)
            if not preserving and not reversing:
                return MorphismVerdict(
                    False, None, f"rotation equation fails both ways at edge {witness}"
                )
    return MorphismVerdict(True, PRESERVING if preserving else REVERSING)


def extend_candidate(
    pi: DifferenceRotation,
    pi2: DifferenceRotation,
    seed: Dict[int, int],
    orientation: str,
) -> Optional[VertexMap]:
    """Grow a partial map covering {0} and N(0) to a total map, or fail.

    Once sigma(x) and one neighbor image are known, the whole rotation cycle
    at x maps forward (preserving) or backward (reversing) onto the cycle at
    sigma(x); any conflict, or an image collision, kills the candidate.
    """
    ring = pi.ring
    v = ring.v
    missing = ({0} | set(pi.rho0)) - set(seed)
    if missing:
        raise ValueError(f"seed must cover vertex 0 and N(0); missing {sorted(missing)[:4]}")
    rho = pi.rho0
    rho2 = pi2.rho0 if orientation == PRESERVING else perms.inverse(pi2.rho0)
    images: Dict[int, int] = {}
    used = set()
    for x, y in seed.items():
        images[x] = y
        if y in used:
            return None
        used.add(y)
    queue = deque(sorted(images))
    enqueued = set(queue)
    while queue:
        x = queue.popleft()
        sx = images[x]
        anchor = next(((x + d) % v for d in rho if (x + d) % v in images), None)
        if anchor is None:
            # cannot happen: vertices are enqueued only once assigned, and a
            # vertex is assigned from an already-known neighbor
            raise RuntimeError(f"propagation reached {x} with no known neighbor")
        y, sy = anchor, images[anchor]
        for _ in range(len(rho) - 1):
            y = (x + rho[(y - x) % v]) % v
            d = (sy - sx) % v
            if d not in rho2:
                return None  # image fell into sigma(x)'s own part: not a graph map
            sy = (sx + rho2[d]) % v
            known = images.get(y)
            if known is not None:
                if known != sy:
                    return None
            else:
                if sy in used:
                    return None
                images[y] = sy
                used.add(sy)
                if y not in enqueued:
                    queue.append(y)
                    enqueued.add(y)
    if len(images) != v:
        return None
    return VertexMap(tuple(images[x] for x in range(v)), orientation)


def _require_regular(rot: DifferenceRotation) -> List[int]:
    if not is_single_cycle(rot):
        raise EmbeddingError("rho0 must be a single cycle")
    return rot.cycle()


def aut0_plus(pi: DifferenceRotation) -> List[VertexMap]:
    """All orientation-preserving automorphisms fixing 0, one candidate per
    power of rho0 on N(0); the identity (power 0) is always present."""
    cycle = _require_regular(pi)
    length = len(cycle)
    out: List[VertexMap] = []
    for ell in range(length):
        seed = {0: 0}
        for j in range(length):
            seed[cycle[j]] = cycle[(j + ell) % length]
        cand = extend_candidate(pi, pi, seed, PRESERVING)
        if cand is None:
            continue
        if verify_morphism(pi, pi, cand).orientation == PRESERVING:
            out.append(cand)
    return out


def aut0_minus(pi: DifferenceRotation) -> List[VertexMap]:
    """All orientation-reversing automorphisms fixing 0, one candidate per
    reflection of the rho0 cycle written from the canonical anchor."""
    cycle = _require_regular(pi)
    length = len(cycle)
    out: List[VertexMap] = []
    for offset in range(length):
        seed = {0: 0}
        for j in range(length):
            seed[cycle[j]] = cycle[(offset - j) % length]
        cand = extend_candidate(pi, pi, seed, REVERSING)
        if cand is None:
            continue
        if verify_morphism(pi, pi, cand).orientation == REVERSING:
            out.append(cand)
    return out


@dataclass(frozen=True)
class AutReport:
    """Summary of the full automorphism group of a Z_v-regular embedding."""

    v: int
    t: int
    aut0_plus_order: int
    aut0_minus_order: int
    generators: Tuple[VertexMap, ...]

    @property
    def aut_order(self) -> int:
        return self.v * (self.aut0_plus_order + self.aut0_minus_order)

    @property
    def translations_only(self) -> bool:
        return self.aut0_plus_order == 1 and self.aut0_minus_order == 0


def full_aut(pi: DifferenceRotation) -> AutReport:
    """Whole-group report: translations contribute a factor of v, the
    0-fixing parts are enumerated exactly."""
    plus = aut0_plus(pi)
    minus = aut0_minus(pi)
    return AutReport(
        pi.ring.v,
        pi.ring.t,
        len(plus),
        len(minus),
        tuple(m for m in plus + minus if not m.is_identity()),
    )


@dataclass(frozen=True)
class IsoVerdict:
    isomorphic: bool
    witness: Optional[VertexMap] = None
    method: str = "exact"

    def __bool__(self):
        return self.isomorphic


def isomorphic(
    pi: DifferenceRotation, pi2: DifferenceRotation, method: str = "exact"
) -> IsoVerdict:
    """Isomorphism test between two Z_v-regular embeddings on the same ring.

    exact: align the rho0 cycle of pi onto every rotation/reflection of the
    rho0 cycle of pi2 (0-fixing seeds suffice by regularity), extend, verify.
    fast: only test the phi(v) unit multipliers x -> u*x, both orientations;
    complete precisely when Aut_0 of the target is trivial.
    """
    if pi.ring != pi2.ring:
        raise EmbeddingError(f"rings differ: {pi.ring} vs {pi2.ring}")
    if method == "fast":
        for u in pi.ring.units():
            verdict = verify_morphism(pi, pi2, unit_multiplier(pi.ring.v, u))
            if verdict:
                return IsoVerdict(True, unit_multiplier(pi.ring.v, u, verdict.orientation), "fast")
        return IsoVerdict(False, None, "fast")
    if method != "exact":
        raise ValueError(f"unknown method {method!r}")
    cyc_a = _require_regular(pi)
    cyc_b = _require_regular(pi2)
    length = len(cyc_a)
    for flag in (PRESERVING, REVERSING):
        for ell in range(length):
            seed = {0: 0}
            for j in range(length):
                if flag == PRESERVING:
                    seed[cyc_a[j]] = cyc_b[(j + ell) % length]
                else:
                    seed[cyc_a[j]] = cyc_b[(ell - j) % length]
            cand = extend_candidate(pi, pi2, seed, flag)
            if cand is None:
                continue
            if verify_morphism(pi, pi2, cand).orientation == flag:
                return IsoVerdict(True, cand, "exact")
    return IsoVerdict(False, None, "exact")


def phi_check(sigma: VertexMap, g: int) -> bool:
    """Whether sigma commutes with translation by g up to relabeling, i.e.
    sigma(x+g) = sigma(x) + sigma(g) for every x."""
    v = len(sigma.table)
    sg = sigma.table[g % v]
    return all(sigma.table[(x + g) % v] == (sigma.table[x] + sg) % v for x in range(v))


def embeddings_equal(
    a: PartiallyFilledArray,
    pair_a: OrderingPair,
    b: PartiallyFilledArray,
    pair_b: OrderingPair,
) -> bool:
    """Literal equality of the induced embeddings: both orderings coincide."""
    if a.entry_set() != b.entry_set():
        raise ValueError("arrays have different supports; embeddings are not comparable")
    return pair_a.omega_r == pair_b.omega_r and pair_a.omega_c == pair_b.omega_c


def diagonal_shift_equivalent(
    a: PartiallyFilledArray,
    orient_a: Orientation,
    b: PartiallyFilledArray,
    orient_b: Orientation,
) -> Optional[int]:
    """The cyclic diagonal shift taking (a, orient_a) to (b, orient_b), or None.

    Both arrays must live on the same cyclically k-diagonal skeleton with
    all-positive row orientations and equal supports; shift ell matches when
    a[i,j] = b[i+ell, j+ell] everywhere and the column directions shift along.
    """
    if a.m != a.n or b.m != b.n or a.m != b.m:
        raise ValueError("diagonal-shift comparison needs square arrays of one size")
    n = a.n
    k = a.skeleton().k
    expected = cyclic_diagonal_skeleton(n, k).cells
    if a.cells != expected or b.cells != expected:
        raise ValueError("arrays are not cyclically k-diagonal")
    for orient in (orient_a, orient_b):
        if len(orient.rows) != n or len(orient.cols) != n:
            raise ValueError("orientation shape does not match the arrays")
    if set(orient_a.rows) != {1} or set(orient_b.rows) != {1}:
        raise ValueError("row orientations must be all +1")
    if a.entry_set() != b.entry_set():
        raise ValueError("arrays have different supports")

    def wrap(i: int, ell: int) -> int:
        return (i + ell - 1) % n + 1

    for ell in range(n):
        if all(
            b.entries[(wrap(i, ell), wrap(j, ell))] == val for (i, j), val in a.entries.items()
        ) and all(orient_b.cols[wrap(j, ell) - 1] == orient_a.cols[j - 1] for j in range(1, n + 1)):
            return ell
    return None
