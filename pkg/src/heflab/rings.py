"""Modular arithmetic over Z_v, the excluded subgroup J of order t, and supports.

A support is a set of coset representatives: picking one element out of each
pair {x, -x} with x outside J.  Entries of a quasi-Heffter array are drawn
from a support, so +/- the entries tile Z_v \\ J exactly once.
"""

from __future__ import annotations

from dataclasses import dataclass

from .prng import SplitMix64


class InvalidRingError(ValueError):
    """Raised when (v, t) cannot carry the structures of this package."""


@dataclass(frozen=True)
class Ring:
    """Z_v together with the part size t; J is the unique subgroup of order t."""

    v: int
    t: int = 1

    def __post_init__(self):
        if self.v < 3:
            raise InvalidRingError(f"modulus v={self.v} must be at least 3")
        if self.t < 1 or self.t >= self.v:
            raise InvalidRingError(f"part size t={self.t} must satisfy 1 <= t < v")
        if self.v % self.t != 0:
            raise InvalidRingError(f"t={self.t} does not divide v={self.v}")
        # An even v whose half is outside J makes v/2 its own negative while
        # still needing support coverage, which is impossible.
        if self.v % 2 == 0 and (self.v // 2) % (self.v // self.t) != 0:
            raise InvalidRingError(
                f"v={self.v} even requires v/2 in J (t={self.t} is too small/odd)"
            )

    def neg(self, x: int) -> int:
        return (-x) % self.v

    def add(self, x: int, y: int) -> int:
        return (x + y) % self.v

    def sub(self, x: int, y: int) -> int:
        return (x - y) % self.v

    def in_j(self, x: int) -> bool:
        return x % (self.v // self.t) == 0

    def units(self) -> list[int]:
        """All multiplicatively invertible elements of Z_v, ascending."""
        from math import gcd

        return [u for u in range(1, self.v) if gcd(u, self.v) == 1]


def subgroup_j(ring: Ring) -> frozenset[int]:
    """The subgroup {0, v/t, 2v/t, ...} of order t."""
    step = ring.v // ring.t
    return frozenset(range(0, ring.v, step))


def nonsubgroup_elements(ring: Ring) -> list[int]:
    """Z_v \\ J in ascending order; the vertex-difference alphabet."""
    step = ring.v // ring.t
    return [x for x in range(ring.v) if x % step != 0]


@dataclass(frozen=True)
class Support:
    """Half-orbit Omega with Omega, -Omega, J partitioning Z_v."""

    ring: Ring
    elements: tuple[int, ...]

    def __post_init__(self):
        ring = self.ring
        elems = tuple(sorted(x % ring.v for x in self.elements))
        object.__setattr__(self, "elements", elems)
        expected = (ring.v - ring.t) // 2
        if len(elems) != len(set(elems)):
            raise InvalidRingError("support contains a repeated element")
        if len(elems) != expected:
            raise InvalidRingError(
                f"support has {len(elems)} elements, needs (v-t)/2 = {expected}"
            )
        covered = set(elems) | {ring.neg(x) for x in elems}
        if covered != set(nonsubgroup_elements(ring)):
            raise InvalidRingError("support and its negatives do not tile Z_v \\ J")

    def __iter__(self):
        return iter(self.elements)

    def __len__(self):
        return len(self.elements)

    def __contains__(self, x):
        return x in set(self.elements)


def default_support(ring: Ring) -> Support:
    """Canonical support: the lower half 1..ceil(v/2)-1 minus J."""
    top = (ring.v + 1) // 2
    return Support(ring, tuple(x for x in range(1, top) if not ring.in_j(x)))


def random_support(ring: Ring, seed: int) -> Support:
    """Deterministically re-sign the default support, each element flipped with p=1/2."""
    gen = SplitMix64(seed)
    elems = []
    for x in default_support(ring).elements:
        elems.append(ring.neg(x) if gen.next_bit() else x)
    return Support(ring, tuple(elems))
