"""Permutations on arbitrary finite domains, stored as plain dicts.

A permutation maps every key of the dict to a value; domain and image must
coincide.  `compose(f, g)` applies g first, so compose(f, g)(x) = f(g(x)),
matching the usual right-to-left reading of "f after g".
"""

from __future__ import annotations

from typing import Dict, Hashable, Iterable, List, Tuple

Perm = Dict[Hashable, Hashable]


def identity(domain: Iterable) -> Perm:
    return {x: x for x in domain}


def is_permutation(p: Perm) -> bool:
    return set(p.keys()) == set(p.values()) and len(set(p.values())) == len(p)


def compose(f: Perm, g: Perm) -> Perm:
    """f after g: x -> f(g(x)).  Domains must agree."""
    return {x: f[gx] for x, gx in g.items()}


def inverse(p: Perm) -> Perm:
    return {v: k for k, v in p.items()}


def from_cycles(cycles: Iterable[Tuple], domain: Iterable = ()) -> Perm:
    """Build a permutation from disjoint cycles; unlisted domain points are fixed."""
    p: Perm = {x: x for x in domain}
    for cyc in cycles:
        for a, b in zip(cyc, cyc[1:] + cyc[:1]):
            if a in p and p[a] != a:
                raise ValueError(f"cycles are not disjoint at {a!r}")
            p[a] = b
    if not is_permutation(p):
        raise ValueError("cycle notation does not define a permutation")
    return p


def cycles(p: Perm) -> List[Tuple]:
    """Disjoint cycle decomposition, fixed points included, deterministic order."""
    seen = set()
    out = []
    for start in sorted(p):
        if start in seen:
            continue
        cyc = [start]
        seen.add(start)
        x = p[start]
        while x != start:
            cyc.append(x)
            seen.add(x)
            x = p[x]
        out.append(tuple(cyc))
    return out


def cycle_from(p: Perm, start: Hashable) -> List:
    """The orbit of `start` under p, in iteration order."""
    orbit = [start]
    x = p[start]
    while x != start:
        orbit.append(x)
        x = p[x]
    return orbit


def is_single_cycle(p: Perm) -> bool:
    """True iff p is one cycle covering its whole domain."""
    if not p:
        return False
    return len(cycle_from(p, next(iter(p)))) == len(p)


def power(p: Perm, n: int) -> Perm:
    """p composed with itself n times (n may be negative)."""
    out = identity(p.keys())
    if n == 0:
        return out
    base = p if n > 0 else inverse(p)
    for _ in range(abs(n)):
        out = compose(base, out)
    return out
