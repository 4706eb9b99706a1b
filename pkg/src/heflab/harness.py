"""Seeded Monte Carlo experiments over random array fills.

Four experiment kinds are supported:

  nh-fraction          fraction of fills whose rows/columns all have nonzero
                       sum, against the closed-form lower bound
  aut-trivial-fraction fraction of fills whose embedding has extra
                       automorphisms, tracked across sizes (should shrink)
  distinctness         collision census of the induced embeddings over many
                       distinct fills, collisions explained by diagonal shifts
  census-consistency   structural invariants of every sampled embedding

Replays are bit-exact: sample i of size-index s draws from
subseed(master, s*samples + i), and random supports from
subseed(master, -1-s), independent of worker scheduling.  The environment
variable HEFLAB_THREADS caps worker processes (absent: all cores).
"""

from __future__ import annotations

import hashlib
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from math import sqrt
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from .arrays import (
    PartiallyFilledArray,
    cyclic_diagonal_skeleton,
    random_fill,
    row_major_fill,
    validate_nh,
)
from .autiso import (
    PRESERVING,
    diagonal_shift_equivalent,
    embeddings_equal,
    full_aut,
    translation,
    verify_morphism,
)
from .embedding import (
    all_faces,
    build_rho0,
    euler_genus,
    expand,
    face_multiset_formula,
    generating_line,
    is_single_cycle,
    lambda_of,
)
from .jsonio import array_to_json, orientation_to_json
from .orderings import Orientation, orderings_from_orientation, solve_knight
from .prng import subseed
from .rings import Ring, Support, default_support, random_support

KINDS = ("nh-fraction", "aut-trivial-fraction", "distinctness", "census-consistency")

SUBSEED_RULE = "subseed(master, size_index*samples + i); support of size s: subseed(master, -1-s)"


class ExperimentError(RuntimeError):
    """An experiment could not run or found a structural violation."""

    def __init__(self, message: str, payload: Optional[dict] = None):
        super().__init__(message)
        self.payload = payload or {}


@dataclass(frozen=True)
class ExperimentSpec:
    """Parameters of one experiment; serializable and hashable."""

    kind: str
    sizes: Tuple[Tuple[int, int], ...]
    t: int = 1
    skeleton: str = "cyclic-diagonal"
    support: str = "default"
    samples: int = 1000
    seed: int = 0

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown experiment kind {self.kind!r}")
        if self.skeleton != "cyclic-diagonal":
            raise ValueError(f"unsupported skeleton kind {self.skeleton!r}")
        if self.support not in ("default", "random"):
            raise ValueError(f"unsupported support policy {self.support!r}")
        if not self.sizes:
            raise ValueError("at least one (n, k) size is required")
        object.__setattr__(self, "sizes", tuple((int(n), int(k)) for n, k in self.sizes))
        for n, k in self.sizes:
            if not 1 <= k <= n:
                raise ValueError(f"need 1 <= k <= n, got {(n, k)}")
            if (n * k) % 2 == 0:
                raise ValueError(f"cyclic-diagonal runs need nk odd, got {(n, k)}")
            if (2 * n * k) % self.t != 0:
                raise ValueError(f"t={self.t} does not divide 2nk for {(n, k)}")
        if self.t % 4 == 0:
            raise ValueError("cyclic-diagonal runs need t not divisible by 4")
        if self.samples < 0:
            raise ValueError("sample count cannot be negative")

    @staticmethod
    def from_json(obj: dict) -> "ExperimentSpec":
        sizes = obj.get("sizes")
        if sizes is None:
            sizes = [[obj["n"], obj["k"]]]
        return ExperimentSpec(
            kind=obj["kind"],
            sizes=tuple((n, k) for n, k in sizes),
            t=obj.get("t", 1),
            skeleton=obj.get("skeleton", "cyclic-diagonal"),
            support=obj.get("support", "default"),
            samples=obj.get("samples", 1000),
            seed=obj.get("seed", 0),
        )

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "sizes": [list(s) for s in self.sizes],
            "t": self.t,
            "skeleton": self.skeleton,
            "support": self.support,
            "samples": self.samples,
            "seed": self.seed,
        }


@dataclass
class ExperimentReport:
    """Results plus everything needed to replay them."""

    spec: ExperimentSpec
    passed: bool
    results: Dict[str, object]
    rows: List[Dict[str, object]] = field(default_factory=list)
    subseed_rule: str = SUBSEED_RULE
    wall_clock_s: float = 0.0

    def to_json(self) -> dict:
        return {
            "spec": self.spec.to_json(),
            "passed": self.passed,
            "results": self.results,
            "subseed_rule": self.subseed_rule,
            "wall_clock_s": self.wall_clock_s,
        }

    def csv_rows(self) -> List[Dict[str, object]]:
        return self.rows


def thread_cap() -> int:
    raw = os.environ.get("HEFLAB_THREADS")
    if raw is None:
        return os.cpu_count() or 1
    return max(1, int(raw))


def _parallel_map(fn: Callable, args: Sequence, threads: Optional[int] = None) -> List:
    """Order-preserving map, fanned out over processes when it pays off."""
    threads = thread_cap() if threads is None else threads
    if threads <= 1 or len(args) < 4:
        return [fn(a) for a in args]
    try:
        with ProcessPoolExecutor(max_workers=threads) as pool:
            chunk = max(1, len(args) // (threads * 8))
            return list(pool.map(fn, args, chunksize=chunk))
    except OSError:
        return [fn(a) for a in args]


def _ring_for(n: int, k: int, t: int) -> Ring:
    return Ring(2 * n * k + t, t)


def _support_for(spec: ExperimentSpec, ring: Ring, size_index: int) -> Support:
    if spec.support == "random":
        return random_support(ring, subseed(spec.seed, -1 - size_index))
    return default_support(ring)


def _proportion(hits: int, total: int) -> Tuple[float, float]:
    p = hits / total
    return p, sqrt(p * (1 - p) / total)


# ---------------------------------------------------------------------------
# worker functions (top level so they cross process boundaries)


def _nh_sample(args) -> bool:
    n, k, t, omega_elems, seed = args
    ring = Ring(2 * n * k + t, t)
    skeleton = cyclic_diagonal_skeleton(n, k)
    arr = random_fill(skeleton, Support(ring, omega_elems), seed)
    return bool(validate_nh(arr))


def _aut_sample(args):
    n, k, t, omega_elems, rows, cols, seed = args
    ring = Ring(2 * n * k + t, t)
    skeleton = cyclic_diagonal_skeleton(n, k)
    arr = random_fill(skeleton, Support(ring, omega_elems), seed)
    rot = build_rho0(arr, orderings_from_orientation(arr, Orientation(rows, cols)))
    report = full_aut(rot)
    if report.translations_only:
        return (True, None, None)
    witness = report.generators[0]
    return (False, list(witness.table), witness.orientation)


def _census_sample(args):
    n, k, t, omega_elems, rows, cols, seed, row_major = args
    ring = Ring(2 * n * k + t, t)
    skeleton = cyclic_diagonal_skeleton(n, k)
    omega = Support(ring, omega_elems)
    if row_major:
        arr = row_major_fill(skeleton, ring, omega)
    else:
        arr = random_fill(skeleton, omega, seed)
    orientation = Orientation(rows, cols)
    rot = build_rho0(arr, orderings_from_orientation(arr, orientation))
    failure = _check_census_invariants(arr, rot)
    if failure is not None:
        return (False, failure, array_to_json(arr), None, None)
    census = all_faces(rot)
    return (True, None, None, sorted(census.lengths.items()), euler_genus(census, ring))


def _check_census_invariants(arr: PartiallyFilledArray, rot) -> Optional[str]:
    """All structural checks for one sampled embedding; returns the first
    violation as text, None when everything holds."""
    ring = arr.ring
    v, t = ring.v, ring.t
    if not is_single_cycle(rot):
        return "rho0 is not a single cycle"
    try:
        expand(rot).validate()
    except Exception as exc:
        return f"rotation system invalid: {exc}"
    traced = all_faces(rot, keep_faces=True)
    formula = face_multiset_formula(arr)
    if traced != formula:
        return f"census mismatch: traced {traced.lengths} vs formula {formula.lengths}"
    if traced.total_boundary != v * (v - t):
        return f"boundary count {traced.total_boundary} != v(v-t) = {v * (v - t)}"
    skeleton = arr.skeleton()
    h, k = skeleton.h, skeleton.k
    line_faces: Dict[Tuple[str, int], int] = {}
    for face in traced.faces:
        tags = {generating_line(arr, e) for e in face.directed_edges()}
        if len(tags) != 1:
            return f"face {face.vertices} has mixed generating lines {sorted(tags)}"
        tag = tags.pop()
        kind, index = tag
        lam = lambda_of(arr.col_sum(index) if kind == "col" else arr.row_sum(index), v)
        width = k if kind == "col" else h
        if face.length != width * lam:
            return f"face from {tag} has length {face.length} != {width * lam}"
        line_faces[tag] = line_faces.get(tag, 0) + 1
    for j in range(1, arr.n + 1):
        lam = lambda_of(arr.col_sum(j), v)
        if line_faces.get(("col", j), 0) != v // lam:
            return f"column {j} generated {line_faces.get(('col', j), 0)} faces, expected {v // lam}"
    for i in range(1, arr.m + 1):
        lam = lambda_of(arr.row_sum(i), v)
        if line_faces.get(("row", i), 0) != v // lam:
            return f"row {i} generated {line_faces.get(('row', i), 0)} faces, expected {v // lam}"
    try:
        euler_genus(traced, ring)
    except Exception as exc:
        return f"genus inconsistent: {exc}"
    for g in (1, v // 2):
        verdict = verify_morphism(rot, rot, translation(v, g))
        if not verdict.ok or verdict.orientation != PRESERVING:
            return f"translation by {g} rejected: {verdict.reason or verdict.orientation}"
    return None


def _distinct_sample(args):
    n, k, t, omega_elems, rows, cols, seed = args
    ring = Ring(2 * n * k + t, t)
    skeleton = cyclic_diagonal_skeleton(n, k)
    arr = random_fill(skeleton, Support(ring, omega_elems), seed)
    rot = build_rho0(arr, orderings_from_orientation(arr, Orientation(rows, cols)))
    entries = tuple(sorted(arr.entries.items()))
    digest = hashlib.sha256(repr(rot.canonical_pairs()).encode()).hexdigest()
    return (entries, digest)


# ---------------------------------------------------------------------------
# experiment runners


def _single_size(spec: ExperimentSpec) -> Tuple[int, int]:
    if len(spec.sizes) != 1:
        raise ExperimentError(f"{spec.kind} expects exactly one (n, k) size")
    return spec.sizes[0]


def run_nh_fraction(spec: ExperimentSpec) -> ExperimentReport:
    """Estimate the probability that a uniform fill has no zero-sum line and
    compare against the 1 - (m/(mh-h+1) + n/(nk-k+1)) lower bound."""
    if spec.samples == 0:
        raise ExperimentError("empty sample: nh-fraction needs samples >= 1")
    start = time.monotonic()
    n, k = _single_size(spec)
    ring = _ring_for(n, k, spec.t)
    skeleton = cyclic_diagonal_skeleton(n, k)
    omega = _support_for(spec, ring, 0)
    orientation = solve_knight(skeleton)
    m, h = skeleton.m, skeleton.h
    bound = 1.0 - (m / (m * h - h + 1) + n / (n * k - k + 1))
    args = [(n, k, spec.t, omega.elements, subseed(spec.seed, i)) for i in range(spec.samples)]
    outcomes = _parallel_map(_nh_sample, args)
    hits = sum(outcomes)
    estimate, se = _proportion(hits, spec.samples)
    passed = estimate >= bound - 3 * se
    rows = [
        {"sample": i, "subseed": args[i][4], "nh_ok": int(outcomes[i])}
        for i in range(spec.samples)
    ]
    return ExperimentReport(
        spec,
        passed,
        {
            "estimate": estimate,
            "standard_error": se,
            "bound": bound,
            "tolerance": "estimate >= bound - 3*SE",
            "hits": hits,
            "skeleton_solvable": orientation is not None,
        },
        rows,
        wall_clock_s=time.monotonic() - start,
    )


def run_aut_trivial_fraction(spec: ExperimentSpec) -> ExperimentReport:
    """Estimate, for each size, how often the embedding of a random fill has
    automorphisms beyond the translations; the fraction should not grow with
    nk and should sit below 1/2 at the largest size."""
    if spec.samples == 0:
        raise ExperimentError("empty sample: aut-trivial-fraction needs samples >= 1")
    start = time.monotonic()
    per_size = []
    rows: List[Dict[str, object]] = []
    for s, (n, k) in enumerate(spec.sizes):
        ring = _ring_for(n, k, spec.t)
        skeleton = cyclic_diagonal_skeleton(n, k)
        orientation = solve_knight(skeleton)
        if orientation is None:
            raise ExperimentError(f"skeleton ({n},{k}) admits no covering orientation")
        omega = _support_for(spec, ring, s)
        args = [
            (
                n,
                k,
                spec.t,
                omega.elements,
                orientation.rows,
                orientation.cols,
                subseed(spec.seed, s * spec.samples + i),
            )
            for i in range(spec.samples)
        ]
        outcomes = _parallel_map(_aut_sample, args)
        nontrivial = 0
        witnesses = []
        for i, (trivial, table, flag) in enumerate(outcomes):
            rows.append(
                {"size_index": s, "n": n, "k": k, "sample": i, "aut_trivial": int(trivial)}
            )
            if trivial:
                continue
            nontrivial += 1
            # soundness replay: the stored witness must still verify
            arr = random_fill(skeleton, omega, args[i][6])
            rot = build_rho0(arr, orderings_from_orientation(arr, orientation))
            verdict = verify_morphism(rot, rot, tuple(table))
            if not verdict:
                raise ExperimentError(
                    f"stored witness fails re-verification at size {(n, k)} sample {i}",
                    {"array": array_to_json(arr), "witness": table},
                )
            witnesses.append({"size_index": s, "sample": i, "witness": table, "kind": flag})
        q, se = _proportion(nontrivial, spec.samples)
        per_size.append(
            {"n": n, "k": k, "nk": n * k, "nontrivial_fraction": q, "standard_error": se}
        )
    smallest = min(per_size, key=lambda r: r["nk"])
    largest = max(per_size, key=lambda r: r["nk"])
    se_diff = sqrt(smallest["standard_error"] ** 2 + largest["standard_error"] ** 2)
    passed = (
        largest["nontrivial_fraction"]
        <= smallest["nontrivial_fraction"] + 2 * se_diff
        and largest["nontrivial_fraction"] < 0.5
    )
    return ExperimentReport(
        spec,
        passed,
        {
            "per_size": per_size,
            "trend_tolerance": "q(nk_max) <= q(nk_min) + 2*sqrt(SE_min^2 + SE_max^2)",
            "largest_below_half": largest["nontrivial_fraction"] < 0.5,
            "witnesses": witnesses,
        },
        rows,
        wall_clock_s=time.monotonic() - start,
    )


def run_distinctness(spec: ExperimentSpec) -> ExperimentReport:
    """Collect N pairwise-distinct fills, group their embeddings by a digest
    of rho0, re-verify collisions exactly, and require every equal pair to be
    explained by a cyclic diagonal shift.  A planted shifted copy of sample 0
    must also be recognized."""
    if spec.samples == 0:
        raise ExperimentError("empty sample: distinctness needs samples >= 1")
    start = time.monotonic()
    n, k = _single_size(spec)
    ring = _ring_for(n, k, spec.t)
    skeleton = cyclic_diagonal_skeleton(n, k)
    orientation = solve_knight(skeleton)
    if orientation is None:
        raise ExperimentError(f"skeleton ({n},{k}) admits no covering orientation")
    omega = _support_for(spec, ring, 0)

    seen_entries = set()
    fills: List[Tuple[Tuple, str, int]] = []  # (entries, digest, draw index)
    draw = 0
    while len(fills) < spec.samples:
        if draw > 10 * spec.samples + 100:
            raise ExperimentError("could not collect enough distinct fills")
        entries, digest = _distinct_sample(
            (n, k, spec.t, omega.elements, orientation.rows, orientation.cols, subseed(spec.seed, draw))
        )
        draw += 1
        if entries in seen_entries:
            continue
        seen_entries.add(entries)
        fills.append((entries, digest, draw - 1))

    by_digest: Dict[str, List[int]] = {}
    for idx, (_, digest, _) in enumerate(fills):
        by_digest.setdefault(digest, []).append(idx)

    def rebuild(idx: int) -> PartiallyFilledArray:
        return PartiallyFilledArray(ring, n, n, dict(fills[idx][0]))

    equal_pairs = []
    unexplained = []
    for group in by_digest.values():
        for a_pos in range(len(group)):
            for b_pos in range(a_pos + 1, len(group)):
                ia, ib = group[a_pos], group[b_pos]
                arr_a, arr_b = rebuild(ia), rebuild(ib)
                pa = orderings_from_orientation(arr_a, orientation)
                pb = orderings_from_orientation(arr_b, orientation)
                if embeddings_equal(arr_a, pa, arr_b, pb):
                    shift = diagonal_shift_equivalent(arr_a, orientation, arr_b, orientation)
                    equal_pairs.append({"a": ia, "b": ib, "shift": shift})
                    if shift is None:
                        unexplained.append((ia, ib))

    # planted pair: shift sample 0 down the diagonal and shift the columns along
    ell = 1 % n
    base = rebuild(0)
    shifted_entries = {
        ((i + ell - 1) % n + 1, (j + ell - 1) % n + 1): val
        for (i, j), val in base.entries.items()
    }
    planted = PartiallyFilledArray(ring, n, n, shifted_entries)
    planted_orientation = Orientation(
        orientation.rows, tuple(orientation.cols[(j - ell) % n] for j in range(n))
    )
    planted_equal = embeddings_equal(
        base,
        orderings_from_orientation(base, orientation),
        planted,
        orderings_from_orientation(planted, planted_orientation),
    )
    planted_shift = diagonal_shift_equivalent(base, orientation, planted, planted_orientation)
    planted_ok = planted_equal and planted_shift == ell

    passed = not unexplained and planted_ok
    rows = [
        {"sample": i, "draw": fills[i][2], "digest": fills[i][1]} for i in range(len(fills))
    ]
    return ExperimentReport(
        spec,
        passed,
        {
            "distinct_fills": len(fills),
            "draws_used": draw,
            "equal_pairs": equal_pairs,
            "unexplained_pairs": [list(p) for p in unexplained],
            "planted_shift_expected": ell,
            "planted_shift_found": planted_shift,
            "planted_recognized": planted_ok,
        },
        rows,
        wall_clock_s=time.monotonic() - start,
    )


def run_census_consistency(spec: ExperimentSpec) -> ExperimentReport:
    """Check every structural invariant of the embedding on each sample; any
    violation aborts with the offending array serialized for triage.  Sample 0
    is the deterministic row-major fill, the rest are random."""
    if spec.samples == 0:
        raise ExperimentError("empty sample: census-consistency needs samples >= 1")
    start = time.monotonic()
    n, k = _single_size(spec)
    ring = _ring_for(n, k, spec.t)
    skeleton = cyclic_diagonal_skeleton(n, k)
    orientation = solve_knight(skeleton)
    if orientation is None:
        raise ExperimentError(f"skeleton ({n},{k}) admits no covering orientation")
    omega = _support_for(spec, ring, 0)
    args = [
        (
            n,
            k,
            spec.t,
            omega.elements,
            orientation.rows,
            orientation.cols,
            subseed(spec.seed, i),
            i == 0,
        )
        for i in range(spec.samples)
    ]
    outcomes = _parallel_map(_census_sample, args)
    rows = []
    for i, (ok, failure, arr_json, lengths, genus) in enumerate(outcomes):
        if not ok:
            raise ExperimentError(
                f"sample {i} violates structural invariants: {failure}",
                {"sample": i, "array": arr_json, "failure": failure},
            )
        rows.append({"sample": i, "census": dict(lengths), "genus": genus})
    return ExperimentReport(
        spec,
        True,
        {
            "samples_checked": spec.samples,
            "sample0_census": dict(outcomes[0][3]),
            "sample0_genus": outcomes[0][4],
            "orientation": orientation_to_json(orientation),
        },
        rows,
        wall_clock_s=time.monotonic() - start,
    )


_RUNNERS = {
    "nh-fraction": run_nh_fraction,
    "aut-trivial-fraction": run_aut_trivial_fraction,
    "distinctness": run_distinctness,
    "census-consistency": run_census_consistency,
}


def run_experiment(spec: ExperimentSpec) -> ExperimentReport:
    return _RUNNERS[spec.kind](spec)
