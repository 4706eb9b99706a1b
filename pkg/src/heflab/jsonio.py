"""File formats: arrays, skeletons, supports, orientations, embeddings, reports.

All positions are 1-based and all ring elements canonical in 0..v-1, matching
the CLI contract.  Loaders validate shape, not mathematical validity; run the
validators for that.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any, Tuple

from .arrays import PartiallyFilledArray, Skeleton
from .autiso import AutReport
from .embedding import DifferenceRotation, FaceCensus
from .orderings import Orientation
from .rings import Ring, Support


class FormatError(ValueError):
    pass


def _load(path) -> Any:
    with open(path, "r", encoding="utf-8") as fh:
        return json.load(fh)


def _dump(obj: Any, path) -> None:
    Path(path).write_text(json.dumps(obj, indent=2, sort_keys=True) + "\n", encoding="utf-8")


def _require(obj: dict, *keys: str) -> None:
    missing = [k for k in keys if k not in obj]
    if missing:
        raise FormatError(f"missing keys: {missing}")


def array_to_json(array: PartiallyFilledArray) -> dict:
    return {
        "m": array.m,
        "n": array.n,
        "v": array.ring.v,
        "t": array.ring.t,
        "cells": [
            {"i": i, "j": j, "val": array.entries[(i, j)]} for (i, j) in sorted(array.cells)
        ],
    }


def array_from_json(obj: dict) -> PartiallyFilledArray:
    _require(obj, "m", "n", "v", "t", "cells")
    ring = Ring(obj["v"], obj["t"])
    entries = {}
    for cell in obj["cells"]:
        _require(cell, "i", "j", "val")
        entries[(cell["i"], cell["j"])] = cell["val"]
    return PartiallyFilledArray(ring, obj["m"], obj["n"], entries)


def skeleton_to_json(skeleton: Skeleton, ring: Ring) -> dict:
    return {
        "m": skeleton.m,
        "n": skeleton.n,
        "v": ring.v,
        "t": ring.t,
        "cells": [{"i": i, "j": j} for (i, j) in skeleton.sorted_cells()],
    }


def skeleton_from_json(obj: dict) -> Tuple[Skeleton, Ring]:
    _require(obj, "m", "n", "v", "t", "cells")
    cells = set()
    for cell in obj["cells"]:
        _require(cell, "i", "j")
        cells.add((cell["i"], cell["j"]))
    return Skeleton(obj["m"], obj["n"], frozenset(cells)), Ring(obj["v"], obj["t"])


def support_to_json(support: Support) -> dict:
    return {"v": support.ring.v, "t": support.ring.t, "elements": list(support.elements)}


def support_from_json(obj: dict) -> Support:
    _require(obj, "v", "t", "elements")
    return Support(Ring(obj["v"], obj["t"]), tuple(obj["elements"]))


def orientation_to_json(orientation: Orientation) -> dict:
    return {"R": list(orientation.rows), "C": list(orientation.cols)}


def orientation_from_json(obj: dict) -> Orientation:
    _require(obj, "R", "C")
    return Orientation(tuple(obj["R"]), tuple(obj["C"]))


def embedding_to_json(rot: DifferenceRotation) -> dict:
    return {
        "v": rot.ring.v,
        "t": rot.ring.t,
        "rho0": [[a, b] for a, b in rot.canonical_pairs()],
    }


def embedding_from_json(obj: dict) -> DifferenceRotation:
    _require(obj, "v", "t", "rho0")
    return DifferenceRotation(Ring(obj["v"], obj["t"]), {a: b for a, b in obj["rho0"]})


def census_to_json(census: FaceCensus, genus: int) -> dict:
    return {
        "faces": [
            {"length": length, "count": count} for length, count in sorted(census.lengths.items())
        ],
        "genus": genus,
    }


def aut_report_to_json(report: AutReport) -> dict:
    return {
        "v": report.v,
        "t": report.t,
        "aut0_plus": report.aut0_plus_order,
        "aut0_minus": report.aut0_minus_order,
        "aut_order": report.aut_order,
        "translations_only": report.translations_only,
        "generators": [list(g.table) for g in report.generators],
    }


def save_json(obj: Any, path) -> None:
    _dump(obj, path)


def load_json(path) -> Any:
    return _load(path)
