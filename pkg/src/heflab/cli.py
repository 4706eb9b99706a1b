"""Command-line interface.

Subcommands mirror the library layers: skeleton generation, orientation
solving, filling, validation, embedding construction, face census,
automorphism reports, isomorphism tests, and batch experiments.  All file
payloads are JSON; see jsonio for the schemas.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys

from . import jsonio
from .arrays import cyclic_diagonal_skeleton, random_fill, validate_nh, validate_qh
from .autiso import full_aut, isomorphic
from .embedding import all_faces, build_rho0, euler_genus
from .harness import ExperimentError, ExperimentSpec, run_experiment
from .orderings import orderings_from_orientation, solve_knight
from .prng import subseed
from .rings import default_support, random_support


def _cmd_gen_skeleton(args) -> int:
    if not args.cyclic:
        print("only --cyclic skeletons are supported", file=sys.stderr)
        return 2
    skeleton = cyclic_diagonal_skeleton(args.n, args.k)
    from .rings import Ring

    ring = Ring(2 * args.n * args.k + args.t, args.t)
    jsonio.save_json(jsonio.skeleton_to_json(skeleton, ring), args.out)
    return 0


def _cmd_solve_knight(args) -> int:
    skeleton, _ = jsonio.skeleton_from_json(jsonio.load_json(args.skeleton))
    orientation = solve_knight(skeleton)
    if orientation is None:
        print("NONE")
        return 1
    print(json.dumps(jsonio.orientation_to_json(orientation)))
    return 0


def _cmd_fill(args) -> int:
    skeleton, ring = jsonio.skeleton_from_json(jsonio.load_json(args.skeleton))
    if args.support == "random":
        omega = random_support(ring, subseed(args.seed, -1))
    else:
        omega = default_support(ring)
    array = random_fill(skeleton, omega, subseed(args.seed, 0))
    jsonio.save_json(jsonio.array_to_json(array), args.out)
    return 0


def _cmd_validate(args) -> int:
    array = jsonio.array_from_json(jsonio.load_json(args.array))
    verdict = validate_nh(array) if args.nonzero else validate_qh(array)
    print(
        json.dumps(
            {"ok": verdict.ok, "condition": verdict.condition, "message": verdict.message}
        )
    )
    return 0 if verdict.ok else 1


def _cmd_embed(args) -> int:
    array = jsonio.array_from_json(jsonio.load_json(args.array))
    orientation = jsonio.orientation_from_json(jsonio.load_json(args.orient))
    rot = build_rho0(array, orderings_from_orientation(array, orientation))
    jsonio.save_json(jsonio.embedding_to_json(rot), args.out)
    return 0


def _cmd_faces(args) -> int:
    rot = jsonio.embedding_from_json(jsonio.load_json(args.emb))
    census = all_faces(rot)
    payload = jsonio.census_to_json(census, euler_genus(census, rot.ring))
    if args.out:
        jsonio.save_json(payload, args.out)
    else:
        print(json.dumps(payload))
    return 0


def _cmd_aut(args) -> int:
    rot = jsonio.embedding_from_json(jsonio.load_json(args.emb))
    payload = jsonio.aut_report_to_json(full_aut(rot))
    if args.out:
        jsonio.save_json(payload, args.out)
    else:
        print(json.dumps(payload))
    return 0


def _cmd_iso(args) -> int:
    rot_a = jsonio.embedding_from_json(jsonio.load_json(args.a))
    rot_b = jsonio.embedding_from_json(jsonio.load_json(args.b))
    verdict = isomorphic(rot_a, rot_b, method=args.method)
    out = {"isomorphic": verdict.isomorphic, "method": verdict.method}
    if verdict.witness is not None:
        out["witness"] = list(verdict.witness.table)
        out["orientation"] = verdict.witness.orientation
    print(json.dumps(out))
    return 0 if verdict.isomorphic else 1


def _cmd_experiment(args) -> int:
    spec = ExperimentSpec.from_json(jsonio.load_json(args.spec))
    report = run_experiment(spec)
    jsonio.save_json(report.to_json(), args.out)
    if args.csv:
        rows = report.csv_rows()
        with open(args.csv, "w", newline="", encoding="utf-8") as fh:
            if rows:
                keys = sorted({key for row in rows for key in row})
                writer = csv.DictWriter(fh, fieldnames=keys)
                writer.writeheader()
                for row in rows:
                    writer.writerow({k: json.dumps(v) if isinstance(v, dict) else v for k, v in row.items()})
    return 0 if report.passed else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="heflab")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen-skeleton", help="write a cyclically k-diagonal skeleton")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--t", type=int, default=1)
    p.add_argument("--cyclic", action="store_true")
    p.add_argument("--out", required=True)
    p.set_defaults(fn=_cmd_gen_skeleton)

    p = sub.add_parser("solve-knight", help="search for a covering orientation")
    p.add_argument("skeleton")
    p.set_defaults(fn=_cmd_solve_knight)

    p = sub.add_parser("fill", help="randomly fill a skeleton with a support")
    p.add_argument("--skeleton", required=True)
    p.add_argument("--support", choices=("default", "random"), default="default")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True)
    p.set_defaults(fn=_cmd_fill)

    p = sub.add_parser("validate", help="check quasi-Heffter (and optionally nonzero-sum) validity")
    p.add_argument("array")
    p.add_argument("--nonzero", action="store_true")
    p.set_defaults(fn=_cmd_validate)

    p = sub.add_parser("embed", help="build the difference rotation of an array")
    p.add_argument("--array", required=True)
    p.add_argument("--orient", required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(fn=_cmd_embed)

    p = sub.add_parser("faces", help="trace all faces and compute the genus")
    p.add_argument("--emb", required=True)
    p.add_argument("--out")
    p.set_defaults(fn=_cmd_faces)

    p = sub.add_parser("aut", help="full automorphism report of an embedding")
    p.add_argument("--emb", required=True)
    p.add_argument("--out")
    p.set_defaults(fn=_cmd_aut)

    p = sub.add_parser("iso", help="isomorphism test; exit 0 iff isomorphic")
    p.add_argument("--a", required=True)
    p.add_argument("--b", required=True)
    p.add_argument("--method", choices=("exact", "fast"), default="exact")
    p.set_defaults(fn=_cmd_iso)

    p = sub.add_parser("experiment", help="run a seeded Monte Carlo experiment")
    p.add_argument("--spec", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--csv")
    p.set_defaults(fn=_cmd_experiment)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except ExperimentError as exc:
        print(f"error: {exc}", file=sys.stderr)
        if exc.payload:
            print(json.dumps(exc.payload, indent=2), file=sys.stderr)
        return 2
    except (ValueError, OSError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
