"""``discordkit`` command line.

Input is line-delimited JSON state records (see :mod:`discordkit.records`)
from a file or stdin; every subcommand writes one JSON object per line to
stdout in input order. Exit status: 0 success, 1 unreadable input,
2 when at least one record failed (the others are still processed).
"""

import argparse
import json
import os
import sys
from dataclasses import replace

import numpy as np

from .criteria import Tolerances, canonicalize, classify, xstate_classify
from .entangle import merging_report
from .errors import DiscordKitError, InputError
from .oracle import discord_numeric
from .qstate import bloch_decompose, require_valid, sample_random, validate
from .records import matrix_record, read_records, record_state
from .sweeps import FAMILIES, agreement_sweep

EXIT_OK, EXIT_IO, EXIT_RECORDS = 0, 1, 2


def _parse_tol(items):
    tol = Tolerances()
    for item in items or []:
        key, _, val = item.partition("=")
        if key not in ("rank", "cond", "state") or not val:
            raise argparse.ArgumentTypeError(f"--tol expects rank=, cond= or state=, got {item!r}")
        tol = replace(tol, **{key: float(val)})
    return tol


def _two_qubit(rec):
    rho = record_state(rec)
    if rho.shape != (4, 4):
        raise InputError("this command needs a two-qubit state (family records need 'reduce')")
    return rho


def _classify(rec, args):
    rho = require_valid(_two_qubit(rec), args.tol.state)
    cls = classify(rho, args.tol, literal=args.literal)
    out = {"id": rec.id, "bloch": bloch_decompose(rho, check=False).to_dict()}
    out.update(cls.to_dict())
    if rec.format == "xstate":
        p = rec.payload
        fast = xstate_classify(*(p[k] for k in ("x1", "x2", "x3", "x4", "y1", "y2")))
        out["xstate_fast_path"] = {"b_given_a": fast.b_given_a, "a_given_b": fast.a_given_b,
                                   "agrees": fast.verdicts == cls.verdicts}
    if args.with_oracle:
        out["oracle"] = {
            side: discord_numeric(rho, side, args.grid, check=False).to_dict() for side in "AB"
        }
    out["tolerances"] = args.tol.to_dict()
    return out


def _discord(rec, args):
    rho = require_valid(_two_qubit(rec), args.tol.state)
    est = discord_numeric(rho, args.side, args.grid, refine=not args.no_refine, check=False)
    return {"id": rec.id, **est.to_dict()}


def _canonicalize(rec, args):
    cf = canonicalize(require_valid(_two_qubit(rec), args.tol.state))
    return {"id": rec.id, **cf.to_dict()}


def _merge(rec, args):
    rho = record_state(rec, full=True)
    if rho.shape != (8, 8):
        raise InputError("merge needs a pure three-qubit state")
    rep = merging_report(rho, *args.cut, grid_n=args.grid)
    return {"id": rec.id, **rep.to_dict()}


def _validate(rec, args):
    return {"id": rec.id, **validate(record_state(rec), args.tol.state).to_dict()}


def _dump(obj):
    return json.dumps(obj, allow_nan=False, default=_json_default)


def _json_default(o):
    if isinstance(o, (np.floating, np.integer, np.bool_)):
        return o.item()
    if isinstance(o, np.ndarray):
        return o.tolist()
    raise TypeError(f"not JSON serializable: {type(o).__name__}")


def _stream(args, handler, out):
    try:
        src = sys.stdin if args.input in (None, "-") else open(args.input)
    except OSError as exc:
        print(f"discordkit: cannot read {args.input}: {exc}", file=sys.stderr)
        return EXIT_IO
    failures = 0
    with src:
        for index, rec in read_records(src):
            rec_id = getattr(rec, "id", f"record-{index}")
            try:
                if isinstance(rec, Exception):
                    raise rec
                line = _dump(handler(rec, args))
            except (DiscordKitError, ValueError, KeyError, TypeError) as exc:
                failures += 1
                kind = type(exc).__name__
                print(f"discordkit: {rec_id}: {kind}: {exc}", file=sys.stderr)
                line = _dump({"id": rec_id, "error": str(exc), "error_type": kind})
            print(line, file=out, flush=True)
    return EXIT_RECORDS if failures else EXIT_OK


def _default_seed():
    return int(os.environ.get("DISCORDKIT_SEED", "0"))


def _sample(args, out):
    rng = np.random.default_rng(args.seed)
    for i in range(args.count):
        rho = sample_random(args.kind, rng)
        print(matrix_record(f"{args.kind}-{args.seed}-{i}", rho).to_json(), file=out)
    return EXIT_OK


def _sweep(args, out):
    families = tuple(args.families.split(","))
    bad = [f for f in families if f not in FAMILIES]
    if bad:
        print(f"discordkit: unknown sweep families {bad}", file=sys.stderr)
        return EXIT_RECORDS
    res = agreement_sweep(
        args.count,
        args.seed,
        grid_n=args.grid,
        families=families,
        zero_threshold=args.zero_threshold,
        positive_threshold=args.positive_threshold,
        merge_count=args.merge_count,
        tol=args.tol,
    )
    if args.plot_dir:
        from .plotting import save_sweep_figures

        res.summary["figures"] = save_sweep_figures(res, args.plot_dir, args.plot_format)
    print(_dump(res.summary), file=out)
    return EXIT_OK


def build_parser():
    parser = argparse.ArgumentParser(
        prog="discordkit",
        description="Analytic and numerical quantum discord detection for two-qubit states.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def with_input(p):
        p.add_argument("input", nargs="?", default="-", help="record file (default: stdin)")
        p.add_argument("--tol", action="append", metavar="KEY=VALUE",
                       help="override a tolerance: rank, cond or state (repeatable)")
        return p

    p = with_input(sub.add_parser("classify", help="zero/positive discord verdicts per direction"))
    p.add_argument("--with-oracle", action="store_true", help="attach numerical discord estimates")
    p.add_argument("--grid", type=int, default=64)
    p.add_argument("--literal", action="store_true",
                   help="also accept the m-orthogonal branches (not zero-discord in general)")

    p = with_input(sub.add_parser("discord", help="numerical projective-measurement discord"))
    p.add_argument("--side", choices=["A", "B"], default="A", help="measured party")
    p.add_argument("--grid", type=int, default=64)
    p.add_argument("--no-refine", action="store_true")

    with_input(sub.add_parser("canonicalize", help="local unitaries diagonalizing T"))

    p = with_input(sub.add_parser("merge", help="state-merging report for pure three-qubit records"))
    p.add_argument("--cut", default="A,B,C", help="sender,receiver,purifier (default A,B,C)")
    p.add_argument("--grid", type=int, default=64)

    with_input(sub.add_parser("validate", help="density-matrix validity report"))

    p = sub.add_parser("sample", help="emit random state records")
    p.add_argument("kind", choices=["pure2q", "ginibre2q", "pure3q"])
    p.add_argument("--count", type=int, default=1)
    p.add_argument("--seed", type=int, default=None)

    p = sub.add_parser("sweep", help="analytic vs oracle agreement summary")
    p.add_argument("--count", type=int, default=100)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--grid", type=int, default=64)
    p.add_argument("--families", default=",".join(FAMILIES))
    p.add_argument("--merge-count", type=int, default=None)
    p.add_argument("--zero-threshold", type=float, default=1e-3)
    p.add_argument("--positive-threshold", type=float, default=1e-4)
    p.add_argument("--tol", action="append", metavar="KEY=VALUE")
    p.add_argument("--plot-dir", default=None, help="write histogram figures here")
    p.add_argument("--plot-format", default="png")
    return parser


HANDLERS = {
    "classify": _classify,
    "discord": _discord,
    "canonicalize": _canonicalize,
    "merge": _merge,
    "validate": _validate,
}


def main(argv=None, out=None):
    out = out or sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        args.tol = _parse_tol(getattr(args, "tol", None))
    except argparse.ArgumentTypeError as exc:
        parser.error(str(exc))
    if getattr(args, "seed", 0) is None:
        args.seed = _default_seed()
    if args.command == "merge":
        args.cut = tuple(c.strip().upper() for c in args.cut.split(","))
    if args.command == "sample":
        return _sample(args, out)
    if args.command == "sweep":
        return _sweep(args, out)
    return _stream(args, HANDLERS[args.command], out)


if __name__ == "__main__":
    sys.exit(main())
