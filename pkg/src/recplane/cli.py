"""Command-line front end.

Subcommands mirror the library operations one to one; inputs are arrangement
spec files (JSON), outputs are deterministic text or JSON.  Exit codes:
0 pass, 1 verification failure, 2 input error, 3 cap exceeded.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .arrangement import Arrangement, SpecError, circuits, closure, flats
from .caps import Caps, CapExceeded
from .fields import FieldError
from .oracle import (
    count_points,
    hilbert,
    verify_groebner_lemma,
    verify_lemma7,
    verify_minimal,
    verify_theorem1,
    verify_theorem2,
)
from .polynomials import RingError
from .relations import chart_ring, commutative_generators, super_generators

EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_INPUT = 2
EXIT_CAP = 3

CHECKS = ("theorem1", "theorem2", "minimal", "groebner-lemma",
          "stratification", "lemma7")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="recplane",
        description="Presentations and verification for reciprocal-plane "
                    "rings of hyperplane arrangements and their "
                    "graded-commutative analogs.",
    )
    parser.add_argument("--format", choices=("text", "json"), default="text")
    parser.add_argument("--cap-points", type=int, default=None)
    parser.add_argument("--cap-flats", type=int, default=None)
    parser.add_argument("--cap-relations", type=int, default=None)
    parser.add_argument("--cap-family", type=int, default=None)
    sub = parser.add_subparsers(dest="command", required=True)

    def spec_arg(p):
        p.add_argument("spec", help="arrangement spec JSON file")

    spec_arg(sub.add_parser("circuits", help="matroid circuits"))
    spec_arg(sub.add_parser("flats", help="all flats"))

    p = sub.add_parser("presentation", help="generators of the relation ideal")
    p.add_argument("--super", action="store_true")
    p.add_argument("--mode", choices=("circuits", "all"), default="circuits")
    spec_arg(p)

    p = sub.add_parser("verify", help="run one verification check")
    p.add_argument("--check", choices=CHECKS, required=True)
    p.add_argument("--grassmann", type=int, default=None,
                   help="restrict the Grassmann degree where applicable")
    spec_arg(p)

    spec_arg(sub.add_parser("points", help="stratified point count"))

    p = sub.add_parser("hilbert", help="dimension tables, two methods")
    p.add_argument("--max-degree", type=int, default=10)
    p.add_argument("--super", action="store_true")
    spec_arg(p)

    p = sub.add_parser("charts", help="chart rings over flats")
    p.add_argument("--flat", default=None,
                   help="comma-separated form indices (closure is taken)")
    p.add_argument("--invert", default=None,
                   help="comma-separated indices made invertible")
    p.add_argument("--super", action="store_true")
    spec_arg(p)

    p = sub.add_parser("corpus", help="emit the verification corpus")
    p.add_argument("--p", type=int, default=None, help="prime field order")
    p.add_argument("--rational", action="store_true")
    p.add_argument("--max-n", type=int, default=3)
    p.add_argument("--max-m", type=int, default=5)
    p.add_argument("--count", type=int, default=20,
                   help="number of rational instances")
    p.add_argument("--seed", type=int, default=7)
    p.add_argument("--out", default=None, help="directory for spec files")
    return parser


def load_arrangement(path: str) -> Arrangement:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            data = json.load(fh)
    except OSError as exc:
        raise SpecError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise SpecError(
            f"malformed JSON in {path} at line {exc.lineno}, column {exc.colno}: "
            f"{exc.msg}"
        ) from exc
    return Arrangement.from_json(data)


def caps_from_args(args) -> Caps:
    base = Caps.from_env()
    vals = {}
    for name in ("points", "flats", "relations", "family"):
        flag = getattr(args, f"cap_{name}")
        vals[name] = flag if flag is not None else getattr(base, name)
    return Caps(**vals)


def emit(args, payload: dict, text_lines) -> None:
    if args.format == "json":
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        for line in text_lines:
            print(line)


def _parse_indices(text):
    if not text:
        return ()
    try:
        return tuple(int(x) for x in text.split(",") if x.strip())
    except ValueError as exc:
        raise SpecError(f"bad index list {text!r}") from exc


def run(argv=None) -> int:
    args = build_parser().parse_args(argv)
    caps = caps_from_args(args)

    if args.command == "corpus":
        return _run_corpus(args)

    arr = load_arrangement(args.spec)

    if args.command == "circuits":
        cs = circuits(arr)
        payload = {"circuits": [c.to_json(arr.field) for c in cs]}
        lines = [f"circuits: {len(cs)}"] + [
            f"  {list(c.support)} coeffs {[arr.field.fmt(a) for a in c.coeffs]}"
            for c in cs
        ]
        emit(args, payload, lines)
        return EXIT_PASS

    if args.command == "flats":
        fl = flats(arr, caps)
        payload = {"flats": [f.to_json() for f in fl]}
        lines = [f"flats: {len(fl)}"] + [
            f"  {list(f.indices)} quotient_dim {f.quotient_dim}" for f in fl
        ]
        emit(args, payload, lines)
        return EXIT_PASS

    if args.command == "presentation":
        pres = (
            super_generators(arr, args.mode, caps)
            if args.super
            else commutative_generators(arr, args.mode, caps)
        )
        emit(args, pres.to_json(), pres.to_text().splitlines())
        return EXIT_PASS

    if args.command == "points":
        rep = count_points(arr, caps)
        lines = [f"lhs={rep.details['lhs']} rhs={rep.details['rhs']} {rep.status}"]
        for row in rep.details["per_flat"]:
            lines.append(f"  flat {row['flat']}: {row['count']}")
        emit(args, rep.to_json(), lines)
        return EXIT_PASS if rep.ok else EXIT_FAIL

    if args.command == "verify":
        rep = _run_check(arr, args, caps)
        lines = [f"{rep.check}: {rep.status}"]
        if rep.check == "stratification":
            lines.append(f"  lhs={rep.details['lhs']} rhs={rep.details['rhs']}")
        for key, val in sorted(rep.details.items()):
            if key in ("lhs", "rhs", "per_flat"):
                continue
            lines.append(f"  {key}: {val}")
        for w in rep.witnesses:
            lines.append(f"  witness: {w}")
        emit(args, rep.to_json(), lines)
        return EXIT_PASS if rep.ok else EXIT_FAIL

    if args.command == "hilbert":
        tables = hilbert(arr, super=args.super, max_degree=args.max_degree,
                         caps=caps)
        agree = tables["standard"] == tables["rank"]
        payload = {
            "standard": {str(k): v for k, v in tables["standard"].items()},
            "rank": {str(k): v for k, v in tables["rank"].items()},
            "agree": agree,
        }
        lines = ["degree standard rank"]
        for d in sorted(tables["standard"]):
            lines.append(
                f"{d:6d} {tables['standard'][d]:8d} {tables['rank'][d]:4d}"
            )
        lines.append(f"agree: {agree}")
        emit(args, payload, lines)
        return EXIT_PASS if agree else EXIT_FAIL

    if args.command == "charts":
        if args.flat is not None:
            target = [closure(arr, _parse_indices(args.flat))]
        else:
            target = flats(arr, caps)
        invert = _parse_indices(args.invert)
        payload = {"charts": []}
        lines = []
        for f in target:
            ch = chart_ring(arr, f, invert=tuple(i for i in invert
                                                 if i in set(f.indices)),
                            super=args.super)
            payload["charts"].append(ch.to_json())
            lines.extend(ch.to_text().splitlines())
        emit(args, payload, lines)
        return EXIT_PASS

    raise AssertionError(f"unhandled command {args.command}")


def _run_check(arr, args, caps):
    check = args.check
    if check == "theorem1":
        return verify_theorem1(arr, caps=caps)
    if check == "theorem2":
        return verify_theorem2(arr, rmax=args.grassmann, caps=caps)
    if check == "minimal":
        return verify_minimal(arr, caps=caps)
    if check == "stratification":
        return count_points(arr, caps)
    if check == "lemma7":
        return verify_lemma7(arr, caps)
    if check == "groebner-lemma":
        if args.grassmann is not None:
            degrees = [args.grassmann]
        else:
            degrees = [r for r in (1, 2) if r <= arr.rank]
        from .oracle import Report, instance_label

        reports = [verify_groebner_lemma(arr, r, caps) for r in degrees]
        ok = all(r.ok for r in reports)
        return Report(
            "groebner-lemma",
            instance_label(arr),
            "pass" if ok else "fail",
            [w for r in reports for w in r.witnesses],
            {"degrees": [r.details for r in reports]},
        )
    raise SpecError(f"unknown check {check}")


def _run_corpus(args) -> int:
    from .corpus import enumerate_arrangements, random_rational_arrangements

    if args.rational:
        instances = random_rational_arrangements(
            args.count, args.seed, args.max_n, args.max_m
        )
    elif args.p is not None:
        instances = list(enumerate_arrangements(args.p, args.max_n, args.max_m))
    else:
        raise SpecError("corpus needs --p or --rational")
    if args.out:
        os.makedirs(args.out, exist_ok=True)
        for name, arr in instances:
            path = os.path.join(args.out, f"{name}.json")
            with open(path, "w", encoding="utf-8") as fh:
                json.dump(arr.to_json(), fh, indent=2, sort_keys=True)
                fh.write("\n")
        print(f"wrote {len(instances)} spec files to {args.out}")
    else:
        for name, _ in instances:
            print(name)
    return EXIT_PASS


def main(argv=None) -> int:
    try:
        return run(argv)
    except CapExceeded as exc:
        print(f"cap exceeded: {exc}", file=sys.stderr)
        return EXIT_CAP
    except (SpecError, FieldError, RingError, ValueError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
