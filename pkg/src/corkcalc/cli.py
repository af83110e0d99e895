"""Command-line interface.

Exit codes are a stable contract: 0 success, 1 verification failure,
2 usage or parse error, 3 I/O failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import datum as datum_io
from . import families, stein, suites
from .errors import CorkCalcError, DatumFormatError, FrontFormatError
from .invariants import boundary_h1, homology, intersection_form
from .isomorphism import datum_isomorphic
from .linalg import is_diag_minus_one
from .moves import replay, trace_from_text
from .presentations import GroupPresentation, tietze_simplify, pi1_presentation

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_USAGE = 2
EXIT_IO = 3


class _CliError(Exception):
    def __init__(self, message, exit_code):
        super().__init__(message)
        self.exit_code = exit_code


def _read_text(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise _CliError(f"cannot read {path}: {e}", EXIT_IO) from e


def _write_text(path: str | None, text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
        return
    try:
        Path(path).write_text(text, encoding="utf-8")
    except OSError as e:
        raise _CliError(f"cannot write {path}: {e}", EXIT_IO) from e


def _load_datum(path: str):
    text = _read_text(path)
    try:
        return datum_io.loads(text)
    except DatumFormatError as e:
        where = f" (line {e.line})" if e.line else ""
        raise _CliError(f"{path}: {e}{where}", EXIT_USAGE) from e


def _emit(report: dict, fmt: str, out: str | None) -> None:
    if fmt == "md":
        _write_text(out, _markdown(report))
    else:
        _write_text(out, json.dumps(report, indent=2, sort_keys=True) + "\n")


def _markdown(obj: dict, title: str = "report") -> str:
    lines = [f"# {title}", ""]

    def walk(prefix, value):
        if isinstance(value, dict):
            for k in sorted(value):
                if isinstance(value[k], (dict, list)) and value[k]:
                    walk(f"{prefix}{k}.", value[k])
                else:
                    lines.append(f"- `{prefix}{k}`: {value[k]}")
        elif isinstance(value, list):
            for i, item in enumerate(value):
                if isinstance(item, (dict, list)) and item:
                    walk(f"{prefix}{i}.", item)
                else:
                    lines.append(f"- `{prefix}{i}`: {item}")

    walk("", obj)
    return "\n".join(lines) + "\n"


# --- gen -----------------------------------------------------------------------

_FAMILIES = ("C", "D", "E", "F", "W", "X", "Z", "Cm")


def _generate(args) -> int:
    family = args.family
    n, m = args.n, args.m
    try:
        if family == "X":
            if not args.seq:
                raise _CliError("family X needs --seq", EXIT_USAGE)
            d = families.build_X(n, m, args.seq)
        elif family == "C":
            d = families.build_C(n, m)
        elif family == "Cm":
            d = families.build_Cm(m)
        elif family == "D":
            d = families.build_D(n, m)
        elif family == "E":
            d = families.build_E(n, m)
        elif family == "F":
            d = families.build_F(n, m)
        elif family == "W":
            d = families.build_W(n, m)
        elif family == "Z":
            if args.i is None:
                raise _CliError("family Z needs --i", EXIT_USAGE)
            d = families.build_Z(n, m, args.i)
        else:
            raise _CliError(f"unknown family {family}", EXIT_USAGE)
    except (CorkCalcError, ValueError) as e:
        raise _CliError(str(e), EXIT_USAGE) from e
    _write_text(args.out, datum_io.dumps(d))
    return EXIT_OK


# --- invariants -------------------------------------------------------------------

def _invariants(args) -> int:
    d = _load_datum(args.datum)
    prof = homology(d)
    boundary = boundary_h1(d)
    _, certified = tietze_simplify(pi1_presentation(d), args.budget)
    verdict = is_diag_minus_one(intersection_form(d))
    report = {
        "h1": list(prof.h1_invariants),
        "b2": prof.b2,
        "boundary_invariants": list(boundary.invariant_factors),
        "is_homology_sphere": boundary.is_homology_sphere,
        "pi1_certified_trivial": certified,
        "form_diag_minus_one": (True if verdict.verdict is True
                                else False if verdict.verdict is False
                                else "inconclusive"),
    }
    _emit(report, args.format, args.out)
    return EXIT_OK


# --- verify -----------------------------------------------------------------------

def _verify(args) -> int:
    try:
        suites.resolve_suite(args.suite)
    except KeyError as e:
        raise _CliError(str(e), EXIT_USAGE) from e
    grid = {"n_max": args.n_max, "m_max": args.m_max, "budget": args.budget,
            "l": args.l, "n": args.n}
    result = suites.run_suite(args.suite, grid, jobs=args.jobs)
    report = result.to_dict()
    _emit(report, args.format, args.out)
    for failure in result.failures:
        print(f"FAIL {failure.case}: {failure.details}", file=sys.stderr)
    return EXIT_OK if result.passed else EXIT_VERIFY_FAILED


# --- replay -----------------------------------------------------------------------

def _replay(args) -> int:
    d = _load_datum(args.datum)
    text = _read_text(args.trace)
    try:
        trace = trace_from_text(text)
    except (CorkCalcError, json.JSONDecodeError, KeyError) as e:
        raise _CliError(f"{args.trace}: bad trace file: {e}", EXIT_USAGE) from e
    try:
        result = replay(d, trace)
    except CorkCalcError as e:
        report = {"integrity": "failed", "error": str(e),
                  "step": getattr(e, "step_index", None)}
        _emit(report, args.format, None)
        return EXIT_VERIFY_FAILED
    report = {"integrity": "ok", "final_hash": datum_io.datum_hash(result)}
    target = trace.target_dict
    if target is not None:
        expected = families.build_X(target["n"], target["m"], target["sequence"],
                                    family=target.get("family", "X"))
        witness = datum_isomorphic(result, expected)
        report["target"] = target
        report["target_isomorphic"] = witness is not None
        if witness is None:
            _emit(report, args.format, args.out)
            return EXIT_VERIFY_FAILED
    if args.out_datum:
        _write_text(args.out_datum, datum_io.dumps(result))
    _emit(report, args.format, args.out)
    return EXIT_OK


# --- simplify ----------------------------------------------------------------------

def _simplify(args) -> int:
    text = _read_text(args.presentation)
    try:
        obj = json.loads(text)
        pres = GroupPresentation.from_dict(obj)
    except (json.JSONDecodeError, KeyError, TypeError, ValueError) as e:
        raise _CliError(f"{args.presentation}: bad presentation file: {e}",
                        EXIT_USAGE) from e
    simplified, certified = tietze_simplify(pres, args.budget)
    report = {
        "certified_trivial": certified,
        "generators": list(simplified.generators),
        "relators": [r.serialize() for r in simplified.relators],
        "abelianization": list(simplified.abelianization()),
        "moves_applied": len(simplified.move_log),
    }
    _emit(report, args.format, args.out)
    return EXIT_OK


# --- stein-check --------------------------------------------------------------------

def _stein_check(args) -> int:
    d = _load_datum(args.datum)
    try:
        doc = stein.load_front_file(args.front)
    except FrontFormatError as e:
        where = f" (line {e.line})" if e.line else ""
        raise _CliError(f"{args.front}: {e}{where}", EXIT_USAGE) from e
    except CorkCalcError as e:
        raise _CliError(str(e), EXIT_IO) from e
    try:
        report = stein.stein_check(d, doc.front, doc.correspondence_dict)
    except CorkCalcError as e:
        raise _CliError(str(e), EXIT_USAGE) from e
    _emit(report.to_dict(), args.format, args.out)
    return EXIT_OK if report.passed else EXIT_VERIFY_FAILED


# --- argument parsing ----------------------------------------------------------------

def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="corkcalc",
        description="Exact symbolic calculus on handle-decomposition data.")
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("gen", help="generate a family datum file")
    gen.add_argument("family", choices=_FAMILIES)
    gen.add_argument("n", type=int)
    gen.add_argument("m", type=int)
    gen.add_argument("--seq", help="{*,0}-sequence literal, e.g. '*00'")
    gen.add_argument("--i", type=int, help="extra index for the Z family")
    gen.add_argument("-o", "--out", default=None, help="output path (default stdout)")

    inv = sub.add_parser("invariants", help="homology/boundary/form report for a datum file")
    inv.add_argument("datum")
    inv.add_argument("--budget", type=int, default=10_000)
    inv.add_argument("--format", choices=("json", "md"), default="json")
    inv.add_argument("-o", "--out", default=None)

    ver = sub.add_parser("verify", help="run a named verification suite")
    ver.add_argument("suite")
    ver.add_argument("--n-max", dest="n_max", type=int, default=None)
    ver.add_argument("--m-max", dest="m_max", type=int, default=None)
    ver.add_argument("--budget", type=int, default=None)
    ver.add_argument("--l", type=int, default=None)
    ver.add_argument("--n", type=int, default=None)
    ver.add_argument("--jobs", type=int, default=1)
    ver.add_argument("--format", choices=("json", "md"), default="json")
    ver.add_argument("-o", "--out", default=None)

    rep = sub.add_parser("replay", help="replay a move trace against a datum file")
    rep.add_argument("datum")
    rep.add_argument("trace")
    rep.add_argument("--out-datum", default=None, help="write the final datum here")
    rep.add_argument("--format", choices=("json", "md"), default="json")
    rep.add_argument("-o", "--out", default=None)

    simp = sub.add_parser("simplify", help="Tietze-simplify a presentation file")
    simp.add_argument("presentation")
    simp.add_argument("--budget", type=int, default=10_000)
    simp.add_argument("--format", choices=("json", "md"), default="json")
    simp.add_argument("-o", "--out", default=None)

    sc = sub.add_parser("stein-check", help="framing criterion for a datum and front file")
    sc.add_argument("datum")
    sc.add_argument("front")
    sc.add_argument("--format", choices=("json", "md"), default="json")
    sc.add_argument("-o", "--out", default=None)

    return parser


_COMMANDS = {
    "gen": _generate,
    "invariants": _invariants,
    "verify": _verify,
    "replay": _replay,
    "simplify": _simplify,
    "stein-check": _stein_check,
}


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code not in (0, None) else EXIT_OK
    try:
        return _COMMANDS[args.command](args)
    except _CliError as e:
        print(f"error: {e}", file=sys.stderr)
        return e.exit_code
    except CorkCalcError as e:
        print(f"error [{e.code}]: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
