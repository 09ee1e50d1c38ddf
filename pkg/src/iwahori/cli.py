"""``hk``: command-line front end.

Every command reads JSON (files or standard input), writes one compact JSON
document followed by a newline, and exits 0 on success, 1 when a verification
fails (the JSON then carries the witnesses) and 2 on malformed input.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Any

from . import __version__
from .checks import ALIASES, SUITES, SuiteConfig, run_suite
from .hecke import hecke_algebra
from .modules import (
    HModule, STAR_FOR, UnramifiedCharacter, induce, is_generic, jantzen_check,
    principal_series, reeder_check, restrict_levi, validate_module,
)
from .parabolic import ORIENTATIONS, parabolic
from .rootdata import PRESETS
from .serialize import (
    InputError, dumps, elt_from_json, elt_to_json, ext_from_json, laurent_to_json,
    load_datum, matrix_to_json, module_from_json, module_to_json,
)


# -- input helpers --------------------------------------------------------------

def _read_json(path: str) -> Any:
    try:
        if path == "-":
            text = sys.stdin.read()
        else:
            with open(path, encoding="utf-8") as fh:
                text = fh.read()
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: malformed JSON at line {exc.lineno} column {exc.colno}") from None


def _inputs(paths: list[str], want: int | None = None) -> list[Any]:
    """JSON documents from files; with no files, standard input holds one document
    (or a list of them when several are wanted)."""
    if paths:
        docs = [_read_json(p) for p in paths]
    else:
        doc = _read_json("-")
        docs = doc if (want != 1 and isinstance(doc, list)) else [doc]
    if want is not None and len(docs) != want:
        raise InputError(f"input: expected {want} document(s), got {len(docs)}")
    return docs


def _datum(args):
    if not args.datum:
        raise InputError("--datum: required for this command")
    return load_datum(args.datum)


def _levi(args, datum, default=None):
    raw = args.levi
    if raw is None:
        return datum.levi_set(default)
    raw = raw.strip().strip("[]")
    try:
        idx = [int(x) for x in raw.split(",") if x.strip()]
        return datum.levi_set(idx)
    except ValueError as exc:
        raise InputError(f"--levi: {exc}") from None


def _chi(args, datum) -> UnramifiedCharacter:
    if not args.chi:
        raise InputError("--chi: required for this command")
    raw = args.chi.strip()
    try:
        vals = json.loads(raw) if raw.startswith("[") else [x for x in raw.split(",")]
        chi = UnramifiedCharacter.parse(vals)
    except (ValueError, ZeroDivisionError, json.JSONDecodeError) as exc:
        raise InputError(f"--chi: {exc}") from None
    if chi.rank != datum.rank:
        raise InputError(f"--chi: {chi.rank} values given, {datum.name} has rank {datum.rank}")
    return chi


def _seed(args) -> int:
    if args.seed is not None:
        return args.seed
    env = os.environ.get("HK_SEED")
    if env is None:
        return 0
    try:
        return int(env)
    except ValueError:
        raise InputError(f"HK_SEED: not an integer: {env!r}") from None


def _orientation(args) -> str:
    o = args.orientation
    return "as-written" if o in (None, "auto") else o


def _elt(h) -> dict:
    return {"terms": elt_to_json(h)["terms"]}


class _Invalid(Exception):
    """A module read from input violates the defining relations."""

    def __init__(self, report: dict):
        super().__init__("invalid module")
        self.report = report


def _module_input(args, datum, default_levi=None) -> HModule:
    if args.inputs:
        (doc,) = _inputs(args.inputs, 1)
        V = module_from_json(doc, datum)
        report = validate_module(V)
        if not report["pass"]:
            raise _Invalid(report)
        return V
    return principal_series(_chi(args, datum), datum, _levi(args, datum, default_levi))


# -- commands -------------------------------------------------------------------

def cmd_datum(args) -> tuple[Any, int]:
    if args.action == "list":
        return list(PRESETS), 0
    d = _datum(args)
    out = d.to_json()
    out.update({"weyl_order": len(d.weyl), "positive_roots": [list(a) for a in d.positive_roots],
                "two_rho": list(d.two_rho())})
    return out, 0


def cmd_mul(args):
    H = hecke_algebra(_datum(args))
    docs = _inputs(args.inputs)
    if not docs:
        raise InputError("input: nothing to multiply")
    out = H.one()
    for doc in docs:
        out = out * elt_from_json(doc, H)
    return _elt(out), 0


def cmd_star(args):
    H = hecke_algebra(_datum(args))
    (doc,) = _inputs(args.inputs, 1)
    return _elt(H.star(elt_from_json(doc, H), args.kind)), 0


def cmd_im(args):
    d = _datum(args)
    H = hecke_algebra(d)
    (doc,) = _inputs(args.inputs, 1)
    x = ext_from_json(doc, d)
    return _elt(H.im_inverse(x) if args.inverse else H.im(x)), 0


def cmd_decompose(args):
    d = _datum(args)
    H = hecke_algebra(d)
    (doc,) = _inputs(args.inputs, 1)
    h = elt_from_json(doc, H)
    if args.kind == "R":
        parts = H.decompose_R(h)
        return {"parts": [{"w": list(w.word),
                           "terms": [{"mu": list(mu), "coeff": laurent_to_json(c)} for mu, c in r]}
                          for w, r in parts.items()]}, 0
    L = _levi(args, d, ())
    ctx = parabolic(d, L)
    try:
        parts = ctx.decompose_over_levi(h, args.side)
    except ValueError as exc:
        raise InputError(f"--side: {exc}") from None
    return {"levi": list(L), "side": args.side,
            "parts": [{"w": list(w.word), "omega": _elt(om)} for w, om in parts.items()]}, 0


def cmd_ps(args):
    d = _datum(args)
    return module_to_json(principal_series(_chi(args, d), d, _levi(args, d))), 0


def cmd_induce(args):
    d = _datum(args)
    V = _module_input(args, d, ())
    return module_to_json(induce(V, parabolic(d, V.levi))), 0


def cmd_restrict(args):
    d = _datum(args)
    if args.to is None:
        raise InputError("--to: required (the smaller Levi, e.g. --to 1)")
    (doc,) = _inputs(args.inputs, 1)
    V = module_from_json(doc, d)
    try:
        small = [int(x) for x in args.to.strip().strip("[]").split(",") if x.strip()]
        return module_to_json(restrict_levi(V, small)), 0
    except ValueError as exc:
        raise InputError(f"--to: {exc}") from None


def _map_result(mp, report) -> tuple[Any, int]:
    return ({"matrix": matrix_to_json(mp.matrix), "verified": mp.verified, "report": report},
            0 if report["pass"] else 1)


def cmd_reeder(args):
    d = _datum(args)
    chi = _chi(args, d)
    if not is_generic(chi, d):
        raise InputError("--chi: character is not generic (a coroot value is 1 or q^{+-1})")
    o = _orientation(args)
    return _map_result(*reeder_check(chi, d, o, STAR_FOR[o]))


def cmd_jantzen(args):
    d = _datum(args)
    V = _module_input(args, d, ())
    o = _orientation(args)
    return _map_result(*jantzen_check(V, o, STAR_FOR[o], parabolic(d, V.levi)))


def cmd_check(args):
    if not args.datum:
        raise InputError("--datum: required (a comma-separated list of presets)")
    data = [load_datum(x) for x in args.datum.split(",") if x.strip()]
    names = [ALIASES.get(s, s) for s in args.suites]
    for s in names:
        if s != "conventions" and s not in SUITES:
            raise InputError(f"suite: unknown suite {s!r}")
    cfg = SuiteConfig(seed=_seed(args), samples=args.samples,
                      orientation=args.orientation or "auto")
    reports = [run_suite(s, data, cfg) for s in names]
    out = reports[0] if len(reports) == 1 else {
        "pass": all(r["pass"] for r in reports), "suites": reports}
    return out, 0 if out["pass"] else 1


# -- argument parsing -------------------------------------------------------------

def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--datum", help="preset name (check: comma-separated list)")
    p.add_argument("--levi", help="standard Levi as simple indices, e.g. 1,2 (empty for the torus)")
    p.add_argument("--chi", help="character values on the coordinate basis, e.g. 3v,-2")
    p.add_argument("--seed", type=int, help="random seed (falls back to $HK_SEED, then 0)")
    p.add_argument("--orientation", choices=("auto",) + ORIENTATIONS,
                   help="orientation configuration (auto: the global assignment)")
    p.add_argument("--out", help="write the JSON here instead of standard output")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="hk", description="Exact Iwahori-Hecke algebra computations.")
    ap.add_argument("--version", action="version", version=f"hk {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("datum", help="list presets or show one")
    p.add_argument("action", choices=("list", "show"))
    _common(p)
    p.set_defaults(func=cmd_datum)

    p = sub.add_parser("mul", help="product of elements, left to right")
    p.add_argument("inputs", nargs="*")
    _common(p)
    p.set_defaults(func=cmd_mul)

    p = sub.add_parser("star", help="apply an opposition")
    p.add_argument("kind", choices=("im", "b"))
    p.add_argument("inputs", nargs="*")
    _common(p)
    p.set_defaults(func=cmd_star)

    p = sub.add_parser("im", help="Iwahori-Matsumoto element T_x in the Bernstein basis")
    p.add_argument("inputs", nargs="*")
    p.add_argument("--inverse", action="store_true", help="return T_x^{-1} instead")
    _common(p)
    p.set_defaults(func=cmd_im)

    p = sub.add_parser("decompose", help="decompose over R or over a Levi subalgebra")
    p.add_argument("kind", choices=("R", "levi"))
    p.add_argument("inputs", nargs="*")
    p.add_argument("--side", choices=("left", "right"), default="left")
    _common(p)
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("ps", help="principal series of a Levi")
    _common(p)
    p.set_defaults(func=cmd_ps)

    p = sub.add_parser("induce", help="induce a Levi module (default: its principal series)")
    p.add_argument("inputs", nargs="*")
    _common(p)
    p.set_defaults(func=cmd_induce)

    p = sub.add_parser("restrict", help="restrict a module to a smaller Levi")
    p.add_argument("inputs", nargs="*")
    p.add_argument("--to", help="the smaller Levi, e.g. 1")
    _common(p)
    p.set_defaults(func=cmd_restrict)

    p = sub.add_parser("reeder", help="build and verify the Reeder isomorphism")
    _common(p)
    p.set_defaults(func=cmd_reeder)

    p = sub.add_parser("jantzen", help="build and verify the Jantzen isomorphism")
    p.add_argument("inputs", nargs="*")
    _common(p)
    p.set_defaults(func=cmd_jantzen)

    p = sub.add_parser("check", help="run verification suites")
    p.add_argument("suites", nargs="+",
                   help="suites: " + ", ".join(sorted(set(SUITES) | {"conventions"} | set(ALIASES))))
    p.add_argument("--samples", type=int, help="override every suite's sample count")
    _common(p)
    p.set_defaults(func=cmd_check)
    return ap


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        out, code = args.func(args)
    except InputError as exc:
        print(f"hk: error: {exc}", file=sys.stderr)
        return 2
    except _Invalid as exc:
        out, code = {"pass": False, "validation": exc.report}, 1
    text = dumps(out) + "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
