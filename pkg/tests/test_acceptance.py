"""Acceptance criteria 1-12, one PASS/FAIL line each.

Run under pytest (the lines appear in the terminal summary) or directly with
``python3 tests/test_acceptance.py``.  Every suite uses its default sample counts
and the seed from ``$HK_SEED`` (0 when unset).
"""

from __future__ import annotations

import io
import json
import os
import sys
import time
from contextlib import redirect_stderr, redirect_stdout
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from iwahori.checks import SuiteConfig, run_suite  # noqa: E402
from iwahori.cli import main  # noqa: E402
from iwahori.rootdata import PRESETS, preset_datum  # noqa: E402

GOLDEN = Path(__file__).parent / "golden"
RESULTS: list[str] = []


def _cfg() -> SuiteConfig:
    return SuiteConfig(seed=int(os.environ.get("HK_SEED", "0")))


def _data(names=PRESETS):
    return [preset_datum(n) for n in names]


def _suites(*names, presets=PRESETS) -> tuple[bool, str]:
    cfg, data = _cfg(), _data(presets)
    bad = []
    for name in names:
        r = run_suite(name, data, cfg)
        if not r["pass"]:
            bad.append(json.dumps(r)[:400])
    return not bad, "; ".join(bad)


def _cli(argv, stdin=None) -> tuple[int, str]:
    out = io.StringIO()
    saved = sys.stdin
    if stdin is not None:
        sys.stdin = io.StringIO(stdin)
    try:
        with redirect_stdout(out), redirect_stderr(io.StringIO()):
            code = main(argv)
    finally:
        sys.stdin = saved
    return code, out.getvalue()


def _sorted_terms(obj):
    if isinstance(obj, dict):
        out = {k: _sorted_terms(v) for k, v in obj.items()}
        if isinstance(out.get("terms"), list):
            out["terms"] = sorted(out["terms"], key=lambda t: json.dumps(t, sort_keys=True))
        return out
    if isinstance(obj, list):
        return [_sorted_terms(x) for x in obj]
    return obj


def _criterion_cli() -> tuple[bool, str]:
    bad = []
    for cmd in sorted(GOLDEN.glob("*.cmd")):
        case_doc = json.loads(cmd.read_text())
        code, out = _cli(case_doc["argv"], json.dumps(case_doc["stdin"]) if "stdin" in case_doc else None)
        want = json.loads(cmd.with_suffix(".json").read_text())
        if code != case_doc.get("exit", 0) or _sorted_terms(json.loads(out)) != _sorted_terms(want):
            bad.append(cmd.stem)
    # round trip: the output of mul is valid input and multiplies by one unchanged
    one = {"terms": [{"mu": [0, 0], "w": [], "coeff": [[0, "1"]]}]}
    elt = {"terms": [{"mu": [1, -1], "w": [1, 2], "coeff": [[1, "2"], [-1, "-1"]]}]}
    _, first = _cli(["mul", "--datum", "A2"], json.dumps([elt, one]))
    _, second = _cli(["mul", "--datum", "A2"], json.dumps([json.loads(first), one]))
    if first != second:
        bad.append("roundtrip")
    # seeded reports are byte-identical
    argv = ["check", "associativity", "--datum", "A2", "--samples", "20", "--seed", "5"]
    if _cli(argv) != _cli(argv):
        bad.append("determinism")
    return not bad, ", ".join(bad)


CRITERIA = [
    (1, "presentation: quadratic, braid, theta homomorphism, cross relation",
     lambda: _suites("presentation")),
    (2, "associativity fuzz", lambda: _suites("associativity")),
    (3, "IM coherence, independence, specialization", lambda: _suites("im")),
    (4, "modulus versus extended length", lambda: _suites("modulus")),
    (5, "oppositions and convention report", lambda: _suites("opposition", "conventions")),
    (6, "Levi length formula", lambda: _suites("length", presets=("A2", "GL3", "B2", "G2"))),
    (7, "freeness over Levi subalgebras", lambda: _suites("freeness")),
    (8, "parabolic opposition", lambda: _suites("parabolic")),
    (9, "induction in stages", lambda: _suites("induction")),
    (10, "theta spectrum of the principal series", lambda: _suites("spectrum", presets=("A1", "GL2"))),
    (11, "Reeder and Jantzen maps, twisted Jacquet action", lambda: _suites("reeder", "jantzen")),
    (12, "CLI goldens, JSON round trip, determinism", _criterion_cli),
]


def _run(n: int, title: str, fn) -> tuple[bool, str]:
    t0 = time.time()
    ok, detail = fn()
    line = f"criterion {n:2d}: {'PASS' if ok else 'FAIL'}  {title} ({time.time() - t0:.1f}s)"
    if not ok:
        line += f"  [{detail}]"
    RESULTS.append(line)
    print(line, flush=True)
    return ok, detail


@pytest.mark.parametrize("n,title,fn", CRITERIA, ids=[f"criterion_{c[0]}" for c in CRITERIA])
def test_criterion(n, title, fn):
    ok, detail = _run(n, title, fn)
    assert ok, detail


if __name__ == "__main__":
    results = [_run(*c)[0] for c in CRITERIA]
    sys.exit(0 if all(results) else 1)
