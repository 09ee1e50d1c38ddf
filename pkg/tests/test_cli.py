"""The ``hk`` front end: goldens, round trips, exit codes and determinism."""

import io
import json
import subprocess
import sys
from contextlib import redirect_stdout, redirect_stderr
from pathlib import Path

import pytest

from iwahori.cli import main
from iwahori.hecke import hecke_algebra
from iwahori.modules import UnramifiedCharacter, principal_series
from iwahori.rootdata import preset_datum
from iwahori.serialize import (
    dumps, elt_from_json, elt_to_json, ext_from_json, ext_to_json, laurent_from_json,
    laurent_to_json, load_datum, module_from_json, module_to_json,
)

GOLDEN = Path(__file__).parent / "golden"


def run(argv, stdin=None, monkeypatch=None):
    out, err = io.StringIO(), io.StringIO()
    if stdin is not None:
        monkeypatch.setattr(sys, "stdin", io.StringIO(stdin))
    with redirect_stdout(out), redirect_stderr(err):
        try:
            code = main(argv)
        except SystemExit as exc:        # argparse usage errors
            code = exc.code
    return code, out.getvalue(), err.getvalue()


def normalize(obj):
    """Sort term lists so comparisons do not depend on the engine's internal order."""
    if isinstance(obj, dict):
        out = {k: normalize(v) for k, v in obj.items()}
        if isinstance(out.get("terms"), list):
            out["terms"] = sorted(out["terms"], key=lambda t: json.dumps(t, sort_keys=True))
        return out
    if isinstance(obj, list):
        return [normalize(x) for x in obj]
    return obj


def elt_file(tmp_path, name, obj):
    p = tmp_path / name
    p.write_text(json.dumps(obj))
    return str(p)


TS = {"terms": [{"mu": [0], "w": [1], "coeff": 1}]}


def test_mul_golden(tmp_path):
    a = elt_file(tmp_path, "a.json", TS)
    code, out, _ = run(["mul", "--datum", "A1", a, a])
    assert code == 0
    assert out == (GOLDEN / "mul_a1_ts_ts.json").read_text()


@pytest.mark.parametrize("case", sorted(p.stem for p in GOLDEN.glob("*.cmd")))
def test_command_goldens(case, tmp_path, monkeypatch):
    case_doc = json.loads((GOLDEN / f"{case}.cmd").read_text())
    code, out, err = run(case_doc["argv"], json.dumps(case_doc["stdin"]) if "stdin" in case_doc else None,
                         monkeypatch)
    assert code == case_doc.get("exit", 0), err
    assert normalize(json.loads(out)) == normalize(json.loads((GOLDEN / f"{case}.json").read_text()))


def test_output_is_one_line(tmp_path):
    code, out, _ = run(["datum", "list"])
    assert code == 0 and out.endswith("\n") and out.count("\n") == 1
    assert json.loads(out) == ["A1", "GL2", "A2", "GL3", "B2", "G2"]


def test_exit_codes(tmp_path, monkeypatch):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    code, _, err = run(["mul", "--datum", "A1", str(bad)])
    assert code == 2 and "bad.json" in err
    wrong = elt_file(tmp_path, "w.json", {"datum": "A2", "terms": []})
    code, _, err = run(["mul", "--datum", "A1", wrong])
    assert code == 2 and "datum" in err
    mu = elt_file(tmp_path, "m.json", {"terms": [{"mu": [0, 0], "w": [], "coeff": 1}]})
    code, _, err = run(["mul", "--datum", "A1", mu])
    assert code == 2 and "terms[0].mu" in err
    code, _, err = run(["reeder", "--datum", "A1", "--chi", "v^2"])
    assert code == 2 and "--chi" in err
    code, _, _ = run(["check", "nosuch", "--datum", "A1"])
    assert code == 2
    code, _, _ = run(["frobnicate"])
    assert code == 2


def test_failure_exit_code(tmp_path):
    """A module violating a relation makes jantzen report failure with exit 1."""
    a1 = preset_datum("A1")
    V = principal_series(UnramifiedCharacter(("3*v",)), a1)
    doc = module_to_json(V)
    doc["T"]["1"] = [["0", "1"], ["1", "0"]]          # T_s^2 = 1 breaks the quadratic relation
    p = elt_file(tmp_path, "mod.json", doc)
    code, out, _ = run(["jantzen", "--datum", "A1", p])
    assert code == 1
    rep = json.loads(out)
    assert rep["pass"] is False and rep["validation"]["failures"][0]["relation"] == "quadratic"
    code, _, _ = run(["induce", "--datum", "A1", p])
    assert code == 1


def test_check_reports():
    code, out, _ = run(["check", "bernstein", "--datum", "A1,GL2", "--seed", "7"])
    assert code == 0
    rep = json.loads(out)
    assert rep["suite"] == "presentation" and rep["pass"]
    assert [r["datum"] for r in rep["reports"]] == ["A1", "GL2"]


def test_check_bernstein_g2():
    code, out, _ = run(["check", "bernstein", "--datum", "G2", "--seed", "7"])
    assert code == 0 and json.loads(out)["pass"]


def test_check_conventions_global_assignment():
    code, out, _ = run(["check", "conventions", "--datum", "A1,A2,B2,GL2"])
    assert code == 0
    rep = json.loads(out)
    assert rep["pass"] and rep["uniform"]
    for ident, choice in rep["global"].items():
        assert all(v is not None for v in choice.values()), ident


def test_determinism(monkeypatch):
    argv = ["check", "associativity", "opposition", "--datum", "A2", "--seed", "11", "--samples", "4"]
    first = run(argv)[1]
    second = run(argv)[1]
    assert first == second
    monkeypatch.setenv("HK_SEED", "11")
    third = run(argv[:-4] + ["--samples", "4"])[1]
    assert third == first


def test_seed_changes_samples():
    a = run(["check", "associativity", "--datum", "A2", "--seed", "1", "--samples", "3"])[1]
    b = run(["check", "associativity", "--datum", "A2", "--seed", "2", "--samples", "3"])[1]
    assert json.loads(a)["pass"] and json.loads(b)["pass"]


def test_out_flag(tmp_path):
    target = tmp_path / "o.json"
    code, out, _ = run(["datum", "show", "--datum", "G2", "--out", str(target)])
    assert code == 0 and out == ""
    doc = json.loads(target.read_text())
    assert doc["weyl_order"] == 12 and len(doc["positive_roots"]) == 6


def test_console_script_entry_point():
    proc = subprocess.run([sys.executable, "-m", "iwahori.cli", "datum", "list"],
                          capture_output=True, text=True,
                          env={"PYTHONPATH": str(Path(__file__).parents[1] / "src")})
    assert proc.returncode == 0 and json.loads(proc.stdout)[0] == "A1"


# -- round trips ---------------------------------------------------------------------

def test_element_roundtrip():
    d = preset_datum("B2")
    H = hecke_algebra(d)
    h = H.basis((1, -2), (1, 2), "v^3 - 1/2*v^-1") + H.t_inv((2, 1))
    doc = elt_to_json(h)
    assert elt_from_json(doc) == h
    assert elt_to_json(elt_from_json(json.loads(dumps(doc)))) == doc


def test_levi_element_uses_global_indices():
    from iwahori.parabolic import parabolic
    d = preset_datum("A2")
    ctx = parabolic(d, [2])
    h = ctx.HM.t((1,))
    doc = elt_to_json(h)
    assert doc["datum"] == "A2[2]" and doc["terms"][0]["w"] == [2]
    assert elt_from_json(doc) == h


def test_scalar_roundtrips():
    from iwahori.laurent import Laurent
    c = Laurent({5: 2, 0: -1, -3: "1/7"})
    assert laurent_from_json(laurent_to_json(c)) == c
    assert laurent_to_json(c) == [[5, "2"], [0, "-1"], [-3, "1/7"]]
    d = preset_datum("GL2")
    x = ext_from_json({"mu": [1, 0], "w": [1]}, d)
    assert ext_to_json(x) == {"mu": [1, 0], "w": [1]}
    assert ext_to_json(ext_from_json(ext_to_json(x), d)) == ext_to_json(x)


def test_module_roundtrip(tmp_path):
    a2 = preset_datum("A2")
    V = principal_series(UnramifiedCharacter(("3*v", "-2")), a2, [1])
    doc = module_to_json(V)
    W = module_from_json(json.loads(dumps(doc)))
    assert module_to_json(W) == doc
    assert W.generators() == V.generators()


def test_datum_json_roundtrip():
    for name in ("A1", "GL3", "G2"):
        d = preset_datum(name)
        assert load_datum(d.to_json()).to_json() == d.to_json()
    assert load_datum("A2[1]").name == "A2[1]"


def test_cli_pipeline_roundtrip(tmp_path):
    """ps -> induce -> restrict through files reproduces the direct computation."""
    code, ps, _ = run(["ps", "--datum", "A2", "--levi", "1", "--chi", "3v,-2"])
    assert code == 0
    p = tmp_path / "ps.json"
    p.write_text(ps)
    code, ind, _ = run(["induce", "--datum", "A2", str(p)])
    assert code == 0
    code, direct, _ = run(["induce", "--datum", "A2", "--levi", "1", "--chi", "3v,-2"])
    assert ind == direct
    q = tmp_path / "ind.json"
    q.write_text(ind)
    code, res, _ = run(["restrict", "--datum", "A2", "--to", "1", str(q)])
    assert code == 0
    assert json.loads(res)["levi"] == [1] and json.loads(res)["dim"] == 6
