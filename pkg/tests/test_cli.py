import io
import json
import subprocess
import sys
from fractions import Fraction

import pytest

from affine_admissible.cli import run


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out=out, err=err)
    return code, out.getvalue(), err.getvalue()


WEIGHT_KEYS = {"kind", "rank", "u", "k", "class_id", "b", "b_minus", "u_b_word",
               "length", "epsilon", "weight", "anomaly"}


def test_adm_a1_3():
    code, out, _ = call("adm", "A1", "3", "--format", "json")
    assert code == 0
    recs = json.loads(out)
    assert len(recs) == 3
    for r in recs:
        assert set(r) == WEIGHT_KEYS
        assert r["k"] == [-4, 3]
    weights = sorted(Fraction(*r["weight"][0]) for r in recs)
    assert weights == [Fraction(-4, 3), Fraction(-2, 3), 0]


def test_count_e7_fixture():
    code, out, _ = call("count", "E7", "7", "--levi", "fixture:A6")
    assert code == 0
    rec = json.loads(out)
    assert rec["closed_form"] == 1 and rec["components"] == "A6"


def test_count_with_brute_force():
    code, out, _ = call("count", "A2", "5", "--levi", "1")
    rec = json.loads(out)
    assert code == 0 and rec["closed_form"] == 10 and rec["brute_force"] == 10


def test_verify_exit_codes():
    code, out, _ = call("verify", "A1", "3")
    assert code == 0
    recs = json.loads(out)
    assert all(r["status"] in ("pass", "skip") for r in recs)
    code, out, _ = call("verify", "A2", "5", "--levi", "1")
    assert code == 0


def test_modular_check_and_matrix_schema():
    code, out, _ = call("modular", "A1", "3", "--check")
    assert code == 0
    rec = json.loads(out)
    m = rec["matrices"][0]
    assert set(m) == {"matrix", "index", "entries", "residuals"}
    assert len(m["entries"]) == 3 and set(m["entries"][0][0]) == {"re", "im"}
    assert rec["residuals"]["st3_minus_s2"] < 1e-10


def test_fixedpoints_and_roots():
    code, out, _ = call("fixedpoints", "A1", "3", "--levi", "1")
    assert code == 0 and len(json.loads(out)) == 1
    code, out, _ = call("roots", "G2")
    rec = json.loads(out)
    assert rec["h_dual"] == 4 and rec["exponents"] == [1, 5]


def test_table1_command():
    code, out, _ = call("table1", "--max-u", "7", "--max-rank", "7")
    assert code == 0
    hits = json.loads(out)["hits"]
    assert any(h["kind"] == "E7" and h["u"] == 7 and h["levi"] == "A6" for h in hits)


@pytest.mark.parametrize("argv", [
    ("adm", "A2", "3"),          # gcd(u, h^vee) != 1
    ("adm", "B2", "2"),          # gcd(u, r^vee) != 1
    ("adm", "Q2", "3"),          # unknown type
    ("nonsense",),
    ("adm", "A1"),
    ("count", "A2", "5", "--levi", "9"),
])
def test_usage_errors(argv):
    code, out, err = call(*argv)
    assert code == 2 and out == ""
    assert "error" in json.loads(err)


def test_level_error_message_is_verbatim():
    from affine_admissible import LevelError, build_root_system, validate_level

    with pytest.raises(LevelError) as exc:
        validate_level(build_root_system("A2"), 3)
    _, _, err = call("adm", "A2", "3")
    assert json.loads(err)["message"] == str(exc.value)


@pytest.mark.parametrize("fmt", ["json", "csv", "text"])
def test_formats_deterministic(fmt):
    for argv in [("adm", "B2", "5"), ("modular", "A2", "2"), ("verify", "A1", "3")]:
        a = call("--format", fmt, *argv)
        b = call("--format", fmt, *argv)
        assert a == b and a[1]


def test_csv_matrix_layout():
    code, out, _ = call("--format", "csv", "modular", "A1", "3")
    lines = out.splitlines()
    assert lines[0] == "matrix,row,col,re,im"
    assert sum(1 for x in lines if x.startswith("S_kw,")) == 9


def test_byte_identical_across_processes():
    cmd = [sys.executable, "-m", "affine_admissible.cli", "modular", "B2", "5"]
    a = subprocess.run(cmd, capture_output=True, check=True).stdout
    b = subprocess.run(cmd, capture_output=True, check=True).stdout
    assert a == b and len(a) > 1000
