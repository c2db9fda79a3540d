import io
from pathlib import Path

import pytest

from bilinperm.cli import import_tables, main
from bilinperm.oracle import tabulate
from bilinperm.specfile import build_spec, parse_specfile

SPECS = Path(__file__).resolve().parent.parent / "specs"
VALID = ["blokhuis_gf64.spec", "laigle_chapuy_gf64.spec", "degenerate_gf8.spec",
         "tower_gf512.spec", "tower_h2_gf512.spec"]


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out)
    return code, out.getvalue()


def load(name):
    return build_spec(parse_specfile((SPECS / name).read_text()))


def test_construct_valid():
    code, out = run("construct", "--spec", str(SPECS / "blokhuis_gf64.spec"))
    assert code == 0
    assert "blokhuis over gf2:6:43:2" in out and "hypotheses: all satisfied" in out


def test_construct_table():
    code, out = run("construct", "--spec", str(SPECS / "degenerate_gf8.spec"), "--table")
    assert code == 0
    assert out.splitlines()[-8:] == ["0", "1", "4", "5", "6", "7", "2", "3"]


@pytest.mark.parametrize("name,needle", [
    ("blokhuis_q2_invalid.spec", "parameter set F_2\\{0,1} is empty"),
    ("tower_gcd_invalid.spec", "gcd(2^{d_1}-1, 2^l+1) = 1"),
])
def test_construct_invalid(name, needle, capsys):
    code, _ = run("construct", "--spec", str(SPECS / name))
    assert code == 2
    assert needle in capsys.readouterr().err


def test_zero_partial_sum_rejected(tmp_path, capsys):
    p = tmp_path / "zero.spec"
    p.write_text("field = gf2:9\nfamily = tower\ndegrees = 3,3\nc = 1,1\nc0 = 1\nl = 1\n")
    assert run("construct", "--spec", str(p))[0] == 2
    assert "sum_(j<=i) c_j != 0" in capsys.readouterr().err


@pytest.mark.parametrize("name", VALID)
def test_verify_valid(name):
    code, out = run("verify", "--spec", str(SPECS / name))
    assert code == 0, out
    assert "[FAIL]" not in out and out.rstrip().endswith("result: PASS")


def test_verify_detects_mutation():
    code, out = run("verify", "--spec", str(SPECS / "laigle_chapuy_gf64.spec"),
                    "--check", "agreement", "--corrupt-a", "3b")
    assert code == 1
    assert "[FAIL] agreement closed vs oracle inverse" in out and "first=" in out
    assert "[PASS] agreement decomposition vs oracle inverse" in out


def test_verify_tower_mutation():
    code, out = run("verify", "--spec", str(SPECS / "tower_gf512.spec"),
                    "--check", "roundtrip", "--corrupt-a", "2")
    assert code == 1 and "[FAIL] roundtrip closed" in out


def test_max_n_bound(capsys):
    code, _ = run("verify", "--spec", str(SPECS / "tower_gf512.spec"), "--max-n", "8")
    assert code == 3


def test_field_override(capsys):
    code, out = run("verify", "--spec", str(SPECS / "degenerate_gf8.spec"), "--field", "gf2:5:25:1")
    assert code == 0 and "gf2:5:25:1" in out
    # a = 3a lies in F_4 of GF(64) but not of GF(1024)
    code, _ = run("construct", "--spec", str(SPECS / "blokhuis_gf64.spec"), "--field", "gf2:10:409:2")
    assert code == 2 and "not in F_q" in capsys.readouterr().err


def test_unknown_family(tmp_path):
    p = tmp_path / "x.spec"
    p.write_text("field = gf2:6\nfamily = cubic\n")
    assert run("construct", "--spec", str(p))[0] == 2
    assert run("construct", "--spec", str(tmp_path / "missing.spec"))[0] == 2


def test_lemma_subcommand():
    code, out = run("lemma")
    assert code == 0
    assert out.count("[PASS]") == 12
    assert run("lemma", "--max-r", "12", "--max-n", "10")[0] == 3


def test_decompose():
    code, out = run("decompose", "--spec", str(SPECS / "blokhuis_gf64.spec"))
    assert code == 0 and "[PASS] commutative diagram: 64/64" in out
    code, out = run("decompose", "--spec", str(SPECS / "tower_gf512.spec"))
    assert code == 0 and "y_1 = x_0\n" in out


def test_table_single_value_and_paths():
    spec = load("laigle_chapuy_gf64.spec")
    oracle = tabulate(spec.ctx, spec).inverse
    for fn in ("closed", "piecewise", "decomposition", "oracle-inverse"):
        code, out = run("table", "--spec", str(SPECS / "laigle_chapuy_gf64.spec"), "--fn", fn)
        assert code == 0
        assert [int(v, 16) for v in out.split()] == oracle
    code, out = run("table", "--spec", str(SPECS / "degenerate_gf8.spec"), "--x", "2")
    assert (code, out) == (0, "4\n")
    assert run("table", "--spec", str(SPECS / "tower_gf512.spec"), "--fn", "piecewise")[0] == 2


@pytest.mark.parametrize("fmt", ["hex", "bin"])
def test_export_round_trip(tmp_path, fmt):
    code, out = run("export", "--spec", str(SPECS / "tower_gf512.spec"),
                    "--export", fmt, "--out", str(tmp_path))
    assert code == 0
    spec = load("tower_gf512.spec")
    table = tabulate(spec.ctx, spec)
    ctx, fwd, inv = import_tables(tmp_path)
    assert ctx == spec.ctx and fwd == table.forward and inv == table.inverse
    if fmt == "bin":
        assert (tmp_path / "tables.bin").stat().st_size == 2 * 512 * 2
    assert (tmp_path / "coeffs_forward.hex").exists()


def test_export_coefficients_reproduce_table(tmp_path):
    from bilinperm.oracle import evaluate_coeffs, from_hex_lines
    run("export", "--spec", str(SPECS / "blokhuis_gf64.spec"), "--out", str(tmp_path))
    ctx, fwd, inv = import_tables(tmp_path)
    for name, values in (("forward", fwd), ("inverse", inv)):
        coeffs = from_hex_lines(ctx, (tmp_path / f"coeffs_{name}.hex").read_text())
        assert evaluate_coeffs(ctx, coeffs) == values


def test_deterministic_reports():
    args = ("verify", "--spec", str(SPECS / "tower_h2_gf512.spec"))
    assert run(*args) == run(*args)
