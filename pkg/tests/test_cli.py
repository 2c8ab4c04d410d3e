import csv
import io
import json
from fractions import Fraction

import mpmath
import pytest

from horadam._numeric import context


def test_term_all(run_cli):
    code, out, _ = run_cli("term", "--spec", "0,0,1", "--params", "1,3,9", "--n", "6", "--method", "all")
    assert code == 0
    lines = dict(line.split(": ") for line in out.strip().splitlines())
    assert lines["iter"] == "37" and lines["matrix"] == "37" and lines["agree"] == "yes"
    assert lines["binet"].startswith("3.7000000000")


def test_term_single(run_cli):
    assert run_cli("term", "--spec", "0,0,1", "--params", "1,3,9", "--n", "0", "--method", "iter")[1] == "0\n"
    assert run_cli("term", "--spec", "0,1,1", "--params", "1,1,1", "--n", "10", "--method", "matrix")[1] == "149\n"
    assert run_cli("term", "--spec", "1/2,0,0", "--params", "0.5,1,1", "--n", "4")[1] == "1/4\n"


def test_term_matrix_falls_back_at_zero(run_cli):
    code, out, _ = run_cli("term", "--spec", "5,0,1", "--params", "1,3,9", "--n", "0", "--method", "matrix")
    assert code == 0 and out == "5\n"


def test_term_exit_codes(run_cli):
    assert run_cli("term", "--spec", "0,0,x", "--params", "1,3,9", "--n", "3")[0] == 2
    assert run_cli("term", "--spec", "0,0,1", "--params", "1,3", "--n", "3")[0] == 2
    assert run_cli("term", "--spec", "0,0,1", "--params", "1,3,9", "--n", "-1")[0] == 2
    assert run_cli("term", "--spec", "0,0,1", "--params", "0,0,0", "--n", "3", "--method", "binet")[0] == 3


def test_term_json_round_trip(run_cli):
    code, out, _ = run_cli("term", "--spec", "1/3,2,-5/7", "--params", "2,5,7", "--n", "30",
                           "--method", "all", "--format", "json-lines")
    rec = json.loads(out)
    assert Fraction(rec["iter"]) == Fraction(rec["matrix"])
    ctx = context(128)
    exact = Fraction(rec["iter"])
    assert abs(ctx.mpf(rec["binet"]) - ctx.mpf(exact.numerator) / exact.denominator) < abs(ctx.mpf(rec["binet"])) * ctx.ldexp(1, -64)
    assert rec["agree"] is True


def test_geomean_exponents(run_cli):
    assert run_cli("geomean", "--n", "5", "--mode", "exponents")[1] == "a^4 b^7 c^16 / 3^3\n"
    rec = json.loads(run_cli("geomean", "--n", "6", "--format", "json-lines")[1])
    assert (rec["num_a"], rec["num_b"], rec["num_c"], rec["denominator"]) == (16, 28, 37, 81)


def test_geomean_value(run_cli):
    code, out, _ = run_cli("geomean", "--init", "7,7,7", "--n", "30", "--mode", "value")
    assert code == 0 and mpmath.mpf(out) == 7


def test_geomean_trace(run_cli):
    code, out, _ = run_cli("geomean", "--init", "2,3,5", "--n", "60", "--mode", "trace")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert len(rows) == 61 and list(rows[0]) == ["n", "ratio", "deviation"]
    assert float(rows[-1]["deviation"]) < 1e-6


def test_geomean_bad_init(run_cli):
    assert run_cli("geomean", "--init", "0,3,5", "--n", "4", "--mode", "value")[0] == 3
    assert run_cli("geomean", "--n", "4", "--mode", "value")[0] == 2


def test_verify_all(run_cli):
    code, out, _ = run_cli("verify", "--all", "--cases", "50", "--seed", "7")
    assert code == 0 and out.strip().endswith("600/600 passed")


def test_verify_single(run_cli):
    code, out, _ = run_cli("verify", "--id", "PROP2", "--lambda", "2", "--n", "4", "--format", "json-lines")
    rec = json.loads(out)
    assert code == 0 and rec["lhs"] == "4" and rec["rhs"] == "4" and rec["pass"]
    code, out, _ = run_cli("verify", "--id", "I1", "--n", "1", "--format", "json-lines")
    rec = json.loads(out)
    assert code == 0 and rec["lhs"] == rec["rhs"] == "0"
    code, out, _ = run_cli("verify", "--id", "E4_ADDITION", "--spec", "2,-1,3", "--params", "1,2,5",
                           "--n", "4", "--m", "3")
    assert code == 0 and out.startswith("E4_ADDITION PASS")
    code, out, _ = run_cli("verify", "--id", "BINET_FUNDAMENTAL", "--params", "1,3,9", "--n", "4")
    assert code == 0


def test_verify_usage_errors(run_cli):
    assert run_cli("verify", "--id", "NOPE")[0] == 2
    assert run_cli("verify", "--id", "PROP2", "--n", "4")[0] == 2
    assert run_cli("verify", "--all", "--cases", "0")[0] == 2
    assert run_cli("verify", "--id", "BINET_FUNDAMENTAL")[0] == 2


def test_verify_filtered_catalog(run_cli):
    code, out, _ = run_cli("verify", "--id", "SIMILARITY_N10", "--cases", "3", "--format", "csv")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert code == 0 and len(rows) == 3 and all(r["identity_id"] == "SIMILARITY_N10" for r in rows)


def test_verify_failure_exit_code(run_cli, monkeypatch):
    import horadam.cli as cli
    from horadam.identities import IdentityId, IdentityReport

    monkeypatch.setattr(
        cli, "run_catalog",
        lambda *a: [IdentityReport(IdentityId.I1, {"n": 1}, Fraction(0), Fraction(1), False)],
    )
    assert run_cli("verify", "--all")[0] == 1


def test_verify_deterministic(run_cli):
    first = run_cli("verify", "--all", "--cases", "5", "--seed", "3", "--format", "json-lines")[1]
    second = run_cli("verify", "--all", "--cases", "5", "--seed", "3", "--format", "json-lines")[1]
    assert first == second


def test_verify_csv_quotes_fractions(run_cli):
    out = run_cli("verify", "--id", "PROP1", "--lambda", "1/3", "--n", "4", "--format", "csv")[1]
    assert out.splitlines()[1].split(",")[0] == '"PROP1"'
    row = next(csv.DictReader(io.StringIO(out)))
    assert Fraction(row["lhs"]) == 1  # T[3]


def test_roots(run_cli):
    code, out, _ = run_cli("roots", "--params", "1,1,1")
    fields = dict(line.split(" = ") for line in out.strip().splitlines())
    assert code == 0 and fields["delta"] == "11/27"
    assert abs(mpmath.mpf(fields["alpha"]) - mpmath.mpf("1.83929")) < 1e-5
    assert run_cli("roots", "--params", "0,0,0")[0] == 3
    code, _, err = run_cli("roots", "--params", "6,-11,6")
    assert code == 3 and "delta > 0" in err


def test_precision_flag_and_env(run_cli, monkeypatch):
    short = run_cli("roots", "--params", "1,3,9", "--precision", "32")[1]
    long = run_cli("roots", "--params", "1,3,9", "--precision", "256")[1]
    assert len(long) > len(short)
    monkeypatch.setenv("HORADAM_PRECISION", "32")
    assert run_cli("roots", "--params", "1,3,9")[1] == short
    monkeypatch.setenv("HORADAM_PRECISION", "4")
    assert run_cli("roots", "--params", "1,3,9")[0] == 2
    assert run_cli("roots", "--params", "1,3,9", "--precision", "8")[0] == 2


def test_bench(run_cli):
    code, out, _ = run_cli("bench", "--n", "1000,10000", "--methods", "iter,matrix")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert code == 0 and len(rows) == 4
    by = {(r["method"], r["n"]): r for r in rows}
    for n in ("1000", "10000"):
        assert by[("iter", n)]["result_bit_length"] == by[("matrix", n)]["result_bit_length"]
    rows = list(csv.DictReader(io.StringIO(run_cli("bench", "--n", "1", "--methods", "matrix")[1])))
    assert rows[0]["result_bit_length"] == "0" and rows[0]["multiplications"] == "0"


def test_bench_caps(run_cli):
    assert run_cli("bench", "--n", "100001", "--methods", "iter")[0] == 2
    assert run_cli("bench", "--n", "10000001", "--methods", "matrix")[0] == 2
    assert run_cli("bench", "--n", "10", "--methods", "kitamasa")[0] == 2


def test_module_entry_point():
    import subprocess
    import sys

    proc = subprocess.run([sys.executable, "-m", "horadam", "geomean", "--n", "3"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout == "a^1 b^1 c^1 / 3^1\n"


def test_complex_round_trip():
    from horadam._numeric import format_complex, parse_complex

    ctx = context(128)
    for z in (ctx.mpc(-1, ctx.sqrt(2)), ctx.mpc("1e-30", "-3.5e+12"), ctx.mpc(2, 0)):
        assert parse_complex(ctx, format_complex(z, 128)) == z
    with pytest.raises(ValueError):
        parse_complex(ctx, "1.5")
