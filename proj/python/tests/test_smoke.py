import os
import pathlib

import pytest

import coxsaito

DATA = pathlib.Path(os.environ.get("COXSAITO_DATA_DIR", pathlib.Path(__file__).resolve().parents[2] / "data"))


def test_b2_verifies():
    ctx = coxsaito.Context.builtin("B", 2)
    assert ctx.group == "B2"
    assert ctx.exponents == [1, 3]
    assert ctx.coxeter_number == 4
    report = coxsaito.verify(ctx)
    assert report["summary"]["ok"]
    assert report["summary"]["fail"] == 0


def test_a1_bk_values():
    ctx = coxsaito.Context.builtin("A", 1)
    assert [ctx.bk(k)[0][0] for k in (1, 2, 3)] == ["2", "6", "10"]


def test_xi_degrees():
    ctx = coxsaito.Context.builtin("B", 2)
    assert [t["degree"] for t in ctx.xi(3)] == [5, 7]
    assert [t["degree"] for t in ctx.xi(2)] == [4, 4]


def test_h3_from_file():
    ctx = coxsaito.Context.from_file(str(DATA / "h3.inv"))
    assert ctx.group == "H3"
    assert ctx.coxeter_number == 10
    assert [t["degree"] for t in ctx.xi(1)] == [1, 5, 9]


def test_parse_error_position():
    with pytest.raises(coxsaito.ParseError) as e:
        coxsaito.Context.from_polynomials("B", 2, "[invariant]\nterm = 2 0 : 1/0\n")
    assert (e.value.line, e.value.column) == (2, 14)
    assert isinstance(e.value, coxsaito.Error)


def test_validation_kind():
    text = (
        "[invariant]\nterm = 2 0 : 1\nterm = 0 2 : 1\n"
        "[invariant]\nterm = 4 0 : 1\nterm = 2 2 : 2\nterm = 0 4 : 1\n"
    )
    with pytest.raises(coxsaito.ValidationError) as e:
        coxsaito.Context.from_polynomials("B", 2, text)
    assert e.value.kind == "JacobianCriterionFailed"


def test_run_cli_exit_codes():
    code, out, _ = coxsaito.run_cli(["verify", "--type", "A", "--rank", "1"])
    assert code == 0 and "summary:" in out
    code, _, _ = coxsaito.run_cli(["verify", "--type", "B", "--rank", "2", "--suite", "bk", "--perturb", "bk:2:1:1"])
    assert code == 1
    code, _, _ = coxsaito.run_cli(["verify", "--type", "B"])
    assert code == 2
