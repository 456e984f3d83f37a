import io
import json

import pytest

from ftloops.cli import run

from conftest import MODELS


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


def model(name):
    return str(MODELS / name)


def test_mcs_text():
    code, out, _ = call("mcs", model("two_gate_loop.ft"), "--top", "A", "--format", "text")
    assert code == 0
    assert out == "{Aa}\n{Ab,Bb}\n"


def test_mcs_json():
    code, out, _ = call("mcs", model("two_gate_loop.ft"), "--top", "B")
    assert json.loads(out) == {"top": "B", "cut_sets": [["Bb"], ["Aa", "Ba"]]}


def test_solutions_dual():
    code, out, _ = call("solutions", model("ordinary_loop.ft"), "--assign", "Q10=0,Q11=1")
    assert code == 0
    assert '"dual":{"T0":true}' in out
    assert len(json.loads(out)["solutions"]) == 2


def test_repairable_is_analysis_error():
    code, out, err = call("mcs", model("two_gate_repairable.ft"), "--top", "A")
    assert code == 2
    assert out == ""
    assert err == "error: RepairableUnsupported: Aa\n"


def test_cap_exceeded_exit_code():
    code, _, err = call("mcs", model("three_gate_nonlinear.ft"), "--top", "A", "--cap", "3")
    assert code == 3
    assert err.startswith("error: CapExceeded:")


def test_cap_from_environment(monkeypatch):
    monkeypatch.setenv("FT_PRODUCT_CAP", "3")
    code, _, _ = call("mcs", model("three_gate_nonlinear.ft"), "--top", "A")
    assert code == 3
    monkeypatch.setenv("FT_PRODUCT_CAP", "lots")
    code, _, err = call("mcs", model("three_gate_nonlinear.ft"), "--top", "A")
    assert code == 1


def test_loops_report_is_cap_tolerant():
    code, out, _ = call("loops", model("three_gate_nonlinear.ft"), "--cap", "2")
    assert code == 0
    (comp,) = json.loads(out)["components"]
    assert comp["class"] is None and comp["diagnostic"].startswith("CapExceeded")


@pytest.mark.parametrize(
    "argv",
    [
        ["eval", model("two_gate_loop.ft"), "--assign", "Aa=1"],
        ["eval", model("two_gate_loop.ft"), "--assign", "Aa=1,Ab=0,Ba=0,Bb=2"],
        ["eval", model("two_gate_loop.ft"), "--assign", "Aa=1,Ab=0,Ba=0,Bb=0,Zz=1"],
        ["mcs", model("two_gate_loop.ft"), "--top", "Nope"],
        ["mcs", model("two_gate_loop.ft"), "--format", "csv"],
        ["mcs", "/no/such/file.ft"],
        ["frobnicate", model("two_gate_loop.ft")],
        ["table", model("ordinary_loop.ft"), "--candidates", "T0=1,Q=0"],
    ],
)
def test_usage_errors(argv):
    code, _, err = call(*argv)
    assert code == 1
    assert err.startswith("error: UsageError:")


def test_model_syntax_error(tmp_path):
    path = tmp_path / "bad.ft"
    path.write_text("basic a\ngate A = a |\ntop A\n")
    code, _, err = call("validate", str(path))
    assert code == 2
    assert err.startswith("error: SyntaxError: line 2")


def test_illegal_repair_exit(tmp_path):
    traj = tmp_path / "t.csv"
    traj.write_text("1,Aa,1\n2,Aa,0\n")
    code, _, err = call("simulate", model("two_gate_loop.ft"), "--trajectory", str(traj))
    assert code == 2
    assert err.startswith("error: IllegalRepair:")


def test_too_many_basics_is_cap_class(tmp_path):
    path = tmp_path / "wide.ft"
    path.write_text("\n".join(f"basic e{i}" for i in range(21)) + "\ngate A = e0\ntop A\n")
    code, _, err = call("table", str(path))
    assert code == 3
    assert err.startswith("error: TooManyBasics:")


def test_eval():
    code, out, _ = call("eval", model("two_gate_loop.ft"), "--assign", "Aa=0,Ab=1,Ba=1,Bb=0")
    assert json.loads(out)["state"] == {"A": False, "B": False}


def test_table_csv_with_all_candidates():
    code, out, _ = call("table", model("ordinary_loop.ft"), "--candidates", "all", "--format", "csv")
    assert code == 0
    assert out.splitlines()[2] == "0,1,+,+,2,0,1"


def test_table_explicit_candidates():
    code, out, _ = call("table", model("ordinary_loop.ft"), "--candidates", "T0=0;T0=1")
    rows = json.loads(out)["rows"]
    assert [r["available"] for r in rows] == [[True, False], [True, True], [False, True], [False, True]]


def test_simulate_text():
    code, out, _ = call(
        "simulate", model("two_gate_repairable.ft"), "--trajectory", str(MODELS / "latching.csv"), "--format", "text"
    )
    assert code == 0
    assert out.splitlines()[-1] == "final: A=1 B=1"


def test_quantify():
    code, out, _ = call("quantify", model("two_gate_loop.ft"), "--top", "A", "--method", "inclusion-exclusion")
    data = json.loads(out)
    assert data["method"] == "inclusion-exclusion"
    assert data["value"] == pytest.approx(0.109, abs=1e-12)
    assert data["cutset_count"] == 2


def test_validate_and_loops_text():
    assert call("validate", model("yang_four_gate.ft"), "--format", "text")[1] == (
        "ok: 16 basic events, 4 gates, tops A,B,C,D\n"
    )
    assert call("loops", model("yang_four_gate.ft"), "--format", "text")[1] == "LinearInterrelated: A,B,C,D\n"


def test_stdin(monkeypatch):
    monkeypatch.setattr("sys.stdin", io.StringIO("basic e\ngate A = e | A\ntop A\n"))
    code, out, _ = call("mcs", "-", "--format", "text")
    assert (code, out) == (0, "{e}\n")


@pytest.mark.parametrize(
    "argv",
    [
        ["loops", model("three_gate_nonlinear.ft")],
        ["table", model("two_gate_coefficients.ft"), "--candidates", "all", "--format", "csv"],
        ["mcs", model("yang_four_gate.ft"), "--top", "C"],
        ["simulate", model("two_gate_repairable.ft"), "--trajectory", str(MODELS / "latching.csv")],
    ],
)
def test_deterministic_bytes(argv):
    assert call(*argv) == call(*argv)
