import io
import json
import subprocess
import sys

import pytest

from polybound.cli import REPORT_FIELDS, emit_table, parse_batch_line, run
from polybound.decide import DecideConfig
from polybound.errors import ParseError

from conftest import CONVEX_CANDIDATE, DATA, MOTZKIN, dense


def call(*argv):
    out = io.StringIO()
    status, rep = run(list(argv), out)
    return status, rep, out.getvalue()


def call_json(*argv):
    status, _, text = call(*argv, "--json")
    return status, json.loads(text)


class TestDecisions:
    def test_golden_report(self):
        status, rep = call_json("lbound", "x1 - x2", "--point", "1,3")
        assert status == 1
        rep["timings"] = {}
        assert rep == json.loads((DATA / "lbound_line_1_3.json").read_text())

    def test_all_fields_present(self):
        for argv in (["lbound", "x1^2"], ["nonneg", "-1"], ["lbound", "x1/x2"], ["convex", "x1*x2"]):
            _, rep = call_json(*argv)
            assert set(REPORT_FIELDS) <= set(rep)

    def test_dense_quartic(self):
        status, rep = call_json("lbound", dense(4), "--point", "1,3")
        assert status == 0
        assert (rep["deg_phi"], rep["v_F"], rep["v_R"], rep["verdict"]) == (8, 6, 6, True)

    def test_motzkin_text_row(self):
        status, _, text = call("lbound", MOTZKIN, "--point", "1,3")
        assert status == 0
        assert "deg_phi=6" in text and "output=true" in text and text.count("\n") == 1

    def test_nonneg(self):
        status, rep = call_json("nonneg", "x1^2 + x2^2 - 3*x1*x2 + 1", "--point", "1,2,3")
        assert status == 1 and (rep["v_F"], rep["v_R"], rep["v"]) == (6, 4, 2)
        assert rep["decided_vars"] == ["x1", "x2", "z"]

    def test_convex(self):
        status, rep = call_json("convex", CONVEX_CANDIDATE)
        assert status == 1
        assert rep["first_failure"] == [1, 2]
        assert [m["verdict"] for m in rep["minors"]] == [True, True, False]
        status, _, text = call("convex", CONVEX_CANDIDATE)
        assert "first failure: {1,2}" in text

    def test_vars_pin_order(self):
        _, rep = call_json("lbound", "x2^3 + x1^2", "--vars", "x2,x1")
        assert rep["vars"] == ["x2", "x1"] and rep["verdict"] is False

    def test_constant(self):
        status, rep = call_json("lbound", "-3")
        assert status == 0 and rep["kernel"] == {"shortcut": "constant"}

    def test_seed_from_environment(self, monkeypatch):
        monkeypatch.setenv("POLYBOUND_SEED", "4")
        _, a = call_json("lbound", "x1^2 + x2^2")
        _, b = call_json("lbound", "x1^2 + x2^2", "--seed", "4")
        _, c = call_json("lbound", "x1^2 + x2^2", "--seed", "5")
        assert a["point"] == b["point"] != c["point"]

    def test_buchberger_method(self):
        status, rep = call_json("lbound", "x1 - x2", "--point", "1,3", "--method", "buchberger")
        assert status == 1 and rep["phi"] == [[-2, 4], [0, 4], [0, 1]]


class TestOtherCommands:
    def test_tangency(self):
        status, rep = call_json("tangency", "x1 - x2", "--point", "1,3")
        assert status == 0 and rep["t_good"] and rep["deg_theta"] == 2
        assert rep["phi_text"] == "w*t^2 + 4*w*t + (4*w - 2)"
        status, rep = call_json("tangency", "(x1*x2 - 1)^2 + x2^2", "--point", "0,0")
        assert status == 1 and (rep["deg_phi"], rep["deg_theta"]) == (4, 8)

    def test_sturm(self):
        status, rep = call_json("sturm", "w*t^2 + 4*w*t + 4*w - 2")
        assert status == 0
        assert rep["signs_minus_inf_F"] == ["+", "-", "+"]
        assert rep["signs_minus_inf"] == ["-", "-", "+"]
        assert rep["v"] == 1 and len(rep["sequence"]) == 3
        _, _, text = call("sturm", "t^2 - 1")
        assert text.splitlines()[-1] == "v = 0"


class TestExitCodes:
    @pytest.mark.parametrize(
        "argv,code",
        [
            (["lbound", "x1 - x2", "--point", "1,3"], 1),
            (["lbound", "x1^2 + x2^2"], 0),
            (["lbound", "(x1*x2 - 1)^2 + x2^2", "--point", "0,0", "--retries", "0"], 2),
            (["lbound"], 3),
            (["frobnicate", "x1"], 3),
            (["lbound", "x1", "--bound", "0"], 3),
            (["lbound", "x1/x2"], 4),
            (["lbound", "x1 +"], 4),
            (["lbound", "1/(1 - 1)"], 4),
            (["lbound", "x1 - x2", "--point", "1,2,3"], 5),
            (["lbound", "x1 + y", "--vars", "x1"], 5),
            (["tangency", "3"], 5),
            (["tangency", "x1^2 + x1", "--vars", "x1,x2", "--point", "0,0"], 7),
            (["lbound", "(x1*x2 - 1)^2 + x2^2", "--point", "1,3", "--budget", "1", "--method", "buchberger"], 6),
            (["table", "/nonexistent/batch.txt"], 8),
        ],
    )
    def test_codes(self, argv, code):
        status, _, _ = call(*argv)
        assert status == code

    def test_error_report(self):
        status, rep = call_json("lbound", "x1/x2")
        assert status == 4
        assert rep["status"] == "error" and rep["error"]["type"] == "NonPolynomial"

    def test_inconclusive_report(self):
        status, rep = call_json("lbound", "(x1*x2 - 1)^2 + x2^2", "--point", "0,0", "--retries", "0")
        assert status == 2 and rep["status"] == "inconclusive"

    def test_console_script(self):
        proc = subprocess.run(
            [sys.executable, "-m", "polybound.cli", "lbound", "x1 - x2", "--point", "1,3"],
            capture_output=True, text=True,
        )
        assert proc.returncode == 1 and "output=false" in proc.stdout


class TestTable:
    cfg = DecideConfig()

    def test_empty(self, tmp_path):
        batch = tmp_path / "empty.txt"
        batch.write_text("")
        status, _, text = call("table", str(batch))
        assert status == 0 and text == ""

    def test_rows(self, tmp_path):
        batch = tmp_path / "b.txt"
        batch.write_text(
            "# comment\n"
            "x1 - x2 | point=1,3 | label=line\n"
            "\n"
            "x1 + * 2\n"
            "(x1*x2 - 1)^2 + x2^2 | point=0,0 | label=retry\n"
            "x1^2 + x2^2 - 3*x1*x2 + 1 | command=nonneg | point=1,2,3\n"
        )
        status, rep, _ = call("table", str(batch), "--json", "--retries", "1")
        assert status == 0
        rows = rep["rows"]
        assert [r["input"] for r in rows][:2] == ["line", "x1 + * 2"]
        assert [r["output"] for r in rows] == ["false", "ERROR", "true", "false"]
        assert (rows[0]["deg_phi"], rows[0]["v_F"], rows[0]["v_R"]) == (2, 2, 1)
        assert (rows[3]["v_F"], rows[3]["v_R"]) == (6, 4)

    def test_text_layout(self):
        out = io.StringIO()
        emit_table(["x1 - x2 | point=1,3", "x1^2 | vars=x1"], self.cfg, out)
        lines = out.getvalue().splitlines()
        assert lines[0].split()[:6] == ["input", "deg", "phi", "v_F", "v_R", "output"]
        assert lines[1].split()[-5:-1] == ["2", "2", "1", "false"]
        assert len(lines) == 3

    def test_inconclusive_row(self):
        cfg = DecideConfig(max_retries=0)
        rows = emit_table(["(x1*x2 - 1)^2 + x2^2 | point=0,0"], cfg, io.StringIO())
        assert rows[0][4] == "INCONCLUSIVE"

    def test_dense_rows(self):
        rows = emit_table([f"{dense(d)} | point=1,3 | label=p{d}" for d in (3, 4)], self.cfg, io.StringIO())
        assert [(r[1], r[2], r[3], r[4]) for r in rows] == [(4, 3, 2, "false"), (8, 6, 6, "true")]

    def test_batch_line_syntax(self):
        assert parse_batch_line("x1 | point=1,2 | vars=x1,x2") == ("x1", {"point": "1,2", "vars": "x1,x2"})
        with pytest.raises(ParseError):
            parse_batch_line("x1 | speed=3")
        with pytest.raises(ParseError):
            parse_batch_line("x1 | point")
