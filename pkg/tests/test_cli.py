import json
from fractions import Fraction as F
from pathlib import Path

import pytest

from infragame.cli import CSV_COLUMNS, CSV_VERSION, main

DATA = Path(__file__).parent / "data"
CASE = ["--n", "10", "--cd", "1/20", "--ca", "1/8", "--tau", "0.3"]


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


class TestSolve:
    def test_protected_ring(self, capsys):
        code, out, _ = run(capsys, "solve", *CASE, "--taur", "0.2")
        data = json.loads(out)
        assert code == 0
        assert data["chosen"]["situation"] == "S1"
        assert data["chosen"]["u_d"] == "1/2"
        assert data["chosen"]["e1_kind"] == "Harary(2)"
        assert data["regime"] == "R1"

    def test_abandoned(self, capsys):
        code, out, _ = run(capsys, "solve", *CASE, "--taur", "0.55")
        chosen = json.loads(out)["chosen"]
        assert code == 0
        assert (chosen["situation"], chosen["u_d"], chosen["u_a"]) == ("S5", "0", "1")

    def test_no_network(self, capsys):
        code, out, _ = run(capsys, "solve", "--n", "5", "--cd", "1/3", "--ca", "1/8",
                           "--tau", "0.3", "--taur", "0.2")
        assert code == 0 and json.loads(out)["regime"] == "NoNetwork"

    def test_rationals_round_trip(self, capsys):
        _, out, _ = run(capsys, "solve", *CASE, "--taur", "2/5")
        data = json.loads(out)
        assert F(data["chosen"]["u_a"]) == F(11, 40)
        assert all(F(v) == F(v).limit_denominator() for v in data["params"].values()
                   if isinstance(v, str))
        assert str(F(data["params"]["c_a"])) == data["params"]["c_a"] == "1/8"

    def test_boundary_exit_code(self, capsys):
        code, out, _ = run(capsys, "solve", *CASE, "--taur", "1/4")
        data = json.loads(out)
        assert code == 3
        assert data["chosen"] is None
        assert {c["situation"] for c in data["candidates"]} >= {"S1", "S2"}

    def test_decimal_is_marked_lossy(self, capsys):
        _, out, _ = run(capsys, "solve", *CASE, "--taur", "0.2", "--decimal")
        data = json.loads(out)
        assert data["lossy"] is True and data["chosen"]["u_d"] == "0.5"

    def test_text(self, capsys):
        code, out, _ = run(capsys, "solve", *CASE, "--taur", "0.2", "--format", "text")
        assert code == 0 and "S1" in out

    @pytest.mark.parametrize("bad", [["--taur", "0.8"], ["--taur", "x"]])
    def test_invalid(self, capsys, bad):
        code, _, err = run(capsys, "solve", *CASE, *bad)
        assert code == 2 and "error" in err

    def test_deterministic(self, capsys):
        first = run(capsys, "solve", *CASE, "--taur", "3/10")
        second = run(capsys, "solve", *CASE, "--taur", "3/10")
        assert first == second


class TestSweep:
    def test_golden_case_study(self, capsys):
        code, out, err = run(capsys, "sweep", *CASE)
        assert code == 0
        assert out == (DATA / "case_study_sweep.csv").read_text()
        assert "switch points: 3/8, 1/2" in err

    def test_header(self, capsys):
        _, out, _ = run(capsys, "sweep", *CASE, "--to", "1/10")
        lines = out.splitlines()
        assert lines[0] == CSV_VERSION
        assert lines[1].split(",") == CSV_COLUMNS

    def test_parallel_rows_in_order(self, capsys):
        _, serial, _ = run(capsys, "sweep", *CASE, "--step", "1/40")
        _, parallel, _ = run(capsys, "sweep", *CASE, "--step", "1/40", "--jobs", "3")
        assert serial == parallel

    def test_empty_range_on_boundary(self, capsys):
        code, out, _ = run(capsys, "sweep", *CASE, "--from", "1/4", "--to", "1/4")
        assert code == 0
        assert len(out.splitlines()) == 2

    def test_boundary_error(self, capsys):
        code, _, err = run(capsys, "sweep", *CASE, "--from", "1/4", "--to", "1/4",
                           "--boundary", "error")
        assert code == 3 and "1/4" in err

    def test_json(self, capsys):
        _, out, _ = run(capsys, "sweep", *CASE, "--format", "json", "--step", "1/40")
        data = json.loads(out)
        assert data["switch_points"] == ["3/8", "1/2"]
        assert data["boundary_points"] == ["1/4", "1/2"]

    def test_bad_parameter(self, capsys):
        code, _, _ = run(capsys, "sweep", *CASE, "--param", "n")
        assert code == 2


class TestOracle:
    def test_agree_small_tree(self, capsys):
        code, out, _ = run(capsys, "oracle", "--n", "3", "--cd", "1/10", "--ca", "1/5",
                           "--tau", "1/5", "--taur", "1/10")
        data = json.loads(out)
        assert code == 0 and data["verdict"] == "agree"
        assert data["oracle"]["chosen"]["situation"] == "S1"
        assert data["oracle"]["chosen"]["u_d"] == "4/5"

    def test_agree_complete_graph(self, capsys):
        code, out, _ = run(capsys, "oracle", "--n", "4", "--cd", "1/20", "--ca", "1/10",
                           "--tau", "3/10", "--taur", "1/4")
        data = json.loads(out)
        assert code == 0 and data["solver"]["chosen"]["u_d"] == "7/10"

    def test_boundary(self, capsys):
        code, out, _ = run(capsys, "oracle", "--n", "3", "--cd", "1/10", "--ca", "1/10",
                           "--tau", "0", "--taur", "0")
        data = json.loads(out)
        assert code == 3 and data["verdict"] == "solver-boundary"
        assert data["oracle"]["chosen"] is not None

    def test_too_large(self, capsys):
        code, _, _ = run(capsys, "oracle", *CASE, "--taur", "0.2")
        assert code == 2


class TestTopology:
    @pytest.mark.parametrize(
        "argv,count,conn",
        [(["harary", "10", "2"], 10, 2), (["harary", "5", "3"], 8, 3), (["tree", "10"], 9, 1)],
    )
    def test_properties(self, capsys, argv, count, conn):
        code, out, _ = run(capsys, "topology", *argv)
        data = json.loads(out)
        assert code == 0
        assert (data["edge_count"], data["edge_connectivity"]) == (count, conn)
        assert len(data["edges"]) == count

    def test_edge_list(self, capsys):
        code, out, err = run(capsys, "topology", "ring", "4", "--format", "text")
        assert code == 0 and out.splitlines() == ["0 1", "0 3", "1 2", "2 3"]
        assert "edge_connectivity: 2" in err

    def test_constructor_error(self, capsys):
        code, _, err = run(capsys, "topology", "reinforced", "10", "5")
        assert code == 2 and "13" in err
