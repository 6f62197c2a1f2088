from __future__ import annotations

import io
import typing as t
from pathlib import Path

import pytest

from qualtime_tools.cli import EXIT_INPUT_ERROR, EXIT_SAT, EXIT_UNSAT, run
from qualtime_tools.formats import parse_text


def invoke(*argv: str) -> t.Tuple[int, str]:
    out = io.StringIO()
    code = run(list(argv), out=out)
    return code, out.getvalue()


def write(tmp_path: Path, name: str, text: str) -> str:
    path = tmp_path / name
    path.write_text(text, encoding="utf-8")
    return str(path)


def test_solve_interval_instance(golden: Path) -> None:
    assert invoke("solve", str(golden / "ia_meets.ia"), "--k", "1") == (EXIT_SAT, "SAT\n")


def test_solve_with_witness(golden: Path) -> None:
    code, output = invoke("solve", str(golden / "ia_meets.ia"), "--k", "1", "--witness")
    assert code == EXIT_SAT
    assert output.splitlines() == ["SAT", "cell 1 : 0-", "cell 2 : 0+ 1-", "cell 3 : 1+"]


def test_count_pot_instance(golden: Path) -> None:
    assert invoke("count", str(golden / "pot_lt_gt.pot"), "--k", "1") == (EXIT_SAT, "COUNT 2\n")


def test_unsatisfiable_instance(tmp_path: Path) -> None:
    path = write(tmp_path, "inc.pot", "pot 2\nc 0 1 inc\n")
    assert invoke("solve", path, "--k", "1") == (EXIT_UNSAT, "UNSAT\n")
    assert invoke("solve", path, "--k", "2") == (EXIT_SAT, "SAT\n")
    assert invoke("count", path, "--k", "1") == (EXIT_UNSAT, "COUNT 0\n")


def test_overlap_semantics_flag(golden: Path) -> None:
    triangle = str(golden / "ia_overlap_triangle.ia")
    assert invoke("solve", triangle, "--k", "2")[0] == EXIT_UNSAT
    assert invoke("solve", triangle, "--k", "2", "--at-most-k")[0] == EXIT_SAT


def test_empty_constraint_reports_unsat(golden: Path) -> None:
    conflict = str(golden / "pot_conflict.pot")
    assert invoke("solve", conflict, "--k", "3") == (EXIT_UNSAT, "UNSAT\n")
    assert invoke("count", conflict, "--k", "3") == (EXIT_UNSAT, "COUNT 0\n")


def test_csp_solve_and_params(golden: Path) -> None:
    triangle = str(golden / "csp_triangle.csp")
    assert invoke("solve", triangle) == (EXIT_UNSAT, "UNSAT\n")
    code, output = invoke("params", triangle)
    assert code == EXIT_SAT
    assert output.splitlines() == [
        "dom_size 2",
        "max_arity 2",
        "max_degree 2",
        "max_cardinality 2",
    ]


def test_oracle_command(golden: Path) -> None:
    path = str(golden / "pot_lt_gt.pot")
    assert invoke("oracle", path, "--k", "1") == (EXIT_SAT, "SAT\n")
    assert invoke("oracle", path, "--k", "1", "--count") == (EXIT_SAT, "COUNT 2\n")


def test_width_command(golden: Path) -> None:
    assert invoke("width", str(golden / "poset_chain.poset"), "--k", "1") == (
        EXIT_SAT,
        "WIDTH-OK\n",
    )
    antichain = str(golden / "poset_antichain.poset")
    assert invoke("width", antichain, "--k", "1") == (EXIT_UNSAT, "WIDTH-FAIL\n")
    assert invoke("width", antichain, "--k", "2") == (EXIT_SAT, "WIDTH-OK\n")


@pytest.mark.parametrize(
    "argv",
    [
        ["solve", "missing.pot"],
        ["solve", "--k", "1"],
        ["frobnicate"],
        ["width", "{golden}/pot_lt_gt.pot", "--k", "1"],
        ["solve", "{golden}/poset_chain.poset"],
        ["solve", "{golden}/pot_lt_gt.pot", "--k", "0"],
        ["solve", "{golden}/pot_lt_gt.pot", "--problem", "ia"],
        ["params", "{golden}/ia_meets.ia"],
    ],
)
def test_input_errors(golden: Path, argv: t.List[str]) -> None:
    code, output = invoke(*(arg.format(golden=golden) for arg in argv))
    assert code == EXIT_INPUT_ERROR
    assert output == ""


def test_parse_error_exit_code(tmp_path: Path, capsys: pytest.CaptureFixture[str]) -> None:
    path = write(tmp_path, "loop.pot", "pot 2\nc 1 1 lt\n")
    assert invoke("solve", path)[0] == EXIT_INPUT_ERROR
    assert "line 2" in capsys.readouterr().err


def test_gen_is_deterministic(tmp_path: Path) -> None:
    code, first = invoke("gen", "--problem", "pot", "--n", "6", "--k", "2", "--seed", "3")
    assert code == EXIT_SAT
    assert invoke("gen", "--problem", "pot", "--n", "6", "--k", "2", "--seed", "3")[1] == first
    assert parse_text(first).n == 6
    target = tmp_path / "ia.ia"
    assert invoke("gen", "--problem", "ia", "--n", "4", "-o", str(target)) == (EXIT_SAT, "")
    assert invoke("solve", str(target), "--k", "1") == (EXIT_SAT, "SAT\n")


def test_bench_writes_csv(tmp_path: Path) -> None:
    code, output = invoke(
        "bench", "--problem", "pot", "--n-range", "2..3", "--k", "2", "--seeds", "5", "--verify"
    )
    assert code == EXIT_SAT
    lines = output.splitlines()
    assert lines[0] == "problem,n,k,seed,result,count,millis"
    assert len(lines) == 11
    assert all(line.startswith("pot,") for line in lines[1:])
    target = tmp_path / "bench.csv"
    assert invoke(
        "bench", "--problem", "csp", "--n-range", "3", "--seeds", "2", "--decide-only",
        "--output", str(target),
    ) == (EXIT_SAT, "")
    rows = target.read_text(encoding="utf-8").splitlines()
    assert len(rows) == 3
    assert rows[1].split(",")[5] == ""


def test_bench_rejects_bad_range() -> None:
    assert invoke("bench", "--problem", "ia", "--n-range", "5..2")[0] == EXIT_INPUT_ERROR
