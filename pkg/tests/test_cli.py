import json
import subprocess
import sys

import pytest

from relaygraph.cli import fixture_names, main, resolve_path
from relaygraph.cycles import validate_r_cycle
from relaygraph.io import load_graph


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv)
    return code, json.loads(out)


def test_check_ex1(capsys):
    code, rep = run_json(capsys, "check", "examples/ex1.json")
    assert code == 0
    assert rep["condition_R"] and rep["condition_R_prime"] and rep["condition_R_doubleprime"]
    assert rep["N"] == []
    assert rep["U"]["v4"] == ["v3", "v4", "v5"]
    assert rep["UC"] is False


def test_find_cycle_ex1_none(capsys):
    code, rep = run_json(capsys, "find-cycle", "examples/ex1.json")
    assert code == 1
    assert rep["method"] == "brute-force" and rep["found"] is False


def test_criterion_path4_zero(capsys):
    code, rep = run_json(capsys, "criterion", "examples/path4.json")
    assert code == 1
    assert [c["criterion"] for c in rep["components"]] == [0]


def test_find_cycle_witness_revalidates(capsys):
    code, rep = run_json(capsys, "find-cycle", "square4")
    assert code == 0 and rep["method"] == "uc-walk" and rep["revalidated"]
    g = load_graph(resolve_path("square4"))
    segs = [[g.id_of(n) for n in seg] for seg in rep["cycle"]]
    assert validate_r_cycle(g, segs)


@pytest.mark.parametrize("method", ["brute", "uc"])
def test_find_cycle_methods(capsys, method):
    code, rep = run_json(capsys, "find-cycle", "square4", "--method", method)
    assert code == 0 and rep["found"]


def test_method_outside_hypotheses_is_input_error(capsys):
    code, out, err = run(capsys, "find-cycle", "ex1", "--method", "uc")
    assert code == 2 and "UC" in err


def test_criterion_requires_r_simple(capsys):
    code, _, err = run(capsys, "criterion", "ex1")
    assert code == 2 and "not R-simple" in err


def test_colouring_ex2(capsys):
    code, rep = run_json(capsys, "colouring", "ex2")
    assert code == 1
    assert rep["colouring"] and not rep["r_colouring"]
    assert rep["witness"]["vertex"] == "v1"
    (comp,) = rep["components"]
    assert comp["quotient_edges"] == [[1, 2], [2, 3], [2, 4], [3, 4]]
    assert comp["quotient_complete"] is False


def test_components(capsys):
    code, rep = run_json(capsys, "components", "path4")
    assert code == 0 and rep["r_simple"] and len(rep["r_components"]) == 1


def test_expect_flag(capsys):
    assert run(capsys, "find-cycle", "ex1", "--expect", "no")[0] == 0
    assert run(capsys, "find-cycle", "ex1", "--expect", "yes")[0] == 1
    assert run(capsys, "find-cycle", "square4", "--expect", "yes")[0] == 0


def test_json_is_deterministic(capsys):
    outs = {run(capsys, "fuzz", "ring", "--count", "5", "--seed", "7")[1] for _ in range(2)}
    assert len(outs) == 1
    other = run(capsys, "fuzz", "ring", "--count", "5", "--seed", "8")[1]
    assert other not in outs


def test_timings_opt_in(capsys):
    _, rep = run_json(capsys, "check", "ex1")
    assert "seconds" not in rep
    _, rep = run_json(capsys, "check", "ex1", "--timings")
    assert rep["seconds"] >= 0


def test_text_format(capsys):
    code, out, _ = run(capsys, "colouring", "ex2", "--format", "text")
    assert code == 1
    assert "r_colouring: false" in out
    assert "components.0.quotient_edges.0: 1 2" in out


def test_dot_output(capsys):
    code, out, _ = run(capsys, "export-dot", "ex1")
    assert code == 0 and out.startswith("graph") and "dashed" in out
    code, out, _ = run(capsys, "find-cycle", "square4", "--format", "dot")
    assert code == 0 and "red" in out
    # --format dot on export-dot must not leak into other verbs
    _, out, _ = run(capsys, "check", "ex1")
    json.loads(out)


def test_dot_needs_graph(capsys):
    code, _, err = run(capsys, "zwords", "--word", "x1", "--m", "1", "--format", "dot")
    assert code == 2


@pytest.mark.parametrize("argv, suffix", [
    (["find-cycle", "square4"], ".png"),
    (["fuzz", "uc", "--count", "3"], ".svg"),
    (["verify-r", "epsilon-basic"], ".png"),
])
def test_figure_written(capsys, tmp_path, argv, suffix):
    path = tmp_path / f"fig{suffix}"
    code, _, _ = run(capsys, *argv, "--figure", str(path))
    assert code == 0
    assert path.stat().st_size > 0


def test_figure_unavailable(capsys, tmp_path):
    code, _, err = run(capsys, "zwords", "--word", "x1", "--m", "1", "--figure", str(tmp_path / "z.png"))
    assert code == 2 and "no figure" in err


def test_fixture_fallback():
    assert {"ex1.json", "ex2.json", "sigma-prime.json", "path4.json"} <= set(fixture_names())
    assert resolve_path("examples/ex1.json") == resolve_path("ex1") == resolve_path("ex1.json")


def test_missing_file(capsys):
    code, _, err = run(capsys, "check", "no-such-graph.json")
    assert code == 2 and "no such file" in err


def test_bad_file_reports_line(capsys, tmp_path):
    p = tmp_path / "bad.json"
    p.write_text('{\n  "vertices": ["a", "b"],\n  "E": [["a", "b"]],\n  "E_star": [["a", "zz"]]\n}\n')
    code, _, err = run(capsys, "check", str(p))
    assert code == 2
    assert f"{p}:4:" in err


def test_malformed_json(capsys, tmp_path):
    p = tmp_path / "bad.json"
    p.write_text("{not json")
    assert run(capsys, "check", str(p))[0] == 2


def test_condition_r_failure_reported(capsys, tmp_path):
    p = tmp_path / "notr.json"
    p.write_text(json.dumps({"vertices": ["a", "b", "c"], "E": [["a", "b"]], "E_star": [["a", "c"], ["b", "c"]]}))
    code, rep = run_json(capsys, "check", str(p))
    assert code == 1 and rep["condition_R"] is False
    assert rep["violation"]["vertex"] == "c"


def test_zwords(capsys):
    code, rep = run_json(capsys, "zwords", "--word", "x1", "--word", "x2", "--m", "2")
    assert code == 0
    assert rep["z"] == ["x1^3 x2 x1^3", "x1^4 x2 x1^4"]
    assert rep["property_i"] and rep["property_ii"]


def test_zwords_inconclusive(capsys):
    code, rep = run_json(capsys, "zwords", "--word", "x1", "--word", "x2", "--budget", "5")
    assert code == 1 and rep["property_ii"] is None


def test_zwords_bad_word(capsys):
    code, _, err = run(capsys, "zwords", "--word", "x1^0")
    assert code == 2
    assert run(capsys, "zwords")[0] == 2


def test_epsilon_and_verify_r(capsys):
    code, rep = run_json(capsys, "epsilon", "epsilon-basic")
    assert code == 0
    assert [t["support"] for t in rep["terms"]] == [t["expected_support"] for t in rep["terms"]] == [19, 10]
    code, rep = run_json(capsys, "verify-r", "epsilon-basic")
    assert code == 0 and rep["r_not_one"] and rep["L"] >= rep["N"]


def test_bad_instance(capsys, tmp_path):
    p = tmp_path / "inst.json"
    p.write_text(json.dumps({"terms": [{"psi": [["x1", 1]], "b": []}]}))
    assert run(capsys, "verify-r", str(p))[0] == 2


def test_fuzz_report(capsys):
    code, rep = run_json(capsys, "fuzz", "conditions", "--count", "20", "--seed", "3")
    assert code == 0
    assert rep["trials"] == rep["passed"] == 20 and rep["failures"] == []


def test_unknown_suite_rejected(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["fuzz", "nope"])
    assert exc.value.code == 2


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "relaygraph", "criterion", "path4", "--format", "text"],
                          capture_output=True, text=True)
    assert proc.returncode == 1
    assert "has_r_cycle: false" in proc.stdout
