import io
import json
import subprocess
import sys

import numpy as np
import pytest

from discordkit.cli import main
from discordkit.errors import InputError
from discordkit.qstate import bell_state, product_state, swap_qubits, validate
from discordkit.records import StateRecord, matrix_record, parse_record, read_records, record_state


def run(argv, stdin_text=None, monkeypatch=None):
    out = io.StringIO()
    if stdin_text is not None:
        monkeypatch.setattr(sys, "stdin", io.StringIO(stdin_text))
    code = main(argv, out=out)
    lines = [json.loads(x) for x in out.getvalue().splitlines()]
    return code, lines


def write(tmp_path, *records):
    path = tmp_path / "in.jsonl"
    path.write_text("\n".join(r if isinstance(r, str) else r.to_json() for r in records) + "\n")
    return str(path)


BELL = matrix_record("bell", bell_state("phi+"))
PRODUCT = matrix_record("prod", product_state([0, 0.3, 0.1], [0.5, 0, 0]))
XZERO = StateRecord("x0", "xstate", {"x1": 0.1, "x2": 0.2, "x3": 0.3, "x4": 0.4, "y1": 0, "y2": 0})
MIXED = matrix_record("mixed", np.eye(4) / 4)
GHZ_AB = StateRecord("g", "family", {"family": "ghz", "params": {"zeta": 0.3}, "reduce": "AB"})


def test_records_round_trip():
    rho = bell_state("psi-")
    rec = parse_record(matrix_record("r", rho).to_json())
    assert np.array_equal(record_state(rec), rho)


def test_record_errors():
    for line in ('{"format": "matrix"}', "[1, 2]", "not json", '{"format": "bogus", "payload": {}}'):
        with pytest.raises(InputError):
            parse_record(line)
    with pytest.raises(InputError):
        record_state(StateRecord("a", "matrix", {"matrix": [[1, 2], [3, 4]]}))
    with pytest.raises(InputError):
        record_state(StateRecord("a", "family", {"family": "ghz", "params": {}}))


def test_read_records_skips_blank_lines_and_keeps_order():
    text = BELL.to_json() + "\n\n" + "oops\n" + PRODUCT.to_json() + "\n"
    got = list(read_records(io.StringIO(text)))
    assert [i for i, _ in got] == [0, 1, 2]
    assert isinstance(got[1][1], InputError)
    assert got[2][1].id == "prod"


def test_classify_examples(tmp_path):
    code, out = run(["classify", write(tmp_path, XZERO, MIXED, GHZ_AB)])
    assert code == 0
    assert [(r["b_given_a"], r["a_given_b"]) for r in out] == [("Zero", "Zero")] * 3
    assert out[1]["tensor"]["rank_class"] == "null"
    assert out[0]["xstate_fast_path"]["agrees"]
    for r in out:
        assert r["tolerances"] == {"rank": 1e-9, "cond": 1e-8, "state": 1e-9}
        assert r["broadcasting"] == {"A_sender_usable": True, "B_sender_usable": True}


def test_classify_with_oracle_and_tolerance_echo(tmp_path):
    code, out = run(["classify", write(tmp_path, BELL), "--with-oracle", "--grid", "16",
                     "--tol", "rank=1e-7", "--tol", "cond=1e-6"])
    assert code == 0
    assert out[0]["tolerances"] == {"rank": 1e-7, "cond": 1e-6, "state": 1e-9}
    assert abs(out[0]["oracle"]["A"]["value"] - 1) < 1e-4
    assert out[0]["both_way_positive"]


def test_bad_tolerance_flag(tmp_path):
    with pytest.raises(SystemExit) as exc:
        main(["classify", write(tmp_path, BELL), "--tol", "speed=3"])
    assert exc.value.code == 2


def test_partial_failure_exit_code(tmp_path, capsys):
    bad_state = matrix_record("neg", np.diag([1.5, -0.5, 0, 0]))
    code, out = run(["classify", write(tmp_path, BELL, "{broken", bad_state, PRODUCT)])
    assert code == 2
    assert [r["id"] for r in out] == ["bell", "record-1", "neg", "prod"]
    assert "error" in out[1] and "error" in out[2]
    assert "b_given_a" in out[3]
    assert "record-1" in capsys.readouterr().err


def test_unreadable_input_exit_code(tmp_path):
    code, out = run(["classify", str(tmp_path / "missing.jsonl")])
    assert code == 1 and out == []


def test_stdin_input(monkeypatch):
    code, out = run(["validate"], stdin_text=MIXED.to_json() + "\n", monkeypatch=monkeypatch)
    assert code == 0 and out[0]["ok"]


def test_validate_reports_failures(tmp_path):
    code, out = run(["validate", write(tmp_path, matrix_record("neg", np.diag([1.5, -0.5, 0, 0])))])
    assert code == 0
    assert not out[0]["ok"] and not out[0]["psd"]


def test_discord_examples(tmp_path):
    rho = np.array([[0.3, 0.1j, 0, 0.05], [-0.1j, 0.2, 0, 0], [0, 0, 0.25, 0], [0.05, 0, 0, 0.25]])
    assert validate(rho).ok
    recs = write(tmp_path, BELL, PRODUCT, matrix_record("r", rho))
    _, a = run(["discord", recs, "--side", "A"])
    assert abs(a[0]["value"] - 1) <= 1e-4
    assert a[1]["value"] <= 1e-6
    swapped = write(tmp_path, matrix_record("r", swap_qubits(rho)))
    _, b = run(["discord", swapped, "--side", "B"])
    assert abs(a[2]["value"] - b[0]["value"]) <= 1e-6


def test_discord_no_refine(tmp_path):
    _, out = run(["discord", write(tmp_path, BELL), "--no-refine", "--grid", "8"])
    assert out[0]["refine_iterations"] == 0


def test_canonicalize_examples(tmp_path):
    canon = StateRecord("c", "bloch", {"m": [0, 0, 0.1], "n": [0, 0, 0],
                                       "T": [[0.3, 0, 0], [0, 0.2, 0], [0, 0, 0.1]]})
    code, out = run(["canonicalize", write(tmp_path, BELL, PRODUCT, canon)])
    assert code == 0
    assert np.allclose(np.abs(out[0]["R"]), 1)
    assert np.allclose(out[1]["R"][1:], 0, atol=1e-12)
    assert np.allclose(out[2]["R"], [0.3, 0.2, 0.1])


def test_merge_examples(tmp_path):
    w = StateRecord("w", "family", {"family": "w", "params": {"zeta1": np.pi / 2, "zeta2": np.pi / 4}})
    g = StateRecord("g", "family", {"family": "ghz", "params": {"zeta": 0.4}})
    code, out = run(["merge", write(tmp_path, w, g)])
    assert code == 0
    assert np.isclose(out[0]["ebit_gain"], 1)
    assert out[1]["ebit_gain"] == 0 and out[1]["locc_feasible"]
    _, out = run(["merge", write(tmp_path, g), "--cut", "C,A,B"])
    assert out[0]["cut"] == ["C", "A", "B"] and out[0]["ebit_gain"] == 0


def test_merge_rejects_mixed(tmp_path):
    mixed = matrix_record("m", np.eye(8) / 8)
    code, out = run(["merge", write(tmp_path, mixed)])
    assert code == 2 and "pure" in out[0]["error"]


def test_sample_determinism(monkeypatch):
    _, first = run(["sample", "ginibre2q", "--count", "10", "--seed", "7"])
    assert len(first) == 10
    for rec in first:
        assert validate(record_state(parse_record(json.dumps(rec)))).ok
    a, b = io.StringIO(), io.StringIO()
    main(["sample", "pure3q", "--count", "5", "--seed", "9"], out=a)
    main(["sample", "pure3q", "--count", "5", "--seed", "9"], out=b)
    assert a.getvalue() == b.getvalue()
    for line in a.getvalue().splitlines():
        rho = record_state(parse_record(line))
        assert np.isclose(np.trace(rho @ rho).real, 1)
    monkeypatch.setenv("DISCORDKIT_SEED", "9")
    c = io.StringIO()
    main(["sample", "pure3q", "--count", "5"], out=c)
    assert c.getvalue() == a.getvalue()


def test_sweep_summary_and_figures(tmp_path):
    plots = tmp_path / "figs"
    code, out = run(["sweep", "--count", "4", "--merge-count", "1", "--grid", "12",
                     "--seed", "1", "--plot-dir", str(plots)])
    assert code == 0
    s = out[0]
    assert s["cq"]["oracle_above_threshold"] == 0 and s["qc"]["oracle_above_threshold"] == 0
    assert s["ginibre"]["analytic_both_way_positive"] == 4
    assert s["merge"]["max_abs_residual"] <= 5e-3
    assert len(s["figures"]) == 2
    for f in s["figures"]:
        assert (plots / f.split("/")[-1]).stat().st_size > 0


def test_sweep_unknown_family():
    code, _ = run(["sweep", "--families", "ginibre,nope", "--count", "1"])
    assert code == 2


def test_console_script_entry_point(tmp_path):
    proc = subprocess.run(
        [sys.executable, "-m", "discordkit.cli", "classify", write(tmp_path, BELL)],
        capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["b_given_a"] == "Positive"
