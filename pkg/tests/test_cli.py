import io
import json
import math
import os
import subprocess
import sys
from pathlib import Path

import pytest

from codedshift.cli import dumps, run

GOLDEN = Path(__file__).parent / "golden"
UPDATE = os.environ.get("CODEDSHIFT_UPDATE_GOLDEN") == "1"


def invoke(argv):
    out = io.StringIO()
    status = run(argv, stdout=out)
    return status, out.getvalue()


@pytest.fixture
def files(tmp_path):
    (tmp_path / "golden.sft").write_text("letters: 0 1\nforbid: 1 1\n")
    (tmp_path / "bad.code").write_text("word: 1\nword: 10\nword: 01\n")
    return tmp_path


def test_dumps_is_canonical():
    text = dumps({"b": [1.0, -math.inf, math.nan], "a": 0.1, "c": None, "d": True})
    assert text.index('"a"') < text.index('"b"')
    assert '"-inf"' in text and '"nan"' in text
    assert "0.10000000000000001" in text
    assert json.loads(text)["d"] is True


def test_analyze_dyck():
    status, out = invoke(["analyze", "builtin:dyck"])
    assert status == 0
    rep = json.loads(out)
    assert rep["command"] == "analyze"
    assert rep["result"]["regime"] == "below_one"
    assert abs(rep["result"]["hX"]["lower"] - math.log(3)) < 1e-12
    sources = {p["source"] for p in rep["provenance"]}
    assert sources <= {"paper-exact", "derived-oracle", "numeric-interval"}


def test_sft_entropy_golden(files):
    status, out = invoke(["sft-entropy", str(files / "golden.sft"), "--letter", "0"])
    assert status == 0
    res = json.loads(out)["result"]
    assert abs(res["h_loop"] - 0.4812118250596) < 1e-9
    assert res["agreement"] is True
    assert res["h_restricted"] == "-inf"
    assert res["T_prefix"][:3] == [1, 1, 0]


def test_check_code_witness(files):
    status, out = invoke(["check-code", str(files / "bad.code"), "--max-len", "6"])
    assert status == 0
    res = json.loads(out)["result"]
    assert res["unique_decomposition"]["verdict"] == "fails"
    assert res["unique_decomposition"]["witness"]["word"] == "101"


def test_enumerate_counts_only():
    status, out = invoke(["enumerate", "words:0,01", "--n", "6", "--cap", "2", "--counts-only"])
    assert status == 0
    assert json.loads(out)["result"]["counts"]["L_n"] == 21


def test_enumerate_lists_words():
    status, out = invoke(["enumerate", "words:0,01", "--n", "3", "--cap", "2"])
    assert json.loads(out)["result"]["L_n"] == ["000", "001", "010", "100", "101"]


@pytest.mark.parametrize("argv", [
    ["verify-bounds", "words:0,01", "--which", "wordcount", "--h", "0.48", "--n-max", "10"],
    ["verify-bounds", "words:0,01", "--which", "aux1", "--alpha", "0.5"],
    ["verify-bounds", "words:0,01", "--which", "aux2", "--alpha", "0.4", "--t", "2"],
])
def test_verify_bounds(argv):
    status, out = invoke(argv)
    assert status == 0 and json.loads(out)["result"]["passed"] is True


def test_genfun_eval_and_solve():
    status, out = invoke(["genfun", "eval", "words:0,01", "--alpha", "0", "--trunc", "2"])
    assert status == 0
    res = json.loads(out)["result"]
    assert res["lower"] == res["upper"] == 2
    status, out = invoke(["genfun", "solve", "words:0,01"])
    root = json.loads(out)["result"]["root"]
    assert abs(root - math.log((1 + math.sqrt(5)) / 2)) < 1e-10


def test_classify_graph():
    status, out = invoke(["classify-graph", "builtin:ex_positive_recurrent"])
    assert status == 0
    assert json.loads(out)["result"]["class"] == "positive_recurrent"


def test_domain_error_exit_code(capsys):
    status, out = invoke(["verify-bounds", "builtin:dyck", "--which", "aux2", "--alpha", "1.0",
                          "--t", "8"])
    assert status == 1
    assert json.loads(out)["error"] == "EtaNotAboveOne"
    assert "EtaNotAboveOne" in capsys.readouterr().err


def test_unknown_builtin_exit_code():
    status, out = invoke(["analyze", "builtin:nope"])
    assert status == 1 and json.loads(out)["error"] == "BadParams"


@pytest.mark.parametrize("argv", [[], ["analyze"], ["frobnicate"], ["analyze", "x", "--bogus"]])
def test_usage_errors_exit_2(argv):
    with pytest.raises(SystemExit) as info:
        run(argv)
    assert info.value.code == 2


def test_json_flag_is_accepted():
    status, out = invoke(["--json", "genfun", "eval", "words:0", "--alpha", "1", "--trunc", "1"])
    assert status == 0 and json.loads(out)["result"]["lower"] == pytest.approx(math.exp(-1))


def test_acceptance_command_subset():
    status, out = invoke(["verify-paper", "--only", "5", "6"])
    rep = json.loads(out)
    assert status == 0
    assert [c["criterion"] for c in rep["result"]["criteria"]] == [5, 6]
    assert "seconds" not in rep["result"]["criteria"][0]
    assert invoke(["verify-paper", "--only", "5", "6"])[1] == out


def test_repeated_runs_are_byte_identical(files):
    argv = ["analyze", "builtin:ex_null_recurrent"]
    assert invoke(argv)[1] == invoke(argv)[1]
    argv = ["sft-entropy", str(files / "golden.sft")]
    assert invoke(argv)[1] == invoke(argv)[1]


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "codedshift", "genfun", "eval", "words:0,1",
                           "--alpha", "0", "--trunc", "1"], capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["result"]["upper"] == 2


GOLDEN_CASES = {
    "check_code_101": ["check-code", "words:1,10,01", "--max-len", "6"],
    "enumerate_golden_n4": ["enumerate", "words:0,01", "--n", "4", "--cap", "2"],
    "genfun_eval_positive_recurrent": ["genfun", "eval", "builtin:ex_positive_recurrent",
                                       "--alpha", "0.6931471805599453", "--trunc", "40"],
    "analyze_dyck": ["analyze", "builtin:dyck"],
}


@pytest.mark.parametrize("name", sorted(GOLDEN_CASES))
def test_golden_output(name):
    status, out = invoke(GOLDEN_CASES[name])
    assert status == 0
    path = GOLDEN / f"{name}.json"
    if UPDATE or not path.exists():
        GOLDEN.mkdir(exist_ok=True)
        path.write_text(out)
    assert out == path.read_text()
