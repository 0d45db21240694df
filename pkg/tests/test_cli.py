import io
import json
import subprocess
import sys

import pytest

from genwait import __version__
from genwait.cli import run


def call(*argv):
    out = io.StringIO()
    code = run(list(argv), out)
    return code, out.getvalue()


def call_json(*argv):
    code, text = call(*argv, "--json")
    return code, json.loads(text)


def test_e_exact():
    code, data = call_json("e-exact", "--group", "S(3)")
    assert code == 0
    assert set(data) == {"command", "inputs", "results", "timing_seconds", "version"}
    assert data["results"]["e"]["exact"] == "29/10"
    assert data["version"] == __version__
    assert data["inputs"]["group"] == "S(3)"


def test_human_output():
    code, text = call("e-exact", "--group", "C(2)xC(2)")
    assert code == 0
    assert "exact: 10/3" in text


def test_prob():
    code, data = call_json("prob", "--group", "C(2)", "--k", "2")
    assert code == 0
    assert data["results"]["P"] == {"0": {"exact": "0/1", "approx": "0"},
                                    "1": {"exact": "1/2", "approx": "0.5"},
                                    "2": {"exact": "3/4", "approx": "0.75"}}


def test_lattice_and_chief():
    code, data = call_json("lattice", "--group", "S(4)")
    assert code == 0 and data["results"]["subgroup_count"] == 30
    code, data = call_json("chief", "--group", "S(4)")
    assert code == 0
    assert len(data["results"]["classes"]) == 3
    code, data = call_json("chief", "--group", "A(5)")
    assert code == 0 and data["results"]["classes"] is None


def test_constants():
    code, data = call_json("constants", "--name", "kappa", "--digits", "8")
    assert code == 0
    k = data["results"]["constants"]["kappa"]
    assert k["value"] == "2.75239495"
    code, _ = call("constants", "--name", "nope")
    assert code == 2


def test_tables():
    code, data = call_json("table-sec5")
    assert code == 0 and data["results"]["all_match"]
    code, data = call_json("table-sec6", "--max-n", "9")
    assert code == 0
    assert data["results"]["rows"][6]["e"] == "194/35"


def test_bounds_check_single_group():
    code, data = call_json("bounds-check", "--group", "A(5)")
    assert code == 0 and data["results"]["all_passed"]


def test_bounds_check_corpus_file(tmp_path):
    f = tmp_path / "groups.txt"
    f.write_text("# small corpus\nS(3)\n\nQ8  # quaternions\n")
    code, data = call_json("bounds-check", "--corpus", str(f))
    assert code == 0
    assert [r["group"] for r in data["results"]["reports"]] == ["S(3)", "Q8"]


def test_scan_reports_mismatch():
    code, data = call_json("scan", "--max-n", "3")
    assert code == 0
    code, data = call_json("scan", "--max-n", "4")
    assert code == 1
    assert data["results"]["degrees"][2]["not_in_reference"] == [["Sym(4)", "164317/53130"]]
    code, _ = call("scan", "--max-n", "9")
    assert code == 2


def test_simulate():
    code, data = call_json("simulate", "--group", "S(3)", "--trials", "500", "--seed", "1")
    assert code == 0 and data["results"]["trials"] == 500
    code, _ = call("simulate", "--group", "S(3)")
    assert code == 2


def test_witness():
    code, data = call_json("witness", "--group", "S(4)")
    assert code == 0
    assert data["results"]["witness_order"] == 12
    assert data["results"]["certificate"]["verified"]


def test_errors_are_structured():
    code, data = call_json("e-exact", "--group", "X(3)")
    assert code == 3
    assert data["error"]["type"] == "GroupSpecError"
    assert data["command"] == "e-exact"
    code, data = call_json("witness", "--group", "A(5)")
    assert code == 3 and data["error"]["type"] == "NonSolubleInput"
    code, _ = call("e-exact")
    assert code == 2
    code, _ = call("no-such-command")
    assert code == 2


def test_module_entry_point():
    out = subprocess.run([sys.executable, "-m", "genwait", "e-exact", "--group", "D(8)", "--json"],
                         capture_output=True, text=True)
    assert out.returncode == 0
    assert json.loads(out.stdout)["results"]["e"]["exact"] == "10/3"
