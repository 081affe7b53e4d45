import json
import os
import subprocess
import sys
from pathlib import Path

import pytest

from prymtyurin.cli import main
from prymtyurin.constructions import Family, FamilySpec, family_presentation
from prymtyurin.scenario import load_scenario

ROOT = Path(__file__).resolve().parent.parent
SCENARIOS = ROOT / "scenarios"
GOLDEN = Path(__file__).resolve().parent / "golden"
UPDATE = os.environ.get("UPDATE_GOLDEN") == "1"

GOLDEN_CASES = {
    "check_s3_jacobian": (["check", "s3_jacobian.toml"], 0),
    "check_s3_product": (["check", "s3_product.toml"], 0),
    "check_s4_four_cycle": (["check", "s4_four_cycle.toml"], 1),
    "check_a7_three_cycle": (["check", "a7_three_cycle.toml"], 0),
    "product_sym_3_2_2": (["product", "--family", "sym", "--n", "3", "--genera", "2,2"], 0),
    "product_sym_2_2_3": (["product", "--family", "sym", "--n", "2", "--genera", "2,3"], 0),
    "product_alt3c_7_3": (["product", "--family", "alt-3c", "--n", "7", "--genera", "3"], 0),
    "spectrum_s3_jacobian": (["spectrum", "s3_jacobian.toml"], 0),
    "spectrum_s3_product": (["spectrum", "s3_product.toml"], 0),
    "spectrum_whole_group": (["spectrum", "whole_group.toml"], 1),
    "table_identity": (["paper-table", "--filter", "coefficient identity"], 0),
}


def _resolve(args):
    return [str(SCENARIOS / a) if a.endswith(".toml") else a for a in args]


def _run_json(args, capsys):
    code = main(_resolve(args) + ["--json"])
    out = capsys.readouterr().out
    doc = json.loads(out)
    assert set(doc["timing"]) == {"seconds"}
    del doc["timing"]
    return code, doc


@pytest.mark.parametrize("name", sorted(GOLDEN_CASES))
def test_golden_reports(name, capsys):
    args, expected_code = GOLDEN_CASES[name]
    code, doc = _run_json(args, capsys)
    assert code == expected_code
    path = GOLDEN / f"{name}.json"
    if UPDATE:
        path.write_text(json.dumps(doc, indent=2) + "\n")
    assert doc == json.loads(path.read_text())


def test_reports_are_deterministic(capsys):
    first = _run_json(["check", "s3_product.toml"], capsys)
    second = _run_json(["check", "s3_product.toml"], capsys)
    assert first == second


def test_integers_are_strings(capsys):
    _, doc = _run_json(["check", "s3_product.toml"], capsys)
    assert doc["q"] == "3"
    assert doc["genus_x"] == "16"
    assert doc["engine"]["name"] == "prymtyurin"
    assert doc["scenario"]["signature"]["branch"][0]["count"] == "8"


def test_text_output(capsys):
    assert main(["check", str(SCENARIOS / "s3_jacobian.toml")]) == 0
    out = capsys.readouterr().out
    assert out.startswith("verdict: valid Prym-Tyurin presentation of exponent 1")


def test_out_writes_json(tmp_path, capsys):
    target = tmp_path / "report.json"
    assert main(["check", str(SCENARIOS / "s4_jacobian.toml"), "--out", str(target)]) == 0
    assert "verdict:" in capsys.readouterr().out
    doc = json.loads(target.read_text())
    assert doc["dim_prym"] == "3"


def test_malformed_cycle_exits_2(capsys):
    assert main(["check", str(SCENARIOS / "malformed_cycle.toml")]) == 2
    err = capsys.readouterr().err
    assert "malformed_cycle.toml:12" in err
    assert "position 4" in err


def test_missing_file_exits_2(capsys):
    assert main(["check", "does-not-exist.toml"]) == 2


@pytest.mark.parametrize(
    "args",
    [
        ["product", "--family", "sym", "--n", "3", "--genera", "5"],
        ["product", "--family", "dihedral", "--n", "3", "--genera", "2"],
        ["product", "--family", "sym", "--n", "3", "--genera", "two"],
        ["product", "--family", "alt-dt", "--n", "6", "--genera", "3"],
    ],
)
def test_invalid_family_flags_exit_2(args, capsys):
    assert main(args) == 2
    assert capsys.readouterr().err.startswith("error:")


def test_spectrum_index_too_large_exits_3(capsys):
    assert main(["spectrum", str(SCENARIOS / "s4_jacobian.toml"), "--matrix-bound", "3"]) == 3


def test_group_too_large_exits_3(tmp_path, capsys):
    scenario = tmp_path / "big.toml"
    scenario.write_text('[group]\nkind = "explicit"\ndegree = 8\ngenerators = ["(1 2)", "(1 2 3 4 5 6 7 8)"]\n'
                        '[subgroup]\nkind = "point_stabilizer"\n[[representation]]\nkind = "perm_minus_trivial"\n')
    assert main(["check", str(scenario), "--enumeration-bound", "1000"]) == 3


def test_emit_scenario_round_trip(tmp_path, capsys):
    target = tmp_path / "family.toml"
    args = ["product", "--family", "alt-dt", "--n", "7", "--genera", "3,3", "--mixed", "alt-dt,alt-3c",
            "--emit-scenario", str(target)]
    assert main(args) == 0
    spec = FamilySpec(Family.ALT_DOUBLE_TRANSPOSITION, 7, (3, 3),
                      mixed=(Family.ALT_DOUBLE_TRANSPOSITION, Family.ALT_THREE_CYCLE))
    assert load_scenario(target).input == family_presentation(spec)
    assert main(["check", str(target)]) == 0


def test_reproduction_table_full_run(capsys):
    code = main(["paper-table", "--json"])
    doc = json.loads(capsys.readouterr().out)
    assert code == 0
    assert len(doc["rows"]) >= 25
    assert doc["summary"]["fail"] == "0"
    assert doc["summary"]["flagged"] == "2"


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "prymtyurin", "product", "--n", "3", "--genera", "2,2"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert "valid Prym-Tyurin presentation of exponent 3" in proc.stdout
