import io
import json
import subprocess
import sys
from pathlib import Path

import pytest

from hakripke.cli import dispatch
from hakripke.coding import godel_number
from hakripke.syntax import parse_formula

DATA = Path(__file__).parent / "data"
CHAIN = str(DATA / "two_chain.json")


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    status = dispatch(list(argv), out, err)
    return status, out.getvalue(), err.getvalue()


# ----------------------------------------------------------- exit codes

def test_forced_double_negation_exits_zero():
    status, out, _ = run("kripke", "force", "--model", CHAIN, "--node", "r", "--formula", "~~p")
    assert status == 0 and "r: forced" in out


def test_unforced_excluded_middle_exits_one():
    status, out, _ = run("kripke", "force", "--model", CHAIN, "--node", "r", "--formula", "p \\/ ~p")
    assert status == 1 and "not forced" in out


def test_mutated_proof_reports_first_failure():
    status, out, _ = run("proof", "check", "--file", str(DATA / "mp_mutated.proof"))
    assert status == 1 and out.startswith("line 6:")


def test_valid_proof_exits_zero():
    status, out, _ = run("proof", "check", "--file", str(DATA / "mp.proof"), "--theory", "Q")
    assert status == 0 and "valid Q proof" in out


def test_formula_code_mismatch_exits_one():
    code = str(godel_number(parse_formula("S(0) = 0")))
    status, _, _ = run("proof", "check", "--file", str(DATA / "mp.proof"), "--formula-code", code)
    assert status == 1


def test_malformed_model_exits_two_with_position():
    status, _, err = run("kripke", "validate", "--model", str(DATA / "bad_model.json"))
    assert status == 2 and "line" in err


def test_missing_file_exits_two():
    status, _, err = run("kripke", "validate", "--model", str(DATA / "nope.json"))
    assert status == 2 and err


@pytest.mark.parametrize("argv", [
    [],
    ["frobnicate"],
    ["kripke", "force", "--model", CHAIN],
    ["machine", "run", "--input", "x"],
    ["realize", "check", "--formula", "0 = 0"],
    ["parse", "forall x."],
])
def test_usage_and_input_errors_exit_two(argv):
    assert run(*argv)[0] == 2


# ------------------------------------------------------------ subcommands

def test_parse_and_classify():
    status, out, _ = run("parse", "forall x. exists y. y = S(x)")
    assert status == 0 and "depth: 2" in out
    status, out, _ = run("classify", "forall x. exists y. y = S(x)")
    assert "is_pi2: yes" in out and "is_sigma1: no" in out


def test_encode_and_decode_round_trip():
    _, out, _ = run("encode", "--formula", "0 = 0")
    assert int(out) == godel_number(parse_formula("0 = 0"))
    _, back, _ = run("encode", "--decode", out.strip())
    assert back.strip() == "0 = 0"


def test_tag_table():
    status, out, _ = run("encode", "--dump-tags")
    assert status == 0 and "impE" in out


def test_machine_run(tmp_path):
    prog = tmp_path / "inc.rm"
    prog.write_text("INC 0\nINC 0\nHALT\n")
    status, out, _ = run("machine", "run", "--program", str(prog), "--input", "3")
    assert status == 0 and "with output 5" in out
    status, out, _ = run("machine", "run", str(prog), "--fuel", "1")
    assert status == 1 and "out of fuel" in out


def test_realize_translate():
    status, out, _ = run("realize", "translate", "--formula", "exists y. y = 0", "--var", "x")
    assert status == 0 and out.strip() == "j1(x) = 0"


def test_realize_check_verdicts():
    succ = "forall y. exists z. z = S(y)"
    rm = str(DATA / "successor_realizer.rm")
    status, out, _ = run("realize", "check", "--formula", succ, "--program", rm, "--bound", "5")
    assert status == 0 and out.startswith("verifiedBounded")
    status, out, _ = run("realize", "check", "--formula", succ, "--realizer", "7", "--bound", "5")
    assert status == 1 and out.startswith("refuted")
    status, out, _ = run("realize", "check", "--formula", succ, "--program", rm, "--fuel", "10")
    assert status == 1 and out.startswith("unknown")


def test_transform_pipeline(tmp_path):
    tree = tmp_path / "tree.json"
    padded = tmp_path / "padded.json"
    assert run("transform", "unravel", "--model", CHAIN, "--out", str(tree))[0] == 0
    assert run("transform", "pad", "--model", str(tree), "--out", str(padded))[0] == 0
    status, out, _ = run("transform", "binary", "--model", str(padded), "--eval", "001", "--formula", "p")
    assert status == 0 and "= r/a" in out
    status, out, _ = run("transform", "cone", "--model", str(padded), "--depth", "2")
    assert status == 0 and "least depth reaching the whole cone: 1" in out


def test_glue(tmp_path):
    root = tmp_path / "root.json"
    root.write_text(json.dumps({"domain": [0], "predicates": {"p": []}}))
    status, out, _ = run("--json", "transform", "glue", "--roots", CHAIN, CHAIN, "--structure", str(root))
    assert status == 0 and json.loads(out)["outcome"]["nodes"] == 5


def test_proof_encode_and_compose(tmp_path):
    status, out, _ = run("proof", "encode", "--file", str(DATA / "mp.proof"), "--theory", "HA")
    assert status == 0 and "Proof(x, y) in HA: True" in out
    status, _, err = run("proof", "compose", "--premise", str(DATA / "mp.proof"),
                         "--implication", str(DATA / "mp.proof"))
    assert status == 2 and "error" in err


# ----------------------------------------------------------- determinism

def test_json_manifest_is_deterministic():
    argv = ["--json", "kripke", "force", "--model", CHAIN, "--formula", "~~p"]
    first, second = run(*argv), run(*argv)
    assert first == second
    doc = json.loads(first[1])
    assert doc["subcommand"] == "kripke force"
    assert doc["outcome"]["forced"] == {"r": True, "a": True}
    assert list(doc["inputs"]) == [CHAIN] and len(doc["inputs"][CHAIN]) == 64


def test_console_script_entry_point():
    res = subprocess.run([sys.executable, "-m", "hakripke.cli", "kripke", "force", "--model", CHAIN,
                          "--formula", "~~p"], capture_output=True, text=True)
    assert res.returncode == 0 and "forced" in res.stdout
