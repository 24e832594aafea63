import io
import json

import pytest

from bairegames import cli
from bairegames.topology import Rationals
from bairegames.topology.oracles import PunctureOracle


def run(argv, stdin=""):
    out, err = io.StringIO(), io.StringIO()
    code = cli.main(argv, stdin=io.StringIO(stdin), stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


def lines(text):
    return [json.loads(x) for x in text.splitlines() if x.startswith("{")]


def test_spaces_lists_zoo():
    code, out, _ = run(["spaces", "--json"])
    assert code == 0
    names = [r["name"] for r in json.loads(out)["spaces"]]
    assert "rationals" in names and "remark-qd:<n>" in names


def test_play_diagonal():
    code, out, _ = run(["play", "--game", "bm", "--space", "rationals", "--beta", "diagonal",
                        "--alpha", "halver", "--depth", "16"])
    assert code == 0
    trace = lines(out)
    assert len(trace) == 33
    assert trace[-1]["outcome"] == "BetaCertified"
    assert len(trace[-1]["certificate"]["excluded"]) == 16


def test_play_depth_zero():
    code, out, _ = run(["play", "--space", "rationals", "--beta", "diagonal", "--alpha", "halver",
                        "--depth", "0"])
    assert code == 0
    assert lines(out) == [{"outcome": "UndecidedAtDepth", "depth": 0, "certificate": {}}]


def test_play_choquet_threaded():
    code, out, _ = run(["play", "--game", "ch", "--space", "baire-omega", "--beta", "canonical",
                        "--alpha", "cylinder", "--depth", "10"])
    assert code == 0 and lines(out)[-1]["outcome"] == "AlphaCertified"


def test_expect_mismatch_exits_one():
    code, _, _ = run(["play", "--game", "ch", "--space", "baire-omega", "--beta", "canonical",
                      "--alpha", "cylinder", "--depth", "3", "--expect", "beta"])
    assert code == 1


def test_gruenhage_play():
    code, out, _ = run(["play", "--game", "gruenhage", "--space", "rationals", "--alpha", "edge",
                        "--depth", "6"])
    assert code == 0
    assert lines(out)[-1]["certificate"]["diagnostics"]["convergence"] == [0, 1, 2, 3, 4, 5]


def test_config_file(tmp_path):
    cfg = tmp_path / "c.json"
    cfg.write_text(json.dumps({"game": "bm", "space": "rationals", "beta": "diagonal", "alpha": "halver",
                               "depth": 4, "expect": "beta"}))
    out_path = tmp_path / "trace.jsonl"
    code, _, _ = run(["play", "--config", str(cfg), "--out", str(out_path)])
    assert code == 0
    assert lines(out_path.read_text())[-1]["outcome"] == "BetaCertified"


@pytest.mark.parametrize("argv", [
    ["play", "--space", "nowhere", "--beta", "fuzz", "--alpha", "fuzz"],
    ["play", "--space", "rationals", "--beta", "nope", "--alpha", "fuzz"],
    ["play", "--game", "poker", "--beta", "fuzz", "--alpha", "fuzz"],
    ["play", "--config", "/nonexistent.json"],
    ["demo", "thm99"],
    ["demo", "thm43", "--space", "rationals"],
    ["verify", "--suite", "nothing"],
    ["play", "--depth", "3", "--fuel", "0", "--beta", "fuzz", "--alpha", "fuzz"],
])
def test_config_errors_exit_four(argv):
    assert run(argv)[0] == 4


def test_bad_config_json(tmp_path):
    cfg = tmp_path / "c.json"
    cfg.write_text("{not json")
    assert run(["play", "--config", str(cfg)])[0] == 4


def test_fuel_exhaustion_exits_three(monkeypatch):
    monkeypatch.setenv("BAIRE_GAMES_FUEL", "1")
    code, _, err = run(["demo", "thm43", "--space", "baire-omega", "--depth", "3"])
    assert code == 3 and "FuelExhausted" in err


def test_referee_fault_exits_two(monkeypatch):
    monkeypatch.setattr(Rationals, "_contains", lambda self, inner, outer: False)
    code, out, err = run(["play", "--game", "bm", "--space", "rationals", "--beta", "diagonal",
                          "--alpha", "halver", "--depth", "4"])
    assert code == 2
    assert lines(out)[-1]["error"] == "IllegalStrategyMove"


def test_broken_oracle_exits_two(monkeypatch):
    monkeypatch.setattr(PunctureOracle, "refine", lambda self, U, V: (U, V))
    code, _, err = run(["demo", "thm32", "--depth", "3"])
    assert code == 2 and "InvariantViolation" in err


@pytest.mark.parametrize("argv", [
    ["play", "--game", "bm", "--space", "rationals", "--beta", "diagonal", "--alpha", "halver", "--depth", "32"],
    ["play", "--game", "ch", "--space", "baire-omega", "--beta", "canonical", "--alpha", "cylinder",
     "--depth", "64"],
    ["play", "--game", "ch", "--space", "remark-qd:0", "--beta", "fuzz-d", "--alpha", "remark", "--depth", "8",
     "--seed", "7"],
    ["demo", "thm32", "--depth", "6"],
])
def test_byte_identical_reruns(argv):
    first, second = run(argv), run(argv)
    assert first[0] == 0
    assert first[1] == second[1]


def test_demo_reports():
    code, out, _ = run(["demo", "thm32", "--depth", "6"])
    report = json.loads(out)
    assert code == 0 and report["ok"]
    assert [lv["refinements"] for lv in report["levels"]] == [1, 2, 4, 8, 16, 32]
    assert all(lv["O"] and lv["W"] for lv in report["levels"])
    code, out, _ = run(["demo", "thm41-roundtrip", "--indices", "2", "--depth", "3", "--space",
                        "finite:sierpinski"])
    assert code == 0 and json.loads(out)["ok"]
    code, out, _ = run(["demo", "thm31", "--family", "100"])
    assert code == 0 and json.loads(out)["ok"]


def test_verify_suites():
    code, out, _ = run(["verify", "--suite", "tree"])
    assert code == 0 and json.loads(out)["ok"]
    code, out, _ = run(["verify", "--suite", "krom", "--triples", "2000"])
    assert code == 0 and json.loads(out)["ok"]


def test_interactive_alpha():
    code, out, _ = run(["play", "--game", "bm", "--space", "rationals", "--beta", "diagonal",
                        "--interactive", "alpha", "--depth", "1"], stdin="(0,1)\n(1/2,3/4)\n")
    assert code == 0
    assert "referee:" in out
    assert lines(out)[-1]["outcome"] == "AlphaCertified"


def test_interactive_quit():
    code, _, _ = run(["play", "--game", "bm", "--space", "rationals", "--beta", "diagonal",
                      "--interactive", "alpha", "--depth", "2"], stdin="quit\n")
    assert code == 4
