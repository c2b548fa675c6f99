from __future__ import annotations

import json

import pytest
from support import EXIT_CODES, FIXTURES

from affine_structures.cli import COMMANDS, main, run_command
from affine_structures.errors import DanglingReference, DuplicateId, ParseError
from affine_structures.scenario import (
    dumps,
    parse_document,
    parse_scenario,
    parse_text,
    serialize,
)

VALID = sorted(FIXTURES.glob("*.json"))
INVALID = sorted((FIXTURES / "invalid").glob("*.json"))


def without_timing(report):
    return {k: v for k, v in report.items() if k != "timing"}


def test_every_fixture_has_an_expectation():
    assert sorted(p.name for p in VALID) == sorted(EXIT_CODES)


@pytest.mark.parametrize("path", VALID, ids=lambda p: p.stem)
def test_round_trip_is_byte_identical(path):
    text = path.read_text(encoding="utf-8")
    assert serialize(parse_text(text)) == text


@pytest.mark.parametrize("path", VALID, ids=lambda p: p.stem)
def test_exit_codes_and_determinism(path):
    for cmd, want in zip(COMMANDS, EXIT_CODES[path.name]):
        code, first = run_command(cmd, path)
        again, second = run_command(cmd, path)
        assert code == again == int(want), cmd
        assert dumps(without_timing(first)) == dumps(without_timing(second))
        assert set(first) == {"command", "scenario", "verdict", "universe", "results", "witnesses", "timing"}


@pytest.mark.parametrize("path", INVALID, ids=lambda p: p.stem)
def test_invalid_inputs_exit_2(path):
    for cmd in COMMANDS:
        code, report = run_command(cmd, path)
        assert code == 2
        assert report["verdict"] == "error"
        assert report["witnesses"][0]["error"]


def test_parse_errors():
    with pytest.raises(DanglingReference):
        parse_document({"rings": [{"id": "Z6", "kind": "zmod", "n": 6}], "universe": {"roots": ["Z7"]}})
    with pytest.raises(DuplicateId):
        parse_document({"rings": [{"id": "A", "kind": "zmod", "n": 2}, {"id": "A", "kind": "zmod", "n": 3}]})
    with pytest.raises(ParseError):
        parse_text("{not json")
    with pytest.raises(ParseError):
        parse_document({"rings": [{"id": "A", "kind": "mystery"}]})


def test_missing_file_exits_2(tmp_path):
    code, _ = run_command("spec", tmp_path / "absent.json")
    assert code == 2


def test_serialized_key_order_is_canonical():
    doc = {"universe": {"roots": ["Z6"]}, "rings": [{"n": 6, "kind": "zmod", "id": "Z6"}], "name": "x"}
    text = serialize(parse_document(doc))
    assert list(json.loads(text)) == ["name", "rings", "universe"]
    assert serialize(parse_text(text)) == text


def test_scenario_contents():
    sc = parse_scenario(FIXTURES / "example_two_cubic_fields.json")
    assert sc.universe.stamp() == ["k", "kp"]
    assert sorted(sc.atlases) == ["gamma1", "gamma2"]
    assert [c.ring.id for c in sc.atlases["gamma2"].charts] == ["k", "kp"]


def test_main_writes_report_and_honours_flags(tmp_path, capsys):
    out = tmp_path / "report.json"
    code = main(["check-admissible", str(FIXTURES / "example_two_cubic_fields.json"), "--report", str(out)])
    printed = capsys.readouterr().out
    assert code == 1
    assert out.read_text(encoding="utf-8") == printed
    report = json.loads(printed)
    assert report["witnesses"][0]["conflict"] == {"open": ["u"], "charts": [0, 1], "rings": ["k", "kp"]}
    # restricting the universe to k removes the second field from every pseudogroup
    code = main(["canonical", str(FIXTURES / "example_two_cubic_fields.json"), "--universe", "k"])
    assert code == 0
    assert json.loads(capsys.readouterr().out)["universe"] == ["k"]
    code = main(["spec", str(FIXTURES / "z6_affine.json"), "--universe", "Z9"])
    assert code == 2
    capsys.readouterr()


def test_limits_from_flags_and_environment(monkeypatch, capsys):
    path = str(FIXTURES / "two_points_z3.json")
    assert main(["enumerate", path, "--max-points", "1"]) == 2
    assert "TooLarge" in capsys.readouterr().out
    monkeypatch.setenv("AFFINE_MAX_RING_SIZE", "4")
    assert main(["spec", str(FIXTURES / "stock_rings.json")]) == 2
    assert "SizeLimitExceeded" in capsys.readouterr().out
