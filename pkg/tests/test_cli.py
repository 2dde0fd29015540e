import json

import pytest

from preproj.cli import config_from_dict, load_config, main, run_command
from preproj.errors import NotDynkin, ParseError, ValidationError
from preproj.fields import PrimeField

EG1 = {"cartan": [[2, -1], [-1, 2]], "symmetrizer": [2, 2]}
EG2 = {"cartan": [[2, -1], [-2, 2]], "symmetrizer": [2, 1]}
AFFINE = {"cartan": [[2, -2], [-2, 2]]}


def test_load_config_inline_and_file(tmp_path):
    cfg = load_config(json.dumps(EG1))
    assert cfg.data.symmetrizer.c == (2, 2)
    assert cfg.field.kind == "rational"
    path = tmp_path / "cfg.json"
    path.write_text(json.dumps(EG2))
    cfg2 = load_config(str(path))
    assert cfg2.data.symmetrizer.c == (2, 1)


def test_load_config_defaults():
    cfg = config_from_dict({"cartan": [[2]]})
    assert cfg.data.symmetrizer.c == (1,)
    assert cfg.weyl_cap == 1_000_000
    assert cfg.seed == 0


def test_bad_configs():
    with pytest.raises(ValidationError):
        config_from_dict({"cartan": [[2, -1], [-1, 2]], "symmetrizer": [1, 2]})
    with pytest.raises(ValidationError):
        config_from_dict({"cartan": [[2, -1], [0, 2]]})
    with pytest.raises(ValidationError):
        config_from_dict({})
    with pytest.raises(ParseError):
        load_config("{not json")
    with pytest.raises(ParseError):
        load_config("/nonexistent/path.json")
    with pytest.raises(ValidationError):
        config_from_dict({"cartan": [[2]], "field": {"type": "prime", "p": 4}})


def test_field_spec():
    cfg = config_from_dict({"cartan": [[2]],
                            "field": {"type": "prime", "p": 101}})
    assert isinstance(cfg.field, PrimeField)
    assert cfg.field.p == 101


def test_cmd_check():
    code, out = run_command(load_config(json.dumps(EG1)), "check")
    assert code == 0
    assert "dynkin: True" in out


def test_cmd_algebra_json():
    cfg = load_config(json.dumps(EG2))
    cfg.json_out = True
    cfg.show_basis = True
    code, out = run_command(cfg, "algebra")
    assert code == 0
    payload = json.loads(out)
    assert payload["dim"] == 10
    assert payload["vertex_dims"] == [6, 4]
    assert len(payload["basis"]) == 10
    # round trip
    assert json.loads(json.dumps(payload)) == payload


def test_cmd_weyl():
    cfg = load_config(json.dumps(EG1))
    cfg.json_out = True
    code, out = run_command(cfg, "weyl")
    assert code == 0
    payload = json.loads(out)
    assert payload["order"] == 6
    assert payload["longest_length"] == 3
    assert {"word": "121", "length": 3} in payload["elements"]


def test_cmd_weyl_affine_truncates():
    cfg = load_config(json.dumps(AFFINE))
    cfg.weyl_cap = 50
    code, out = run_command(cfg, "weyl")
    assert code == 0
    assert "truncated" in out


def test_cmd_stt():
    cfg = load_config(json.dumps(EG1))
    code, out = run_command(cfg, "stt")
    assert code == 0
    assert "6 support tau-tilting pairs" in out
    assert "w=121: M = 0, P = e1P+e2P" in out


def test_cmd_stt_not_dynkin():
    cfg = load_config(json.dumps(AFFINE))
    with pytest.raises(NotDynkin):
        run_command(cfg, "stt")
    assert main(["stt", "--config", json.dumps(AFFINE)]) == 2


def test_cmd_mutation_graph_outputs():
    cfg = load_config(json.dumps(EG2))
    cfg.dot = True
    code, out = run_command(cfg, "mutation-graph")
    assert code == 0
    assert out.startswith("digraph")
    assert out.count("->") == 8
    cfg.dot = False
    cfg.json_out = True
    code, out = run_command(cfg, "mutation-graph")
    payload = json.loads(out)
    assert len(payload["nodes"]) == 8
    assert len(payload["edges"]) == 8
    assert json.loads(json.dumps(payload)) == payload


def test_cmd_verify_eg1(capsys):
    assert main(["verify", "--config", json.dumps(EG1)]) == 0
    out = capsys.readouterr().out
    assert "6 support tau-tilting modules = |W| = 6" in out
    assert "FAIL" not in out


def test_cmd_verify_affine(capsys):
    assert main(["verify", "--config", json.dumps(AFFINE)]) == 0
    out = capsys.readouterr().out
    assert "skipped" in out


def test_main_check(capsys):
    assert main(["check", "--config", json.dumps(EG2)]) == 0
    out = capsys.readouterr().out
    assert "symmetrizer: (2, 1)" in out


def test_main_bad_input(capsys):
    assert main(["check", "--config", '{"cartan": [[2,-1],[0,2]]}']) == 2
    assert "error" in capsys.readouterr().err


def test_main_field_flag(capsys):
    code = main(["algebra", "--config", json.dumps(EG1),
                 "--field", "fp:101", "--json"])
    assert code == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["dim"] == 8
    assert payload["field"] == "F_101"
