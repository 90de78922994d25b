"""Command-line interface: exit codes, output formats, determinism."""

import json

import pytest

from sumdim.cli import RunConfig, main, write_text_atomic

SMALL = {
    "construction": "haus-lowbox",
    "alpha": ["1/4", "1/2"],
    "beta": ["1/2", "1"],
    "scale_policy": "scaled",
    "scale_base": 4,
    "horizon": 3,
}


@pytest.fixture
def cfg(tmp_path):
    path = tmp_path / "run.json"
    path.write_text(json.dumps(SMALL))
    return str(path)


def run(argv):
    return main(argv)


def test_run_config_round_trip_and_digest():
    c = RunConfig.from_dict(SMALL)
    assert c.digest() == RunConfig.from_dict(c.canonical_dict()).digest()
    assert c.digest() != RunConfig.from_dict({**SMALL, "horizon": 4}).digest()
    assert len(c.digest()) == 12


def test_unknown_config_key_is_exit_2(tmp_path, capsys):
    path = tmp_path / "bad.json"
    path.write_text(json.dumps({**SMALL, "horizont": 3}))
    assert run(["construct", "--config", str(path)]) == 2
    assert "unknown config keys" in capsys.readouterr().err


def test_construct_writes_spec_json(cfg, tmp_path, capsys):
    out = tmp_path / "spec.json"
    assert run(["construct", "--config", cfg, "--out", str(out)]) == 0
    assert capsys.readouterr().out.strip().endswith("components=6 depth=17")
    doc = json.loads(out.read_text())
    assert doc["tool"]["name"] == "sumdim"
    assert len(doc["tool"]["config_digest"]) == 12
    assert doc["spec"]["depth"] == 17
    assert len(doc["spec"]["components"]) == 6


def test_construct_is_byte_deterministic(cfg, tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    assert run(["construct", "--config", cfg, "--out", str(a)]) == 0
    assert run(["construct", "--config", cfg, "--out", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()


def test_count_csv_header_and_determinism(cfg, tmp_path):
    spec = tmp_path / "spec.json"
    run(["construct", "--config", cfg, "--out", str(spec)])
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    argv = ["count", "--config", cfg, "--set", str(spec), "--fold", "2", "--out"]
    assert run(argv + [str(a)]) == 0
    assert run(argv + [str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()
    lines = a.read_text().splitlines()
    assert lines[0].startswith("# sumdim ")
    assert "config=" in lines[0]
    assert lines[1] == "j,fold,lower,upper,exp_lower,exp_upper,predicted,mode"
    assert all(line.split(",")[1] == "2" for line in lines[2:])


def test_count_builds_spec_from_config_when_no_set(cfg, tmp_path):
    out = tmp_path / "c.csv"
    assert run(["count", "--config", cfg, "--out", str(out)]) == 0
    assert out.read_text().count("\n") >= 3


def test_dims_reports_each_fold(cfg, tmp_path):
    out = tmp_path / "dims.json"
    assert run(["dims", "--config", cfg, "--out", str(out)]) == 0
    doc = json.loads(out.read_text())
    assert doc["set"] == "haus-lowbox"
    assert [row["fold"] for row in doc["folds"]] == [1, 2]
    for row in doc["folds"]:
        assert row["exp_lower_min"] <= row["exp_upper_max"]
        assert row["deepest_scale"] == 17


def test_off_csv(cfg, tmp_path):
    out = tmp_path / "off.csv"
    assert run(["off", "--config", cfg, "--scales", "8,17", "--out", str(out)]) == 0
    lines = out.read_text().splitlines()
    assert lines[1] == "n,off,off_num,off_den"
    assert lines[2].startswith("8,")
    assert lines[3].startswith("17,")


def test_oracle_matches_engine(cfg, tmp_path, capsys):
    assert run(["oracle", "--config", cfg, "--fold", "2", "--scales", "5,11,17"]) == 0
    out = capsys.readouterr().out
    assert out.count("MATCH") == 4  # three scales plus the verdict line
    assert "MISMATCH" not in out
    assert out.strip().endswith("verdict: MATCH")


def test_oracle_budget_exhaustion_is_exit_4(tmp_path, capsys):
    path = tmp_path / "tight.json"
    path.write_text(json.dumps({**SMALL, "budget_enum": 10}))
    assert run(["oracle", "--config", str(path), "--fold", "2"]) == 4
    assert "budget exceeded" in capsys.readouterr().err


def test_validate_reports_violations_with_exit_3(tmp_path, capsys):
    path = tmp_path / "bad.json"
    path.write_text(json.dumps({**SMALL, "beta": ["1/5", "1/2"]}))
    assert run(["validate", "--config", str(path)]) == 3
    assert "violated: beta_2 <= 2*beta_1" in capsys.readouterr().out


def test_validate_accepts_good_targets(cfg, capsys):
    assert run(["validate", "--config", cfg]) == 0
    assert "targets admissible" in capsys.readouterr().out


def test_inadmissible_construction_is_exit_3(tmp_path, capsys):
    path = tmp_path / "bad.json"
    path.write_text(json.dumps({**SMALL, "beta": ["1/5", "1/2"]}))
    assert run(["construct", "--config", str(path)]) == 3
    assert "admissibility error" in capsys.readouterr().err


def test_bad_scales_value_is_exit_2(cfg, capsys):
    assert run(["count", "--config", cfg, "--scales", "1,x"]) == 2
    assert "configuration error" in capsys.readouterr().err


def test_internal_errors_are_exit_5(cfg, capsys):
    assert run(["count", "--config", cfg, "--fold", "0"]) == 5
    assert "internal error" in capsys.readouterr().err


def test_plunnecke_suites_pass(tmp_path, capsys):
    out = tmp_path / "plun.json"
    assert run(["plunnecke", "--seed", "5", "--out", str(out)]) == 0
    text = capsys.readouterr().out
    assert text.count("-> PASS") == 3
    doc = json.loads(out.read_text())
    assert [r["suite"] for r in doc["reports"]] == ["ruzsa", "sumset-cover", "prop31"]
    assert all(r["seed"] == 5 for r in doc["reports"])


def test_atomic_write_leaves_no_temp_files(tmp_path):
    target = tmp_path / "x.txt"
    write_text_atomic(str(target), "payload\n")
    assert target.read_text() == "payload\n"
    assert [p.name for p in tmp_path.iterdir()] == ["x.txt"]


def test_version_flag(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["--version"])
    assert exc.value.code == 0
    assert capsys.readouterr().out.startswith("sumdim ")
