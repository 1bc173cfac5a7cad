import json

from transvect.cli import run


def _run(argv, tmp_path, name="report.json"):
    out = tmp_path / name
    code = run(argv + ["--out", str(out)])
    return code, json.loads(out.read_text())


def test_no_arguments_is_usage_error(capsys):
    assert run([]) == 2


def test_unknown_flag_is_usage_error():
    assert run(["orbits", "--bogus"]) == 2


def test_verify_relations_roundtrip(tmp_path):
    code, rep = _run(["verify-relations", "--ring", "gf:5", "--n", "2",
                      "--samples", "2", "--seed", "1"], tmp_path)
    assert code == 0 and rep["ok"]
    assert rep["command"] == "verify-relations"


def test_orbit_equality_command(tmp_path):
    code, rep = _run(["orbit-equality", "--ring", "zmod:3", "--size", "4"],
                     tmp_path)
    assert code == 0
    assert rep["results"][0]["equal"]


def test_decompose_symbolic(tmp_path):
    code, rep = _run(["decompose", "--symbolic", "--n", "2"], tmp_path)
    assert code == 0 and rep["ok"]


def test_reduce_form_command(tmp_path):
    code, rep = _run(["reduce-form", "--ring", "zmod:27", "--ideal", "3",
                      "--n", "2", "--samples", "2"], tmp_path)
    assert code == 0 and rep["ok"]


def test_splice_demo(tmp_path):
    code, rep = _run(["splice-demo", "--ring", "zmod:9", "--k", "3",
                      "--seed", "4"], tmp_path)
    assert code == 0 and rep["ok"]


def test_mathematical_failure_exits_one(tmp_path):
    # a non-local ring for reduce-form without CRT arguments that apply:
    # zmod:8 (even) is outside every reduction's domain -> math finding
    code, rep = _run(["reduce-form", "--ring", "zmod:8", "--n", "1"],
                     tmp_path)
    assert code == 1 and not rep["ok"]


def _strip_timing(rep):
    rep = dict(rep)
    rep.pop("started")
    rep.pop("elapsed")
    return rep


def test_reports_are_deterministic(tmp_path):
    argv = ["kernel-test", "--ring", "zmod:9", "--size", "4", "--ideal", "3",
            "--samples", "25", "--seed", "7"]
    _, rep1 = _run(argv, tmp_path, "a.json")
    _, rep2 = _run(argv, tmp_path, "b.json")
    assert _strip_timing(rep1) == _strip_timing(rep2)


def test_fixture_comparison(tmp_path, monkeypatch):
    fixdir = tmp_path / "fixtures"
    fixdir.mkdir()
    (fixdir / "orbits-zmod:3-4-esp-full.json").write_text(
        json.dumps({"value": 1}))
    monkeypatch.setenv("TRANSVECT_FIXTURES", str(fixdir))
    code, rep = _run(["orbits", "--ring", "zmod:3", "--size", "4",
                      "--group", "esp"], tmp_path)
    assert code == 0
    names = [r["name"] for r in rep["results"]]
    assert "fixture:orbits-zmod:3-4-esp-full" in names
    (fixdir / "orbits-zmod:3-4-esp-full.json").write_text(
        json.dumps({"value": 2}))
    code, rep = _run(["orbits", "--ring", "zmod:3", "--size", "4",
                      "--group", "esp"], tmp_path, "c.json")
    assert code == 1
