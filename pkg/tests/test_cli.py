import json

import pytest

from jokerlab.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_endotrivial_w5(capsys):
    code, out, _ = run(capsys, "endotrivial", "--module", "W5")
    assert code == 0 and out.strip() == "true"


def test_endotrivial_json(capsys):
    code, out, _ = run(capsys, "endotrivial", "--module", "sigma_nu", "--json")
    data = json.loads(out)
    assert code == 0 and data["endotrivial"] is False


def test_unknown_module_is_usage_error(capsys):
    code, _, err = run(capsys, "endotrivial", "--module", "W7")
    assert code == 2 and "W5" in err


def test_teichmuller_digits(capsys):
    code, out, _ = run(capsys, "teichmuller", "--element", "i", "--digits", "3")
    assert code == 0 and out.strip() == "1, 1, w"
    code, _, err = run(capsys, "teichmuller", "--element", "q")
    assert code == 2


def test_module_check(capsys):
    code, out, _ = run(capsys, "module", "W3", "--check", "--json")
    data = json.loads(out)
    assert code == 0 and data["dim"] == 3 and data["action_law"] == "ok"
    assert data["generators"]["i"] == "1 0 0\n1 1 0\n0 1 1"


def test_ext(capsys, tmp_path):
    code, out, _ = run(capsys, "ext", "--json", "--cache-dir", str(tmp_path))
    data = json.loads(out)
    assert data["betti"] == [1, 2, 2, 1, 1, 2, 2, 1, 1]
    assert all(data["relations_zero"].values())
    assert list(tmp_path.iterdir())


def test_cache_dir_from_environment(capsys, tmp_path, monkeypatch):
    monkeypatch.setenv("JOKERLAB_CACHE_DIR", str(tmp_path))
    code, _, _ = run(capsys, "ext", "--max-degree", "3")
    assert code == 0 and list(tmp_path.iterdir())


def test_massey_default_and_undefined(capsys):
    code, out, _ = run(capsys, "massey", "--json")
    data = json.loads(out)
    assert data["defined"] and len(data["indeterminacy"]) == 1
    code, out, _ = run(capsys, "massey", "u", "u", "u")
    assert code == 0 and "not defined" in out
    code, _, err = run(capsys, "massey", "u+x", "u", "u")
    assert code == 2


def test_coaction_builtin_and_file(capsys, tmp_path):
    code, out, _ = run(capsys, "coaction", "--spec", "cone_eta", "--json")
    data = json.loads(out)
    assert data["matrices"]["j"] == "1 w2\n0 1"
    spec = {
        "basis": [{"name": "x0", "degree": 0}, {"name": "x2", "degree": 2}],
        "coaction": [
            {"source": "x0", "terms": [{"alpha": "1", "target": "x0"}]},
            {"source": "x2", "terms": [{"alpha": "a1", "target": "x0", "u": 1}, {"alpha": "a0", "target": "x2"}]},
        ],
    }
    path = tmp_path / "eta.json"
    path.write_text(json.dumps(spec))
    code, out2, _ = run(capsys, "coaction", "--spec", str(path), "--json")
    assert json.loads(out2)["matrices"] == data["matrices"]
    code, _, _ = run(capsys, "coaction", "--spec", str(tmp_path / "missing.json"))
    assert code == 2


def test_coaction_completions(capsys):
    code, out, _ = run(capsys, "coaction", "--spec", "sigma_nu", "--json")
    data = json.loads(out)
    assert len(data["completions"]) == 16


def test_hecke_json(capsys):
    code, out, _ = run(capsys, "hecke", "--group", "g24", "--subgroup", "c3", "--json")
    data = json.loads(out)
    assert code == 0 and len(data["basis"]) == 8 and data["basis"][1] == "i^2H"
    assert data["matrices"][1] == "1 0 u^3\n0 1 0\n0 0 1"
    assert "u^3" in data["matrices"][4]


def test_verify_filter_and_exit_codes(capsys):
    code, out, _ = run(capsys, "verify", "--filter", "padic", "--json")
    data = json.loads(out)
    assert code == 0 and data["summary"]["fail"] == 0
    code, _, err = run(capsys, "verify", "--filter", "nothing-matches")
    assert code == 2
