import json

import pytest

from dessins.cli import run


def call(capsys, *argv):
    code = run(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_group_figure_one(capsys):
    code, out, _ = call(capsys, "group", "--sigma0", "(1,3,2)(4,7,5)", "--sigma1", "(3,4)(5,6)")
    data = json.loads(out)
    assert code == 0
    assert data["order"] == "168" and data["transitive"] is True


def test_usage_errors(capsys):
    assert call(capsys, "group", "--sigma0", "(1,1)", "--sigma1", "()")[0] == 2
    assert call(capsys, "nonsense")[0] == 2
    assert call(capsys, "shabat", "--family", "diam-four", "--r", "1", "--s", "2", "--t", "2")[0] == 2
    assert call(capsys, "enumerate", "--passport", "[3;2]")[0] == 2


def test_missing_file_is_io_error(capsys, tmp_path):
    assert call(capsys, "passport", "--dessin", str(tmp_path / "absent.json"))[0] == 3


def test_bad_json_is_usage_error(capsys, tmp_path):
    path = tmp_path / "bad.json"
    path.write_text("{not json")
    assert call(capsys, "passport", "--dessin", str(path))[0] == 2


def test_family_passport_render(capsys, tmp_path):
    path = tmp_path / "d.json"
    code, _, _ = call(capsys, "family", "--family", "diam-four", "--r", "4", "--s", "3", "--t", "4", "--out", str(path))
    assert code == 0
    code, out, _ = call(capsys, "passport", "--dessin", str(path))
    data = json.loads(out)
    assert code == 0 and data["n"] == "13" and data["tree"] is True and data["genus"] == "0"
    code, out, _ = call(capsys, "render", "--dessin", str(path), "--format", "dot")
    assert code == 0 and out.startswith("graph dessin {") and out.count(" -- ") == 13
    code, out, _ = call(capsys, "render", "--dessin", str(path), "--format", "svg")
    assert code == 0 and out.startswith("<svg")


def test_shabat_emit(capsys):
    code, out, _ = call(capsys, "shabat", "--family", "cleaned-double-star", "--r", "5", "--t", "3", "--emit", "passport")
    data = json.loads(out)
    assert code == 0 and data["passport"] == "[5,3,1^6;2^7]" and data["is_shabat"]
    assert "polynomial" not in data
    code, out, _ = call(capsys, "shabat", "--family", "star", "--r", "3", "--emit", "coeffs")
    assert json.loads(out)["polynomial"]["field"] == "Q"


def test_verify_row(capsys):
    code, out, _ = call(capsys, "verify-row", "--family", "sporadic-337")
    data = json.loads(out)
    assert code == 0 and data["passed"]
    assert data["recognized_name"] == "A_7 wr Z_2"
    assert data["computed_order"] == "12700800"
    code, out, _ = call(capsys, "verify-row", "--family", "diam-four", "--r", "4", "--s", "3", "--t", "4", "--with-lift")
    assert code == 0


def test_enumerate(capsys):
    code, out, _ = call(capsys, "enumerate", "--passport", "[3;1^3]")
    data = json.loads(out)
    assert code == 0 and data["tree_count"] == "1"


def test_compose_and_lift(capsys, tmp_path):
    p, q, c = tmp_path / "p.json", tmp_path / "q.json", tmp_path / "c.json"
    p.write_text(json.dumps({"n": 1, "sigma0": [[1]], "sigma1": [[1]]}))
    call(capsys, "family", "--family", "diam-four", "--r", "2", "--s", "3", "--t", "2", "--out", str(q))
    assert call(capsys, "compose", "--p", str(p), "--square", "1", "--triangle", "1", "--q", str(q), "--out", str(c))[0] == 2
    p.write_text(json.dumps({"n": 2, "sigma0": [[1, 2]], "sigma1": []}))
    code, _, _ = call(capsys, "compose", "--p", str(p), "--square", "2", "--triangle", "3", "--q", str(q), "--out", str(c))
    assert code == 0
    # both marked ends are white, so Q's black and white degrees all land on white
    assert json.loads(c.read_text())["passport"] == "[2^5;3,2^2,1^3]"

    poly, svg = tmp_path / "poly.json", tmp_path / "out.svg"
    _, out, _ = call(capsys, "shabat", "--family", "odd-path", "--r", "2")
    poly.write_text(out)
    code, out, _ = call(capsys, "lift", "--shabat", str(poly), "--steps", "128", "--svg", str(svg))
    assert code == 0 and json.loads(out)["passport"] == "[2^2,1;2^2,1]"
    assert svg.read_text().startswith("<svg")


def test_sweep_is_byte_identical(capsys, tmp_path, monkeypatch):
    cfg = tmp_path / "sweep.toml"
    cfg.write_text('[sweep]\nmax_n = 10\nmax_param = 3\n')
    outs = []
    for jobs in ("1", "2"):
        monkeypatch.setenv("DESSIN_JOBS", jobs)
        out = tmp_path / f"r{jobs}.json"
        code, table, _ = call(capsys, "sweep", "--config", str(cfg), "--out", str(out))
        assert code == 0 and "passport" in table
        outs.append(out.read_bytes())
    assert outs[0] == outs[1]
    cfg.write_text("[sweep]\nspeed = 3\n")
    assert call(capsys, "sweep", "--config", str(cfg))[0] == 2
