import json

import pytest

from dessins import group as grp
from dessins.catalog import (
    DEFAULT_CONFIG,
    format_table,
    grid,
    load_config,
    predict,
    sweep,
    sweep_json,
    verify_row,
)
from dessins.dessin import (
    CleanedDoubleStar,
    DiamFour,
    EvenPath,
    OddPath,
    Sporadic337,
    Star,
    ThreeStarComposite,
)
from dessins.group import labels_equivalent, predicted_order


def test_predictions():
    assert predict(ThreeStarComposite(4)).label == grp.R3(7)
    p = predict(DiamFour(2, 6, 4))
    assert p.label == grp.SymWreath(5, 2) and (p.d, p.m) == (2, 5)
    assert predicted_order(p.label) == 28800
    assert predict(DiamFour(3, 2, 4)).label.kind == "Unknown"
    assert predict(Star(6)).label == grp.Cyclic(6)
    assert predict(EvenPath(3)).label == grp.Dihedral(12)
    assert predict(CleanedDoubleStar(3, 3)).label == grp.AltCross2(5)
    assert predict(CleanedDoubleStar(4, 2)).label == grp.R2(5)
    assert predict(CleanedDoubleStar(4, 3)).label == grp.SymWreath(6, 2)
    assert predict(Sporadic337()).label == grp.AltWreath(7, 2)


def test_diam_four_equal_arms_is_cyclic_wreath():
    rep = verify_row(DiamFour(3, 2, 2))
    assert rep.passed
    assert rep.computed_order == 18
    assert labels_equivalent(rep.recognized, grp.WreathCyclic(3, 2))


def test_sporadic_row():
    rep = verify_row(Sporadic337(), with_lift=True)
    assert rep.passed, rep.to_json()
    assert rep.computed_order == predicted_order(grp.AltWreath(7, 2))
    assert {c.name for c in rep.checks} >= {"group order", "group label", "lift isomorphic", "polynomial passport"}


def test_open_cell_is_a_finding_not_a_failure():
    rep = verify_row(DiamFour(3, 2, 4))
    assert rep.passed and rep.finding
    assert rep.computed_order == 576
    assert rep.recognized.kind == "Unknown"


def test_report_json_has_string_orders():
    data = verify_row(OddPath(2)).to_json()
    assert data["computed_order"] == "10"
    json.dumps(data)


def test_grid_shapes():
    g = grid(14, None)
    assert len(g) == 271
    assert len(grid(14, 6)) == 143
    assert all(predict(p).passport.n <= 14 for p in g)
    assert grid(13, None, ["sporadic-337"]) == []
    with pytest.raises(ValueError):
        grid(10, 3, ["nope"])


def test_load_config(tmp_path):
    assert load_config(None) == DEFAULT_CONFIG
    path = tmp_path / "c.toml"
    path.write_text('[sweep]\nmax_n = 12\nfamilies = ["star", "odd-path"]\n')
    cfg = load_config(path)
    assert cfg["max_n"] == 12 and cfg["families"] == ["star", "odd-path"]
    path.write_text("[sweep]\nbogus = 1\n")
    with pytest.raises(ValueError):
        load_config(path)
    path.write_text('[sweep]\nfamilies = ["heptagon"]\n')
    with pytest.raises(ValueError):
        load_config(path)


def test_sweep_is_deterministic_across_workers(monkeypatch):
    params = grid(12, 3)
    monkeypatch.delenv("DESSIN_JOBS", raising=False)
    serial = json.dumps(sweep_json(sweep(params, jobs=1)), sort_keys=True)
    parallel = json.dumps(sweep_json(sweep(params, jobs=2)), sort_keys=True)
    assert serial == parallel
    assert json.loads(serial)["summary"]["failed"] == "0"


def test_format_table():
    text = format_table(sweep(grid(8, 2)))
    lines = text.splitlines()
    assert lines[0].split()[:2] == ["passport", "params"]
    assert all(line.endswith("pass") or "no prediction" in line for line in lines[2:])
