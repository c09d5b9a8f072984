"""The table of size-one tree passports as executable data.

``predict`` gives the expected passport and group for a family member;
``verify_row`` checks them end to end and ``sweep`` runs a whole grid.
"""

from __future__ import annotations

import math
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Iterable

from . import group as grp
from .dessin import (
    FAMILIES,
    CleanedDoubleStar,
    DiamFour,
    EvenPath,
    FamilyParams,
    OddPath,
    Passport,
    Sporadic337,
    Star,
    ThreeStarComposite,
    are_isomorphic,
    canonical_family,
    family_params_json,
    family_passport,
    monodromy,
)
from .group import GroupLabel, canonical_label, labels_equivalent, predicted_order, recognize_with_evidence
from .shabat import is_shabat, passport_of, shabat_for

__all__ = ["RowPrediction", "Check", "Report", "predict", "verify_row", "grid", "sweep", "load_config", "format_table"]

SHABAT_IDS = {
    Star: "star_shabat",
    OddPath: "chebyshev_path",
    EvenPath: "chebyshev_path",
    DiamFour: "adrianov_shabat",
    CleanedDoubleStar: "cleaned_double_star",
    ThreeStarComposite: "threestar_composite",
    Sporadic337: "sporadic_337",
}


@dataclass(frozen=True)
class RowPrediction:
    params: FamilyParams
    passport: Passport
    label: GroupLabel
    shabat_id: str
    n: int
    d: int | None = None
    m: int | None = None

    def to_json(self) -> dict:
        return {
            "params": family_params_json(self.params),
            "passport": str(self.passport),
            "label": self.label.to_json(),
            "label_name": str(self.label),
            "shabat": self.shabat_id,
            "n": str(self.n),
            "d": None if self.d is None else str(self.d),
            "m": None if self.m is None else str(self.m),
        }


def _diam_four_label(r: int, s: int, t: int) -> tuple[GroupLabel, int, int]:
    n = s * (r - 1) + t
    d = math.gcd(s, t)
    m = n // d
    if s == t:
        return grp.WreathCyclic(r, s), d, m
    if math.gcd(d, m) != 1:
        return grp.Unknown(None), d, m
    if r % 2 == 0:
        return grp.SymWreath(m, d), d, m
    if (t // d) % 2 == 0:
        return grp.Rtilde(m, d), d, m
    return grp.AltWreath(m, d), d, m


def predict(p: FamilyParams) -> RowPrediction:
    """Expected passport and monodromy group of a family member."""
    passport = family_passport(p)
    n = passport.n
    sid = SHABAT_IDS[type(p)]
    if isinstance(p, Star):
        return RowPrediction(p, passport, grp.Cyclic(p.r), sid, n)
    if isinstance(p, (OddPath, EvenPath)):
        return RowPrediction(p, passport, grp.Dihedral(2 * n), sid, n)
    if isinstance(p, DiamFour):
        label, d, m = _diam_four_label(p.r, p.s, p.t)
        return RowPrediction(p, passport, label, sid, n, d, m)
    if isinstance(p, CleanedDoubleStar):
        r, t = p.r, p.t
        k = r + t - 1
        if r == t:
            label = grp.AltCross2(k) if r % 2 else grp.SymCross2(k)
        elif r % 2 and t % 2:
            label = grp.AltWreath(k, 2)
        elif r % 2 == 0 and t % 2 == 0:
            label = grp.R2(k)
        else:
            label = grp.SymWreath(k, 2)
        return RowPrediction(p, passport, label, sid, n, 2, k)
    if isinstance(p, ThreeStarComposite):
        k = 2 * p.r - 1
        label = grp.AltWreath(k, 3) if p.r % 2 else grp.R3(k)
        return RowPrediction(p, passport, label, sid, n, 3, k)
    if isinstance(p, Sporadic337):
        return RowPrediction(p, passport, grp.AltWreath(7, 2), sid, n, 2, 7)
    raise TypeError(f"not a family: {p!r}")


# --------------------------------------------------------------------------
# verification


@dataclass
class Check:
    name: str
    passed: bool
    detail: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {"name": self.name, "passed": self.passed, "detail": self.detail}


@dataclass
class Report:
    prediction: RowPrediction
    checks: list[Check]
    computed_order: int
    recognized: GroupLabel
    evidence: dict
    finding: str | None = None
    seconds: float = 0.0

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_json(self, timings: bool = False) -> dict:
        out = {
            "prediction": self.prediction.to_json(),
            "passed": self.passed,
            "computed_order": str(self.computed_order),
            "recognized": self.recognized.to_json(),
            "recognized_name": str(self.recognized),
            "evidence": self.evidence,
            "finding": self.finding,
            "checks": [c.to_json() for c in self.checks],
        }
        if timings:
            out["seconds"] = f"{self.seconds:.3f}"
        return out


def verify_row(p: FamilyParams, with_lift: bool = False, lift_steps: int = 256) -> Report:
    """Check a family member end to end; failures become report entries."""
    start = time.perf_counter()
    pred = predict(p)
    checks: list[Check] = []

    D = canonical_family(p)
    checks.append(Check("dessin passport", D.passport() == pred.passport,
                        {"computed": str(D.passport()), "expected": str(pred.passport)}))
    checks.append(Check("dessin is a tree", D.is_tree(), {"genus": str(D.genus())}))

    G = monodromy(D)
    rec = recognize_with_evidence(G)
    order = rec.order
    finding = None
    if pred.label.kind == "Unknown":
        finding = f"no prediction for this row; computed order {order}, recognized as {rec.label}"
    else:
        expected = predicted_order(pred.label)
        checks.append(Check("group order", order == expected, {"computed": str(order), "expected": str(expected)}))
        checks.append(Check("group label", labels_equivalent(rec.label, pred.label),
                            {"computed": str(rec.label), "expected": str(pred.label)}))

    F = shabat_for(p)
    shabat_ok = is_shabat(F)
    checks.append(Check("shabat criterion", shabat_ok, {"degree": str(F.degree), "field": F.field}))
    if shabat_ok:
        pp = passport_of(F)
        checks.append(Check("polynomial passport", pp == pred.passport, {"computed": str(pp), "expected": str(pred.passport)}))

    if with_lift:
        from .lift import LiftError, trace_dessin

        try:
            traced = trace_dessin(F, steps=lift_steps)
            iso = are_isomorphic(traced, D)
            checks.append(Check("lift isomorphic", iso is not None, {"traced": traced.to_json()}))
        except LiftError as exc:
            checks.append(Check("lift isomorphic", False, {"error": str(exc)}))

    return Report(pred, checks, order, rec.label, rec.evidence_json(), finding, time.perf_counter() - start)


# --------------------------------------------------------------------------
# sweeps


DEFAULT_CONFIG = {
    "max_n": 30,
    "max_param": 6,
    "families": list(FAMILIES),
    "with_lift": False,
    "lift_max_degree": 14,
}


def load_config(path: str | os.PathLike | None) -> dict:
    """Read a TOML sweep configuration; keys live in a ``[sweep]`` table.

    Recognized keys: ``max_n`` (edge bound), ``max_param`` (bound on r, s, t),
    ``families`` (list of family names), ``with_lift`` and ``lift_max_degree``.
    """
    cfg = dict(DEFAULT_CONFIG)
    if path is None:
        return cfg
    import tomli

    with open(path, "rb") as fh:
        data = tomli.load(fh)
    section = data.get("sweep", data)
    unknown = set(section) - set(DEFAULT_CONFIG)
    if unknown:
        raise ValueError(f"unknown sweep keys: {', '.join(sorted(unknown))}")
    cfg.update(section)
    for name in cfg["families"]:
        if name not in FAMILIES:
            raise ValueError(f"unknown family {name!r}")
    return cfg


def grid(max_n: int = 30, max_param: int | None = 6, families: Iterable[str] | None = None) -> list[FamilyParams]:
    """All admissible family members with at most ``max_n`` edges.

    ``max_param`` bounds r, s and t; pass None to bound only the edge count.
    """
    names = list(families) if families is not None else list(FAMILIES)
    cap = max_n if max_param is None else max_param
    out: list[FamilyParams] = []
    for name in names:
        if name == "star":
            out += [Star(r) for r in range(1, min(cap, max_n) + 1)]
        elif name == "odd-path":
            out += [OddPath(r) for r in range(1, cap + 1) if 2 * r + 1 <= max_n]
        elif name == "even-path":
            out += [EvenPath(r) for r in range(2, cap + 1) if 2 * r <= max_n]
        elif name == "diam-four":
            out += [
                DiamFour(r, s, t)
                for r in range(2, cap + 1)
                for s in range(1, cap + 1)
                for t in range(1, cap + 1)
                if s * (r - 1) + t <= max_n
            ]
        elif name == "cleaned-double-star":
            out += [CleanedDoubleStar(r, t) for r in range(2, cap + 1) for t in range(2, cap + 1) if 2 * (r + t - 1) <= max_n]
        elif name == "three-star-composite":
            out += [ThreeStarComposite(r) for r in range(2, cap + 1) if 3 * (2 * r - 1) <= max_n]
        elif name == "sporadic-337":
            if max_n >= 14:
                out.append(Sporadic337())
        else:
            raise ValueError(f"unknown family {name!r}")
    return out


def _verify_job(args) -> Report:
    p, with_lift, lift_max_degree = args
    lift = with_lift and family_passport(p).n <= lift_max_degree
    return verify_row(p, with_lift=lift)


def sweep(params: list[FamilyParams], jobs: int = 1, with_lift: bool = False, lift_max_degree: int = 14) -> list[Report]:
    """Verify every row; the result order matches ``params`` whatever ``jobs`` is.

    The environment variable DESSIN_JOBS overrides ``jobs``.
    """
    env = os.environ.get("DESSIN_JOBS")
    if env:
        jobs = int(env)
    work = [(p, with_lift, lift_max_degree) for p in params]
    if jobs <= 1:
        return [_verify_job(w) for w in work]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(_verify_job, work))


def sweep_json(reports: list[Report]) -> dict:
    return {
        "rows": [r.to_json() for r in reports],
        "summary": {
            "rows": str(len(reports)),
            "passed": str(sum(r.passed for r in reports)),
            "failed": str(sum(not r.passed for r in reports)),
            "findings": str(sum(r.finding is not None for r in reports)),
        },
    }


def format_table(reports: list[Report]) -> str:
    """Plain-text table: passport, parameters, predicted and computed group, verdict."""
    rows = [("passport", "params", "predicted", "computed", "order", "result")]
    for rep in reports:
        params = ",".join(f"{k}={v}" for k, v in family_params_json(rep.prediction.params).items() if k != "family")
        verdict = "pass" if rep.passed else "FAIL"
        if rep.finding:
            verdict += " (no prediction)"
        rows.append((
            str(rep.prediction.passport),
            f"{rep.prediction.params.name}({params})",
            str(canonical_label(rep.prediction.label)),
            str(rep.recognized),
            str(rep.computed_order),
            verdict,
        ))
    widths = [max(len(r[i]) for r in rows) for i in range(len(rows[0]))]
    lines = ["  ".join(cell.ljust(w) for cell, w in zip(row, widths)).rstrip() for row in rows]
    lines.insert(1, "  ".join("-" * w for w in widths))
    return "\n".join(lines)
