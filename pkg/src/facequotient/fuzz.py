"""Seeded fuzz campaigns over random gluings, tallying manifold, χ and circuit checks."""

from __future__ import annotations

import csv
import io
import json
import os
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from . import __version__
from .complex import dumps, validate
from .gallery import gen_random
from .quotient import (
    build_quotient,
    classify_surface,
    euler_characteristic,
    gamma_graph,
    has_circuit,
    verify_manifold,
)

FLAT_SURFACES = ("disk", "projective_plane")
VIOLATIONS = ("chi", "flat_surface", "no_circuit")
CSV_FIELDS = ["seed", "valid", "manifold", "chi", "degree", "flat", "surface", "circuit",
              "violations", "error"]


def deterministic():
    return os.environ.get("FQ_DETERMINISTIC") == "1"


def evaluate(base, seed) -> dict:
    """One fuzz sample.  Failures are captured in the row, never raised."""
    row = {"seed": seed, "valid": False, "manifold": None, "chi": None, "degree": None,
           "flat": None, "surface": None, "circuit": None, "violations": [], "error": None}
    try:
        scheme = gen_random(base, seed)
        if not validate(scheme).ok:
            row["error"] = "invalid scheme"
            return row
        row["valid"] = True
        q = build_quotient(scheme)
        manifold = verify_manifold(scheme).is_manifold
        degree = max(e.order for e in q.edges)
        row.update(manifold=manifold, chi=euler_characteristic(q), degree=degree,
                   flat=degree <= 2, circuit=has_circuit(gamma_graph(q)))
        if degree <= 2:
            row["surface"] = classify_surface(q).kind
        if manifold and row["chi"] != 1:
            row["violations"].append("chi")
        if manifold and degree <= 2 and row["surface"] not in FLAT_SURFACES:
            row["violations"].append("flat_surface")
        if manifold and degree > 2 and not row["circuit"]:
            row["violations"].append("no_circuit")
    except Exception as exc:  # recorded, the campaign goes on
        row["error"] = f"{type(exc).__name__}: {exc}"
    return row


def _evaluate_chunk(args):
    base, seeds = args
    return [evaluate(base, s) for s in seeds]


def run_campaign(base, count, seed0, workers=None) -> list[dict]:
    seeds = list(range(seed0, seed0 + count))
    if deterministic() or count < 200 or workers == 1:
        rows = [evaluate(base, s) for s in seeds]
    else:
        chunks = [(base, seeds[i:i + 100]) for i in range(0, count, 100)]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            rows = [r for chunk in pool.map(_evaluate_chunk, chunks) for r in chunk]
    return sorted(rows, key=lambda r: r["seed"])


def summarize(base, count, seed0, rows) -> dict:
    valid = [r for r in rows if r["valid"]]
    manifolds = [r for r in valid if r["manifold"]]
    chi_hist = {}
    for r in valid:
        chi_hist[str(r["chi"])] = chi_hist.get(str(r["chi"]), 0) + 1
    violations = {k: [r["seed"] for r in rows if k in r["violations"]] for k in VIOLATIONS}
    return {
        "tool": "facequotient",
        "version": __version__,
        "base": base,
        "seed0": seed0,
        "count": count,
        "valid": len(valid),
        "errors": [r["seed"] for r in rows if r["error"]],
        "manifolds": len(manifolds),
        "manifold_rate": round(len(manifolds) / count, 6) if count else 0.0,
        "chi_distribution": dict(sorted(chi_hist.items(), key=lambda kv: int(kv[0]))),
        "violations": violations,
        "violation_count": sum(len(v) for v in violations.values()),
    }


def rows_to_csv(rows) -> str:
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=CSV_FIELDS, lineterminator="\n")
    w.writeheader()
    for r in rows:
        w.writerow({**r, "violations": ";".join(r["violations"]), "error": r["error"] or ""})
    return buf.getvalue()


def write_campaign(out_dir, base, summary, rows):
    """summary.json, campaign.csv and one scheme file per violating seed."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    (out / "summary.json").write_text(json.dumps(summary, indent=1) + "\n", encoding="utf-8")
    (out / "campaign.csv").write_text(rows_to_csv(rows), encoding="utf-8")
    bad = [r for r in rows if r["violations"]]
    if bad:
        vdir = out / "violations"
        vdir.mkdir(exist_ok=True)
        for r in bad:
            name = f"{base}-{r['seed']}-{'+'.join(r['violations'])}.json"
            (vdir / name).write_text(dumps(gen_random(base, r["seed"])), encoding="utf-8")
    return out
