"""Experiment grids: exact histograms against the predicted local laws."""

from __future__ import annotations

import json
import time
import warnings
from dataclasses import dataclass, field

from .. import __version__
from ..errors import DomainError
from ..laws import (LawParams, PredictionRecord, bridge15, classify_regime, envelope19,
                    loglog, predict_et21, predict_phi43, predict_thm11, predict_thm13,
                    predict_ur42)
from ..sieve import NuHistogram, friable_stats, nu_histogram, s_z_from_hist
from .cache import CacheWarning, cache_load, cache_store
from .config import ExperimentConfig

COLUMNS = ("x", "y", "k", "law", "exact", "predicted", "ratio", "regime_tags")


@dataclass
class Report:
    rows: list[PredictionRecord] = field(default_factory=list)
    metadata: dict = field(default_factory=dict)


def _histogram(x: int, y: int, cfg: ExperimentConfig, notes: list[str]) -> NuHistogram:
    if cfg.cache_dir is None:
        return nu_histogram(x, y, workers=cfg.workers)
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always", CacheWarning)
        h = cache_load(x, y, cfg.cache_dir)
    for w in caught:
        notes.append(str(w.message))
        warnings.warn(w.message, CacheWarning, stacklevel=3)
    if h is None:
        h = nu_histogram(x, y, workers=cfg.workers)
        cache_store(h, cfg.cache_dir)
    return h


def _evaluate(law: str, p: LawParams, h: NuHistogram, friable) -> tuple[object, float | None]:
    """(exact, predicted) for one row; predicted is None where the law does not apply."""
    k = p.k
    exact = h[k]
    try:
        if law == "thm11":
            return exact, predict_thm11(p)
        if law == "et21":
            return exact, predict_et21(p)
        if law == "thm13":
            return exact, predict_thm13(p)
        if law == "envelope19":
            return exact, envelope19(p)
        if law == "bridge15":
            return exact, bridge15(p, s_z_from_hist(h, p.r))
        if law == "phi43":
            if k != 0:
                return exact, None
            return exact, predict_phi43(p)
        if law == "u_r42":
            if k == 0:
                return None, None
            r = p.r
            return friable().u_r(r), predict_ur42(p, r)
    except DomainError:
        return exact, None
    raise ValueError(f"unknown law {law!r}")


def run_experiment(cfg: ExperimentConfig) -> Report:
    """Every (x, y, k, law) of the grid, sorted by x, y, k, then law id."""
    t0 = time.time()
    laws = sorted(set(cfg.laws))
    k_lo, k_hi = cfg.k_range
    rows: list[PredictionRecord] = []
    notes: list[str] = []
    sums: list[dict] = []
    for x in sorted(set(cfg.x_list)):
        for y in cfg.resolve_y(x):
            h = _histogram(x, y, cfg, notes)
            cache = {}

            def friable(x=x, y=y, cache=cache):
                if "stats" not in cache:
                    cache["stats"] = friable_stats(x, y, workers=cfg.workers)
                return cache["stats"]

            for r in sorted(set(cfg.r_list)):
                sums.append({"x": x, "y": y, "r": r, "S_r": s_z_from_hist(h, r),
                             "U_r": friable().u_r(r)})
            for k in range(k_lo, k_hi + 1):
                p = LawParams(x, y, k)
                tags = tuple(t.value for t in classify_regime(p))
                if not laws:
                    rows.append(PredictionRecord("", p, None, h[k], flags=tags))
                    continue
                for law in laws:
                    exact, predicted = _evaluate(law, p, h, friable)
                    rows.append(PredictionRecord(law, p, predicted, exact, flags=tags))
    meta = {
        "config": cfg.echo(),
        "version": __version__,
        "started": time.strftime("%Y-%m-%dT%H:%M:%S%z", time.localtime(t0)),
        "wall_seconds": round(time.time() - t0, 3),
        "cache_warnings": notes,
        "generating_sums": sums,
    }
    return Report(rows, meta)


def _fmt_exact(v) -> str:
    if v is None:
        return ""
    if isinstance(v, int):
        return str(v)
    return f"{v:.12g}"


def _cells(rec: PredictionRecord) -> list[str]:
    p = rec.params
    return [
        str(int(p.x)), str(int(p.y)), str(p.k), rec.law,
        _fmt_exact(rec.exact),
        "" if rec.predicted is None else f"{rec.predicted:.10g}",
        "" if rec.ratio is None else f"{rec.ratio:#.6g}",
        "|".join(rec.flags),
    ]


def emit_report(rep: Report, fmt: str = "csv") -> str:
    """The report body as CSV or a markdown table with the same columns."""
    rows = [_cells(r) for r in rep.rows]
    if fmt == "csv":
        return "".join(",".join(cells) + "\n" for cells in [list(COLUMNS)] + rows)
    if fmt == "markdown":
        def line(cells):
            return "| " + " | ".join(c.replace("|", "\\|") for c in cells) + " |\n"
        head = line(COLUMNS) + "|" + "|".join("---" for _ in COLUMNS) + "|\n"
        return head + "".join(line(c) for c in rows)
    raise DomainError(f"unknown report format {fmt!r}")


def emit_metadata(rep: Report) -> str:
    return json.dumps(rep.metadata, indent=2, sort_keys=True) + "\n"
