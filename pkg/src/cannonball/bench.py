"""Batch comparison of the algorithm, the naive baseline and the exact oracle."""

from __future__ import annotations

import csv
import time
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from .errors import CannonballError
from .formats import INSTANCE_FORMAT, read_instance
from .multicolor import naive_solve, solve
from .verify import EXCEEDS_LIMIT, exact_multichromatic, verify

COLUMNS = [
    "instance",
    "support",
    "omega",
    "colors_used",
    "colors_naive",
    "chi_m",
    "ratio",
    "bound_value",
    "bound_ok",
    "bound_risk_events",
    "verified",
    "wall_time_s",
    "error",
]

ORACLE_MAX_SUPPORT = 10
ORACLE_MAX_DEMAND = 30


def bench_one(path, oracle_limit: int = 200) -> dict:
    row = dict.fromkeys(COLUMNS, "")
    row["instance"] = Path(path).name
    t0 = time.perf_counter()
    try:
        g = read_instance(path)
        f, stats = solve(g)
        _, naive = naive_solve(g)
        omega = stats.omega.omega
        row.update(
            support=len(g.support),
            omega=omega,
            colors_used=stats.colors_used,
            colors_naive=naive.colors_used,
            ratio=f"{stats.colors_used / omega:.4f}" if omega else "",
            bound_value=stats.bound_value,
            bound_ok=stats.bound_ok,
            bound_risk_events=len(stats.bound_risk_events),
            verified=verify(g, f).ok,
        )
        total = sum(g.d(v) for v in g.support)
        if len(g.support) <= ORACLE_MAX_SUPPORT and total <= ORACLE_MAX_DEMAND:
            chi = exact_multichromatic(g, oracle_limit)
            row["chi_m"] = "" if chi == EXCEEDS_LIMIT else chi
    except (CannonballError, OSError) as e:
        row["error"] = f"{type(e).__name__}: {e}"
    row["wall_time_s"] = f"{time.perf_counter() - t0:.4f}"
    return row


def _is_instance(path) -> bool:
    with open(path, encoding="utf-8") as fh:
        return f'"{INSTANCE_FORMAT}"' in fh.readline()


def run_bench(corpus_dir, jobs: int = 1) -> list[dict]:
    files = sorted(p for p in Path(corpus_dir).glob("*.jsonl") if _is_instance(p))
    if jobs > 1 and len(files) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            rows = list(ex.map(bench_one, files))
    else:
        rows = [bench_one(p) for p in files]
    return sorted(rows, key=lambda r: r["instance"])


def write_report(rows, out):
    with open(out, "w", newline="", encoding="utf-8") as fh:
        w = csv.DictWriter(fh, fieldnames=COLUMNS)
        w.writeheader()
        w.writerows(rows)
