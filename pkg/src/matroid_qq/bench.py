"""Query-count benchmarks: one row per (n, trial), ground truth from enumeration."""

from __future__ import annotations

import csv
import io
import math
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import astuple, dataclass, fields

import numpy as np

from . import algorithms as alg
from . import enumeration as enum_
from .matroid import make_deleted_basis, make_paving_counterexample, make_uniform, oracle_of
from .rng import stream
from .subsets import CapacityError, ParameterError, mask_of

FAMILIES = ("uniformDecision", "girth", "pavingDecision", "trivial", "loopless")
MEMORY_LIMIT = 1 << 30


@dataclass(frozen=True)
class BenchRow:
    n: int
    r: int
    algorithm: str
    trial: int
    seed: int
    classicalQueries: int
    quantumQueries: int
    answer: str
    groundTruth: str
    correct: bool
    wallTimeMicros: int


HEADER = [f.name for f in fields(BenchRow)]


def _random_subset(rng: np.random.Generator, n: int, k: int) -> int:
    return mask_of(int(e) for e in rng.choice(n, size=k, replace=False))


def fixture(family: str, n: int, rng: np.random.Generator):
    """The benchmark matroid for one trial: a near-uniform instance with a hidden defect."""
    if family in ("uniformDecision", "girth"):
        r = n // 2
        return make_deleted_basis(n, r, _random_subset(rng, n, r), 1)
    if family == "pavingDecision":
        r = n // 2 + 1
        return make_paving_counterexample(n, r, _random_subset(rng, n, r - 1))
    if family == "trivial":
        return make_uniform(n, 0)
    if family == "loopless":
        return make_deleted_basis(n, 1, _random_subset(rng, n, 1), 1)
    raise ParameterError(f"unknown family {family!r}; choose from {', '.join(FAMILIES)}")


def min_n(family: str) -> int:
    return 3 if family == "pavingDecision" else 2


def max_n(family: str) -> int:
    return 64 if family in ("trivial", "loopless") else enum_.ENUM_MAX_N


def projected_bytes(family: str, n: int) -> int:
    if family in ("trivial", "loopless"):
        return 64 * n
    # enumeration tables over 2^n masks plus the search space and its state vector
    return 24 * (1 << n) + 32 * math.comb(n, n // 2)


def _fmt(value) -> str:
    if value == math.inf:
        return "inf"
    return str(int(value))


def _ground_truth(family: str, oracle, n: int) -> str:
    if family == "uniformDecision":
        return _fmt(enum_.is_uniform_bruteforce(oracle, n))
    if family == "girth":
        return _fmt(enum_.girth_bruteforce(oracle, n))
    if family == "pavingDecision":
        return _fmt(enum_.is_paving_bruteforce(oracle, n))
    if family == "trivial":
        return _fmt(enum_.is_trivial_bruteforce(oracle, n))
    return _fmt(enum_.is_loopless_bruteforce(oracle, n))


def run_trial(family: str, n: int, trial: int, seed: int, max_repeat: int = 5, timing: bool = False) -> BenchRow:
    rng = stream(seed, n, trial)
    spec = fixture(family, n, rng)
    oracle = oracle_of(spec)
    cfg = alg.AmplificationConfig(max_repeat)
    start = time.perf_counter_ns()
    if family == "girth":
        res = alg.compute_girth(oracle, n, cfg, rng)
        answer = _fmt(res.girth)
    else:
        fn = {
            "uniformDecision": alg.decide_uniform,
            "pavingDecision": alg.decide_paving,
            "trivial": alg.decide_trivial,
            "loopless": alg.decide_loopless,
        }[family]
        res = fn(oracle, n, cfg, rng)
        answer = _fmt(res.answer)
    elapsed = (time.perf_counter_ns() - start) // 1000 if timing else 0
    truth = _ground_truth(family, oracle, n)
    return BenchRow(n, spec.r, family, trial, seed, res.report.classical, res.report.quantum,
                    answer, truth, answer == truth, elapsed)


def _run_task(args) -> BenchRow:
    return run_trial(*args)


def worker_count() -> int:
    env = os.environ.get("MATROID_QQ_THREADS")
    if env:
        try:
            return max(1, int(env))
        except ValueError as exc:
            raise ParameterError(f"MATROID_QQ_THREADS must be an integer, got {env!r}") from exc
    return os.cpu_count() or 1


def run_bench(family: str, ns, trials: int, seed: int, max_repeat: int = 5,
              timing: bool = False, workers: int | None = None, n_limit: int | None = None) -> list[BenchRow]:
    if family not in FAMILIES:
        raise ParameterError(f"unknown family {family!r}; choose from {', '.join(FAMILIES)}")
    if trials < 0:
        raise ParameterError("trials must be nonnegative")
    ns = list(ns)
    limit = max_n(family) if n_limit is None else min(n_limit, max_n(family))
    for n in ns:
        if not min_n(family) <= n <= limit:
            raise CapacityError(f"{family} benchmarks need {min_n(family)} <= n <= {limit}, got {n}")
        if projected_bytes(family, n) > MEMORY_LIMIT:
            raise CapacityError(f"n={n} would need more than 1 GiB")
    tasks = [(family, n, t, seed, max_repeat, timing) for n in ns for t in range(trials)]
    workers = worker_count() if workers is None else workers
    if workers > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(_run_task, tasks, chunksize=max(1, len(tasks) // (4 * workers))))
    else:
        rows = [_run_task(t) for t in tasks]
    rows.sort(key=lambda row: (row.n, row.trial))
    return rows


def rows_to_csv(rows: list[BenchRow]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf)
    writer.writerow(HEADER)
    for row in rows:
        writer.writerow(["true" if v is True else "false" if v is False else v for v in astuple(row)])
    return buf.getvalue()


def loglog_slope(xs, ys) -> float:
    """Least-squares slope of log(y) against log(x)."""
    return float(np.polyfit(np.log(np.asarray(xs, float)), np.log(np.asarray(ys, float)), 1)[0])


def scale_of(family: str, n: int) -> int:
    """Search-space size the family's cost is expected to follow."""
    if family in ("trivial", "loopless"):
        return n
    return math.comb(n, n // 2)


def summarize(family: str, rows: list[BenchRow]) -> dict:
    by_n: dict[int, list[BenchRow]] = {}
    for row in rows:
        by_n.setdefault(row.n, []).append(row)
    ns = sorted(by_n)
    means = {n: float(np.mean([r.quantumQueries for r in by_n[n]])) for n in ns}
    summary = {
        "family": family,
        "mean_quantum": {str(n): means[n] for n in ns},
        "accuracy": {str(n): sum(r.correct for r in by_n[n]) / len(by_n[n]) for n in ns},
        "slope": None,
    }
    if len(ns) >= 2 and all(means[n] > 0 for n in ns):
        summary["slope"] = loglog_slope([scale_of(family, n) for n in ns], [means[n] for n in ns])
    return summary
