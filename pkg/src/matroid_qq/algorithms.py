"""Query algorithms for matroid properties, run against a counted independence oracle.

Every decision is one-sided: a "property fails" answer comes with a witness
that was confirmed by a classical query, so it is never wrong; a "property
holds" answer is wrong only if all ``max_repeat`` searches missed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .enumeration import INFINITY, rank_of
from .grover import KSubsetSpace, grover_search, search_budget
from .oracle import CountingOracle, QueryReport, counting
from .subsets import ParameterError, full_mask, ksubset_masks


@dataclass(frozen=True)
class AmplificationConfig:
    max_repeat: int = 5

    def __post_init__(self):
        if self.max_repeat < 1:
            raise ParameterError(f"max_repeat must be >= 1, got {self.max_repeat}")


DEFAULT_CONFIG = AmplificationConfig()


@dataclass(frozen=True)
class DecisionResult:
    answer: int
    report: QueryReport
    witness: Optional[int] = None


@dataclass(frozen=True)
class GirthResult:
    girth: float | int
    report: QueryReport
    witness: Optional[int] = None


class _Run:
    """Counter plus the report baseline for one algorithm invocation."""

    def __init__(self, oracle, n: Optional[int]):
        self.counter: CountingOracle = counting(oracle)
        self.n = self.counter.n if n is None else n
        if self.n != self.counter.n:
            raise ParameterError(f"ground size {self.n} does not match the oracle's {self.counter.n}")
        self._start = self.counter.report()

    def report(self) -> QueryReport:
        now = self.counter.report()
        return QueryReport(now.classical - self._start.classical, now.quantum - self._start.quantum)

    def find(self, k: int, want: bool, cfg: AmplificationConfig, rng) -> Optional[int]:
        """Amplified search for a k-set whose oracle answer is ``want``."""
        space = KSubsetSpace(self.counter.inner, k, want)
        for _ in range(cfg.max_repeat):
            outcome = grover_search(space, self.counter, rng)
            if outcome.found is not None:
                return space.mask(outcome.found)
        return None


def greedy_rank(oracle, n: Optional[int] = None) -> int:
    """Rank by the greedy scan: exactly n classical queries."""
    run = _Run(oracle, n)
    return rank_of(run.counter, full_mask(run.n))


def decide_uniform(oracle, n: Optional[int] = None, cfg: AmplificationConfig = DEFAULT_CONFIG, rng=None) -> DecisionResult:
    run = _Run(oracle, n)
    rng = np.random.default_rng() if rng is None else rng
    r = rank_of(run.counter, full_mask(run.n))
    witness = run.find(r, False, cfg, rng)
    return DecisionResult(int(witness is None), run.report(), witness)


def decide_paving(oracle, n: Optional[int] = None, cfg: AmplificationConfig = DEFAULT_CONFIG, rng=None) -> DecisionResult:
    run = _Run(oracle, n)
    rng = np.random.default_rng() if rng is None else rng
    r = rank_of(run.counter, full_mask(run.n))
    if r <= 1:
        # every circuit has at least one element, so |C| >= r holds vacuously
        return DecisionResult(1, run.report())
    witness = run.find(r - 1, False, cfg, rng)
    return DecisionResult(int(witness is None), run.report(), witness)


def compute_girth(oracle, n: Optional[int] = None, cfg: AmplificationConfig = DEFAULT_CONFIG, rng=None) -> GirthResult:
    """Least k admitting a dependent k-set, by binary search over [1, r+1].

    A dependent set of size k exists for every k from the girth up, so the
    probe is monotone and hi = r+1 always holds once V is dependent.
    """
    run = _Run(oracle, n)
    rng = np.random.default_rng() if rng is None else rng
    if run.counter.query(full_mask(run.n)):
        return GirthResult(INFINITY, run.report())
    r = rank_of(run.counter, full_mask(run.n))
    lo, hi = 1, r + 1
    witness = None
    while lo < hi:
        mid = (lo + hi) // 2
        found = run.find(mid, False, cfg, rng)
        if found is not None:
            hi, witness = mid, found
        else:
            lo = mid + 1
    return GirthResult(lo, run.report(), witness)


def _singleton_search(oracle, n, want: bool, cfg, rng) -> DecisionResult:
    run = _Run(oracle, n)
    if run.n < 1:
        raise ParameterError("singleton search needs n >= 1")
    rng = np.random.default_rng() if rng is None else rng
    witness = run.find(1, want, cfg, rng)
    return DecisionResult(int(witness is None), run.report(), witness)


def decide_trivial(oracle, n: Optional[int] = None, cfg: AmplificationConfig = DEFAULT_CONFIG, rng=None) -> DecisionResult:
    """Trivial iff no singleton is independent; an independent singleton is the witness."""
    return _singleton_search(oracle, n, True, cfg, rng)


def decide_loopless(oracle, n: Optional[int] = None, cfg: AmplificationConfig = DEFAULT_CONFIG, rng=None) -> DecisionResult:
    """Loopless iff no singleton is dependent; a loop is the witness."""
    return _singleton_search(oracle, n, False, cfg, rng)


def classical_decide_uniform(oracle, n: Optional[int] = None, early_exit: bool = False) -> DecisionResult:
    """Classical baseline: greedy rank, then query every r-set."""
    run = _Run(oracle, n)
    r = rank_of(run.counter, full_mask(run.n))
    witness = None
    for mask in ksubset_masks(run.n, r):
        if not run.counter.query(int(mask)) and witness is None:
            witness = int(mask)
            if early_exit:
                break
    return DecisionResult(int(witness is None), run.report(), witness)


def quantum_caps(algorithm: str, n: int, r: int, max_repeat: int = 5) -> int:
    """Hard caps on quantum queries used by the tests and the benchmark."""
    if algorithm == "uniform":
        return max_repeat * search_budget(math.comb(n, r))
    if algorithm == "paving":
        return 0 if r <= 1 else max_repeat * search_budget(math.comb(n, r - 1))
    if algorithm == "girth":
        probes = math.ceil(math.log2(r + 1)) if r >= 1 else 0
        return probes * max_repeat * search_budget(math.comb(n, n // 2))
    if algorithm in ("trivial", "loopless"):
        return max_repeat * search_budget(n)
    raise ParameterError(f"unknown algorithm {algorithm!r}")
