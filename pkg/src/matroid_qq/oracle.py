"""Independence oracles and the query-counting wrapper used by every algorithm."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from .subsets import ParameterError, check_mask, ksubset_masks


class IndependenceOracle:
    """Pure map from a subset mask to independent (True) / dependent (False).

    ``batch`` evaluates a uint64 mask array at once. It is used by the search
    simulator and the exhaustive routines, never by counted algorithm steps.
    """

    def __init__(
        self,
        n: int,
        fn: Callable[[int], bool],
        batch: Optional[Callable[[np.ndarray], np.ndarray]] = None,
    ):
        self.n = n
        self._fn = fn
        self._batch = batch
        self._marked: dict[tuple[int, bool], np.ndarray] = {}

    def __call__(self, mask: int) -> bool:
        return bool(self._fn(mask))

    def evaluate_many(self, masks: np.ndarray) -> np.ndarray:
        if self._batch is not None:
            return np.asarray(self._batch(masks), dtype=bool)
        return np.fromiter((self._fn(int(m)) for m in masks), dtype=bool, count=len(masks))

    def matching_ksubsets(self, k: int, independent: bool) -> np.ndarray:
        """Colex indices of the k-subsets whose answer equals ``independent`` (cached)."""
        key = (k, independent)
        hit = self._marked.get(key)
        if hit is None:
            answers = self.evaluate_many(ksubset_masks(self.n, k))
            hit = np.flatnonzero(answers == independent)
            hit.setflags(write=False)
            self._marked[key] = hit
        return hit


@dataclass(frozen=True)
class QueryReport:
    classical: int
    quantum: int

    @property
    def total(self) -> int:
        return self.classical + self.quantum

    def as_dict(self) -> dict:
        return {"classical": self.classical, "quantum": self.quantum, "total": self.total}


@dataclass
class CountingOracle:
    """Wraps an oracle and tallies classical queries and quantum (Grover) queries.

    One instance belongs to one run; it is not shared across threads.
    """

    inner: IndependenceOracle
    classical: int = field(default=0)
    quantum: int = field(default=0)

    @property
    def n(self) -> int:
        return self.inner.n

    def query(self, mask: int) -> bool:
        check_mask(mask, self.inner.n)
        self.classical += 1
        return self.inner(mask)

    def charge_quantum(self, amount: int) -> None:
        if amount < 0:
            raise ParameterError(f"cannot charge a negative number of queries ({amount})")
        self.quantum += amount

    def report(self) -> QueryReport:
        return QueryReport(self.classical, self.quantum)

    def reset(self) -> None:
        self.classical = 0
        self.quantum = 0


def counting(oracle) -> CountingOracle:
    """Return ``oracle`` if it already counts, otherwise wrap it."""
    if isinstance(oracle, CountingOracle):
        return oracle
    return CountingOracle(oracle)
