"""Simulated Grover search over an indexed search space.

The simulator evolves amplitudes over search indices, not qubits. Its only
contact with the problem is the set of marked indices, which it computes
without charging queries; the charges are made explicitly: one quantum query
per Grover iteration, one classical query per candidate verification.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from .oracle import CountingOracle, IndependenceOracle
from .subsets import CapacityError, ParameterError, colex_unrank

DENSE_MAX_N = 1 << 20
SCHEDULE_GROWTH = 6 / 5
ROUND_CAP_FACTOR = 10


def grover_success_probability(N: int, k: int, j: int) -> float:
    """Probability of measuring a marked index after j iterations from the uniform state."""
    if N < 1 or not 0 <= k <= N or j < 0:
        raise ParameterError(f"need N >= 1, 0 <= k <= N, j >= 0; got N={N}, k={k}, j={j}")
    if k == 0:
        return 0.0
    if k == N:
        return 1.0
    theta = math.asin(math.sqrt(k / N))
    return math.sin((2 * j + 1) * theta) ** 2


def search_budget(N: int) -> int:
    """3 * ceil(sqrt(N)), the per-invocation iteration cap."""
    return 3 * (math.isqrt(N - 1) + 1)


@dataclass(eq=False)
class SearchSpace:
    """Indices ``0 .. size-1`` with a pure marked-test.

    ``verify`` is the counted check of a candidate; by default it charges one
    classical query and evaluates ``predicate``.
    """

    size: int
    predicate: Callable[[int], bool]
    marked_provider: Optional[Callable[[], np.ndarray]] = None
    _marked: Optional[np.ndarray] = field(default=None, init=False, repr=False)

    def __post_init__(self):
        if self.size < 1:
            raise ParameterError(f"search space must be nonempty, got size {self.size}")

    def marked(self) -> np.ndarray:
        if self._marked is None:
            if self.marked_provider is not None:
                self._marked = np.asarray(self.marked_provider(), dtype=np.int64)
            else:
                self._marked = np.flatnonzero(
                    np.fromiter((bool(self.predicate(i)) for i in range(self.size)), bool, self.size)
                )
        return self._marked

    def verify(self, index: int, oracle: CountingOracle) -> bool:
        oracle.classical += 1
        return bool(self.predicate(index))


class KSubsetSpace(SearchSpace):
    """k-subsets of the ground set in colex order, marked when the oracle answer equals ``want``."""

    def __init__(self, oracle: IndependenceOracle, k: int, want: bool):
        self.oracle = oracle
        self.k = k
        self.want = want
        n = oracle.n
        super().__init__(
            math.comb(n, k),
            lambda i: oracle(colex_unrank(i, n, k)) == want,
            lambda: oracle.matching_ksubsets(k, want),
        )

    def mask(self, index: int) -> int:
        return colex_unrank(index, self.oracle.n, self.k)

    def verify(self, index: int, oracle: CountingOracle) -> bool:
        return oracle.query(self.mask(index)) == self.want


@dataclass(frozen=True)
class GroverOutcome:
    found: Optional[int]
    quantum_queries: int
    classical_verifications: int


def _dense_distribution(N: int, marked: np.ndarray, j: int) -> np.ndarray:
    psi = np.full(N, 1.0 / math.sqrt(N))
    for _ in range(j):
        psi[marked] *= -1.0
        psi = 2.0 * psi.mean() - psi
    probs = psi * psi
    return probs / probs.sum()


def _rotation_sample(N: int, marked: np.ndarray, j: int, rng: np.random.Generator) -> int:
    k = len(marked)
    if k and rng.random() < grover_success_probability(N, k, j):
        return int(marked[rng.integers(k)])
    # t-th unmarked index: skip over the sorted marked indices below it
    t = int(rng.integers(N - k))
    return t + int(np.searchsorted(marked - np.arange(k), t, side="right"))


def grover_exact_sample(space: SearchSpace, j: int, rng: np.random.Generator, dense: bool | None = None) -> int:
    """Measure after j Grover iterations from the uniform superposition."""
    if j < 0:
        raise ParameterError(f"iteration count must be nonnegative, got {j}")
    N = space.size
    marked = space.marked()
    if dense is None:
        # j = 0 or an all/none-marked space leaves the state uniform
        dense = N <= DENSE_MAX_N and j > 0 and 0 < len(marked) < N
    elif dense and N > DENSE_MAX_N:
        raise CapacityError(f"dense simulation is limited to N <= {DENSE_MAX_N}")
    if N == 1:
        return 0
    if not dense:
        # the measured distribution depends only on (N, k, j) and is uniform
        # within the marked and within the unmarked indices
        return _rotation_sample(N, marked, j, rng)
    probs = _dense_distribution(N, marked, j)
    return int(rng.choice(N, p=probs))


def grover_search(space: SearchSpace, oracle: CountingOracle, rng: np.random.Generator) -> GroverOutcome:
    """Search with an unknown number of marked indices.

    Randomized schedule: m starts at 1; each round draws j uniformly from the
    integers below m, runs j iterations, measures and verifies; on failure
    m grows by 6/5 up to sqrt(N). Iterations are capped at 3*ceil(sqrt(N)).
    Zero-iteration rounds are free, so rounds get a separate safety cap; for
    N = 1 a single round settles the question.
    """
    N = space.size
    cap = search_budget(N)
    max_rounds = 1 if N == 1 else ROUND_CAP_FACTOR * cap
    m = 1.0
    used = rounds = 0
    while used < cap and rounds < max_rounds:
        j = min(int(rng.integers(math.ceil(m))), cap - used)
        index = grover_exact_sample(space, j, rng)
        oracle.charge_quantum(j)
        used += j
        rounds += 1
        if space.verify(index, oracle):
            return GroverOutcome(index, used, rounds)
        m = min(SCHEDULE_GROWTH * m, math.sqrt(N))
    return GroverOutcome(None, used, rounds)
