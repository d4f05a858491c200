"""Exhaustive reference computations: rank, closure, circuits, bases, flats,
hyperplanes, girth, Eulerian partition, and the property classifiers used
as ground truth for the query algorithms.
"""

from __future__ import annotations

import math

import numpy as np

from .oracle import CountingOracle, IndependenceOracle
from .subsets import CapacityError, all_masks, elements_of, full_mask, popcounts

INFINITY = math.inf

RANK_MAX_N = 20
ENUM_MAX_N = 16
EULERIAN_MAX_N = 12


def _ask(oracle, mask: int) -> bool:
    if isinstance(oracle, CountingOracle):
        return oracle.query(mask)
    return bool(oracle(mask))


def _ground(oracle, n):
    if n is None:
        n = oracle.n
    return n


def _cap(n: int, cap: int, what: str) -> None:
    if n > cap:
        raise CapacityError(f"{what} is limited to n <= {cap}, got {n}")


def rank_of(oracle, mask: int) -> int:
    """Greedy rank of a subset; exact whenever the oracle is a matroid."""
    kept = 0
    for e in elements_of(mask):
        if _ask(oracle, kept | (1 << e)):
            kept |= 1 << e
    return kept.bit_count()


def rank_of_enumerated(oracle, mask: int) -> int:
    """Largest independent subset by scanning every submask; valid for any set system."""
    best = 0
    sub = mask
    while True:
        if sub.bit_count() > best and _ask(oracle, sub):
            best = sub.bit_count()
        if sub == 0:
            return best
        sub = (sub - 1) & mask


def closure(oracle, mask: int, n: int | None = None) -> int:
    n = _ground(oracle, n)
    _cap(n, RANK_MAX_N, "closure")
    base = rank_of(oracle, mask)
    out = mask
    for e in range(n):
        if not mask >> e & 1 and rank_of(oracle, mask | (1 << e)) == base:
            out |= 1 << e
    return out


def tabulate(oracle: IndependenceOracle, n: int | None = None) -> np.ndarray:
    n = _ground(oracle, n)
    _cap(n, ENUM_MAX_N, "subset enumeration")
    if isinstance(oracle, IndependenceOracle):
        return oracle.evaluate_many(all_masks(n))
    return np.fromiter((bool(oracle(m)) for m in range(1 << n)), dtype=bool, count=1 << n)


def rank_table(indep: np.ndarray, n: int) -> np.ndarray:
    """rank[S] for every mask: subset-max transform of |S|·[S independent]."""
    out = np.where(indep, popcounts(all_masks(n)), 0).astype(np.int8)
    for e in range(n):
        view = out.reshape(-1, 2, 1 << e)
        np.maximum(view[:, 1, :], view[:, 0, :], out=view[:, 1, :])
    return out


def _masks(selector: np.ndarray) -> list[int]:
    return [int(m) for m in np.flatnonzero(selector)]


def circuits(oracle, n: int | None = None) -> list[int]:
    n = _ground(oracle, n)
    indep = tabulate(oracle, n)
    minimal = ~indep
    idx = np.arange(1 << n)
    for e in range(n):
        has = ((idx >> e) & 1) == 1
        minimal &= ~has | indep[idx ^ (1 << e)]
    return _masks(minimal)


def bases(oracle, n: int | None = None) -> list[int]:
    n = _ground(oracle, n)
    indep = tabulate(oracle, n)
    sizes = popcounts(all_masks(n))
    top = sizes[indep].max()
    return _masks(indep & (sizes == top))


def _flat_selector(indep: np.ndarray, n: int) -> tuple[np.ndarray, np.ndarray]:
    rank = rank_table(indep, n)
    idx = np.arange(1 << n)
    closed = np.ones(1 << n, dtype=bool)
    for e in range(n):
        missing = ((idx >> e) & 1) == 0
        closed &= ~missing | (rank[idx | (1 << e)] > rank)
    return closed, rank


def flats(oracle, n: int | None = None) -> list[int]:
    n = _ground(oracle, n)
    closed, _ = _flat_selector(tabulate(oracle, n), n)
    return _masks(closed)


def hyperplanes(oracle, n: int | None = None) -> list[int]:
    n = _ground(oracle, n)
    closed, rank = _flat_selector(tabulate(oracle, n), n)
    return _masks(closed & (rank == rank[-1] - 1))


def largest_hyperplane_size(oracle, n: int | None = None) -> int:
    hs = hyperplanes(oracle, n)
    return max((h.bit_count() for h in hs), default=0)


def girth_bruteforce(oracle, n: int | None = None):
    cs = circuits(oracle, n)
    if not cs:
        return INFINITY
    return min(c.bit_count() for c in cs)


def exact_partition(circuit_masks: list[int], n: int) -> list[int] | None:
    """Partition {0..n-1} into pairwise disjoint members, or None.

    Branches on the lowest uncovered element; a usable circuit must have that
    element as its minimum since everything below it is already covered.
    """
    by_low: list[list[int]] = [[] for _ in range(n)]
    for c in circuit_masks:
        if c:
            by_low[(c & -c).bit_length() - 1].append(c)
    target = full_mask(n)
    chosen: list[int] = []

    def solve(covered: int) -> bool:
        if covered == target:
            return True
        low = (~covered & (covered + 1)).bit_length() - 1
        for c in by_low[low]:
            if not c & covered:
                chosen.append(c)
                if solve(covered | c):
                    return True
                chosen.pop()
        return False

    return chosen if solve(0) else None


def eulerian_partition(oracle, n: int | None = None) -> list[int] | None:
    n = _ground(oracle, n)
    _cap(n, EULERIAN_MAX_N, "Eulerian test")
    return exact_partition(circuits(oracle, n), n)


def is_eulerian_bruteforce(oracle, n: int | None = None) -> bool:
    return eulerian_partition(oracle, n) is not None


def loops(oracle, n: int | None = None) -> list[int]:
    n = _ground(oracle, n)
    return [e for e in range(n) if not oracle(1 << e)]


def is_trivial_bruteforce(oracle, n: int | None = None) -> bool:
    n = _ground(oracle, n)
    return len(loops(oracle, n)) == n


def is_loopless_bruteforce(oracle, n: int | None = None) -> bool:
    return not loops(oracle, n)


def is_uniform_bruteforce(oracle, n: int | None = None) -> bool:
    """Uniform iff every set of size at most the rank is independent."""
    n = _ground(oracle, n)
    indep = tabulate(oracle, n)
    sizes = popcounts(all_masks(n))
    r = sizes[indep].max()
    return bool(np.all(indep[sizes <= r]))


def is_paving_bruteforce(oracle, n: int | None = None) -> bool:
    """Paving iff every circuit has at least rank-many elements."""
    n = _ground(oracle, n)
    indep = tabulate(oracle, n)
    r = int(popcounts(all_masks(n))[indep].max())
    g = girth_bruteforce(oracle, n)
    return g >= r
