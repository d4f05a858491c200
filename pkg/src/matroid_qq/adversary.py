"""Adversary relations between the uniform matroid and its near-uniform
perturbations, with exact (m, m', l, l') counts and the resulting bounds.

Inputs are colex-ordered base indicator strings of length C(n, r).
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

import numpy as np

from .enumeration import is_eulerian_bruteforce, is_paving_bruteforce, is_uniform_bruteforce
from .matroid import MatroidSpec, make_basis_family, oracle_of
from .subsets import CapacityError, ParameterError, colex_rank, full_mask, mask_of

RELATION_MAX_N = 8


class RelationKind(str, enum.Enum):
    UNIFORM_VS_DELETED1 = "uniformVsDeleted1"
    EULERIAN_EVEN = "eulerianEven"
    PAVING_VS_COUNTER = "pavingVsCounter"

    def __str__(self) -> str:
        return self.value


def default_rank(kind: RelationKind, n: int) -> int:
    kind = RelationKind(kind)
    if kind is RelationKind.PAVING_VS_COUNTER:
        return n // 2 + 1
    return n // 2


@dataclass(frozen=True, eq=False)
class RelationSpec:
    """X holds the single uniform input; Y one row per distinct perturbed matroid.
    The relation is all of X x Y.
    """

    kind: RelationKind
    n: int
    r: int
    X: np.ndarray
    Y: np.ndarray
    y_sets: tuple[int, ...]

    def decode(self, row: np.ndarray) -> MatroidSpec:
        return make_basis_family(self.n, self.r, "".join("1" if b else "0" for b in row))


@dataclass(frozen=True)
class AdversaryParams:
    m: int
    m_prime: int
    l: int
    l_prime: int

    @property
    def ratio(self) -> Fraction:
        return Fraction(self.m * self.m_prime, self.l * self.l_prime)

    @property
    def bound(self) -> float:
        return math.sqrt(self.ratio)


def _check_params(kind: RelationKind, n: int, r: int) -> None:
    if n > RELATION_MAX_N:
        raise CapacityError(f"relations are materialized only for n <= {RELATION_MAX_N}")
    if kind is RelationKind.UNIFORM_VS_DELETED1 and not 1 <= r < n:
        raise ParameterError(f"uniformVsDeleted1 needs 1 <= r < n, got r={r}, n={n}")
    if kind is RelationKind.EULERIAN_EVEN and (n % 2 or n < 4 or r != n // 2):
        raise ParameterError(f"eulerianEven needs even n >= 4 and r = n/2, got n={n}, r={r}")
    if kind is RelationKind.PAVING_VS_COUNTER and not 2 <= r <= n - 1:
        raise ParameterError(f"pavingVsCounter needs 2 <= r <= n-1, got r={r}, n={n}")


def build_relation(kind, n: int, r: int | None = None) -> RelationSpec:
    kind = RelationKind(kind)
    r = default_rank(kind, n) if r is None else r
    _check_params(kind, n, r)
    width = math.comb(n, r)
    X = np.ones((1, width), dtype=np.uint8)

    rows: dict[tuple[int, ...], int] = {}
    if kind is RelationKind.PAVING_VS_COUNTER:
        for combo in combinations(range(n), r - 1):
            a = mask_of(combo)
            zeros = tuple(sorted(colex_rank(a | (1 << e), r) for e in range(n) if not a >> e & 1))
            rows.setdefault(zeros, a)
    else:
        for combo in combinations(range(n), r):
            a = mask_of(combo)
            excluded = [a]
            if kind is RelationKind.EULERIAN_EVEN:
                excluded.append(full_mask(n) ^ a)
            zeros = tuple(sorted(colex_rank(s, r) for s in excluded))
            # A and V - A give the same matroid; keep the first
            rows.setdefault(zeros, a)

    Y = np.ones((len(rows), width), dtype=np.uint8)
    for i, zeros in enumerate(rows):
        Y[i, list(zeros)] = 0
    return RelationSpec(kind, n, r, X, Y, tuple(rows.values()))


def relation_params(rel: RelationSpec) -> AdversaryParams:
    """Exact min/max counts over the full relation X x Y."""
    differs = rel.X[:, None, :] != rel.Y[None, :, :]  # (|X|, |Y|, width)
    m = len(rel.Y)  # every x is related to every y
    m_prime = len(rel.X)
    l = int(differs.sum(axis=1).max())
    l_prime = int(differs.sum(axis=0).max())
    return AdversaryParams(m, m_prime, l, l_prime)


def theoretical_ratio(kind, n: int) -> Fraction:
    """The squared lower bound the constructions predict, at the default rank for the kind."""
    kind = RelationKind(kind)
    if n < 2:
        raise ParameterError("need n >= 2")
    if kind is RelationKind.UNIFORM_VS_DELETED1:
        return Fraction(math.comb(n, n // 2))
    if kind is RelationKind.EULERIAN_EVEN:
        if n % 2:
            raise ParameterError("eulerianEven needs even n")
        return Fraction(math.comb(n, n // 2), 2)
    r = default_rank(kind, n)
    return Fraction(math.comb(n, r - 1), r)


def theoretical_bound(kind, n: int) -> float:
    return math.sqrt(theoretical_ratio(kind, n))


def max_shared_zeros(rel: RelationSpec) -> int:
    """Largest number of positions where two distinct Y rows are both 0."""
    zeros = (rel.Y == 0).astype(np.int32)
    overlap = zeros @ zeros.T
    np.fill_diagonal(overlap, 0)
    return int(overlap.max()) if len(rel.Y) > 1 else 0


_CLASSIFIERS = {
    RelationKind.UNIFORM_VS_DELETED1: is_uniform_bruteforce,
    RelationKind.EULERIAN_EVEN: is_eulerian_bruteforce,
    RelationKind.PAVING_VS_COUNTER: is_paving_bruteforce,
}


def distinguishes(rel: RelationSpec) -> bool:
    """Whether the target property separates every x from every y."""
    classify = _CLASSIFIERS[rel.kind]
    xs = {classify(oracle_of(rel.decode(row))) for row in rel.X}
    ys = {classify(oracle_of(rel.decode(row))) for row in rel.Y}
    return len(xs) == 1 and len(ys) == 1 and xs != ys


@dataclass(frozen=True)
class BoundRow:
    kind: RelationKind
    n: int
    r: int
    params: AdversaryParams | None
    closed_form: Fraction

    @property
    def match(self) -> bool | None:
        if self.params is None:
            return None
        return self.params.ratio == self.closed_form

    def as_dict(self) -> dict:
        out = {"kind": str(self.kind), "n": self.n, "r": self.r}
        if self.params is not None:
            p = self.params
            out.update(m=p.m, m_prime=p.m_prime, l=p.l, l_prime=p.l_prime,
                       bound_sq=str(p.ratio), bound=p.bound)
        out.update(closed_form_sq=str(self.closed_form),
                   closed_form=math.sqrt(self.closed_form), match=self.match)
        return out


def bound_row(kind, n: int) -> BoundRow:
    kind = RelationKind(kind)
    r = default_rank(kind, n)
    params = relation_params(build_relation(kind, n, r)) if n <= RELATION_MAX_N else None
    return BoundRow(kind, n, r, params, theoretical_ratio(kind, n))
