"""Matroid descriptions, the explicit constructions, their oracles and the text file format."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from math import comb
from pathlib import Path
from typing import Optional

import numpy as np

from .oracle import IndependenceOracle
from .subsets import (
    CapacityError,
    ParameterError,
    all_masks,
    check_mask,
    format_mask,
    full_mask,
    ksubset_masks,
    parse_elements,
    popcount,
    popcounts,
)

# closed-form kinds never materialize 2^n tables, so they go well past 24
CLOSED_FORM_MAX_N = 64
TABLE_MAX_N = 20
AXIOM_MAX_N = 12


class Kind(str, enum.Enum):
    UNIFORM = "uniform"
    BASIS_FAMILY = "basisFamily"
    SUBSET_FAMILY = "subsetFamily"
    DELETED_BASIS_1 = "deletedBasis1"
    DELETED_BASIS_2 = "deletedBasis2"
    PAVING_COUNTER = "pavingCounter"

    def __str__(self) -> str:
        return self.value


CLOSED_FORM = {Kind.UNIFORM, Kind.DELETED_BASIS_1, Kind.DELETED_BASIS_2, Kind.PAVING_COUNTER}
EXCLUDED_SET_KINDS = {Kind.DELETED_BASIS_1, Kind.DELETED_BASIS_2, Kind.PAVING_COUNTER}


@dataclass(frozen=True)
class MatroidSpec:
    """Serializable description of a matroid on ground set {0, ..., n-1}.

    ``bits`` is the 0/1 payload of the table kinds (colex-indexed bases for
    basisFamily, mask-indexed independent sets for subsetFamily).
    ``a_mask`` is the excluded set of the three near-uniform constructions.
    """

    n: int
    kind: Kind
    r: Optional[int] = None
    a_mask: Optional[int] = None
    bits: Optional[str] = None

    def __post_init__(self):
        object.__setattr__(self, "kind", Kind(self.kind))
        n, r, kind = self.n, self.r, self.kind
        if n < 0:
            raise ParameterError(f"ground size must be nonnegative, got {n}")
        cap = CLOSED_FORM_MAX_N if kind in CLOSED_FORM else TABLE_MAX_N
        if n > cap:
            raise CapacityError(f"{kind} matroids are limited to n <= {cap}, got {n}")

        if kind is Kind.SUBSET_FAMILY:
            if r is not None:
                raise ParameterError("subsetFamily takes no rank parameter")
        elif r is None or not 0 <= r <= n:
            raise ParameterError(f"{kind} needs 0 <= r <= n, got r={r}, n={n}")

        if kind in EXCLUDED_SET_KINDS:
            if self.a_mask is None:
                raise ParameterError(f"{kind} needs an excluded set A")
            check_mask(self.a_mask, n)
        elif self.a_mask is not None:
            raise ParameterError(f"{kind} takes no A parameter")

        if kind in (Kind.BASIS_FAMILY, Kind.SUBSET_FAMILY):
            want = comb(n, r) if kind is Kind.BASIS_FAMILY else 1 << n
            if self.bits is None or len(self.bits) != want:
                got = None if self.bits is None else len(self.bits)
                raise ParameterError(f"{kind} payload must have {want} bits, got {got}")
            if set(self.bits) - {"0", "1"}:
                raise ParameterError("payload must be a 0/1 string")
        elif self.bits is not None:
            raise ParameterError(f"{kind} takes no payload")

        a_size = None if self.a_mask is None else popcount(self.a_mask)
        if kind is Kind.DELETED_BASIS_1:
            if a_size != r:
                raise ParameterError(f"|A| must equal r={r}, got {a_size}")
            if not 1 <= r < n:
                raise ParameterError("deletedBasis1 has no bases unless 1 <= r < n")
        elif kind is Kind.DELETED_BASIS_2:
            if n % 2 or r != n // 2:
                raise ParameterError("deletedBasis2 needs n even and r = n/2")
            if a_size != r:
                raise ParameterError(f"|A| must equal r={r}, got {a_size}")
            if n < 4:
                raise ParameterError("deletedBasis2 has no bases for n < 4")
        elif kind is Kind.PAVING_COUNTER:
            if a_size != r - 1:
                raise ParameterError(f"|A| must equal r-1={r - 1}, got {a_size}")
            if r < 1:
                raise ParameterError("pavingCounter needs r >= 1")
            # J_r - J_A is empty for r = 1 (A empty) and for r = n (V is the only r-set)
            if r == 1 or r == n:
                raise ParameterError("pavingCounter construction has no bases for these parameters")

    def with_bits(self, kind: Kind, r: Optional[int], bits: str) -> "MatroidSpec":
        return MatroidSpec(self.n, kind, r=r, bits=bits)


def make_uniform(n: int, r: int) -> MatroidSpec:
    return MatroidSpec(n, Kind.UNIFORM, r=r)


def make_deleted_basis(n: int, r: int, a_mask: int, variant: int = 1) -> MatroidSpec:
    """All r-sets except A (variant 1) or except A and its complement (variant 2)."""
    if variant not in (1, 2):
        raise ParameterError(f"variant must be 1 or 2, got {variant}")
    kind = Kind.DELETED_BASIS_1 if variant == 1 else Kind.DELETED_BASIS_2
    return MatroidSpec(n, kind, r=r, a_mask=a_mask)


def make_paving_counterexample(n: int, r: int, a_mask: int) -> MatroidSpec:
    """Bases are the r-sets that do not contain the (r-1)-set A."""
    return MatroidSpec(n, Kind.PAVING_COUNTER, r=r, a_mask=a_mask)


def make_basis_family(n: int, r: int, bits: str) -> MatroidSpec:
    return MatroidSpec(n, Kind.BASIS_FAMILY, r=r, bits=bits)


def make_subset_family(n: int, bits: str) -> MatroidSpec:
    return MatroidSpec(n, Kind.SUBSET_FAMILY, bits=bits)


def _bits_array(bits: str) -> np.ndarray:
    return np.frombuffer(bits.encode("ascii"), dtype=np.uint8) == ord("1")


def superset_or(table: np.ndarray, n: int) -> np.ndarray:
    """out[S] = OR of table[T] over all T containing S."""
    out = table.copy()
    for e in range(n):
        view = out.reshape(-1, 2, 1 << e)
        view[:, 0, :] |= view[:, 1, :]
    return out


def independence_table(spec: MatroidSpec) -> np.ndarray:
    """Independence answer for every mask 0 .. 2^n - 1."""
    if spec.n > TABLE_MAX_N:
        raise CapacityError(f"cannot tabulate 2^{spec.n} subsets")
    if spec.kind is Kind.SUBSET_FAMILY:
        return _bits_array(spec.bits)
    if spec.kind is Kind.BASIS_FAMILY:
        bases = np.zeros(1 << spec.n, dtype=bool)
        bases[ksubset_masks(spec.n, spec.r)[_bits_array(spec.bits)].astype(np.int64)] = True
        return superset_or(bases, spec.n)
    return oracle_of(spec).evaluate_many(all_masks(spec.n))


def oracle_of(spec: MatroidSpec) -> IndependenceOracle:
    n, r, kind = spec.n, spec.r, spec.kind

    if kind is Kind.UNIFORM:
        return IndependenceOracle(
            n, lambda s: s.bit_count() <= r, lambda ms: popcounts(ms) <= r
        )

    if kind in (Kind.DELETED_BASIS_1, Kind.DELETED_BASIS_2):
        excluded = [spec.a_mask]
        if kind is Kind.DELETED_BASIS_2:
            excluded.append(full_mask(n) ^ spec.a_mask)

        def fn(s: int) -> bool:
            size = s.bit_count()
            return size < r or (size == r and s not in excluded)

        def batch(ms: np.ndarray) -> np.ndarray:
            sizes = popcounts(ms)
            hit = np.isin(ms.astype(np.uint64), np.array(excluded, dtype=np.uint64))
            return (sizes < r) | ((sizes == r) & ~hit)

        return IndependenceOracle(n, fn, batch)

    if kind is Kind.PAVING_COUNTER:
        a = spec.a_mask
        a64 = np.uint64(a)
        # with 2 <= r <= n-1, S is inside some base iff |S| <= r and S does not contain A
        return IndependenceOracle(
            n,
            lambda s: s.bit_count() <= r and (s & a) != a,
            lambda ms: (popcounts(ms) <= r) & ((ms.astype(np.uint64) & a64) != a64),
        )

    table = independence_table(spec)
    table.setflags(write=False)
    return IndependenceOracle(
        n, lambda s: bool(table[s]), lambda ms: table[np.asarray(ms, dtype=np.int64)]
    )


def subset_max(values: np.ndarray, n: int) -> np.ndarray:
    """out[S] = max of values[T] over all T contained in S."""
    out = values.copy()
    for e in range(n):
        view = out.reshape(-1, 2, 1 << e)
        np.maximum(view[:, 1, :], view[:, 0, :], out=view[:, 1, :])
    return out


def check_axioms_table(indep: np.ndarray, n: int) -> bool:
    """Exact I0/I1/I2 check on a full 2^n independence table.

    I2 is tested in the form: for every independent A, no independent B with
    |B| > |A| avoids ext(A) = {v not in A : A + v independent}.
    """
    if not indep[0]:
        return False
    masks = all_masks(n)
    for e in range(n):
        view = indep.reshape(-1, 2, 1 << e)
        if np.any(view[:, 1, :] & ~view[:, 0, :]):
            return False
    sizes = popcounts(masks).astype(np.int16)
    rank = subset_max(np.where(indep, sizes, 0).astype(np.int16), n)
    ext = np.zeros(1 << n, dtype=np.uint64)
    for e in range(n):
        bit = np.uint64(1 << e)
        without = (masks & bit) == 0
        grows = without & indep[(masks | bit).astype(np.int64)]
        ext[grows] |= bit
    comp = (np.uint64(full_mask(n)) & ~ext).astype(np.int64)
    return not np.any(indep & (rank[comp] > sizes))


def verify_axioms(spec: MatroidSpec) -> bool:
    if spec.n > AXIOM_MAX_N:
        raise CapacityError(f"axiom verification is limited to n <= {AXIOM_MAX_N}")
    return check_axioms_table(independence_table(spec), spec.n)


def matroid_rank(spec: MatroidSpec) -> int:
    if spec.r is not None:
        return spec.r
    table = independence_table(spec)
    return int(popcounts(all_masks(spec.n))[table].max())


def to_basis_family(spec: MatroidSpec) -> MatroidSpec:
    """Materialize the colex-ordered base indicator string."""
    r = matroid_rank(spec)
    answers = oracle_of(spec).evaluate_many(ksubset_masks(spec.n, r))
    bits = "".join("1" if a else "0" for a in answers)
    return make_basis_family(spec.n, r, bits)


def to_subset_family(spec: MatroidSpec) -> MatroidSpec:
    table = independence_table(spec)
    return make_subset_family(spec.n, "".join("1" if a else "0" for a in table))


def dumps(spec: MatroidSpec) -> str:
    head = [f"matroid n={spec.n}", f"kind={spec.kind.value}"]
    if spec.r is not None:
        head.append(f"r={spec.r}")
    if spec.a_mask is not None:
        head.append(f"A={format_mask(spec.a_mask)}")
    lines = [" ".join(head)]
    if spec.bits is not None:
        lines.append(spec.bits)
    return "\n".join(lines) + "\n"


def loads(text: str) -> MatroidSpec:
    lines = text.splitlines()
    if not lines:
        raise ParameterError("empty matroid file")
    tokens = lines[0].split()
    if not tokens or tokens[0] != "matroid":
        raise ParameterError("matroid file must start with 'matroid'")
    fields = {}
    for tok in tokens[1:]:
        key, sep, value = tok.partition("=")
        if not sep or key not in ("n", "kind", "r", "A") or key in fields:
            raise ParameterError(f"bad header field {tok!r}")
        fields[key] = value
    if "n" not in fields or "kind" not in fields:
        raise ParameterError("header needs n= and kind=")
    try:
        kind = Kind(fields["kind"])
        n = int(fields["n"])
        r = int(fields["r"]) if "r" in fields else None
    except ValueError as exc:
        raise ParameterError(str(exc)) from exc
    a_mask = parse_elements(fields["A"]) if "A" in fields else None
    bits = None
    if kind in (Kind.BASIS_FAMILY, Kind.SUBSET_FAMILY):
        if len(lines) < 2:
            raise ParameterError(f"{kind} file needs a payload line")
        bits = lines[1].strip()
    return MatroidSpec(n, kind, r=r, a_mask=a_mask, bits=bits)


def save(spec: MatroidSpec, path) -> None:
    Path(path).write_text(dumps(spec), encoding="utf-8", newline="\n")


def load(path) -> MatroidSpec:
    return loads(Path(path).read_text(encoding="utf-8"))
