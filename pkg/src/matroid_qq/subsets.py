"""Subset masks over a ground set {0, ..., n-1} and colex ranking of k-subsets.

Element ``i`` is bit ``i`` of the mask. Among subsets of one fixed size,
colex order coincides with increasing integer order of the masks, so the
colex index of a k-subset is its position among all popcount-k masks.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations
from math import comb

import numpy as np

MAX_GROUND = 64


class ParameterError(ValueError):
    """Raised for arguments outside an operation's declared domain."""


class CapacityError(ValueError):
    """Raised when a request exceeds a size cap of an exhaustive routine."""


def popcount(mask: int) -> int:
    return mask.bit_count()


def full_mask(n: int) -> int:
    return (1 << n) - 1


def check_mask(mask: int, n: int) -> int:
    if mask < 0 or mask >> n:
        raise ParameterError(f"mask {mask:#x} has bits outside a ground set of size {n}")
    return mask


def mask_of(elements) -> int:
    mask = 0
    for e in elements:
        if e < 0:
            raise ParameterError(f"negative element {e}")
        mask |= 1 << e
    return mask


def elements_of(mask: int) -> list[int]:
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


def format_mask(mask: int) -> str:
    """Comma-separated element list, the form used in files and reports."""
    return ",".join(str(e) for e in elements_of(mask))


def parse_elements(text: str) -> int:
    text = text.strip()
    if not text:
        return 0
    try:
        return mask_of(int(tok) for tok in text.split(","))
    except ValueError as exc:
        raise ParameterError(f"bad element list {text!r}") from exc


def colex_rank(mask: int, r: int) -> int:
    """Index of an r-subset in colex order: sum of C(c_i, i) over its sorted elements."""
    if popcount(mask) != r:
        raise ParameterError(f"subset {format_mask(mask)!r} does not have {r} elements")
    return sum(comb(c, i) for i, c in enumerate(elements_of(mask), start=1))


def colex_unrank(index: int, n: int, r: int) -> int:
    if not 0 <= r <= n:
        raise ParameterError(f"need 0 <= r <= n, got r={r}, n={n}")
    total = comb(n, r)
    if not 0 <= index < total:
        raise ParameterError(f"index {index} outside [0, {total})")
    mask = 0
    c = n - 1
    for i in range(r, 0, -1):
        # largest c with C(c, i) <= index
        while comb(c, i) > index:
            c -= 1
        mask |= 1 << c
        index -= comb(c, i)
        c -= 1
    return mask


@lru_cache(maxsize=64)
def _ksubset_table(n: int, k: int) -> np.ndarray:
    masks = np.fromiter(
        (sum(1 << e for e in combo) for combo in combinations(range(n), k)),
        dtype=np.uint64,
        count=comb(n, k),
    )
    masks.sort()
    masks.setflags(write=False)
    return masks


def ksubset_masks(n: int, k: int) -> np.ndarray:
    """All k-subsets of an n-set as uint64 masks, position = colex index."""
    if not 0 <= k <= n:
        raise ParameterError(f"need 0 <= k <= n, got k={k}, n={n}")
    if n > MAX_GROUND:
        raise CapacityError(f"ground size {n} exceeds {MAX_GROUND}")
    if comb(n, k) > 1 << 24:
        raise CapacityError(f"C({n},{k}) subsets is too many to materialize")
    return _ksubset_table(n, k)


def all_masks(n: int) -> np.ndarray:
    return np.arange(1 << n, dtype=np.uint64)


def popcounts(masks: np.ndarray) -> np.ndarray:
    return np.bitwise_count(masks.astype(np.uint64, copy=False))
