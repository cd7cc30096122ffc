"""Multi-indices, the word sets A_nu, and exact / log-domain multinomials."""

from __future__ import annotations

import math
import os
from functools import lru_cache
from typing import Iterator, Sequence

import numpy as np

MultiIndex = tuple[int, ...]
Word = tuple[int, ...]

WORD_ENUM_CAP = 12
DEFAULT_SYMBOLIC_CAP = 12
# largest index count materialised for a single degree slice
MAX_SLICE_SIZE = 20_000_000


class DegreeCapError(ValueError):
    """A brute-force or symbolic degree cap was exceeded."""


def symbolic_degree_cap() -> int:
    """Symbolic expansion cap; ``HYPERRADIUS_MAX_DEGREE`` raises it (unsafe: 2**n growth)."""
    raw = os.environ.get("HYPERRADIUS_MAX_DEGREE")
    if raw is None:
        return DEFAULT_SYMBOLIC_CAP
    try:
        return max(DEFAULT_SYMBOLIC_CAP, int(raw))
    except ValueError:
        raise ValueError(f"HYPERRADIUS_MAX_DEGREE must be an integer, got {raw!r}") from None


def degree(nu: Sequence[int]) -> int:
    return sum(nu)


def _check_index(nu: Sequence[int]) -> None:
    if any(p < 0 for p in nu):
        raise ValueError(f"multi-index parts must be non-negative: {tuple(nu)}")


def enumerate_degree(dim: int, n: int) -> list[MultiIndex]:
    """All multi-indices of length ``dim`` and degree ``n``.

    Order is lexicographic descending, so (n, 0, ..., 0) comes first.
    """
    if n < 0:
        raise ValueError("degree must be non-negative")
    if dim < 1:
        raise ValueError("dim must be positive")
    return list(_compositions(dim, n))


def _compositions(dim: int, n: int) -> Iterator[MultiIndex]:
    if dim == 1:
        yield (n,)
        return
    for first in range(n, -1, -1):
        for rest in _compositions(dim - 1, n - first):
            yield (first,) + rest


def count_degree(dim: int, n: int) -> int:
    return math.comb(n + dim - 1, dim - 1)


@lru_cache(maxsize=64)
def degree_array(dim: int, n: int) -> np.ndarray:
    """``enumerate_degree`` as a read-only (count, dim) int64 array, same order."""
    size = count_degree(dim, n)
    if size > MAX_SLICE_SIZE:
        raise DegreeCapError(
            f"degree {n} in dimension {dim} has {size} multi-indices (limit {MAX_SLICE_SIZE})"
        )
    # grow one coordinate at a time; each row with remainder R expands into
    # values R, R-1, ..., 0 for the next coordinate
    prefix = np.zeros((1, 0), dtype=np.int64)
    remain = np.array([n], dtype=np.int64)
    for _ in range(dim - 1):
        reps = remain + 1
        starts = np.repeat(np.cumsum(reps) - reps, reps)
        offset = np.arange(reps.sum()) - starts
        rem = np.repeat(remain, reps)
        value = rem - offset
        prefix = np.column_stack([np.repeat(prefix, reps, axis=0), value])
        remain = rem - value
    out = np.column_stack([prefix, remain]).astype(np.int64)
    out.flags.writeable = False
    return out


def multinomial_exact(nu: Sequence[int]) -> int:
    """n! / prod(nu_s!) as an exact integer."""
    _check_index(nu)
    result, running = 1, 0
    for part in nu:
        running += part
        result *= math.comb(running, part)
    return result


def multinomial_log(nu: Sequence[int]) -> float:
    _check_index(nu)
    return math.lgamma(sum(nu) + 1) - sum(math.lgamma(p + 1) for p in nu)


def multinomial_log_array(nus: np.ndarray) -> np.ndarray:
    """Row-wise log multinomial of a (count, dim) index array."""
    from scipy.special import gammaln

    nus = np.asarray(nus)
    n = nus.sum(axis=1)
    return gammaln(n + 1.0) - gammaln(nus + 1.0).sum(axis=1)


def enumerate_words(nu: Sequence[int]) -> list[Word]:
    """Every distinct word with nu[s-1] copies of letter s, in lexicographic order."""
    _check_index(nu)
    n = degree(nu)
    if n > WORD_ENUM_CAP:
        raise DegreeCapError(f"word enumeration limited to degree {WORD_ENUM_CAP}, got {n}")
    counts = list(nu)
    words: list[Word] = []
    prefix: list[int] = []

    def rec():
        if len(prefix) == n:
            words.append(tuple(prefix))
            return
        for s, left in enumerate(counts):
            if left:
                counts[s] -= 1
                prefix.append(s + 1)
                rec()
                prefix.pop()
                counts[s] += 1

    rec()
    return words


def unit_index(dim: int, s: int) -> MultiIndex:
    """The multi-index e_s (0-based position s)."""
    out = [0] * dim
    out[s] = 1
    return tuple(out)
