"""Shared oracles and generators for the test suite.

Everything here is deliberately naive: quadratic rotation sorts, exhaustive
recursions, plain dict counting. The point is independence from the package
internals, so agreement actually means something.
"""
from __future__ import annotations

import itertools
from functools import lru_cache

import numpy as np

from kmerctr import KmerMultiset

BASES = "ACGT"


def naive_bwt(data: bytes) -> bytes:
    """Last column of the sorted cyclic rotation matrix."""
    n = len(data)
    rotations = sorted(data[i:] + data[:i] for i in range(n))
    return bytes(r[-1] for r in rotations)


def naive_suffix_array(data: bytes) -> list[int]:
    return sorted(range(len(data)), key=lambda i: data[i:])


def min_trail_cover(edges: tuple[tuple[str, str], ...]) -> int:
    """Minimum number of edge-disjoint trails covering every edge.

    Exhaustive branch-and-memoize over (remaining edge multiset, trail head).
    Only viable for a handful of edges; used as the minimality oracle.
    """

    @lru_cache(maxsize=None)
    def rec(remaining: tuple[tuple[str, str], ...], end: str | None) -> int:
        if not remaining:
            return 0
        best = len(remaining) + 1
        tried = set()
        for i, (u, v) in enumerate(remaining):
            if (u, v) in tried:
                continue
            tried.add((u, v))
            rest = remaining[:i] + remaining[i + 1:]
            if end is not None and u == end:
                best = min(best, rec(rest, v))
            best = min(best, 1 + rec(rest, v))
        return best

    return rec(tuple(sorted(edges)), None)


def exhaustive_small_multisets(max_size: int = 8):
    """All k=2 multisets over {A, C} with 1..max_size elements."""
    kmers = ["".join(p) for p in itertools.product("AC", repeat=2)]
    for size in range(1, max_size + 1):
        for combo in itertools.combinations_with_replacement(kmers, size):
            yield list(combo)


def random_words(rng: np.random.Generator, k: int, n: int) -> list[str]:
    idx = rng.integers(0, 4, size=(n, k))
    lut = np.frombuffer(BASES.encode(), dtype=np.uint8)
    return [bytes(row).decode() for row in lut[idx]]


def random_multiset(rng: np.random.Generator, k: int, n: int,
                    mode: str = "list", max_mult: int = 4) -> KmerMultiset:
    """Seeded multiset with duplicates: n total k-mers, mixed multiplicities."""
    codes = rng.integers(0, 4 ** k, size=max(1, n // 2), dtype=np.int64)
    reps = rng.integers(1, max_mult + 1, size=codes.size)
    expanded = np.repeat(codes, reps)[:n]
    if expanded.size < n:
        pad = rng.integers(0, 4 ** k, size=n - expanded.size, dtype=np.int64)
        expanded = np.concatenate([expanded, pad])
    m = KmerMultiset.from_codes(expanded, k, "list")
    return m.to_frequency() if mode == "frequency" else m
