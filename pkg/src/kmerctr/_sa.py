"""Suffix array construction.

Two interchangeable builders sit behind suffix_array(): linear-time induced
sorting (SA-IS) whose per-level passes are numba kernels driven by a small
recursive python shell, and a pure-numpy prefix-doubling sort used when the
numpy backend is active. Both return the bare suffix array (the virtual
empty suffix is dropped).
"""
from __future__ import annotations

import numpy as np

from ._backend import jit_compile, use_numba

# type flags: L = suffix larger than its successor, S = smaller
_L = 0
_S = 1


def _typemap_body(data):
    n = data.shape[0]
    t = np.empty(n + 1, dtype=np.uint8)
    t[n] = _S
    if n == 0:
        return t
    t[n - 1] = _L
    for i in range(n - 2, -1, -1):
        if data[i] > data[i + 1]:
            t[i] = _L
        elif data[i] < data[i + 1]:
            t[i] = _S
        else:
            t[i] = t[i + 1]
    return t


def _guess_lms_body(data, t, tails):
    n = data.shape[0]
    sa = np.full(n + 1, -1, dtype=np.int64)
    for i in range(1, n):
        if t[i] == _S and t[i - 1] == _L:
            c = data[i]
            tails[c] -= 1
            sa[tails[c]] = i
    sa[0] = n
    return sa


def _induce_l_body(data, sa, t, heads):
    for i in range(sa.shape[0]):
        j = sa[i] - 1
        if sa[i] < 1 or t[j] != _L:
            continue
        c = data[j]
        sa[heads[c]] = j
        heads[c] += 1


def _induce_s_body(data, sa, t, tails):
    for i in range(sa.shape[0] - 1, -1, -1):
        j = sa[i] - 1
        if sa[i] < 1 or t[j] != _S:
            continue
        c = data[j]
        tails[c] -= 1
        sa[tails[c]] = j


def _lms_equal_body(data, t, a, b):
    n = data.shape[0]
    if a == n or b == n:
        return False
    i = 0
    while True:
        a_lms = a + i > 0 and t[a + i] == _S and t[a + i - 1] == _L
        b_lms = b + i > 0 and t[b + i] == _S and t[b + i - 1] == _L
        if i > 0 and a_lms and b_lms:
            return True
        if a_lms != b_lms:
            return False
        if data[a + i] != data[b + i]:
            return False
        i += 1


def _summarise_body(data, sa, t):
    n = data.shape[0]
    names = np.full(n + 1, -1, dtype=np.int64)
    names[sa[0]] = 0
    current = 0
    last = sa[0]
    for i in range(1, n + 1):
        pos = sa[i]
        if not (pos > 0 and t[pos] == _S and t[pos - 1] == _L):
            continue
        if not _lms_equal(data, t, last, pos):
            current += 1
        last = pos
        names[pos] = current
    count = 0
    for i in range(n + 1):
        if names[i] != -1:
            count += 1
    summary = np.empty(count, dtype=np.int64)
    offsets = np.empty(count, dtype=np.int64)
    w = 0
    for i in range(n + 1):
        if names[i] != -1:
            summary[w] = names[i]
            offsets[w] = i
            w += 1
    return summary, offsets, current + 1


def _accurate_lms_body(data, tails, summary_sa, offsets):
    n = data.shape[0]
    sa = np.full(n + 1, -1, dtype=np.int64)
    for i in range(summary_sa.shape[0] - 1, 1, -1):
        pos = offsets[summary_sa[i]]
        c = data[pos]
        tails[c] -= 1
        sa[tails[c]] = pos
    sa[0] = n
    return sa


_typemap = jit_compile(_typemap_body)
_guess_lms = jit_compile(_guess_lms_body)
_induce_l = jit_compile(_induce_l_body)
_induce_s = jit_compile(_induce_s_body)
_lms_equal = jit_compile(_lms_equal_body)
_summarise = jit_compile(_summarise_body)
_accurate_lms = jit_compile(_accurate_lms_body)


def _sais(data: np.ndarray, sigma: int) -> np.ndarray:
    """SA of data (values in [0, sigma)) including the empty suffix at [0]."""
    t = _typemap(data)
    sizes = np.bincount(data, minlength=sigma).astype(np.int64)
    heads = np.empty(sigma, dtype=np.int64)
    heads[0] = 1
    np.cumsum(sizes[:-1], out=heads[1:])
    heads[1:] += 1
    tails = heads + sizes
    sa = _guess_lms(data, t, tails.copy())
    _induce_l(data, sa, t, heads.copy())
    _induce_s(data, sa, t, tails.copy())
    summary, offsets, ssigma = _summarise(data, sa, t)
    if ssigma == len(summary):
        ssa = np.empty(len(summary) + 1, dtype=np.int64)
        ssa[0] = len(summary)
        ssa[summary + 1] = np.arange(len(summary), dtype=np.int64)
    else:
        ssa = _sais(summary, ssigma)
    sa = _accurate_lms(data, tails.copy(), ssa, offsets)
    _induce_l(data, sa, t, heads.copy())
    _induce_s(data, sa, t, tails.copy())
    return sa


def _sa_doubling(arr: np.ndarray) -> np.ndarray:
    """Prefix-doubling suffix sort, all numpy primitives."""
    n = len(arr)
    if n == 0:
        return np.empty(0, dtype=np.int64)
    rank = arr.astype(np.int64)
    order = np.argsort(rank, kind="stable")
    step = 1
    while True:
        second = np.full(n, -1, dtype=np.int64)
        if step < n:
            second[:n - step] = rank[step:]
        order = np.lexsort((second, rank))
        fresh = np.empty(n, dtype=np.int64)
        fresh[order[0]] = 0
        prev, cur = order[:-1], order[1:]
        bumps = (rank[cur] != rank[prev]) | (second[cur] != second[prev])
        fresh[cur] = np.cumsum(bumps)
        rank = fresh
        if rank[order[-1]] == n - 1:
            return order.astype(np.int64)
        step *= 2


def suffix_array(data: bytes | np.ndarray) -> np.ndarray:
    """Sorted start positions of all suffixes of data, byte-value order."""
    if isinstance(data, (bytes, bytearray, memoryview)):
        arr = np.frombuffer(bytes(data), dtype=np.uint8)
    else:
        arr = np.ascontiguousarray(data, dtype=np.uint8)
    if len(arr) == 0:
        return np.empty(0, dtype=np.int64)
    if use_numba():
        return _sais(arr.astype(np.int64), 256)[1:]
    return _sa_doubling(arr)
