"""Eulerian cover of a balanced de Bruijn graph and trail spelling.

Each weak component of a balanced graph carries one Eulerian circuit, found
with an iterative stack-based Hierholzer walk. Circuits are cut at artificial
edges, which act as non-emitting bridges, so every surviving fragment is a
trail of real edges and spells one output string. Determinism rules, all of
which only pick among equally valid outputs:

- tours start at the smallest vertex label that still has an unused out-edge;
- the walk always consumes the smallest remaining head label first (real
  entry before artificial on ties);
- a tour containing artificial edges is rotated so it begins right after one
  (equivalently, its wrap-around fragment is emitted first and whole);
- a tour with no artificial edge is one cyclic string; it is rotated to start
  right after the first occurrence of its largest vertex label.
"""
from __future__ import annotations

from typing import Sequence

import numpy as np

from ._backend import jit_compile, use_numba
from .graph import ARTIFICIAL, DeBruijnGraph
from .balance import verify_balanced
from .kmerset import TextRepresentation


def _walk_body(indptr, heads, rem, origin, n_units):
    """All Eulerian tours of a balanced graph, back to back.

    Returns flat vertex/arrival-origin arrays plus tour boundaries. Entry
    arrival[i] is the origin flag of the edge that enters vertex path[i]
    from path[i-1]; the first slot of each tour is a dummy zero. rem is
    consumed in place.
    """
    nv = indptr.shape[0] - 1
    cap = n_units + nv + 1
    path_v = np.empty(cap, dtype=np.int64)
    path_a = np.zeros(cap, dtype=np.uint8)
    bounds = np.empty(nv + 1, dtype=np.int64)
    stack_v = np.empty(n_units + 2, dtype=np.int64)
    stack_a = np.empty(n_units + 2, dtype=np.uint8)
    cursor = indptr[:nv].copy()
    pos = 0
    ntours = 0
    for start in range(nv):
        c = cursor[start]
        end = indptr[start + 1]
        while c < end and rem[c] == 0:
            c += 1
        cursor[start] = c
        if c >= end:
            continue
        bounds[ntours] = pos
        ntours += 1
        tour_lo = pos
        stack_v[0] = start
        stack_a[0] = 0
        sp = 1
        while sp > 0:
            v = stack_v[sp - 1]
            c = cursor[v]
            end = indptr[v + 1]
            while c < end and rem[c] == 0:
                c += 1
            cursor[v] = c
            if c < end:
                rem[c] -= 1
                stack_v[sp] = heads[c]
                stack_a[sp] = origin[c]
                sp += 1
            else:
                sp -= 1
                path_v[pos] = stack_v[sp]
                path_a[pos] = stack_a[sp]
                pos += 1
        # pops come out reversed; flip the tour in place
        lo = tour_lo
        hi = pos - 1
        while lo < hi:
            tv = path_v[lo]; path_v[lo] = path_v[hi]; path_v[hi] = tv
            ta = path_a[lo]; path_a[lo] = path_a[hi]; path_a[hi] = ta
            lo += 1
            hi -= 1
    bounds[ntours] = pos
    return path_v, path_a, bounds, ntours, pos


_walk_jit = jit_compile(_walk_body)


def _run_walk(g: DeBruijnGraph):
    rem = g.entry_mult.copy()
    n_units = g.n_edge_units
    walk = _walk_jit if use_numba() else _walk_body
    return walk(g.indptr, g.entry_head, rem, g.entry_origin, n_units)


def _tour_fragments(pv: np.ndarray, pa: np.ndarray) -> list[np.ndarray]:
    """Cut one closed tour into real-edge trails per the determinism rules."""
    art = np.flatnonzero(pa == ARTIFICIAL)
    L = len(pv) - 1
    if len(art) == 0:
        core = pv[:L]
        p = int(np.argmax(core))
        s = (p + 1) % L
        return [np.concatenate([core[s:], core[:s], core[s:s + 1]])]
    frags: list[np.ndarray] = []
    first, last = int(art[0]), int(art[-1])
    # wrap-around fragment: the real run crossing the tour's start, if any
    if last == L:
        wrap = pv[:first]
    elif first == 1:
        wrap = pv[last:]
    else:
        wrap = np.concatenate([pv[last:], pv[1:first]])
    if len(wrap) >= 2:
        frags.append(wrap)
    for j in range(len(art) - 1):
        a, b = int(art[j]), int(art[j + 1])
        frags.append(pv[a:b])
    return frags


def eulerian_cover(g: DeBruijnGraph) -> list[np.ndarray]:
    """Vertex-id trails covering every real edge exactly once.

    Requires a balanced graph; raises otherwise. The artificial edges that
    made the graph balanced are traversed but never appear inside a trail.
    """
    if not verify_balanced(g):
        raise ValueError("not Eulerian: graph has unbalanced vertices")
    pv, pa, bounds, ntours, total = _run_walk(g)
    if total != g.n_edge_units + ntours:
        raise AssertionError("walk did not consume every edge")
    trails: list[np.ndarray] = []
    for t in range(ntours):
        lo, hi = int(bounds[t]), int(bounds[t + 1])
        trails.extend(_tour_fragments(pv[lo:hi], pa[lo:hi]))
    return trails


def spell(labels: Sequence[str]) -> str:
    """String spelled by a vertex-label path: first label plus the last
    character of every following label. Labels must chain with k-2 overlap."""
    if not labels:
        raise ValueError("cannot spell an empty path")
    prev = labels[0]
    parts = [prev]
    for lab in labels[1:]:
        if len(lab) != len(prev) or lab[:-1] != prev[1:]:
            raise ValueError(f"labels {prev!r} -> {lab!r} do not overlap")
        parts.append(lab[-1])
        prev = lab
    return "".join(parts)


def spell_trails(g: DeBruijnGraph, trails: list[np.ndarray]) -> list[str]:
    """Batch spelling of id-trails straight off the label arrays."""
    if not trails:
        return []
    head_ids = np.fromiter((t[0] for t in trails), dtype=np.int64, count=len(trails))
    head_labels = g.labels_for(head_ids)
    last = g.last_char_bytes()
    return [head_labels[i] + last[t[1:]].tobytes().decode("ascii")
            for i, t in enumerate(trails)]


def cover_text(g: DeBruijnGraph) -> TextRepresentation:
    """Eulerian cover spelled into a text representation (no counts)."""
    strings = spell_trails(g, eulerian_cover(g))
    return TextRepresentation(strings, g.k, alphabet=g.alphabet)
