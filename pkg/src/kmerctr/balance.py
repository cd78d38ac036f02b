"""Local Eulerization: add the minimum number of artificial edges so every
vertex has equal in- and out-degree.

A vertex with delta = indeg - outdeg > 0 needs delta extra outgoing edges,
one with delta < 0 needs -delta incoming ones, so artificial edges run from
surplus-in vertices to surplus-out vertices. Both surplus lists are ascending
by vertex label and paired positionally; any pairing balances the graph with
the same edge count, sorting just makes the choice reproducible. Pairs may
cross weak components, which only changes how tours are stitched downstream,
never the number of spelled strings.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .graph import DeBruijnGraph


@dataclass
class EulerizationResult:
    """Balanced graph plus the artificial edges that were added."""

    graph: DeBruijnGraph
    added_tails: np.ndarray
    added_heads: np.ndarray

    @property
    def added_count(self) -> int:
        return len(self.added_tails)

    def added_pairs(self) -> list[tuple[str, str]]:
        labels = self.graph.labels()
        return [(labels[t], labels[h])
                for t, h in zip(self.added_tails.tolist(), self.added_heads.tolist())]


def local_eulerize(g: DeBruijnGraph) -> EulerizationResult:
    """Balance a de Bruijn graph with len(added) == total_imbalance / 2 edges."""
    ledger = g.imbalances()
    tails = ledger.surplus_in
    heads = ledger.surplus_out
    if len(tails) != len(heads):
        raise AssertionError("surplus lists disagree; degree bookkeeping is broken")
    if len(tails) == 0:
        return EulerizationResult(g, tails, heads)
    return EulerizationResult(g.with_extra_edges(tails, heads), tails, heads)


def verify_balanced(g: DeBruijnGraph) -> bool:
    """True when every vertex has indegree == outdegree."""
    return bool((g.indeg == g.outdeg).all())
