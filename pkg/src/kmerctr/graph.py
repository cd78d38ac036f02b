"""de Bruijn multigraph over (k-1)-mer vertices with k-mer edges.

Vertices are the distinct (k-1)-length prefixes and suffixes of the input
k-mers; every input unit contributes one prefix->suffix edge. Parallel edges
collapse into one adjacency entry with a multiplicity counter. Vertex ids are
label ranks and adjacency entries are sorted by head id, so every traversal
downstream is deterministic by construction.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .kmerset import Alphabet, KmerMultiset

REAL = 0
ARTIFICIAL = 1


@dataclass
class ImbalanceLedger:
    """Per-vertex flow imbalance delta(v) = indegree(v) - outdegree(v).

    surplus_in lists vertices with delta > 0, each repeated delta times;
    surplus_out lists delta < 0 vertices repeated -delta times. Both are
    ascending by vertex id (= label order).
    """

    delta: np.ndarray
    surplus_in: np.ndarray
    surplus_out: np.ndarray

    @property
    def is_balanced(self) -> bool:
        return len(self.surplus_in) == 0

    @property
    def total_imbalance(self) -> int:
        return int(np.abs(self.delta).sum())


class DeBruijnGraph:
    """CSR-stored directed multigraph; immutable once built."""

    __slots__ = ("k", "alphabet", "label_codes", "label_words", "indptr",
                 "entry_head", "entry_mult", "entry_origin", "indeg", "outdeg")

    def __init__(self, k: int, alphabet: Alphabet,
                 label_codes: np.ndarray | None, label_words: list[str] | None,
                 indptr: np.ndarray, entry_head: np.ndarray,
                 entry_mult: np.ndarray, entry_origin: np.ndarray,
                 indeg: np.ndarray, outdeg: np.ndarray):
        self.k = k
        self.alphabet = alphabet
        self.label_codes = label_codes
        self.label_words = label_words
        self.indptr = indptr
        self.entry_head = entry_head
        self.entry_mult = entry_mult
        self.entry_origin = entry_origin
        self.indeg = indeg
        self.outdeg = outdeg

    # ----- construction -------------------------------------------------

    @classmethod
    def from_multiset(cls, m: KmerMultiset) -> "DeBruijnGraph":
        k = m.k
        if m.packed:
            codes = m.codes
            mask = (np.uint64(1) << np.uint64(2 * (k - 1))) - np.uint64(1)
            pre = codes >> np.uint64(2)
            suf = codes & mask
            labels = np.unique(np.concatenate([pre, suf]))
            tails = np.searchsorted(labels, pre).astype(np.int64)
            heads = np.searchsorted(labels, suf).astype(np.int64)
            label_codes, label_words = labels, None
        else:
            words = m.words()
            pre = [w[:-1] for w in words]
            suf = [w[1:] for w in words]
            ordered = sorted(set(pre) | set(suf))
            vid = {lab: i for i, lab in enumerate(ordered)}
            tails = np.fromiter((vid[p] for p in pre), dtype=np.int64, count=len(pre))
            heads = np.fromiter((vid[s] for s in suf), dtype=np.int64, count=len(suf))
            label_codes, label_words = None, ordered
        nv = len(label_codes) if label_codes is not None else len(label_words)
        key = tails * nv + heads
        uniq, mult = np.unique(key, return_counts=True)
        entry_tail = (uniq // nv).astype(np.int64)
        entry_head = (uniq % nv).astype(np.int64)
        indptr = np.zeros(nv + 1, dtype=np.int64)
        np.cumsum(np.bincount(entry_tail, minlength=nv), out=indptr[1:])
        outdeg = np.bincount(tails, minlength=nv).astype(np.int64)
        indeg = np.bincount(heads, minlength=nv).astype(np.int64)
        return cls(k, m.alphabet, label_codes, label_words, indptr,
                   entry_head, mult.astype(np.int64),
                   np.zeros(len(uniq), dtype=np.uint8), indeg, outdeg)

    def with_extra_edges(self, tails: np.ndarray, heads: np.ndarray) -> "DeBruijnGraph":
        """New graph with the given edges appended as artificial entries."""
        tails = np.asarray(tails, dtype=np.int64)
        heads = np.asarray(heads, dtype=np.int64)
        nv = self.n_vertices
        old_tail = np.repeat(np.arange(nv, dtype=np.int64),
                             np.diff(self.indptr))
        key = tails * nv + heads
        uniq, mult = np.unique(key, return_counts=True)
        all_tail = np.concatenate([old_tail, uniq // nv])
        all_head = np.concatenate([self.entry_head, uniq % nv])
        all_mult = np.concatenate([self.entry_mult, mult.astype(np.int64)])
        all_origin = np.concatenate([self.entry_origin,
                                     np.full(len(uniq), ARTIFICIAL, dtype=np.uint8)])
        # real entries sort before artificial ones on head ties
        order = np.lexsort((all_origin, all_head, all_tail))
        indptr = np.zeros(nv + 1, dtype=np.int64)
        np.cumsum(np.bincount(all_tail, minlength=nv), out=indptr[1:])
        indeg = self.indeg + np.bincount(heads, minlength=nv)
        outdeg = self.outdeg + np.bincount(tails, minlength=nv)
        return DeBruijnGraph(self.k, self.alphabet, self.label_codes,
                             self.label_words, indptr, all_head[order],
                             all_mult[order], all_origin[order], indeg, outdeg)

    # ----- basic views --------------------------------------------------

    @property
    def n_vertices(self) -> int:
        return len(self.indptr) - 1

    @property
    def n_entries(self) -> int:
        return len(self.entry_head)

    @property
    def n_edge_units(self) -> int:
        """Total edge multiplicity, artificial included."""
        return int(self.entry_mult.sum())

    @property
    def n_real_units(self) -> int:
        return int(self.entry_mult[self.entry_origin == REAL].sum())

    @property
    def n_artificial_units(self) -> int:
        return int(self.entry_mult[self.entry_origin == ARTIFICIAL].sum())

    def label(self, v: int) -> str:
        if self.label_words is not None:
            return self.label_words[v]
        from .kmerset import unpack_codes
        return unpack_codes(self.label_codes[v:v + 1], self.k - 1, self.alphabet)[0]

    def labels(self) -> list[str]:
        if self.label_words is not None:
            return list(self.label_words)
        from .kmerset import unpack_codes
        return unpack_codes(self.label_codes, self.k - 1, self.alphabet)

    def labels_for(self, ids: np.ndarray) -> list[str]:
        ids = np.asarray(ids, dtype=np.int64)
        if self.label_words is not None:
            return [self.label_words[i] for i in ids.tolist()]
        from .kmerset import unpack_codes
        return unpack_codes(self.label_codes[ids], self.k - 1, self.alphabet)

    def last_char_bytes(self) -> np.ndarray:
        """uint8 last character of every vertex label, for spelling."""
        if self.label_codes is not None:
            sym = self.alphabet.symbol_bytes()
            return sym[(self.label_codes & np.uint64(3)).astype(np.intp)]
        return np.frombuffer("".join(w[-1] for w in self.label_words).encode("ascii"),
                             dtype=np.uint8).copy()

    def entry_tails(self) -> np.ndarray:
        return np.repeat(np.arange(self.n_vertices, dtype=np.int64),
                         np.diff(self.indptr))

    # ----- analyses -----------------------------------------------------

    def imbalances(self) -> ImbalanceLedger:
        delta = self.indeg - self.outdeg
        pos = np.flatnonzero(delta > 0)
        neg = np.flatnonzero(delta < 0)
        surplus_in = np.repeat(pos, delta[pos])
        surplus_out = np.repeat(neg, -delta[neg])
        return ImbalanceLedger(delta, surplus_in, surplus_out)

    def components(self) -> np.ndarray:
        """Weakly connected component id per vertex, ids densely renumbered
        in order of each component's smallest vertex."""
        parent = list(range(self.n_vertices))

        def find(x: int) -> int:
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        tails = self.entry_tails()
        for t, h in zip(tails.tolist(), self.entry_head.tolist()):
            rt, rh = find(t), find(h)
            if rt != rh:
                parent[max(rt, rh)] = min(rt, rh)
        roots = np.fromiter((find(v) for v in range(self.n_vertices)),
                            dtype=np.int64, count=self.n_vertices)
        _, comp = np.unique(roots, return_inverse=True)
        return comp

    def n_components(self) -> int:
        comp = self.components()
        return int(comp.max()) + 1 if len(comp) else 0

    def eulerian_component_count(self) -> int:
        """Components whose vertices are all flow-balanced."""
        comp = self.components()
        delta = self.indeg - self.outdeg
        ncomp = int(comp.max()) + 1 if len(comp) else 0
        bad = np.unique(comp[delta != 0])
        return ncomp - len(bad)

    def edge_dump(self) -> str:
        """Tab-separated edge list (tail, head, multiplicity, origin) in
        deterministic label order, for debugging."""
        labels = self.labels()
        tails = self.entry_tails()
        lines = []
        for i in range(self.n_entries):
            flag = "A" if self.entry_origin[i] == ARTIFICIAL else "R"
            lines.append(f"{labels[tails[i]]}\t{labels[self.entry_head[i]]}"
                         f"\t{self.entry_mult[i]}\t{flag}")
        return "\n".join(lines)


def build_graph(m: KmerMultiset) -> DeBruijnGraph:
    """Build the de Bruijn multigraph of a k-mer multiset.

    List mode contributes one edge unit per occurrence; frequency mode one
    unit per distinct k-mer (counts travel outside the graph).
    """
    return DeBruijnGraph.from_multiset(m)
