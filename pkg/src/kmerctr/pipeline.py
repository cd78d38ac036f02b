"""End-to-end compression pipeline: multiset -> graph -> balance -> cover ->
text, the inverse, verification, and the optional codec pass.

Frequency mode compresses the distinct-k-mer list and carries multiplicities
as a count sequence aligned with the sliding-window enumeration order of the
output text; the weight metrics therefore describe the distinct list, which
is the collection the cover actually replaces.
"""
from __future__ import annotations

import time
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .balance import local_eulerize
from .codec import CodecBlock, decode_block, encode_block
from .cover import eulerian_cover, spell_trails
from .graph import build_graph
from .kmerset import (KmerMultiset, TextRepresentation, multiset_equal,
                      puff_multiset, text_to_indices, window_codes)


@dataclass
class Metrics:
    """Size and shape accounting for one compression run.

    kmer_total is the number of edge units the graph saw: |M| in list mode,
    the number of distinct k-mers in frequency mode. cmpr is kept exact as a
    fraction; weight_W always equals kmer_total + k * string_count - 1.
    """

    k: int
    mode: str
    kmer_total: int
    string_count: int
    added_edges: int
    weight_M: int
    weight_W: int
    cmpr: Fraction
    core_time_s: float
    output_bytes: dict[str, int] = field(default_factory=dict)

    def identity_violations(self) -> list[str]:
        msgs = []
        if self.weight_M != (self.k + 1) * self.kmer_total - 1:
            msgs.append("weight_M != (k+1)*kmer_total - 1")
        if self.weight_W != self.kmer_total + self.k * self.string_count - 1:
            msgs.append("weight_W != kmer_total + k*string_count - 1")
        if self.cmpr != Fraction(self.weight_M, self.weight_W):
            msgs.append("cmpr != weight_M / weight_W")
        if not self.cmpr < self.k + 1:
            msgs.append("cmpr >= k + 1")
        return msgs


@dataclass
class CompressionResult:
    text: TextRepresentation
    metrics: Metrics
    codec: CodecBlock | None = None


def _align_counts(work: KmerMultiset, strings: list[str]) -> list[int]:
    """Multiplicity of each sliding window of the cover text, in scan order."""
    k = work.k
    if work.packed:
        wins = np.concatenate([window_codes(text_to_indices(s, work.alphabet), k)
                               for s in strings])
        order = np.argsort(work.codes, kind="stable")
        table = work.codes[order]
        pos = np.searchsorted(table, wins)
        if (pos >= len(table)).any() or (table[pos] != wins).any():
            raise AssertionError("cover text spells a k-mer outside the input")
        counts = work.counts[order][pos]
    else:
        lookup = {w: int(c) for w, c in zip(work.words(), work.counts)}
        counts = []
        for s in strings:
            for i in range(len(s) - k + 1):
                counts.append(lookup[s[i:i + k]])
    if len(counts) != work.n_entries:
        raise AssertionError("cover text window count != distinct k-mer count")
    return [int(c) for c in counts]


def compress(m: KmerMultiset, mode: str | None = None,
             codec: bool = False) -> CompressionResult:
    """Compress a k-mer multiset into its minimum-cardinality text.

    mode defaults to the multiset's own mode. With codec=True the spelled
    strings are additionally framed and taken through BWT + RLE.
    """
    mode = mode or m.mode
    work = m.to_frequency() if mode == "frequency" else m.to_list()
    t0 = time.perf_counter()
    g = build_graph(work)
    balanced = local_eulerize(g)
    trails = eulerian_cover(balanced.graph)
    strings = spell_trails(balanced.graph, trails)
    counts = _align_counts(work, strings) if mode == "frequency" else None
    core_time = time.perf_counter() - t0
    text = TextRepresentation(strings, work.k, counts, work.alphabet)
    weight_m = (work.k + 1) * work.n_entries - 1
    weight_w = text.weight()
    metrics = Metrics(
        k=work.k,
        mode=mode,
        kmer_total=work.n_entries,
        string_count=len(strings),
        added_edges=balanced.added_count,
        weight_M=weight_m,
        weight_W=weight_w,
        cmpr=Fraction(weight_m, weight_w),
        core_time_s=core_time,
    )
    block = encode_block(strings, work.alphabet) if codec else None
    return CompressionResult(text, metrics, block)


def decompress(text: TextRepresentation) -> KmerMultiset:
    """Expand a text representation back into its k-mer multiset.

    Returns a list-mode multiset, or a frequency-mode one when the text
    carries counts.
    """
    return puff_multiset(text)


@dataclass
class VerificationReport:
    lossless: bool
    identities_ok: bool
    bound_ok: bool
    messages: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.lossless and self.identities_ok and self.bound_ok


def verify(original: KmerMultiset, text: TextRepresentation) -> VerificationReport:
    """Check a compressed text against the multiset it claims to encode."""
    restored = decompress(text)
    lossless = multiset_equal(original, restored)
    msgs = [] if lossless else ["restored multiset differs from the original"]
    units = text.window_count
    k = text.k
    identities_ok = text.weight() == units + k * len(text.strings) - 1
    if not identities_ok:
        msgs.append("text weight violates the window-count identity")
    expected_units = (original.to_frequency().n_entries if text.counts is not None
                      else original.total)
    if units != expected_units:
        lossless = False
        msgs.append(f"window count {units} != expected {expected_units}")
    weight_m = (k + 1) * expected_units - 1
    bound_ok = Fraction(weight_m, text.weight()) < k + 1
    if not bound_ok:
        msgs.append("compression ratio reaches the k+1 bound")
    return VerificationReport(lossless, identities_ok, bound_ok, msgs)


def codec_roundtrip(text: TextRepresentation) -> CodecBlock:
    """Run the codec forward and backward, insisting on exact restoration."""
    block = encode_block(text.strings, text.alphabet)
    restored = decode_block(block.run_encoded, text.alphabet)
    if restored != text.strings:
        raise AssertionError("codec round trip changed the text")
    return block
