"""End-to-end compress/decompress/verify behaviour."""
from fractions import Fraction

import numpy as np
import pytest

from kmerctr import (KmerMultiset, TextRepresentation, codec_roundtrip,
                     compress, decompress, multiset_equal, verify)

from helpers import random_multiset

FIG_WORDS = ["ATAC", "ATCA", "ATGA", "ATGC", "CATC", "TCAT", "TGCT"]


def test_worked_example_metrics():
    m = KmerMultiset.from_words(FIG_WORDS)
    res = compress(m, mode="list")
    met = res.metrics
    assert sorted(res.text.strings) == ["ATAC", "ATGA", "ATGCT", "CATCAT"]
    assert met.weight_M == 34
    assert met.weight_W == 22
    assert met.added_edges == 3
    assert met.string_count == 4
    assert met.cmpr == Fraction(34, 22)
    assert met.identity_violations() == []
    assert res.text.weight() == 22


def test_default_mode_follows_the_input():
    m = KmerMultiset.from_words(FIG_WORDS)
    assert compress(m).metrics.mode == "list"
    assert compress(m.to_frequency()).metrics.mode == "frequency"


def test_frequency_counts_ride_along():
    m = KmerMultiset.from_words(["AA", "AA"])
    res = compress(m, mode="frequency")
    assert res.text.strings == ["AA"]
    assert res.text.counts == [2]
    met = res.metrics
    assert met.kmer_total == 1  # the distinct list is what gets covered
    assert met.weight_M == 2
    assert met.weight_W == 2
    restored = decompress(res.text)
    assert multiset_equal(restored, m)


def test_roundtrip_property_both_modes():
    rng = np.random.default_rng(51)
    for _ in range(40):
        k = int(rng.integers(2, 12))
        n = int(rng.integers(1, 400))
        for mode in ("list", "frequency"):
            m = random_multiset(rng, k, n, mode=mode)
            res = compress(m)
            assert multiset_equal(decompress(res.text), m)
            assert res.metrics.identity_violations() == []
            rep = verify(m, res.text)
            assert rep.ok, rep.messages


def test_verify_flags_tampering():
    m = KmerMultiset.from_words(FIG_WORDS)
    res = compress(m, mode="list")
    strings = list(res.text.strings)
    strings[0] = "ATAG"
    bad = TextRepresentation(strings, res.text.k)
    rep = verify(m, bad)
    assert not rep.ok
    assert not rep.lossless


def test_verify_flags_dropped_string():
    m = KmerMultiset.from_words(FIG_WORDS)
    res = compress(m, mode="list")
    bad = TextRepresentation(res.text.strings[:-1], res.text.k)
    rep = verify(m, bad)
    assert not rep.ok


def test_codec_embedding():
    m = KmerMultiset.from_words(FIG_WORDS)
    res = compress(m, mode="list", codec=True)
    block = res.codec
    assert block is not None
    assert block.payload_bytes == res.metrics.weight_W + 1
    roundtrip = codec_roundtrip(res.text)
    assert roundtrip.run_encoded == block.run_encoded


def test_codec_roundtrip_random():
    rng = np.random.default_rng(52)
    for _ in range(20):
        k = int(rng.integers(2, 8))
        m = random_multiset(rng, k, int(rng.integers(1, 200)))
        res = compress(m, codec=True)
        codec_roundtrip(res.text)


def test_full_space_is_one_string():
    words = [a + b + c for a in "ACGT" for b in "ACGT" for c in "ACGT"]
    res = compress(KmerMultiset.from_words(words), mode="list")
    met = res.metrics
    assert met.string_count == 1
    assert met.weight_M == 255
    assert met.weight_W == 66
    assert met.cmpr == Fraction(255, 66)


def test_compression_never_inflates_weight():
    rng = np.random.default_rng(53)
    for _ in range(30):
        k = int(rng.integers(2, 10))
        m = random_multiset(rng, k, int(rng.integers(1, 300)))
        res = compress(m, mode="list")
        assert res.metrics.weight_W <= res.metrics.weight_M
        assert 1 <= float(res.metrics.cmpr) < k + 1


def test_large_k_object_path():
    m = KmerMultiset.from_words(["A" * 60 + "C", "A" * 61, "C" + "A" * 60])
    res = compress(m, mode="list")
    assert multiset_equal(decompress(res.text), m)
    assert verify(m, res.text).ok


def test_core_time_is_recorded():
    m = KmerMultiset.from_words(FIG_WORDS)
    res = compress(m)
    assert res.metrics.core_time_s > 0
