"""Multiset container, packing, and text representation basics."""
import numpy as np
import pytest

from kmerctr import (Alphabet, DNA, KmerMultiset, TextRepresentation,
                     multiset_equal, puff, puff_multiset, weight)
from kmerctr.kmerset import pack_words, text_to_indices, unpack_codes, window_codes

from helpers import random_words


def test_default_alphabet():
    assert DNA.symbols == "ACGT"
    assert DNA.separator == ","
    assert DNA.terminator == "$"
    assert DNA.size == 4
    assert DNA.packable


def test_alphabet_rejects_digits():
    with pytest.raises(ValueError):
        Alphabet(symbols="AC1T")
    with pytest.raises(ValueError):
        Alphabet(symbols="AB", separator="7")


def test_alphabet_rejects_degenerate_symbol_sets():
    with pytest.raises(ValueError):
        Alphabet(symbols="A")
    with pytest.raises(ValueError):
        Alphabet(symbols="AAC")
    with pytest.raises(ValueError):
        Alphabet(symbols="AC", separator="A")
    with pytest.raises(ValueError):
        Alphabet(symbols="AC", terminator=",", separator=",")


def test_text_to_indices_rejects_foreign_characters():
    with pytest.raises(ValueError, match="alphabet violation"):
        text_to_indices("ACGN", DNA)


def test_window_codes_match_puff():
    rng = np.random.default_rng(11)
    for _ in range(50):
        k = int(rng.integers(2, 9))
        length = int(rng.integers(k, k + 20))
        word = "".join("ACGT"[i] for i in rng.integers(0, 4, size=length))
        codes = window_codes(text_to_indices(word, DNA), k)
        assert list(unpack_codes(codes, k, DNA)) == puff(word, k)


def test_puff_underlength_raises():
    with pytest.raises(ValueError, match="underlength"):
        puff("ACG", 4)


def test_pack_unpack_roundtrip():
    rng = np.random.default_rng(5)
    for k in (2, 3, 8, 16, 31, 32):
        words = random_words(rng, k, 40)
        codes = pack_words(words, k, DNA)
        assert list(unpack_codes(codes, k, DNA)) == words


def test_code_order_matches_label_order():
    # 2-bit big-endian packing must sort exactly like the strings
    rng = np.random.default_rng(6)
    words = sorted(set(random_words(rng, 9, 200)))
    codes = pack_words(words, 9, DNA)
    assert (np.diff(codes) > 0).all()


def test_weight_formula():
    assert weight(["ATAC", "ATCA", "ATGA", "ATGC", "CATC", "TCAT", "TGCT"]) == 34
    assert weight(["ATAC", "CATCAT", "ATGA", "ATGCT"]) == 22
    assert weight(["A"]) == 1
    with pytest.raises(ValueError):
        weight([])


def test_from_words_requires_uniform_length():
    with pytest.raises(ValueError):
        KmerMultiset.from_words(["ACG", "ACGT"])


def test_from_words_rejects_bad_k():
    with pytest.raises(ValueError):
        KmerMultiset.from_words(["A", "C"])


def test_frequency_mode_needs_counts_and_distinct_words():
    with pytest.raises(ValueError):
        KmerMultiset.from_words(["AC", "CA"], mode="frequency")
    with pytest.raises(ValueError):
        KmerMultiset.from_words(["AC", "AC"], mode="frequency", counts=[1, 2])
    with pytest.raises(ValueError):
        KmerMultiset.from_words(["AC"], mode="frequency", counts=[0])
    m = KmerMultiset.from_words(["AC", "CA"], mode="frequency", counts=[3, 1])
    assert m.total == 4
    assert m.n_entries == 2


def test_list_mode_rejects_counts():
    with pytest.raises(ValueError):
        KmerMultiset.from_words(["AC"], mode="list", counts=[2])


def test_mode_conversions_preserve_content():
    words = ["ATA", "CGC", "ATA", "TTT", "ATA", "CGC"]
    m = KmerMultiset.from_words(words)
    f = m.to_frequency()
    assert f.mode == "frequency"
    # first-occurrence order of the distinct elements
    assert f.words() == ["ATA", "CGC", "TTT"]
    assert list(f.counts) == [3, 2, 1]
    back = f.to_list()
    assert multiset_equal(back, m)
    assert m.counter() == f.counter()


def test_weight_matches_list_expansion():
    rng = np.random.default_rng(7)
    for _ in range(20):
        k = int(rng.integers(2, 12))
        words = random_words(rng, k, int(rng.integers(1, 60)))
        m = KmerMultiset.from_words(words)
        assert m.weight() == weight(words)
        assert m.to_frequency().weight() == weight(words)


def test_multiset_equal_across_modes():
    a = KmerMultiset.from_words(["AC", "AC", "GT"])
    b = KmerMultiset.from_words(["GT", "AC"], mode="frequency", counts=[1, 2])
    c = KmerMultiset.from_words(["GT", "AC"], mode="frequency", counts=[1, 3])
    assert multiset_equal(a, b)
    assert not multiset_equal(a, c)
    assert not multiset_equal(a, KmerMultiset.from_words(["ACA"]))


def test_large_k_falls_back_to_string_codes():
    rng = np.random.default_rng(9)
    words = random_words(rng, 40, 10)
    m = KmerMultiset.from_words(words)
    assert not m.packed
    assert sorted(m.words()) == sorted(words)
    assert m.weight() == weight(words)


def test_non_dna_alphabet():
    ab = Alphabet(symbols="ab", separator="|", terminator="#")
    m = KmerMultiset.from_words(["ab", "ba", "aa"], alphabet=ab)
    assert m.total == 3
    with pytest.raises(ValueError, match="alphabet violation"):
        KmerMultiset.from_words(["aC"], alphabet=ab)


def test_text_representation_validation():
    with pytest.raises(ValueError):
        TextRepresentation([], 3)
    with pytest.raises(ValueError):
        TextRepresentation(["AC"], 3)
    with pytest.raises(ValueError):
        TextRepresentation(["ACG"], 3, counts=[1, 2])
    with pytest.raises(ValueError):
        TextRepresentation(["ACG"], 3, counts=[0])
    rep = TextRepresentation(["ACGT", "GGG"], 3)
    assert rep.window_count == 3
    assert rep.weight() == 8


def test_puff_multiset_list_mode():
    rep = TextRepresentation(["ATAC", "CATCAT"], 4)
    m = puff_multiset(rep)
    assert m.mode == "list"
    assert sorted(m.words()) == ["ATAC", "ATCA", "CATC", "TCAT"]


def test_puff_multiset_sums_counts_of_repeated_windows():
    rep = TextRepresentation(["AA", "AA"], 2, counts=[2, 3])
    m = puff_multiset(rep)
    assert m.mode == "frequency"
    assert m.words() == ["AA"]
    assert list(m.counts) == [5]


def test_puff_multiset_counts_alignment_is_positional():
    # same windows, different count layout: totals must follow scan order
    rep = TextRepresentation(["ACA", "CAC"], 2, counts=[1, 2, 3, 4])
    m = puff_multiset(rep)
    assert m.counter() == {"AC": 1 + 4, "CA": 2 + 3}
