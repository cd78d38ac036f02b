"""k-mer multisets, windowing, and the word-collection weight function.

A k-mer multiset is the unit of input for the whole toolkit. List mode stores
one entry per occurrence; frequency mode stores each distinct k-mer once with
a positive count. For the 4-symbol alphabet and k <= 32 entries are packed
into 2-bit integer codes so the graph stage can run on numpy arrays; larger
k or other alphabets fall back to plain strings.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

import numpy as np

MAX_K = 4096
_PACK_MAX_K = 32


@dataclass(frozen=True)
class Alphabet:
    """Ordered symbol set plus the separator and terminator bytes.

    Symbols are single ASCII characters. Decimal digits are rejected
    everywhere so run lengths can be spliced into serialized text without
    escaping. Symbol order defines label order for the graph stage; for the
    default DNA alphabet that coincides with byte order.
    """

    symbols: str = "ACGT"
    separator: str = ","
    terminator: str = "$"

    def __post_init__(self) -> None:
        if not (2 <= len(self.symbols) <= 64):
            raise ValueError("alphabet must have between 2 and 64 symbols")
        if len(set(self.symbols)) != len(self.symbols):
            raise ValueError("alphabet symbols must be distinct")
        specials = (self.separator, self.terminator)
        if any(len(s) != 1 for s in specials):
            raise ValueError("separator and terminator must be single characters")
        if self.separator == self.terminator:
            raise ValueError("separator and terminator must differ")
        for ch in self.symbols + self.separator + self.terminator:
            if ord(ch) > 127:
                raise ValueError(f"non-ASCII character {ch!r} in alphabet")
            if ch.isdigit():
                raise ValueError("decimal digits are reserved for run lengths")
        if set(specials) & set(self.symbols):
            raise ValueError("separator/terminator must not be alphabet symbols")

    @property
    def size(self) -> int:
        return len(self.symbols)

    @property
    def packable(self) -> bool:
        """True when k-mers over this alphabet can use 2-bit integer codes."""
        return self.size == 4

    def index_table(self) -> np.ndarray:
        """256-entry byte -> symbol index table, -1 for foreign bytes."""
        lut = np.full(256, -1, dtype=np.int8)
        for i, ch in enumerate(self.symbols):
            lut[ord(ch)] = i
        return lut

    def symbol_bytes(self) -> np.ndarray:
        return np.frombuffer(self.symbols.encode("ascii"), dtype=np.uint8).copy()


DNA = Alphabet()


def _check_k(k: int) -> None:
    if not isinstance(k, (int, np.integer)) or isinstance(k, bool):
        raise ValueError("k must be an integer")
    if not (2 <= k <= MAX_K):
        raise ValueError(f"k must be in [2, {MAX_K}], got {k}")


def packable(k: int, alphabet: Alphabet = DNA) -> bool:
    return alphabet.packable and k <= _PACK_MAX_K


def text_to_indices(text: str, alphabet: Alphabet = DNA) -> np.ndarray:
    """Map a string to uint8 symbol indices, rejecting foreign characters."""
    raw = np.frombuffer(text.encode("ascii"), dtype=np.uint8)
    idx = alphabet.index_table()[raw]
    if (idx < 0).any():
        bad = chr(int(raw[int(np.argmax(idx < 0))]))
        raise ValueError(f"alphabet violation: character {bad!r} not in {alphabet.symbols!r}")
    return idx.astype(np.uint8)


def _pack_weights(k: int) -> np.ndarray:
    # big-endian: first character most significant, so code order is label order
    return (np.uint64(1) << (np.uint64(2) * np.arange(k - 1, -1, -1, dtype=np.uint64)))


def window_codes(indices: np.ndarray, k: int) -> np.ndarray:
    """2-bit packed codes of every k-window of a symbol-index array."""
    if len(indices) < k:
        raise ValueError(f"underlength: text of length {len(indices)} has no {k}-windows")
    win = np.lib.stride_tricks.sliding_window_view(indices, k).astype(np.uint64)
    return win @ _pack_weights(k) if k > 1 else win[:, 0]


def pack_words(words: Sequence[str], k: int, alphabet: Alphabet = DNA) -> np.ndarray:
    """Pack equal-length words into one uint64 code per word."""
    joined = "".join(words)
    idx = text_to_indices(joined, alphabet).reshape(len(words), k).astype(np.uint64)
    return idx @ _pack_weights(k)


def unpack_codes(codes: np.ndarray, k: int, alphabet: Alphabet = DNA) -> list[str]:
    """Inverse of pack_words."""
    codes = np.asarray(codes, dtype=np.uint64)
    chars = np.empty((len(codes), k), dtype=np.uint8)
    sym = alphabet.symbol_bytes()
    for i in range(k):
        shift = np.uint64(2 * (k - 1 - i))
        chars[:, i] = sym[((codes >> shift) & np.uint64(3)).astype(np.intp)]
    blob = chars.tobytes().decode("ascii")
    return [blob[i * k:(i + 1) * k] for i in range(len(codes))]


def puff(text: str, k: int, alphabet: Alphabet = DNA) -> list[str]:
    """All k-length windows of text, left to right.

    len(puff(text, k)) == len(text) - k + 1. Raises on text shorter than k
    or containing characters outside the alphabet.
    """
    _check_k(k)
    if len(text) < k:
        raise ValueError(f"underlength: {text!r} is shorter than k={k}")
    text_to_indices(text, alphabet)
    return [text[i:i + k] for i in range(len(text) - k + 1)]


def weight(words: Iterable[str]) -> int:
    """Total characters plus one separator between consecutive words.

    weight(ws) == sum(len(w)) + len(ws) - 1. Undefined (raises) for an
    empty collection.
    """
    total = 0
    n = 0
    for w in words:
        total += len(w)
        n += 1
    if n == 0:
        raise ValueError("weight of an empty collection is undefined")
    return total + n - 1


class KmerMultiset:
    """A multiset of k-mers in either list or frequency mode.

    Use from_words / from_codes to construct. Internally the fast path keeps
    a uint64 code array; otherwise a list of strings. Frequency mode keeps
    distinct entries in first-occurrence order with an aligned count vector.
    """

    __slots__ = ("k", "mode", "alphabet", "_codes", "_word_list", "_counts")

    def __init__(self, k: int, mode: str, alphabet: Alphabet,
                 codes: np.ndarray | None, words: list[str] | None,
                 counts: np.ndarray | None):
        _check_k(k)
        if mode not in ("list", "frequency"):
            raise ValueError(f"mode must be 'list' or 'frequency', got {mode!r}")
        if (codes is None) == (words is None):
            raise ValueError("exactly one of codes/words must be given")
        if mode == "frequency":
            if counts is None:
                raise ValueError("frequency mode requires counts")
            counts = np.asarray(counts, dtype=np.int64)
            n = len(codes) if codes is not None else len(words)
            if len(counts) != n:
                raise ValueError("counts length must match the number of entries")
            if len(counts) and counts.min() < 1:
                raise ValueError("frequency counts must be >= 1")
        elif counts is not None:
            raise ValueError("list mode carries no counts")
        self.k = int(k)
        self.mode = mode
        self.alphabet = alphabet
        self._codes = codes
        self._word_list = words
        self._counts = counts

    # ----- constructors -------------------------------------------------

    @classmethod
    def from_words(cls, words: Sequence[str], mode: str = "list",
                   counts: Sequence[int] | None = None,
                   alphabet: Alphabet = DNA) -> "KmerMultiset":
        words = list(words)
        if not words:
            raise ValueError("empty k-mer multiset")
        k = len(words[0])
        _check_k(k)
        if any(len(w) != k for w in words):
            raise ValueError("all k-mers must share one length")
        if mode == "frequency":
            seen: dict[str, int] = {}
            for w in words:
                if w in seen:
                    raise ValueError(f"duplicate entry {w!r} in frequency mode")
                seen[w] = 1
        if packable(k, alphabet):
            codes = pack_words(words, k, alphabet)
            return cls(k, mode, alphabet, codes, None, counts)
        for w in words:
            text_to_indices(w, alphabet)
        return cls(k, mode, alphabet, None, words, counts)

    @classmethod
    def from_codes(cls, codes: np.ndarray, k: int, mode: str = "list",
                   counts: np.ndarray | None = None,
                   alphabet: Alphabet = DNA) -> "KmerMultiset":
        if not packable(k, alphabet):
            raise ValueError("packed codes need a 4-symbol alphabet and k <= 32")
        codes = np.asarray(codes, dtype=np.uint64)
        if codes.size == 0:
            raise ValueError("empty k-mer multiset")
        if mode == "frequency" and len(np.unique(codes)) != len(codes):
            raise ValueError("duplicate entry in frequency mode")
        return cls(k, mode, alphabet, codes, None, counts)

    # ----- views --------------------------------------------------------

    @property
    def packed(self) -> bool:
        return self._codes is not None

    @property
    def codes(self) -> np.ndarray:
        if self._codes is None:
            raise ValueError("multiset is not packed (large k or non-DNA alphabet)")
        return self._codes

    @property
    def counts(self) -> np.ndarray | None:
        return self._counts

    def words(self) -> list[str]:
        if self._word_list is None:
            self._word_list = unpack_codes(self._codes, self.k, self.alphabet)
        return list(self._word_list)

    @property
    def n_entries(self) -> int:
        """Stored entries: |M| in list mode, distinct k-mers in frequency mode."""
        return len(self._codes) if self._codes is not None else len(self._word_list)

    @property
    def total(self) -> int:
        """Total multiplicity across the multiset."""
        if self.mode == "list":
            return self.n_entries
        return int(self._counts.sum())

    def __len__(self) -> int:
        return self.n_entries

    def __iter__(self) -> Iterator[str]:
        return iter(self.words())

    def __repr__(self) -> str:
        return (f"KmerMultiset(k={self.k}, mode={self.mode!r}, "
                f"entries={self.n_entries}, total={self.total})")

    # ----- conversions --------------------------------------------------

    def to_frequency(self) -> "KmerMultiset":
        """Distinct k-mers with counts, ordered by first occurrence."""
        if self.mode == "frequency":
            return self
        if self.packed:
            uniq, first, cnt = np.unique(self._codes, return_index=True, return_counts=True)
            order = np.argsort(first, kind="stable")
            return KmerMultiset(self.k, "frequency", self.alphabet,
                                uniq[order], None, cnt[order])
        cnt = Counter(self._word_list)
        ordered = list(dict.fromkeys(self._word_list))
        counts = np.array([cnt[w] for w in ordered], dtype=np.int64)
        return KmerMultiset(self.k, "frequency", self.alphabet, None, ordered, counts)

    def to_list(self) -> "KmerMultiset":
        """Expand counts back into one entry per occurrence."""
        if self.mode == "list":
            return self
        if self.packed:
            codes = np.repeat(self._codes, self._counts)
            return KmerMultiset(self.k, "list", self.alphabet, codes, None, None)
        words = [w for w, c in zip(self._word_list, self._counts) for _ in range(int(c))]
        return KmerMultiset(self.k, "list", self.alphabet, None, words, None)

    def counter(self) -> Counter:
        """k-mer -> multiplicity map (mode-insensitive)."""
        if self.mode == "list":
            return Counter(self.words())
        return Counter(dict(zip(self.words(), (int(c) for c in self._counts))))

    def weight(self) -> int:
        """weight of the list-mode expansion: (k+1) * total - 1."""
        return (self.k + 1) * self.total - 1


def multiset_equal(a: KmerMultiset, b: KmerMultiset) -> bool:
    """True when both hold the same k-mers with the same multiplicities."""
    if a.k != b.k or a.alphabet.symbols != b.alphabet.symbols:
        return False
    if a.packed and b.packed:
        ua, ca = _canonical(a)
        ub, cb = _canonical(b)
        return len(ua) == len(ub) and bool((ua == ub).all()) and bool((ca == cb).all())
    return a.counter() == b.counter()


def _canonical(m: KmerMultiset) -> tuple[np.ndarray, np.ndarray]:
    if m.mode == "list":
        uniq, cnt = np.unique(m.codes, return_counts=True)
        return uniq, cnt.astype(np.int64)
    order = np.argsort(m.codes, kind="stable")
    return m.codes[order], m.counts[order]


@dataclass
class TextRepresentation:
    """An ordered collection of spelled strings, optionally with counts.

    Counts, when present, align with the sliding-window enumeration order of
    the strings: scan strings in order, windows left to right; the i-th
    window's multiplicity is counts[i].
    """

    strings: list[str]
    k: int
    counts: list[int] | None = None
    alphabet: Alphabet = field(default=DNA)

    def __post_init__(self) -> None:
        _check_k(self.k)
        if not self.strings:
            raise ValueError("empty text representation")
        for s in self.strings:
            if len(s) < self.k:
                raise ValueError(f"underlength: string {s!r} shorter than k={self.k}")
        if self.counts is not None:
            self.counts = [int(c) for c in self.counts]
            if len(self.counts) != self.window_count:
                raise ValueError("counts length must equal the total window count")
            if any(c < 1 for c in self.counts):
                raise ValueError("counts must be >= 1")

    @property
    def window_count(self) -> int:
        return sum(len(s) - self.k + 1 for s in self.strings)

    def weight(self) -> int:
        return weight(self.strings)


def puff_multiset(rep: TextRepresentation, alphabet: Alphabet | None = None) -> KmerMultiset:
    """Expand a text representation back into the k-mer multiset it spells.

    Without counts the result is a list-mode multiset of every window in
    scan order. With counts the i-th window carries counts[i] and equal
    k-mers sum, yielding a frequency-mode multiset.
    """
    alphabet = alphabet or rep.alphabet
    k = rep.k
    if packable(k, alphabet):
        parts = [window_codes(text_to_indices(s, alphabet), k) for s in rep.strings]
        codes = np.concatenate(parts)
        if rep.counts is None:
            return KmerMultiset.from_codes(codes, k, "list", alphabet=alphabet)
        counts = np.asarray(rep.counts, dtype=np.int64)
        uniq, first, inv = np.unique(codes, return_index=True, return_inverse=True)
        summed = np.bincount(inv, weights=counts).astype(np.int64)
        order = np.argsort(first, kind="stable")
        return KmerMultiset(k, "frequency", alphabet, uniq[order], None, summed[order])
    windows: list[str] = []
    for s in rep.strings:
        windows.extend(puff(s, k, alphabet))
    if rep.counts is None:
        return KmerMultiset.from_words(windows, "list", alphabet=alphabet)
    agg: dict[str, int] = {}
    for w, c in zip(windows, rep.counts):
        agg[w] = agg.get(w, 0) + int(c)
    return KmerMultiset.from_words(list(agg), "frequency",
                                   counts=list(agg.values()), alphabet=alphabet)
