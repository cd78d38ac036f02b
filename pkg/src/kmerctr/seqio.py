"""Sequence ingestion and the on-disk artifact formats.

Formats, all ASCII:

- .reads  one k-mer per line, no trailing newline, so the byte size of a
          list-mode file is exactly (k+1) * |M| - 1 = weight(M);
- .ctr    one cover string per line, no trailing newline, size = weight(W);
- .cnt    one decimal count per line in window scan order, trailing newline;
- .bwt    raw transformed payload bytes;
- .rle    raw run-length serialization bytes.

Ingestion accepts FASTA, FASTQ, or plain one-sequence-per-line text, splits
each sequence at every byte outside the alphabet (e.g. N), and windows the
surviving fragments; fragments shorter than k are counted and skipped.
"""
from __future__ import annotations

import os
import re
from dataclasses import dataclass, field
from typing import Iterable, Iterator, TextIO

import numpy as np

from .kmerset import (DNA, Alphabet, KmerMultiset, TextRepresentation,
                      packable, puff, text_to_indices, window_codes)

FORMATS = ("fasta", "fastq", "reads")

_EXT_FORMAT = {
    ".fa": "fasta", ".fasta": "fasta", ".fna": "fasta",
    ".fq": "fastq", ".fastq": "fastq",
}


def infer_format(path: str) -> str:
    return _EXT_FORMAT.get(os.path.splitext(path)[1].lower(), "reads")


def _fasta_sequences(handle: TextIO) -> Iterator[str]:
    chunks: list[str] = []
    started = False
    for line in handle:
        line = line.strip()
        if not line:
            continue
        if line.startswith(">"):
            if chunks:
                yield "".join(chunks)
                chunks = []
            started = True
        else:
            if not started:
                raise ValueError("malformed FASTA: sequence before first header")
            chunks.append(line)
    if chunks:
        yield "".join(chunks)


def _fastq_sequences(handle: TextIO) -> Iterator[str]:
    while True:
        header = handle.readline()
        if not header:
            return
        if not header.strip():
            continue
        if not header.startswith("@"):
            raise ValueError("malformed FASTQ: record does not start with @")
        seq = handle.readline().strip()
        plus = handle.readline()
        qual = handle.readline()
        if not plus.startswith("+") or not qual:
            raise ValueError("malformed FASTQ: truncated record")
        yield seq


def _plain_sequences(handle: TextIO) -> Iterator[str]:
    for line in handle:
        line = line.strip()
        if line:
            yield line


@dataclass
class IngestStats:
    sequences: int = 0
    fragments: int = 0
    skipped_short: int = 0
    kmer_count: int = 0


def ingest(path: str, k: int, fmt: str | None = None,
           alphabet: Alphabet = DNA) -> tuple[KmerMultiset, IngestStats]:
    """Read sequences from path and window them into a list-mode multiset."""
    fmt = fmt or infer_format(path)
    if fmt not in FORMATS:
        raise ValueError(f"unknown input format {fmt!r}")
    with open(path, "r", encoding="ascii") as fh:
        seqs = {"fasta": _fasta_sequences, "fastq": _fastq_sequences,
                "reads": _plain_sequences}[fmt](fh)
        return ingest_sequences(seqs, k, alphabet)


def ingest_sequences(sequences: Iterable[str], k: int,
                     alphabet: Alphabet = DNA) -> tuple[KmerMultiset, IngestStats]:
    """Window an in-memory sequence stream; see ingest()."""
    splitter = re.compile(f"[^{re.escape(alphabet.symbols)}]+")
    stats = IngestStats()
    fast = packable(k, alphabet)
    code_parts: list[np.ndarray] = []
    words: list[str] = []
    for seq in sequences:
        stats.sequences += 1
        for frag in splitter.split(seq.upper()):
            if not frag:
                continue
            stats.fragments += 1
            if len(frag) < k:
                stats.skipped_short += 1
                continue
            if fast:
                code_parts.append(window_codes(text_to_indices(frag, alphabet), k))
            else:
                words.extend(puff(frag, k, alphabet))
    if fast:
        if not code_parts:
            raise ValueError(f"no k-mers of length {k} in input")
        codes = np.concatenate(code_parts)
        stats.kmer_count = len(codes)
        return KmerMultiset.from_codes(codes, k, "list", alphabet=alphabet), stats
    if not words:
        raise ValueError(f"no k-mers of length {k} in input")
    stats.kmer_count = len(words)
    return KmerMultiset.from_words(words, "list", alphabet=alphabet), stats


# ----- artifact writers/readers ------------------------------------------


def write_reads(m: KmerMultiset, path: str) -> int:
    """Write the list-mode expansion, one k-mer per line; returns byte size."""
    data = "\n".join(m.to_list().words()).encode("ascii")
    with open(path, "wb") as fh:
        fh.write(data)
    return len(data)


def read_reads(path: str, alphabet: Alphabet = DNA) -> KmerMultiset:
    with open(path, "r", encoding="ascii") as fh:
        lines = fh.read().split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    if not lines:
        raise ValueError(f"{path}: empty reads file")
    k = len(lines[0])
    for i, line in enumerate(lines):
        if len(line) != k:
            raise ValueError(f"{path}:{i + 1}: malformed line length "
                             f"{len(line)}, expected {k}")
    return KmerMultiset.from_words(lines, "list", alphabet=alphabet)


def write_ctr(text: TextRepresentation, path: str) -> int:
    data = "\n".join(text.strings).encode("ascii")
    with open(path, "wb") as fh:
        fh.write(data)
    return len(data)


def read_ctr(path: str, k: int, counts: list[int] | None = None,
             alphabet: Alphabet = DNA) -> TextRepresentation:
    with open(path, "r", encoding="ascii") as fh:
        body = fh.read()
    if body.endswith("\n"):
        body = body[:-1]
    strings = body.split("\n")
    if strings == [""]:
        raise ValueError(f"{path}: empty ctr file")
    return TextRepresentation(strings, k, counts, alphabet)


def write_cnt(counts: list[int], path: str) -> int:
    data = "".join(f"{int(c)}\n" for c in counts).encode("ascii")
    with open(path, "wb") as fh:
        fh.write(data)
    return len(data)


def read_cnt(path: str) -> list[int]:
    with open(path, "r", encoding="ascii") as fh:
        return [int(line) for line in fh.read().split() if line]


def write_bytes(data: bytes, path: str) -> int:
    with open(path, "wb") as fh:
        fh.write(data)
    return len(data)


def read_bytes(path: str) -> bytes:
    with open(path, "rb") as fh:
        return fh.read()


@dataclass
class FileManifest:
    """Paths and byte sizes of the artifacts one command produced."""

    entries: dict[str, tuple[str, int]] = field(default_factory=dict)

    def add(self, kind: str, path: str) -> None:
        self.entries[kind] = (path, os.path.getsize(path))

    def sizes(self) -> dict[str, int]:
        return {kind: size for kind, (_, size) in self.entries.items()}

    def text(self) -> str:
        return "\n".join(f"{kind}\t{path}\t{size}"
                         for kind, (path, size) in sorted(self.entries.items()))
