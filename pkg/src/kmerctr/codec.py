"""Burrows-Wheeler transform and run-length coding over byte payloads.

The forward transform is the last column of the lexicographically sorted
cyclic-rotation matrix under byte-value order. It is computed from a suffix
array: directly when the unique terminator is the strictly smallest byte and
sits last (rotation order equals suffix order), otherwise from the doubled
string, which sorts rotations of any payload. The inverse rebuilds the
rotation that ends with the terminator via LF-mapping, so forward followed
by inverse is the identity exactly for terminator-final payloads.

Run-length serialization appends a decimal length only for runs of two or
more, which is unambiguous because payload alphabets exclude digits.
"""
from __future__ import annotations

import re
from dataclasses import dataclass

import numpy as np

from ._backend import jit_compile, use_numba
from ._sa import suffix_array
from .kmerset import Alphabet, DNA

_RUN_LIMIT = 2 ** 63
_RLE_TOKEN = re.compile(rb"(.)([0-9]*)", re.DOTALL)


def _check_terminator(data: bytes, terminator: bytes) -> int:
    if len(terminator) != 1:
        raise ValueError("terminator must be a single byte")
    n = data.count(terminator)
    if n != 1:
        raise ValueError(f"missing or duplicated terminator: found {n} of {terminator!r}")
    return data.index(terminator)


def bwt_forward(data: bytes, terminator: bytes = b"$") -> bytes:
    """Last column of the sorted rotation matrix of data.

    data must contain the terminator byte exactly once (conventionally
    last). The transform only depends on the cyclic class of data.
    """
    _check_terminator(data, terminator)
    n = len(data)
    arr = np.frombuffer(data, dtype=np.uint8)
    term = terminator[0]
    others = arr[arr != term]
    if data[-1] == term and (len(others) == 0 or int(others.min()) > term):
        # rotation order == suffix order
        sa = suffix_array(arr)
    else:
        sa2 = suffix_array(np.concatenate([arr, arr]))
        sa = sa2[sa2 < n]
    return arr[(sa - 1) % n].tobytes()


def _lf_walk_body(codes, lf, start, out):
    i = start
    for pos in range(out.shape[0] - 1, -1, -1):
        out[pos] = codes[i]
        i = lf[i]
    return i


_lf_walk_jit = jit_compile(_lf_walk_body)


def _lf_walk_py(codes, lf, start, out):
    i = start
    codes_l = codes.tolist()
    lf_l = lf.tolist()
    buf = [0] * len(out)
    for pos in range(len(buf) - 1, -1, -1):
        buf[pos] = codes_l[i]
        i = lf_l[i]
    out[:] = buf
    return i


def bwt_inverse(transformed: bytes, terminator: bytes = b"$") -> bytes:
    """Rebuild the rotation ending with the terminator from a last column."""
    idx = _check_terminator(transformed, terminator)
    n = len(transformed)
    codes = np.frombuffer(transformed, dtype=np.uint8)
    order = np.argsort(codes, kind="stable")
    lf = np.empty(n, dtype=np.int64)
    lf[order] = np.arange(n, dtype=np.int64)
    out = np.empty(n, dtype=np.uint8)
    walk = _lf_walk_jit if use_numba() else _lf_walk_py
    walk(codes, lf, idx, out)
    return out.tobytes()


def rle_encode(data: bytes) -> bytes:
    """Run-length serialize: each maximal run becomes its byte, followed by
    the decimal run length when the run has two or more members."""
    if not data:
        return b""
    arr = np.frombuffer(data, dtype=np.uint8)
    if bool(((arr >= 0x30) & (arr <= 0x39)).any()):
        raise ValueError("RLE alphabet clash: decimal digits in payload")
    starts = np.concatenate([[0], np.flatnonzero(np.diff(arr)) + 1])
    lengths = np.diff(np.concatenate([starts, [len(arr)]]))
    out = bytearray()
    for s, ln in zip(starts.tolist(), lengths.tolist()):
        out.append(arr[s])
        if ln >= 2:
            out += b"%d" % ln
    return bytes(out)


def rle_decode(data: bytes) -> bytes:
    """Invert rle_encode, rejecting malformed serializations."""
    if not data:
        return b""
    if 0x30 <= data[0] <= 0x39:
        raise ValueError("malformed RLE: leading digit")
    out = bytearray()
    for m in _RLE_TOKEN.finditer(data):
        sym, digits = m.group(1), m.group(2)
        if not digits:
            out += sym
            continue
        if len(digits) > 19:
            raise ValueError("malformed RLE: run length overflow")
        run = int(digits)
        if run < 2:
            raise ValueError(f"malformed RLE: run of {run} written explicitly")
        if run >= _RUN_LIMIT:
            raise ValueError("malformed RLE: run length overflow")
        out += sym * run
    return bytes(out)


def text_payload(strings: list[str], alphabet: Alphabet = DNA) -> bytes:
    """Separator-joined strings with the terminator appended."""
    if not strings:
        raise ValueError("cannot frame an empty string collection")
    return (alphabet.separator.join(strings) + alphabet.terminator).encode("ascii")


def split_payload(payload: bytes, alphabet: Alphabet = DNA) -> list[str]:
    """Inverse of text_payload."""
    text = payload.decode("ascii")
    if not text.endswith(alphabet.terminator):
        raise ValueError("payload does not end with the terminator")
    return text[:-1].split(alphabet.separator)


@dataclass
class CodecBlock:
    """One payload taken through BWT and RLE, with its size accounting.

    rle_bytes counts the serialized run-length form including the terminator
    byte; rle_weight excludes the terminator, mirroring how the weight
    function never counts one.
    """

    payload: bytes
    transformed: bytes
    run_encoded: bytes

    @property
    def payload_bytes(self) -> int:
        return len(self.payload)

    @property
    def rle_bytes(self) -> int:
        return len(self.run_encoded)

    @property
    def rle_weight(self) -> int:
        return len(self.run_encoded) - 1

    def as_sizes(self) -> dict[str, int]:
        return {"payload": self.payload_bytes,
                "bwt": len(self.transformed),
                "rle": self.rle_bytes}


def encode_block(strings: list[str], alphabet: Alphabet = DNA) -> CodecBlock:
    """Frame, transform, and run-length code a string collection."""
    payload = text_payload(strings, alphabet)
    transformed = bwt_forward(payload, alphabet.terminator.encode("ascii"))
    return CodecBlock(payload, transformed, rle_encode(transformed))


def decode_block(run_encoded: bytes, alphabet: Alphabet = DNA) -> list[str]:
    """Invert encode_block from the run-length serialization."""
    transformed = rle_decode(run_encoded)
    payload = bwt_inverse(transformed, alphabet.terminator.encode("ascii"))
    return split_payload(payload, alphabet)
