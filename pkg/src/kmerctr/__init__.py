"""Lossless k-mer multiset compression via Eulerian covers of de Bruijn graphs."""

from ._backend import active_backend, set_backend, use_numba
from .balance import EulerizationResult, local_eulerize, verify_balanced
from .codec import (CodecBlock, bwt_forward, bwt_inverse, decode_block,
                    encode_block, rle_decode, rle_encode)
from .cover import cover_text, eulerian_cover, spell, spell_trails
from .graph import DeBruijnGraph, build_graph
from .kmerset import (DNA, Alphabet, KmerMultiset, TextRepresentation,
                      multiset_equal, puff, puff_multiset, weight)
from .pipeline import (CompressionResult, Metrics, VerificationReport,
                       codec_roundtrip, compress, decompress, verify)
from .simulate import (SimSpec, SweepResult, full_space_cmpr, noisy_reads,
                       sample_multiset, sweep)

__version__ = "0.1.0"

__all__ = [
    "Alphabet", "DNA", "KmerMultiset", "TextRepresentation",
    "multiset_equal", "puff", "puff_multiset", "weight",
    "DeBruijnGraph", "build_graph",
    "EulerizationResult", "local_eulerize", "verify_balanced",
    "cover_text", "eulerian_cover", "spell", "spell_trails",
    "CodecBlock", "bwt_forward", "bwt_inverse", "rle_encode", "rle_decode",
    "encode_block", "decode_block",
    "Metrics", "CompressionResult", "VerificationReport",
    "compress", "decompress", "verify", "codec_roundtrip",
    "SimSpec", "SweepResult", "sample_multiset", "sweep",
    "full_space_cmpr", "noisy_reads",
    "active_backend", "set_backend", "use_numba",
    "__version__",
]
