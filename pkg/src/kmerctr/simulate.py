"""Synthetic inputs: uniform k-mer space samples and noisy sequencing reads.

All randomness flows through numpy's PCG64 generator seeded explicitly, so
identical parameters reproduce identical outputs bit for bit.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import ceil

import numpy as np

from .kmerset import DNA, Alphabet, KmerMultiset
from .pipeline import compress

_PERMUTATION_CAP = 1 << 24
_SAMPLE_CAP = 1 << 22
MAX_SAMPLE_K = 14


@dataclass(frozen=True)
class SimSpec:
    """Parameters for sampling a random k-mer multiset.

    r is the fraction of the 4^k k-mer space to draw (without replacement);
    multiplicities come from the named distribution: constant (c,),
    uniform (lo, hi) inclusive, or geometric (p,).
    """

    k: int
    r: float
    distribution: str = "constant"
    param: tuple = (1,)
    seed: int = 0

    def __post_init__(self) -> None:
        if not (2 <= self.k):
            raise ValueError("k must be at least 2")
        if self.k > MAX_SAMPLE_K:
            raise ValueError(
                f"k={self.k} too large for exhaustive space sampling (max "
                f"{MAX_SAMPLE_K}); generate reads with noisy_reads instead")
        if not (0.0 < self.r <= 1.0):
            raise ValueError("r must be in (0, 1]")
        if self.distribution not in ("constant", "uniform", "geometric"):
            raise ValueError(f"unknown distribution {self.distribution!r}")


def _draw_counts(rng: np.random.Generator, spec: SimSpec, m: int) -> np.ndarray:
    if spec.distribution == "constant":
        (c,) = spec.param
        if int(c) < 1:
            raise ValueError("constant multiplicity must be >= 1")
        return np.full(m, int(c), dtype=np.int64)
    if spec.distribution == "uniform":
        lo, hi = spec.param
        if not (1 <= int(lo) <= int(hi)):
            raise ValueError("uniform multiplicity bounds must satisfy 1 <= lo <= hi")
        return rng.integers(int(lo), int(hi) + 1, size=m, dtype=np.int64)
    (p,) = spec.param
    if not (0.0 < float(p) <= 1.0):
        raise ValueError("geometric parameter must be in (0, 1]")
    return rng.geometric(float(p), size=m).astype(np.int64)


def sample_multiset(spec: SimSpec, alphabet: Alphabet = DNA) -> KmerMultiset:
    """Draw ceil(r * 4^k) distinct k-mers uniformly, as a frequency multiset."""
    total = 4 ** spec.k
    m = ceil(spec.r * total)
    rng = np.random.Generator(np.random.PCG64(spec.seed))
    if total <= _PERMUTATION_CAP:
        codes = rng.permutation(total)[:m].astype(np.uint64)
    else:
        if m > _SAMPLE_CAP:
            raise ValueError(f"sample of {m} k-mers is too large; cap is {_SAMPLE_CAP}")
        picked: list[int] = []
        seen: set[int] = set()
        while len(picked) < m:
            draw = rng.integers(0, total, size=2 * (m - len(picked)) + 16)
            for v in draw.tolist():
                if v not in seen:
                    seen.add(v)
                    picked.append(v)
                    if len(picked) == m:
                        break
        codes = np.array(picked, dtype=np.uint64)
    counts = _draw_counts(rng, spec, m)
    return KmerMultiset.from_codes(codes, spec.k, "frequency",
                                   counts=counts, alphabet=alphabet)


@dataclass
class SweepRow:
    r: float
    kmer_total: int
    string_count: int
    weight_M: int
    weight_W: int
    cmpr: Fraction
    core_time_s: float


_SWEEP_HEADER = "r,kmer_total,string_count,weight_M,weight_W,cmpr,core_time_s"


@dataclass
class SweepResult:
    k: int
    mode: str
    rows: list[SweepRow] = field(default_factory=list)

    def csv_text(self) -> str:
        lines = [_SWEEP_HEADER]
        for row in self.rows:
            lines.append(f"{row.r:g},{row.kmer_total},{row.string_count},"
                         f"{row.weight_M},{row.weight_W},"
                         f"{float(row.cmpr):.6f},{row.core_time_s:.6f}")
        return "\n".join(lines) + "\n"

    def write_csv(self, path: str) -> None:
        with open(path, "w", encoding="ascii") as fh:
            fh.write(self.csv_text())

    def spearman(self) -> float:
        """Rank correlation between r and cmpr across the sweep."""
        from scipy.stats import spearmanr
        rs = [row.r for row in self.rows]
        cs = [float(row.cmpr) for row in self.rows]
        return float(spearmanr(rs, cs).statistic)

    def plot_svg(self, path: str) -> None:
        """Line chart of cmpr against r with the k+1 bound marked."""
        try:
            import matplotlib
        except ImportError as exc:
            raise RuntimeError("plotting needs matplotlib (pip install "
                               "kmerctr[plot])") from exc
        matplotlib.use("Agg")
        import matplotlib.pyplot as plt
        fig, ax = plt.subplots(figsize=(6, 4))
        ax.plot([row.r for row in self.rows],
                [float(row.cmpr) for row in self.rows], marker="o")
        ax.axhline(self.k + 1, linestyle="--", color="gray",
                   label=f"k+1 = {self.k + 1}")
        ax.set_xlabel("r")
        ax.set_ylabel("cmpr")
        ax.set_title(f"compression ratio vs space fraction, k={self.k}")
        ax.legend()
        fig.tight_layout()
        fig.savefig(path, format="svg")
        plt.close(fig)


def sweep(k: int, r_values: list[float], seed: int = 0,
          distribution: str = "constant", param: tuple = (1,),
          mode: str = "list") -> SweepResult:
    """Compress one sampled multiset per r value and tabulate the metrics."""
    result = SweepResult(k, mode)
    for r in r_values:
        spec = SimSpec(k, r, distribution, param, seed)
        sample = sample_multiset(spec)
        res = compress(sample, mode=mode)
        met = res.metrics
        result.rows.append(SweepRow(r, met.kmer_total, met.string_count,
                                    met.weight_M, met.weight_W, met.cmpr,
                                    met.core_time_s))
    return result


def full_space_cmpr(k: int) -> Fraction:
    """Closed-form ratio at r=1 with unit multiplicities: the complete
    k-mer space coils into a single string."""
    n = 4 ** k
    return Fraction((k + 1) * n - 1, n + k - 1)


@dataclass
class SimulatedReads:
    """A random genome and substitution-noisy reads drawn from it."""

    genome: str
    reads: list[str]
    read_length: int
    substitutions: int

    @property
    def coverage(self) -> float:
        return len(self.reads) * self.read_length / len(self.genome)


def noisy_reads(genome_length: int, read_length: int, coverage: float,
                error_rate: float, seed: int = 0,
                alphabet: Alphabet = DNA) -> SimulatedReads:
    """Uniform random genome, uniformly placed reads, iid substitutions."""
    if not alphabet.packable:
        raise ValueError("read simulation assumes a 4-symbol alphabet")
    if read_length > genome_length:
        raise ValueError("read_length exceeds genome_length")
    if not (0.0 <= error_rate < 1.0):
        raise ValueError("error_rate must be in [0, 1)")
    rng = np.random.Generator(np.random.PCG64(seed))
    sym = alphabet.symbol_bytes()
    genome_idx = rng.integers(0, 4, size=genome_length, dtype=np.uint8)
    n_reads = max(1, round(coverage * genome_length / read_length))
    starts = rng.integers(0, genome_length - read_length + 1, size=n_reads)
    mat = genome_idx[starts[:, None] + np.arange(read_length)]
    mask = rng.random(mat.shape) < error_rate
    shift = rng.integers(1, 4, size=mat.shape, dtype=np.uint8)
    mat = np.where(mask, (mat + shift) % 4, mat).astype(np.uint8)
    blob = sym[mat].tobytes().decode("ascii")
    reads = [blob[i * read_length:(i + 1) * read_length] for i in range(n_reads)]
    genome = sym[genome_idx].tobytes().decode("ascii")
    return SimulatedReads(genome, reads, read_length, int(mask.sum()))
