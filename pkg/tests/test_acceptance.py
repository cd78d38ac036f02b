"""Acceptance checks, one test per criterion.

Each test prints a single PASS/FAIL line (visible with -s or in captured
output) and then asserts, so the suite both reports and enforces. The timed
checks assume the session-wide kernel warmup fixture already ran.
"""
import math
import time
from fractions import Fraction

import numpy as np
import pytest

from kmerctr import (KmerMultiset, build_graph, bwt_forward, bwt_inverse,
                     compress, decompress, encode_block, full_space_cmpr,
                     multiset_equal, noisy_reads, rle_decode, rle_encode,
                     sweep)
from kmerctr.seqio import ingest_sequences

from helpers import (exhaustive_small_multisets, min_trail_cover, naive_bwt,
                     random_multiset)


def _report(name: str, ok: bool, detail: str) -> None:
    line = f"[{'PASS' if ok else 'FAIL'}] {name}: {detail}"
    print(line)
    assert ok, line


@pytest.fixture(scope="module")
def property_suite():
    """500 seeded random multisets, compressed once, shared by criteria 4-6."""
    rng = np.random.default_rng(20240801)
    runs = []
    for k in (4, 8, 16, 31):
        for mode in ("list", "frequency"):
            for _ in range(62):
                runs.append((k, mode, int(10 ** rng.uniform(0, 5))))
    while len(runs) < 500:
        runs.append((8, "list", int(10 ** rng.uniform(0, 5))))
    agg = {"total": 0, "lossless": 0, "identity_bad": 0, "balance_bad": 0}
    for k, mode, n in runs:
        m = random_multiset(rng, k, n, mode=mode)
        res = compress(m)
        agg["total"] += 1
        agg["lossless"] += multiset_equal(decompress(res.text), m)
        agg["identity_bad"] += bool(res.metrics.identity_violations())
        g = build_graph(m)
        if res.metrics.added_edges * 2 != g.imbalances().total_imbalance:
            agg["balance_bad"] += 1
    return agg


def test_criterion_01_worked_pipeline_example():
    words = ["ATAC", "ATCA", "ATGA", "ATGC", "CATC", "TCAT", "TGCT"]
    m = KmerMultiset.from_words(words)
    t0 = time.perf_counter()
    res = compress(m, mode="list")
    elapsed = time.perf_counter() - t0
    met = res.metrics
    ok = (sorted(res.text.strings) == ["ATAC", "ATGA", "ATGCT", "CATCAT"]
          and met.weight_M == 34 and met.weight_W == 22
          and met.added_edges == 3 and met.string_count == 4
          and met.cmpr == Fraction(34, 22) and elapsed < 1.0)
    _report("criterion 1 pipeline example", ok,
            f"W={sorted(res.text.strings)} weights {met.weight_M}/{met.weight_W} "
            f"added={met.added_edges} strings={met.string_count} "
            f"time={elapsed:.3f}s")


def test_criterion_02_bwt_rle_example():
    t0 = time.perf_counter()
    b = bwt_forward(b"BANANA$")
    r = rle_encode(b)
    ok = (b == b"ANNB$AA" and r == b"AN2B$A2"
          and rle_decode(r) == b and bwt_inverse(b) == b"BANANA$")
    elapsed = time.perf_counter() - t0
    ok = ok and elapsed < 1.0
    _report("criterion 2 codec example", ok,
            f"bwt={b.decode()} rle={r.decode()} time={elapsed:.3f}s")


def test_criterion_03_text_block_example():
    payload = b"ATAC,CATCAT,ATGA,ATGCT$"
    got = bwt_forward(payload)
    oracle = naive_bwt(payload)
    bwt_match = got == b"TTACGTC$C,,AT,GTTCAAAAA"
    got_rle = rle_encode(got)
    rle_match = got_rle == b"T2ACGTC$C,2AT,GT2CA5"
    roundtrip = bwt_inverse(got) == payload and rle_decode(got_rle) == got
    # the rotation-sort oracle arbitrates if byte collation ever diverges
    ok = got == oracle and roundtrip and bwt_match and rle_match
    _report("criterion 3 text block", ok,
            f"bwt_match={bwt_match} rle_match={rle_match} "
            f"oracle_agrees={got == oracle} roundtrip={roundtrip}")


def test_criterion_04_losslessness(property_suite):
    agg = property_suite
    ok = agg["lossless"] == agg["total"] == 500
    _report("criterion 4 losslessness x500", ok,
            f"{agg['lossless']}/{agg['total']} exact round trips "
            f"(k in 4/8/16/31, both modes, sizes up to 1e5)")


def test_criterion_05_minimality(property_suite):
    checked = 0
    mismatch = None
    for words in exhaustive_small_multisets(8):
        m = KmerMultiset.from_words(words)
        res = compress(m, mode="list")
        brute = min_trail_cover(tuple((w[0], w[1]) for w in words))
        if res.metrics.string_count != brute:
            mismatch = (words, res.metrics.string_count, brute)
            break
        checked += 1
    ok = mismatch is None and checked == 494 and property_suite["balance_bad"] == 0
    _report("criterion 5 minimal cover", ok,
            f"{checked} exhaustive graphs match the brute-force optimum, "
            f"|E'| = imbalance/2 on all {property_suite['total']} random runs"
            + (f"; mismatch {mismatch}" if mismatch else ""))


def test_criterion_06_weight_identity_and_bound(property_suite):
    ok = property_suite["identity_bad"] == 0
    _report("criterion 6 weight identity and bound", ok,
            f"weight_W = |M| + k|W| - 1 and cmpr < k+1 held on "
            f"{property_suite['total'] - property_suite['identity_bad']}"
            f"/{property_suite['total']} runs")


def test_criterion_07_density_sweep():
    t0 = time.perf_counter()
    r_values = [round(0.05 * i, 2) for i in range(1, 21)]
    res = sweep(8, r_values, seed=11)
    elapsed = time.perf_counter() - t0
    rho = res.spearman()
    top = res.rows[-1].cmpr
    closed = full_space_cmpr(8)
    ok = (rho > 0.9 and float(top) >= 0.95 * 9 and top == closed
          and elapsed < 60.0)
    _report("criterion 7 density sweep", ok,
            f"spearman={rho:.4f} cmpr(r=1)={float(top):.4f} "
            f"closed_form={float(closed):.4f} time={elapsed:.1f}s")


def test_criterion_08_reads_codec_advantage():
    t0 = time.perf_counter()
    wins = total = 0
    for k in (5, 10, 15, 20):
        for seed in range(5):
            sim = noisy_reads(100_000, 100, 5.0, 0.01, seed=seed)
            m, _ = ingest_sequences(sim.reads, k)
            res = compress(m, mode="list")
            covered = encode_block(res.text.strings).rle_bytes
            raw = encode_block(m.words()).rle_bytes
            wins += covered <= raw
            total += 1
    elapsed = time.perf_counter() - t0
    ok = wins >= math.ceil(0.9 * total) and elapsed < 120.0
    _report("criterion 8 reads codec advantage", ok,
            f"cover text beat or tied the raw list in {wins}/{total} "
            f"(k, seed) runs, time={elapsed:.1f}s")


def test_criterion_09_core_time_scaling():
    rng = np.random.default_rng(90)
    medians = []
    for n in (100_000, 200_000, 400_000):
        m = random_multiset(rng, 16, n)
        times = sorted(compress(m, mode="list").metrics.core_time_s
                       for _ in range(3))
        medians.append(times[1])
    r1 = medians[1] / medians[0]
    r2 = medians[2] / medians[1]
    ok = r1 <= 2.5 and r2 <= 2.5
    _report("criterion 9 core time scaling", ok,
            f"medians {medians[0]:.3f}/{medians[1]:.3f}/{medians[2]:.3f}s, "
            f"doubling ratios {r1:.2f} and {r2:.2f} (limit 2.5)")


def test_criterion_10_scope_note():
    note = ("criteria 4-9 are property substitutes: published absolute "
            "sizes/timings on real archive datasets and third-party tool "
            "comparisons are out of scope at this scale")
    _report("criterion 10 scope", True, note)
