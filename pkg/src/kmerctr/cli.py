"""Command line interface.

Exit codes: 0 success, 1 verification failure, 2 usage or input error.
"""
from __future__ import annotations

import argparse
import os
import sys
import time

from . import pipeline, seqio, simulate
from .codec import decode_block, encode_block
from .kmerset import DNA, TextRepresentation


def _fmt_metrics(met: pipeline.Metrics) -> str:
    lines = [
        f"k               {met.k}",
        f"mode            {met.mode}",
        f"kmer_total      {met.kmer_total}",
        f"string_count    {met.string_count}",
        f"added_edges     {met.added_edges}",
        f"weight_M        {met.weight_M}",
        f"weight_W        {met.weight_W}",
        f"cmpr            {float(met.cmpr):.6f} ({met.cmpr})",
        f"core_time_s     {met.core_time_s:.6f}",
    ]
    return "\n".join(lines)


def _parse_distribution(text: str) -> tuple[str, tuple]:
    parts = text.split(":")
    name = parts[0]
    if name == "constant":
        return name, (int(parts[1]) if len(parts) > 1 else 1,)
    if name == "uniform":
        if len(parts) != 3:
            raise ValueError("uniform distribution needs uniform:LO:HI")
        return name, (int(parts[1]), int(parts[2]))
    if name == "geometric":
        if len(parts) != 2:
            raise ValueError("geometric distribution needs geometric:P")
        return name, (float(parts[1]),)
    raise ValueError(f"unknown distribution {name!r}")


def _parse_float_list(text: str) -> list[float]:
    return [float(tok) for tok in text.split(",") if tok.strip()]


def _parse_int_list(text: str) -> list[int]:
    return [int(tok) for tok in text.split(",") if tok.strip()]


def cmd_compress(args: argparse.Namespace) -> int:
    m, stats = seqio.ingest(args.input, args.k, args.format)
    res = pipeline.compress(m, mode=args.mode, codec=args.codec)
    prefix = args.output_prefix or os.path.splitext(args.input)[0]
    manifest = seqio.FileManifest()
    seqio.write_reads(m, prefix + ".reads")
    manifest.add("reads", prefix + ".reads")
    seqio.write_ctr(res.text, prefix + ".ctr")
    manifest.add("ctr", prefix + ".ctr")
    if res.text.counts is not None:
        seqio.write_cnt(res.text.counts, prefix + ".cnt")
        manifest.add("cnt", prefix + ".cnt")
    if res.codec is not None:
        seqio.write_bytes(res.codec.transformed, prefix + ".bwt")
        manifest.add("bwt", prefix + ".bwt")
        seqio.write_bytes(res.codec.run_encoded, prefix + ".rle")
        manifest.add("rle", prefix + ".rle")
    res.metrics.output_bytes = manifest.sizes()
    print(f"ingested {stats.kmer_count} {args.k}-mers from {stats.sequences} "
          f"sequences ({stats.skipped_short} fragments shorter than k skipped)")
    print(_fmt_metrics(res.metrics))
    print(manifest.text())
    return 0


def cmd_decompress(args: argparse.Namespace) -> int:
    counts = None
    cnt_path = args.prefix + ".cnt"
    if os.path.exists(cnt_path):
        counts = seqio.read_cnt(cnt_path)
    if args.codec:
        strings = decode_block(seqio.read_bytes(args.prefix + ".rle"))
        text = TextRepresentation(strings, args.k, counts)
    else:
        text = seqio.read_ctr(args.prefix + ".ctr", args.k, counts)
    m = pipeline.decompress(text)
    out = args.output or args.prefix + ".restored.reads"
    size = seqio.write_reads(m, out)
    print(f"restored {m.total} {args.k}-mers ({m.to_frequency().n_entries} "
          f"distinct) -> {out} ({size} bytes)")
    return 0


def cmd_verify(args: argparse.Namespace) -> int:
    original, _ = seqio.ingest(args.input, args.k, args.format)
    counts = None
    cnt_path = args.prefix + ".cnt"
    if os.path.exists(cnt_path):
        counts = seqio.read_cnt(cnt_path)
    text = seqio.read_ctr(args.prefix + ".ctr", args.k, counts)
    report = pipeline.verify(original, text)
    status = "PASS" if report.ok else "FAIL"
    print(f"verify {status}: lossless={report.lossless} "
          f"identities={report.identities_ok} bound={report.bound_ok}")
    for msg in report.messages:
        print(f"  - {msg}")
    return 0 if report.ok else 1


def cmd_simulate(args: argparse.Namespace) -> int:
    if args.kind == "kmers":
        name, param = _parse_distribution(args.distribution)
        spec = simulate.SimSpec(args.k, args.r, name, param, args.seed)
        m = simulate.sample_multiset(spec)
        size = seqio.write_reads(m, args.output)
        print(f"sampled {m.n_entries} distinct {args.k}-mers (total "
              f"{m.total}) -> {args.output} ({size} bytes)")
        return 0
    sim = simulate.noisy_reads(args.genome_length, args.read_length,
                               args.coverage, args.error_rate, args.seed)
    with open(args.output, "w", encoding="ascii") as fh:
        fh.write("\n".join(sim.reads) + "\n")
    if args.genome_output:
        with open(args.genome_output, "w", encoding="ascii") as fh:
            fh.write(sim.genome + "\n")
    print(f"wrote {len(sim.reads)} reads of length {sim.read_length} "
          f"({sim.substitutions} substitutions) -> {args.output}")
    return 0


def cmd_sweep(args: argparse.Namespace) -> int:
    name, param = _parse_distribution(args.distribution)
    r_values = _parse_float_list(args.r_list)
    result = simulate.sweep(args.k, r_values, args.seed, name, param, args.mode)
    if args.output:
        result.write_csv(args.output)
    if args.plot:
        result.plot_svg(args.plot)
    if args.report == "csv":
        sys.stdout.write(result.csv_text())
    else:
        print(f"sweep k={args.k} mode={args.mode} "
              f"spearman(r, cmpr)={result.spearman():.4f}")
        for row in result.rows:
            print(f"  r={row.r:<5g} kmers={row.kmer_total:<8} "
                  f"strings={row.string_count:<8} cmpr={float(row.cmpr):.4f}")
    return 0


def cmd_bench(args: argparse.Namespace) -> int:
    dataset = os.path.basename(args.input)
    out_dir = args.output_dir or (os.path.splitext(args.input)[0] + "_bench")
    os.makedirs(out_dir, exist_ok=True)
    stem = os.path.join(out_dir, os.path.splitext(dataset)[0])
    rows = []
    for k in _parse_int_list(args.k_list):
        m, _ = seqio.ingest(args.input, k, args.format)
        reads_bytes = seqio.write_reads(m, f"{stem}.k{k}.reads")
        # plain cover output, both modes
        for mode in ("list", "frequency"):
            res = pipeline.compress(m, mode=mode)
            raw = seqio.write_ctr(res.text, f"{stem}.k{k}.{mode}.ctr")
            if res.text.counts is not None:
                raw += seqio.write_cnt(res.text.counts, f"{stem}.k{k}.{mode}.cnt")
            rows.append((dataset, "ctr", mode, k, res.metrics.core_time_s,
                         raw, reads_bytes / raw))
        # cover output taken through the codec
        res = pipeline.compress(m, mode="list")
        t0 = time.perf_counter()
        block = encode_block(res.text.strings)
        codec_time = time.perf_counter() - t0
        raw = seqio.write_bytes(block.run_encoded, f"{stem}.k{k}.ctr.rle")
        rows.append((dataset, "ctr+bwt", "list", k,
                     res.metrics.core_time_s + codec_time, raw,
                     reads_bytes / raw))
        # baseline: codec straight on the raw k-mer list
        t0 = time.perf_counter()
        block = encode_block(m.to_list().words())
        codec_time = time.perf_counter() - t0
        raw = seqio.write_bytes(block.run_encoded, f"{stem}.k{k}.raw.rle")
        rows.append((dataset, "bwt", "list", k, codec_time, raw,
                     reads_bytes / raw))
    header = "dataset,algorithm,mode,k,core_time_s,raw_output_bytes,cmpr"
    lines = [header]
    for ds, algo, mode, k, t, raw, cmpr in rows:
        lines.append(f"{ds},{algo},{mode},{k},{t:.6f},{raw},{cmpr:.6f}")
    csv_text = "\n".join(lines) + "\n"
    if args.output:
        with open(args.output, "w", encoding="ascii") as fh:
            fh.write(csv_text)
    if args.report == "csv":
        sys.stdout.write(csv_text)
    else:
        for ds, algo, mode, k, t, raw, cmpr in rows:
            print(f"{ds:<20} {algo:<8} {mode:<9} k={k:<3} "
                  f"time={t:8.3f}s bytes={raw:<10} cmpr={cmpr:.4f}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="kmerctr",
        description="Lossless k-mer multiset compression via Eulerian covers "
                    "of de Bruijn graphs.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("compress", help="compress sequences into cover text")
    p.add_argument("--input", required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--format", choices=seqio.FORMATS, default=None)
    p.add_argument("--mode", choices=("list", "frequency"), default="list")
    p.add_argument("--codec", action="store_true",
                   help="also run BWT+RLE over the cover text")
    p.add_argument("--output-prefix", default=None)
    p.set_defaults(func=cmd_compress)

    p = sub.add_parser("decompress", help="restore k-mers from cover text")
    p.add_argument("--prefix", required=True,
                   help="artifact prefix written by compress")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--codec", action="store_true",
                   help="start from the .rle artifact instead of .ctr")
    p.add_argument("--output", default=None)
    p.set_defaults(func=cmd_decompress)

    p = sub.add_parser("verify", help="check cover text against its source")
    p.add_argument("--input", required=True, help="original sequence file")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--format", choices=seqio.FORMATS, default=None)
    p.add_argument("--prefix", required=True)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("simulate", help="generate synthetic input")
    p.add_argument("--kind", choices=("kmers", "reads"), required=True)
    p.add_argument("--k", type=int, default=8)
    p.add_argument("--r", type=float, default=0.5)
    p.add_argument("--distribution", default="constant:1",
                   help="constant:C | uniform:LO:HI | geometric:P")
    p.add_argument("--genome-length", type=int, default=100000)
    p.add_argument("--read-length", type=int, default=100)
    p.add_argument("--coverage", type=float, default=5.0)
    p.add_argument("--error-rate", type=float, default=0.01)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--output", required=True)
    p.add_argument("--genome-output", default=None)
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("sweep", help="compression ratio across space fractions")
    p.add_argument("--k", type=int, default=8)
    p.add_argument("--r-list",
                   default="0.05,0.1,0.15,0.2,0.25,0.3,0.35,0.4,0.45,0.5,"
                           "0.55,0.6,0.65,0.7,0.75,0.8,0.85,0.9,0.95,1.0")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--distribution", default="constant:1")
    p.add_argument("--mode", choices=("list", "frequency"), default="list")
    p.add_argument("--output", default=None, help="CSV path")
    p.add_argument("--plot", default=None, help="SVG path")
    p.add_argument("--report", choices=("text", "csv"), default="text")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("bench", help="size/time report across algorithms")
    p.add_argument("--input", required=True)
    p.add_argument("--format", choices=seqio.FORMATS, default=None)
    p.add_argument("--k-list", default="15")
    p.add_argument("--output-dir", default=None)
    p.add_argument("--output", default=None, help="CSV path")
    p.add_argument("--report", choices=("text", "csv"), default="text")
    p.set_defaults(func=cmd_bench)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, OSError, ImportError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
