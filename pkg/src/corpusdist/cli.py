"""Subcommand front-end: freq, dist, matrix, metaeval, synth.

Exit codes: 0 on success, 1 on data errors, 2 on usage errors (argparse).
All outputs are byte-deterministic for identical inputs and flags,
regardless of --threads.
"""

from __future__ import annotations

import argparse
import csv
import logging
import os
import sys
from pathlib import Path

from .distance import (
    MetricConfig,
    SHORT_POLICIES,
    SHORT_VARIANTS,
    chi2_symmetric_common,
    combine,
    distance_pair,
)
from .errors import ConfigError, CorpusDistError, DataError
from .frequency import build_frequency_list, profile_csv
from .ingest import Corpus, extract_side, parse_tmx, read_plaintext
from .manifest import build_manifest, write_manifest
from .matrix import (
    Section,
    format_agreement,
    label_agreement,
    pairwise_matrix,
    render_heatmap,
    render_matrix_csv,
)
from .metaeval import export_scatter, format_report, metaeval_report, report_csv
from .synth import SynthConfig, generate_collection, parse_kv_config, write_collection

logger = logging.getLogger("corpusdist")

METRIC_CHOICES = tuple(SHORT_VARIANTS)
MISSING_CHOICES = tuple(SHORT_POLICIES)


def _metric_list(value: str) -> list[str]:
    names = [part.strip() for part in value.split(",") if part.strip()]
    if not names:
        raise argparse.ArgumentTypeError("expected a comma-separated metric list")
    for name in names:
        if name not in SHORT_VARIANTS:
            raise argparse.ArgumentTypeError(
                f"unknown metric {name!r}; choose from {', '.join(METRIC_CHOICES)}"
            )
    return names


def _tokens_range(value: str) -> tuple[int, int]:
    lo, sep, hi = value.partition(":")
    if not sep:
        raise argparse.ArgumentTypeError("expected LO:HI")
    try:
        return int(lo), int(hi)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _add_metric_flags(parser: argparse.ArgumentParser, metric_help: str):
    parser.add_argument("--metric", default="min", choices=METRIC_CHOICES, help=metric_help)
    parser.add_argument("--top", type=int, default=500, help="top-list size N (default 500)")
    parser.add_argument(
        "--missing",
        default="topn",
        choices=MISSING_CHOICES,
        help="missing-word lookup: against the top-N list or the full list",
    )


def _load_corpus(path: Path, lang: str, lenient: bool) -> Corpus:
    if path.suffix.lower() == ".tmx":
        doc = parse_tmx(path.read_bytes(), doc_id=path.stem, lenient=lenient)
        return extract_side(doc, lang)
    return read_plaintext(path.read_bytes(), corpus_id=path.stem, lang=lang)


def _collection_files(directory: Path, suffixes: tuple[str, ...]) -> list[Path]:
    if not directory.is_dir():
        raise DataError(f"{directory} is not a directory")
    files = sorted(p for p in directory.iterdir() if p.suffix.lower() in suffixes)
    if not files:
        raise DataError(f"no {'/'.join(suffixes)} files in {directory}")
    return files


def _write(path: Path, text: str):
    path.write_text(text, encoding="utf-8", newline="")
    logger.info("wrote %s", path)


def _ensure_out(out: str) -> Path:
    out_dir = Path(out)
    out_dir.mkdir(parents=True, exist_ok=True)
    return out_dir


def _load_labels(path: Path) -> dict[str, str]:
    labels: dict[str, str] = {}
    with path.open(encoding="utf-8", newline="") as handle:
        for row in csv.reader(handle):
            if not row or row == ["id", "domain"]:
                continue
            if len(row) != 2:
                raise DataError(f"labels file {path}: expected two columns, got {row!r}")
            labels[row[0]] = row[1]
    return labels


def _default_labels(ids: tuple[str, ...]) -> dict[str, str]:
    # Synth-style ids encode the domain before the last underscore.
    return {sid: sid.rsplit("_", 1)[0] if "_" in sid else sid for sid in ids}


def cmd_freq(args) -> int:
    path = Path(args.input)
    corpus = _load_corpus(path, args.lang, args.lenient)
    freqs = build_frequency_list(corpus)
    out_dir = _ensure_out(args.out)
    _write(out_dir / f"freq_{corpus.id}.csv", profile_csv(freqs, limit=args.top))
    config = {"lang": args.lang, "top": args.top, "lenient": args.lenient}
    write_manifest(out_dir, build_manifest("freq", config, [path]))
    return 0


def cmd_dist(args) -> int:
    path_a, path_b = Path(args.a), Path(args.b)
    cfg = MetricConfig(n=args.top, variant=args.metric, missing_word_policy=args.missing)
    corpus_a = _load_corpus(path_a, args.lang, args.lenient)
    corpus_b = _load_corpus(path_b, args.lang, args.lenient)
    lines = [f"variant {cfg.variant}"]
    if cfg.variant == "symmetric_common":
        score = chi2_symmetric_common(
            build_frequency_list(corpus_a), build_frequency_list(corpus_b), cfg
        )
        lines.append(f"combined {score}")
    else:
        pair = distance_pair(corpus_a, corpus_b, cfg)
        lines += [
            f"d_ab {pair.d_ab}",
            f"d_ba {pair.d_ba}",
            f"combined {combine(pair, cfg)}",
            f"n_missing_ab {pair.n_missing_ab}",
            f"n_missing_ba {pair.n_missing_ba}",
        ]
    text = "\n".join(lines) + "\n"
    print(text, end="")
    if args.out:
        out_dir = _ensure_out(args.out)
        _write(out_dir / "result.txt", text)
        config = {
            "metric": cfg.variant,
            "top": cfg.n,
            "missing": cfg.missing_word_policy,
            "lang": args.lang,
            "lenient": args.lenient,
        }
        write_manifest(out_dir, build_manifest("dist", config, [path_a, path_b]))
    return 0


def cmd_matrix(args) -> int:
    files = _collection_files(Path(args.dir), (".tmx", ".txt"))
    cfg = MetricConfig(n=args.top, variant=args.metric, missing_word_policy=args.missing)
    sections = []
    for path in files:
        corpus = _load_corpus(path, args.lang, args.lenient)
        sections.append(Section(id=corpus.id, domain_label="", corpus=corpus))
    m = pairwise_matrix(sections, cfg, threads=args.threads)
    for note in m.warnings:
        logger.warning("%s", note)

    labels = _load_labels(Path(args.labels)) if args.labels else _default_labels(m.labels)
    try:
        agreement_text = format_agreement(label_agreement(m, labels))
    except DataError as exc:
        agreement_text = f"agreement not computed: {exc}\n"

    out_dir = _ensure_out(args.out)
    _write(out_dir / "matrix.csv", render_matrix_csv(m))
    _write(out_dir / "matrix.svg", render_heatmap(m, log_scale=args.log_gray))
    _write(out_dir / "agreement.txt", agreement_text)
    config = {
        "metric": cfg.variant,
        "top": cfg.n,
        "missing": cfg.missing_word_policy,
        "lang": args.lang,
        "lenient": args.lenient,
        "log_gray": args.log_gray,
        "labels": args.labels,
    }
    write_manifest(out_dir, build_manifest("matrix", config, files))
    return 0


def cmd_metaeval(args) -> int:
    files = _collection_files(Path(args.dir), (".tmx",))
    docs = [parse_tmx(p.read_bytes(), doc_id=p.stem, lenient=args.lenient) for p in files]
    variants = [
        MetricConfig(n=args.top, variant=name, missing_word_policy=args.missing)
        for name in args.metric
    ]
    report = metaeval_report(docs, args.src, args.tgt, variants, threads=args.threads)
    for note in report.warnings:
        logger.warning("%s", note)

    text = format_report(report)
    print(text, end="")
    out_dir = _ensure_out(args.out)
    _write(out_dir / "report.txt", text)
    _write(out_dir / "report.csv", report_csv(report))
    for name in report.results:
        _write(out_dir / f"scatter_{name}.csv", export_scatter(report, name))
    config = {
        "metric": ",".join(args.metric),
        "top": args.top,
        "missing": args.missing,
        "src": args.src,
        "tgt": args.tgt,
        "lenient": args.lenient,
    }
    write_manifest(out_dir, build_manifest("metaeval", config, files))
    return 0


def cmd_synth(args) -> int:
    values: dict = {}
    if args.config:
        values.update(parse_kv_config(Path(args.config).read_text(encoding="utf-8")))
    overrides = {
        "n_domains": args.domains,
        "sections_per_domain": args.sections,
        "tokens_per_section": args.tokens,
        "shared_vocab_size": args.shared_vocab,
        "domain_vocab_size": args.domain_vocab,
        "zipf_exponent": args.zipf_exponent,
        "noise_rate": args.noise,
        "seed": args.seed,
        "src_lang": args.src,
        "tgt_lang": args.tgt,
        "tokens_range": args.tokens_range,
    }
    values.update({key: val for key, val in overrides.items() if val is not None})
    cfg = SynthConfig(**values)
    collection = generate_collection(cfg)
    out_dir = _ensure_out(args.out)
    for path in write_collection(collection, out_dir):
        logger.info("wrote %s", path)
    config = {
        "n_domains": cfg.n_domains,
        "sections_per_domain": cfg.sections_per_domain,
        "tokens_per_section": cfg.tokens_per_section,
        "shared_vocab_size": cfg.shared_vocab_size,
        "domain_vocab_size": cfg.domain_vocab_size,
        "zipf_exponent": cfg.zipf_exponent,
        "noise_rate": cfg.noise_rate,
        "seed": cfg.seed,
        "src": cfg.src_lang,
        "tgt": cfg.tgt_lang,
        "tokens_range": list(cfg.tokens_range) if cfg.tokens_range else None,
    }
    write_manifest(out_dir, build_manifest("synth", config, []))
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="corpusdist",
        description="Chi-square comparability distances between corpus sections, "
        "with source/target meta-evaluation of metric variants.",
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)

    p_freq = sub.add_parser("freq", help="dump the relative-frequency profile of one file")
    p_freq.add_argument("input", help="a .tmx or .txt file")
    p_freq.add_argument("--lang", required=True, help="language side (TMX) or label (txt)")
    p_freq.add_argument("--top", type=int, default=None, help="truncate the dump to the top N rows")
    p_freq.add_argument("--lenient", action="store_true", help="skip unsupported TMX content")
    p_freq.add_argument("--out", default=".", help="output directory (default: current)")
    p_freq.set_defaults(func=cmd_freq)

    p_dist = sub.add_parser("dist", help="distance between two files")
    p_dist.add_argument("a")
    p_dist.add_argument("b")
    p_dist.add_argument("--lang", required=True, help="language side (TMX) or label (txt)")
    _add_metric_flags(p_dist, "combination policy (default min)")
    p_dist.add_argument("--lenient", action="store_true")
    p_dist.add_argument("--out", default=None, help="also write result.txt and a manifest here")
    p_dist.set_defaults(func=cmd_dist)

    p_matrix = sub.add_parser("matrix", help="pairwise matrix over a directory of sections")
    p_matrix.add_argument("dir", help="directory of .tmx/.txt section files")
    p_matrix.add_argument("--lang", required=True, help="language side (TMX) or label (txt)")
    _add_metric_flags(p_matrix, "combination policy (default min)")
    p_matrix.add_argument("--labels", default=None, help="CSV of id,domain rows for agreement")
    p_matrix.add_argument("--log-gray", action="store_true", help="log-scale the grayscale mapping")
    p_matrix.add_argument("--threads", type=int, default=os.cpu_count() or 1)
    p_matrix.add_argument("--lenient", action="store_true")
    p_matrix.add_argument("--out", required=True, help="output directory")
    p_matrix.set_defaults(func=cmd_matrix)

    p_meta = sub.add_parser("metaeval", help="correlate source vs target distances per variant")
    p_meta.add_argument("dir", help="directory of parallel .tmx files")
    p_meta.add_argument("--src", required=True, help="source language tag")
    p_meta.add_argument("--tgt", required=True, help="target language tag")
    p_meta.add_argument(
        "--metric",
        type=_metric_list,
        default=["min"],
        help="comma-separated variants, e.g. min,avg,ab,ba,sym",
    )
    p_meta.add_argument("--top", type=int, default=500)
    p_meta.add_argument("--missing", default="topn", choices=MISSING_CHOICES)
    p_meta.add_argument("--threads", type=int, default=os.cpu_count() or 1)
    p_meta.add_argument("--lenient", action="store_true")
    p_meta.add_argument("--out", required=True, help="output directory")
    p_meta.set_defaults(func=cmd_metaeval)

    p_synth = sub.add_parser("synth", help="generate a seeded synthetic parallel collection")
    p_synth.add_argument("--domains", type=int, default=None, help="number of domains")
    p_synth.add_argument("--sections", type=int, default=None, help="sections per domain")
    p_synth.add_argument("--tokens", type=int, default=None, help="tokens per section")
    p_synth.add_argument("--shared-vocab", type=int, default=None)
    p_synth.add_argument("--domain-vocab", type=int, default=None)
    p_synth.add_argument("--zipf-exponent", type=float, default=None)
    p_synth.add_argument("--noise", type=float, default=None, help="free-translation rate in [0,1]")
    p_synth.add_argument("--seed", type=int, default=None)
    p_synth.add_argument("--src", default=None, help="source language tag (default en)")
    p_synth.add_argument("--tgt", default=None, help="target language tag (default fr)")
    p_synth.add_argument("--tokens-range", type=_tokens_range, default=None, metavar="LO:HI")
    p_synth.add_argument("--config", default=None, help="flat key=value config file")
    p_synth.add_argument("--out", required=True, help="output directory")
    p_synth.set_defaults(func=cmd_synth)

    return parser


def main(argv=None) -> int:
    logging.basicConfig(level=logging.INFO, format="%(levelname)s %(message)s")
    args = _build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"error (config): {exc}", file=sys.stderr)
        return 1
    except CorpusDistError as exc:
        print(f"error (data): {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
