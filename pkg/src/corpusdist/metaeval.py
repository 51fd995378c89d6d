"""Meta-evaluation of metric variants by source/target Pearson correlation.

Every document of a parallel collection yields one corpus per side; each
metric variant produces one distance per unordered document pair on each
side independently. A variant whose source-side distances correlate better
with its target-side distances is the more reliable metric, so variants
are ranked by descending r.
"""

from __future__ import annotations

import csv
import io
import math
import warnings as _warnings
from dataclasses import dataclass
from typing import Mapping, Sequence

import numpy as np

from ._parallel import pmap
from .distance import (
    MetricConfig,
    build_vocabulary,
    directed_encoded,
    encode_profile,
    symmetric_encoded,
    variant_label,
)
from .errors import ComparabilityWarning, DataError, LanguageNotFoundError, UndefinedCorrelationError
from .frequency import FrequencyList, build_frequency_list, top_n
from .ingest import ParallelDocument, extract_side


@dataclass(frozen=True)
class VariantResult:
    """Pearson r (None when undefined) and the point cloud behind it."""

    name: str
    config: MetricConfig
    r: float | None
    points: tuple[tuple[float, float], ...]


@dataclass(frozen=True)
class MetaEvalReport:
    """Per-variant correlations over one parallel collection."""

    source_lang: str
    target_lang: str
    n_sections: int
    results: Mapping[str, VariantResult]
    ranking: tuple[str, ...]
    pair_ids: tuple[tuple[str, str], ...]
    warnings: tuple[str, ...] = ()


def pearson_r(xs: Sequence[float], ys: Sequence[float]) -> float:
    """Standard product-moment correlation coefficient.

    Raises :class:`UndefinedCorrelationError` for a constant input instead
    of silently returning 0.
    """
    x = np.asarray(xs, dtype=np.float64)
    y = np.asarray(ys, dtype=np.float64)
    if x.ndim != 1 or y.ndim != 1 or x.size != y.size:
        raise DataError(f"score lists must have equal length, got {x.size} and {y.size}")
    if x.size < 2:
        raise DataError("correlation needs at least 2 points")
    if float(x.min()) == float(x.max()) or float(y.min()) == float(y.max()):
        raise UndefinedCorrelationError("correlation is undefined for a constant score vector")
    dx = x - x.mean()
    dy = y - y.mean()
    denom = math.sqrt(float((dx * dx).sum()) * float((dy * dy).sum()))
    return float((dx * dy).sum() / denom)


@dataclass(frozen=True)
class _SidePrep:
    ids: tuple[str, ...]  # sorted ascending; fixes pair orientation
    src_profiles: tuple[FrequencyList, ...]
    tgt_profiles: tuple[FrequencyList, ...]
    warnings: tuple[str, ...]

    @property
    def pairs(self) -> list[tuple[int, int]]:
        k = len(self.ids)
        return [(i, j) for i in range(k) for j in range(i + 1, k)]


def _prepare_sides(docs: Sequence[ParallelDocument], src: str, tgt: str) -> _SidePrep:
    usable: list[tuple[str, FrequencyList, FrequencyList]] = []
    warnings: list[str] = []
    seen: set[str] = set()
    for doc in docs:
        if doc.id in seen:
            raise DataError(f"duplicate document id {doc.id!r}")
        seen.add(doc.id)
        try:
            src_corpus = extract_side(doc, src)
            tgt_corpus = extract_side(doc, tgt)
        except LanguageNotFoundError as exc:
            warnings.append(f"document {doc.id!r} excluded: {exc}")
            continue
        if src_corpus.token_count == 0 or tgt_corpus.token_count == 0:
            warnings.append(f"document {doc.id!r} excluded: one side has no tokens")
            continue
        usable.append((doc.id, build_frequency_list(src_corpus), build_frequency_list(tgt_corpus)))
    if len(usable) < 3:
        raise DataError(f"need at least 3 usable documents, got {len(usable)}")
    usable.sort(key=lambda item: item[0])
    return _SidePrep(
        ids=tuple(item[0] for item in usable),
        src_profiles=tuple(item[1] for item in usable),
        tgt_profiles=tuple(item[2] for item in usable),
        warnings=tuple(warnings),
    )


class _PairDistances:
    """Per-(n, policy) cache of directed/symmetric pair values on both sides."""

    def __init__(self, prep: _SidePrep, threads: int = 1):
        self._prep = prep
        self._threads = threads
        self._directed: dict[tuple[int, str], tuple[list, list]] = {}
        self._symmetric: dict[tuple[int, str], tuple[list, list]] = {}

    def _encode(self, profiles, cfg: MetricConfig):
        vocab = build_vocabulary(profiles)
        return [
            encode_profile(fl, top_n(fl, cfg.n), vocab, cfg.missing_word_policy)
            for fl in profiles
        ]

    def _directed_side(self, profiles, cfg: MetricConfig) -> list[tuple[float, float]]:
        encoded = self._encode(profiles, cfg)

        def both(pair):
            i, j = pair
            return directed_encoded(encoded[i], encoded[j])[0], directed_encoded(encoded[j], encoded[i])[0]

        return pmap(both, self._prep.pairs, self._threads)

    def _symmetric_side(self, profiles, cfg: MetricConfig) -> list[float]:
        encoded = self._encode(profiles, cfg)

        def one(pair):
            i, j = pair
            return symmetric_encoded(encoded[i], encoded[j], cfg.n)[0]

        return pmap(one, self._prep.pairs, self._threads)

    def vectors(self, cfg: MetricConfig) -> tuple[list[float], list[float]]:
        key = (cfg.n, cfg.missing_word_policy)
        if cfg.variant == "symmetric_common":
            if key not in self._symmetric:
                self._symmetric[key] = (
                    self._symmetric_side(self._prep.src_profiles, cfg),
                    self._symmetric_side(self._prep.tgt_profiles, cfg),
                )
            return list(self._symmetric[key][0]), list(self._symmetric[key][1])
        if key not in self._directed:
            self._directed[key] = (
                self._directed_side(self._prep.src_profiles, cfg),
                self._directed_side(self._prep.tgt_profiles, cfg),
            )
        dirs_src, dirs_tgt = self._directed[key]
        return [_combine_pair(d, cfg) for d in dirs_src], [_combine_pair(d, cfg) for d in dirs_tgt]


def _combine_pair(directions: tuple[float, float], cfg: MetricConfig) -> float:
    d_fwd, d_bwd = directions
    if cfg.variant == "minimum":
        return min(d_fwd, d_bwd)
    if cfg.variant == "average":
        return (d_fwd + d_bwd) / 2.0
    if cfg.variant == "directed_ab":
        return d_fwd
    return d_bwd  # directed_ba


def side_distance_vectors(
    docs: Sequence[ParallelDocument], src: str, tgt: str, cfg: MetricConfig, threads: int = 1
) -> tuple[list[float], list[float], list[tuple[str, str]]]:
    """Aligned per-pair distance vectors for the source and target sides.

    Pairs are unordered document pairs, enumerated and oriented by
    ascending document id on both sides, so results do not depend on the
    order of ``docs``. Documents missing a side (or with an empty side)
    are excluded with a :class:`ComparabilityWarning`.
    """
    prep = _prepare_sides(docs, src, tgt)
    for note in prep.warnings:
        _warnings.warn(note, ComparabilityWarning, stacklevel=2)
    xs, ys = _PairDistances(prep, threads).vectors(cfg)
    pair_ids = [(prep.ids[i], prep.ids[j]) for i, j in prep.pairs]
    return xs, ys, pair_ids


def metaeval_report(
    docs: Sequence[ParallelDocument],
    src: str,
    tgt: str,
    variants: Sequence[MetricConfig],
    threads: int = 1,
) -> MetaEvalReport:
    """Correlate source- and target-side distances for every metric variant.

    Variants whose correlation is undefined are reported with r = None and
    excluded from the ranking; the ranking sorts by descending r with ties
    broken by variant name.
    """
    if not variants:
        raise DataError("no metric variants given")
    prep = _prepare_sides(docs, src, tgt)
    cache = _PairDistances(prep, threads)
    pair_ids = tuple((prep.ids[i], prep.ids[j]) for i, j in prep.pairs)

    results: dict[str, VariantResult] = {}
    report_warnings = list(prep.warnings)
    for cfg in variants:
        name = variant_label(cfg, taken=tuple(results))
        xs, ys = cache.vectors(cfg)
        try:
            r = pearson_r(xs, ys)
        except UndefinedCorrelationError as exc:
            r = None
            report_warnings.append(f"variant {name}: {exc}")
        results[name] = VariantResult(
            name=name, config=cfg, r=r, points=tuple(zip(xs, ys))
        )

    ranked = sorted(
        (name for name, res in results.items() if res.r is not None),
        key=lambda name: (-results[name].r, name),
    )
    return MetaEvalReport(
        source_lang=src.lower(),
        target_lang=tgt.lower(),
        n_sections=len(prep.ids),
        results=results,
        ranking=tuple(ranked),
        pair_ids=pair_ids,
        warnings=tuple(report_warnings),
    )


def export_scatter(report: MetaEvalReport, variant: str) -> str:
    """Scatter CSV (pair_a,pair_b,d_source,d_target) for one variant, in pair order."""
    if variant not in report.results:
        raise DataError(
            f"variant {variant!r} not in report; present: {', '.join(report.results)}"
        )
    points = report.results[variant].points
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["pair_a", "pair_b", "d_source", "d_target"])
    for (pair_a, pair_b), (d_src, d_tgt) in zip(report.pair_ids, points):
        writer.writerow([pair_a, pair_b, repr(d_src), repr(d_tgt)])
    return buf.getvalue()


def format_report(report: MetaEvalReport) -> str:
    """Human-readable variant table, best correlation first."""
    n_pairs = len(report.pair_ids)
    lines = [
        f"source {report.source_lang}  target {report.target_lang}  "
        f"sections {report.n_sections}  pairs {n_pairs}",
        f"{'variant':<34}{'r':>10}  points",
    ]
    undefined = sorted(name for name, res in report.results.items() if res.r is None)
    for name in (*report.ranking, *undefined):
        res = report.results[name]
        r_text = f"{res.r:.4f}" if res.r is not None else "n/a"
        lines.append(f"{name:<34}{r_text:>10}  {len(res.points)}")
    return "\n".join(lines) + "\n"


def report_csv(report: MetaEvalReport) -> str:
    """Machine-readable variant table (variant,r,n_points)."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["variant", "r", "n_points"])
    undefined = sorted(name for name, res in report.results.items() if res.r is None)
    for name in (*report.ranking, *undefined):
        res = report.results[name]
        writer.writerow([name, repr(res.r) if res.r is not None else "n/a", len(res.points)])
    return buf.getvalue()
