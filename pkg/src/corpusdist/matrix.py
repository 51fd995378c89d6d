"""Labeled pairwise distance matrices and agreement with human domain labels."""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from typing import Mapping, Sequence
from xml.sax.saxutils import escape

import numpy as np

from ._parallel import pmap
from .distance import (
    MetricConfig,
    SYMMETRIC_DISJOINT_SENTINEL,
    build_vocabulary,
    directed_encoded,
    encode_profile,
    symmetric_encoded,
)
from .errors import DataError
from .frequency import build_frequency_list, top_n
from .ingest import Corpus


@dataclass(frozen=True)
class Section:
    """One corpus section with its human-assigned domain label."""

    id: str
    domain_label: str
    corpus: Corpus


@dataclass(frozen=True, eq=False)
class DistanceMatrix:
    """Square array of combined scores over an ordered list of section ids."""

    labels: tuple[str, ...]
    values: np.ndarray
    config: MetricConfig
    warnings: tuple[str, ...] = ()


@dataclass(frozen=True)
class AgreementReport:
    """How well matrix distances agree with domain labels."""

    nn_accuracy: float
    n_evaluated: int
    mean_within: float
    mean_cross: float
    per_domain: Mapping[str, float]


def pairwise_matrix(sections: Sequence[Section], cfg: MetricConfig, threads: int = 1) -> DistanceMatrix:
    """Fill all off-diagonal cells via the configured variant; diagonal is 0.

    Empty sections are excluded with a warning. Cell values are independent
    of evaluation order and of the worker-pool size.
    """
    if len(sections) < 2:
        raise DataError(f"need at least 2 sections, got {len(sections)}")
    ids = [s.id for s in sections]
    if len(set(ids)) != len(ids):
        raise DataError("section ids must be unique")

    warnings: list[str] = []
    kept = []
    for section in sections:
        if section.corpus.token_count == 0:
            warnings.append(f"section {section.id!r} is empty; excluded from the matrix")
        else:
            kept.append(section)
    if len(kept) < 2:
        raise DataError("fewer than 2 nonempty sections remain")

    freq_lists = [build_frequency_list(s.corpus) for s in kept]
    vocab = build_vocabulary(freq_lists)
    encoded = [
        encode_profile(fl, top_n(fl, cfg.n), vocab, cfg.missing_word_policy) for fl in freq_lists
    ]

    k = len(kept)
    pairs = [(i, j) for i in range(k) for j in range(i + 1, k)]
    symmetric = cfg.variant in ("minimum", "average", "symmetric_common")

    def cell(pair: tuple[int, int]):
        i, j = pair
        if cfg.variant == "symmetric_common":
            score, n_common = symmetric_encoded(encoded[i], encoded[j], cfg.n)
            note = (
                f"no common tokens between {kept[i].id!r} and {kept[j].id!r}; "
                f"cell set to sentinel {SYMMETRIC_DISJOINT_SENTINEL}"
                if n_common == 0
                else None
            )
            return i, j, score, score, note
        d_ij, _ = directed_encoded(encoded[i], encoded[j])
        d_ji, _ = directed_encoded(encoded[j], encoded[i])
        if cfg.variant == "minimum":
            v = min(d_ij, d_ji)
            return i, j, v, v, None
        if cfg.variant == "average":
            v = (d_ij + d_ji) / 2.0
            return i, j, v, v, None
        if cfg.variant == "directed_ab":
            return i, j, d_ij, d_ji, None
        return i, j, d_ji, d_ij, None  # directed_ba

    values = np.zeros((k, k), dtype=np.float64)
    for i, j, v_ij, v_ji, note in pmap(cell, pairs, threads):
        values[i, j] = v_ij
        values[j, i] = v_ji
        if note:
            warnings.append(note)
    if symmetric:
        assert np.array_equal(values, values.T)
    values.setflags(write=False)
    return DistanceMatrix(
        labels=tuple(s.id for s in kept),
        values=values,
        config=cfg,
        warnings=tuple(warnings),
    )


def label_agreement(m: DistanceMatrix, labels: Mapping[str, str]) -> AgreementReport:
    """Nearest-neighbor label accuracy plus within- vs cross-domain mean distance.

    Accuracy counts only sections whose domain has at least two members in
    the matrix; the nearest neighbor is the minimum off-diagonal cell of the
    section's row (first index on exact ties).
    """
    missing = [sid for sid in m.labels if sid not in labels]
    if missing:
        raise DataError(f"no domain label for section(s): {', '.join(missing)}")
    domains = [labels[sid] for sid in m.labels]
    counts: dict[str, int] = {}
    for d in domains:
        counts[d] = counts.get(d, 0) + 1
    eligible = [i for i, d in enumerate(domains) if counts[d] >= 2]
    if not eligible:
        raise DataError("no domain has 2 or more sections; agreement is undefined")

    k = len(m.labels)
    masked = m.values.copy()
    np.fill_diagonal(masked, np.inf)

    hits_by_domain: dict[str, int] = {}
    totals_by_domain: dict[str, int] = {}
    hits = 0
    for i in eligible:
        neighbor = int(np.argmin(masked[i]))
        hit = domains[neighbor] == domains[i]
        hits += hit
        totals_by_domain[domains[i]] = totals_by_domain.get(domains[i], 0) + 1
        hits_by_domain[domains[i]] = hits_by_domain.get(domains[i], 0) + hit
    per_domain = {
        d: hits_by_domain.get(d, 0) / totals_by_domain[d] for d in sorted(totals_by_domain)
    }

    same = np.array([[domains[i] == domains[j] for j in range(k)] for i in range(k)])
    off = ~np.eye(k, dtype=bool)
    within = m.values[same & off]
    cross = m.values[~same & off]
    return AgreementReport(
        nn_accuracy=hits / len(eligible),
        n_evaluated=len(eligible),
        mean_within=float(within.mean()) if within.size else math.nan,
        mean_cross=float(cross.mean()) if cross.size else math.nan,
        per_domain=per_domain,
    )


def render_matrix_csv(m: DistanceMatrix) -> str:
    """CSV with a header row of labels and score rows at 4 decimal places."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["id", *m.labels])
    for i, label in enumerate(m.labels):
        writer.writerow([label, *(f"{v:.4f}" for v in m.values[i])])
    return buf.getvalue()


def _gray_mapper(values: np.ndarray, log_scale: bool):
    k = values.shape[0]
    off = values[~np.eye(k, dtype=bool)]
    lo = float(off.min())
    hi = float(off.max())
    if log_scale:
        positive = off[off > 0.0]
        if positive.size == 0 or hi <= float(positive.min()):
            return lambda v: 0.5
        lo_log = math.log(float(positive.min()))
        span = math.log(hi) - lo_log

        def t_log(v: float) -> float:
            if v <= 0.0:
                return 0.0
            return min(max((math.log(v) - lo_log) / span, 0.0), 1.0)

        return t_log
    if hi == lo:
        return lambda v: 0.5

    def t_linear(v: float) -> float:
        return min(max((v - lo) / (hi - lo), 0.0), 1.0)

    return t_linear


def render_heatmap(m: DistanceMatrix, log_scale: bool = False) -> str:
    """Grayscale SVG grid: darkest at the minimum off-diagonal value, lightest at the maximum.

    Deterministic bytes for identical input; a uniform off-diagonal renders
    as uniform mid-gray.
    """
    cell = 22
    k = len(m.labels)
    label_px = 7 * max(len(label) for label in m.labels)
    left = 12 + label_px
    top = 12 + label_px
    width = left + k * cell + 10
    height = top + k * cell + 10
    t_of = _gray_mapper(m.values, log_scale)

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'width="{width}" height="{height}" '
        f'font-family="monospace" font-size="11">'
    ]
    for j, label in enumerate(m.labels):
        x = left + j * cell + cell // 2 + 4
        y = top - 6
        out.append(
            f'<text x="{x}" y="{y}" text-anchor="start" '
            f'transform="rotate(-90 {x} {y})">{escape(label)}</text>'
        )
    for i, row_label in enumerate(m.labels):
        y = top + i * cell
        out.append(
            f'<text x="{left - 6}" y="{y + cell // 2 + 4}" text-anchor="end">'
            f"{escape(row_label)}</text>"
        )
        for j, col_label in enumerate(m.labels):
            v = float(m.values[i, j])
            g = round(t_of(v) * 255)
            out.append(
                f'<rect x="{left + j * cell}" y="{y}" width="{cell}" height="{cell}" '
                f'fill="#{g:02x}{g:02x}{g:02x}" stroke="#404040" stroke-width="1">'
                f"<title>{escape(row_label)}|{escape(col_label)} {v:.4f}</title></rect>"
            )
    out.append("</svg>")
    return "\n".join(out) + "\n"


def format_agreement(report: AgreementReport) -> str:
    """Plain-text rendering of an agreement report."""
    lines = [
        f"nearest_neighbor_accuracy {report.nn_accuracy:.4f}",
        f"sections_evaluated {report.n_evaluated}",
        f"mean_within_domain {report.mean_within:.6f}",
        f"mean_cross_domain {report.mean_cross:.6f}",
    ]
    for domain, acc in report.per_domain.items():
        lines.append(f"domain {domain} accuracy {acc:.4f}")
    return "\n".join(lines) + "\n"
