"""Relative-frequency profiles and deterministic top-N lists."""

from __future__ import annotations

import csv
import io
from collections import Counter
from dataclasses import dataclass
from typing import Mapping

from .errors import ConfigError, EmptyCorpusError
from .ingest import Corpus


@dataclass(frozen=True)
class FrequencyList:
    """Full relative-frequency profile of one corpus.

    ``entries`` maps token -> (count, rel_freq) with rel_freq = count / total_tokens.
    """

    corpus_id: str
    language: str
    total_tokens: int
    entries: Mapping[str, tuple[int, float]]


@dataclass(frozen=True)
class TopList:
    """The n highest-relative-frequency tokens of a profile.

    Ordered by descending rel_freq, ties broken by ascending token; cut
    strictly at n. ``shortfall`` is how many slots the vocabulary could
    not fill.
    """

    source: FrequencyList
    n: int
    items: tuple[tuple[str, float], ...]
    shortfall: int = 0


def _ranked(entries: Mapping[str, tuple[int, float]]) -> list[tuple[str, tuple[int, float]]]:
    return sorted(entries.items(), key=lambda kv: (-kv[1][0], kv[0]))


def build_frequency_list(corpus: Corpus) -> FrequencyList:
    """Count every token of a nonempty corpus and derive relative frequencies."""
    if corpus.token_count == 0:
        raise EmptyCorpusError(f"corpus {corpus.id!r} is empty; a frequency profile needs tokens")
    total = corpus.token_count
    counts = Counter(corpus.tokens)
    entries = {token: (count, count / total) for token, count in counts.items()}
    return FrequencyList(
        corpus_id=corpus.id, language=corpus.language, total_tokens=total, entries=entries
    )


def top_n(freqs: FrequencyList, n: int) -> TopList:
    """Extract the top-n list of a profile (all tokens, plus a shortfall, if n exceeds the vocabulary)."""
    if n < 1:
        raise ConfigError(f"top-list size must be >= 1, got {n}")
    items = tuple((token, cf[1]) for token, cf in _ranked(freqs.entries)[:n])
    return TopList(source=freqs, n=n, items=items, shortfall=max(0, n - len(items)))


def profile_csv(freqs: FrequencyList, limit: int | None = None) -> str:
    """Dump a profile as CSV (token,count,rel_freq), sorted like a top list."""
    ranked = _ranked(freqs.entries)
    if limit is not None:
        ranked = ranked[:limit]
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["token", "count", "rel_freq"])
    for token, (count, rel) in ranked:
        writer.writerow([token, count, repr(rel)])
    return buf.getvalue()
