"""Directed and symmetric chi-square distances between frequency profiles.

The directed score from A to B sums, over A's top-n list,
``(fA - fB)^2 / fA`` where fB is the relative frequency of the word in B
under the configured lookup policy; a word absent from the lookup adds
its own fA (the fB = 0 specialization). The two directions are combined
by minimum, average, or a single direction. The symmetric variant instead
scores the n most frequent common words by ``(fA - fB)^2 / (fA + fB)``.

Token strings are encoded once per comparison into integer ids that follow
lexicographic token order, so all tie-breaking stays deterministic and the
hot accumulation runs over numpy arrays (see :mod:`corpusdist._kernels`).
"""

from __future__ import annotations

import logging
import warnings as _warnings
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from . import _kernels
from .errors import ComparabilityWarning, ConfigError
from .frequency import FrequencyList, TopList, build_frequency_list, top_n
from .ingest import Corpus

logger = logging.getLogger(__name__)

VARIANTS = ("directed_ab", "directed_ba", "minimum", "average", "symmetric_common")
MISSING_POLICIES = ("top_n_lookup", "full_list_lookup")

SHORT_VARIANTS = {
    "ab": "directed_ab",
    "ba": "directed_ba",
    "min": "minimum",
    "avg": "average",
    "sym": "symmetric_common",
}
SHORT_POLICIES = {"topn": "top_n_lookup", "full": "full_list_lookup"}

# Upper bound for the symmetric term sum is sum(fA + fB) <= 2, so 2.0 is
# unreachable and serves as the zero-common-vocabulary sentinel.
SYMMETRIC_DISJOINT_SENTINEL = 2.0


@dataclass(frozen=True)
class MetricConfig:
    """Metric variant, top-list size, and missing-word lookup policy."""

    n: int = 500
    variant: str = "minimum"
    missing_word_policy: str = "top_n_lookup"

    def __post_init__(self):
        object.__setattr__(self, "variant", SHORT_VARIANTS.get(self.variant, self.variant))
        object.__setattr__(
            self,
            "missing_word_policy",
            SHORT_POLICIES.get(self.missing_word_policy, self.missing_word_policy),
        )
        if self.n < 1:
            raise ConfigError(f"top-list size must be >= 1, got {self.n}")
        if self.variant not in VARIANTS:
            raise ConfigError(f"unknown variant {self.variant!r}; choose from {VARIANTS}")
        if self.missing_word_policy not in MISSING_POLICIES:
            raise ConfigError(
                f"unknown missing-word policy {self.missing_word_policy!r}; "
                f"choose from {MISSING_POLICIES}"
            )


@dataclass(frozen=True)
class DistancePair:
    """The two directed scores for one corpus pair, with missing-word counts."""

    a_id: str
    b_id: str
    d_ab: float
    d_ba: float
    n_missing_ab: int
    n_missing_ba: int


@dataclass(frozen=True, eq=False)
class EncodedProfile:
    """One profile turned into kernel-ready arrays against a shared vocabulary."""

    top_ids: np.ndarray  # int64, in top-list order
    top_f: np.ndarray
    lookup_ids: np.ndarray  # int64, ascending; top-n or full list per policy
    lookup_f: np.ndarray
    full_ids: np.ndarray  # int64, ascending == lexicographic token order
    full_f: np.ndarray


def build_vocabulary(freq_lists: Iterable[FrequencyList]) -> dict[str, int]:
    """Assign ids in lexicographic token order over the union of profiles."""
    tokens: set[str] = set()
    for fl in freq_lists:
        tokens.update(fl.entries.keys())
    return {token: i for i, token in enumerate(sorted(tokens))}


def encode_profile(
    freqs: FrequencyList, top: TopList, vocab: dict[str, int], policy: str
) -> EncodedProfile:
    """Encode a profile plus its top list for the kernels."""
    k = len(top.items)
    top_ids = np.fromiter((vocab[w] for w, _ in top.items), np.int64, k)
    top_f = np.fromiter((f for _, f in top.items), np.float64, k)
    ordered_tokens = sorted(freqs.entries)  # ascending ids, vocab is order-preserving
    v = len(ordered_tokens)
    full_ids = np.fromiter((vocab[w] for w in ordered_tokens), np.int64, v)
    full_f = np.fromiter((freqs.entries[w][1] for w in ordered_tokens), np.float64, v)
    if policy == "full_list_lookup":
        lookup_ids, lookup_f = full_ids, full_f
    else:
        order = np.argsort(top_ids)
        lookup_ids = top_ids[order]
        lookup_f = top_f[order]
    for arr in (top_ids, top_f, full_ids, full_f, lookup_ids, lookup_f):
        arr.setflags(write=False)
    return EncodedProfile(top_ids, top_f, lookup_ids, lookup_f, full_ids, full_f)


def directed_encoded(enc_a: EncodedProfile, enc_b: EncodedProfile) -> tuple[float, int]:
    """Directed score A -> B over already-encoded profiles."""
    score, missing = _kernels.directed_terms(
        enc_a.top_ids, enc_a.top_f, enc_b.lookup_ids, enc_b.lookup_f
    )
    return float(score), int(missing)


def symmetric_encoded(enc_a: EncodedProfile, enc_b: EncodedProfile, n: int) -> tuple[float, int]:
    """Symmetric common-word score over encoded profiles.

    Returns (score, number of common tokens); with zero common tokens the
    score is the disjoint-vocabulary sentinel.
    """
    common, idx_a, idx_b = np.intersect1d(
        enc_a.full_ids, enc_b.full_ids, assume_unique=True, return_indices=True
    )
    if common.size == 0:
        return SYMMETRIC_DISJOINT_SENTINEL, 0
    f_a = enc_a.full_f[idx_a]
    f_b = enc_b.full_f[idx_b]
    sums = f_a + f_b
    # Most frequent common words first; ties by ascending id (= token order).
    order = np.lexsort((common, -sums))[:n]
    score = _kernels.symmetric_terms(f_a[order], f_b[order])
    return float(score), int(common.size)


def chi2_directed(top_a: TopList, profile_b: FrequencyList, cfg: MetricConfig) -> tuple[float, int]:
    """Directed chi-square score from A's top list into B's profile.

    Returns (score, n_missing). The lookup side depends on
    ``cfg.missing_word_policy``: B's own top-``cfg.n`` list, or B's full
    profile.
    """
    if not top_a.items:
        raise ConfigError("top list for the A side is empty")
    vocab = build_vocabulary([top_a.source, profile_b])
    enc_a = encode_profile(top_a.source, top_a, vocab, cfg.missing_word_policy)
    enc_b = encode_profile(profile_b, top_n(profile_b, cfg.n), vocab, cfg.missing_word_policy)
    return directed_encoded(enc_a, enc_b)


def chi2_symmetric_common(f_a: FrequencyList, f_b: FrequencyList, cfg: MetricConfig) -> float:
    """Chi-square over the cfg.n most frequent words common to both profiles.

    Identical under argument swap. With fewer than n common tokens all of
    them are used; with none at all the unreachable sentinel value 2.0 is
    returned and a :class:`ComparabilityWarning` is issued.
    """
    vocab = build_vocabulary([f_a, f_b])
    enc_a = encode_profile(f_a, top_n(f_a, cfg.n), vocab, cfg.missing_word_policy)
    enc_b = encode_profile(f_b, top_n(f_b, cfg.n), vocab, cfg.missing_word_policy)
    score, n_common = symmetric_encoded(enc_a, enc_b, cfg.n)
    if n_common == 0:
        _warnings.warn(
            f"no common tokens between {f_a.corpus_id!r} and {f_b.corpus_id!r}; "
            f"returning sentinel {SYMMETRIC_DISJOINT_SENTINEL}",
            ComparabilityWarning,
            stacklevel=2,
        )
    elif n_common < cfg.n:
        logger.debug(
            "symmetric_common(%s, %s): only %d common tokens for n=%d",
            f_a.corpus_id,
            f_b.corpus_id,
            n_common,
            cfg.n,
        )
    return score


def pair_from_profiles(f_a: FrequencyList, f_b: FrequencyList, cfg: MetricConfig) -> DistancePair:
    """Both directed scores for a pair of prebuilt profiles."""
    vocab = build_vocabulary([f_a, f_b])
    enc_a = encode_profile(f_a, top_n(f_a, cfg.n), vocab, cfg.missing_word_policy)
    enc_b = encode_profile(f_b, top_n(f_b, cfg.n), vocab, cfg.missing_word_policy)
    d_ab, missing_ab = directed_encoded(enc_a, enc_b)
    d_ba, missing_ba = directed_encoded(enc_b, enc_a)
    return DistancePair(
        a_id=f_a.corpus_id,
        b_id=f_b.corpus_id,
        d_ab=d_ab,
        d_ba=d_ba,
        n_missing_ab=missing_ab,
        n_missing_ba=missing_ba,
    )


def distance_pair(corpus_a: Corpus, corpus_b: Corpus, cfg: MetricConfig) -> DistancePair:
    """Independent directed chi-square calculations A -> B and B -> A."""
    return pair_from_profiles(build_frequency_list(corpus_a), build_frequency_list(corpus_b), cfg)


def combine(pair: DistancePair, cfg: MetricConfig) -> float:
    """Collapse a direction pair into one score per the configured policy."""
    if cfg.variant == "minimum":
        return min(pair.d_ab, pair.d_ba)
    if cfg.variant == "average":
        return (pair.d_ab + pair.d_ba) / 2.0
    if cfg.variant == "directed_ab":
        return pair.d_ab
    if cfg.variant == "directed_ba":
        return pair.d_ba
    raise ConfigError(
        "symmetric_common is not a combination of directed scores; "
        "use chi2_symmetric_common"
    )


def variant_label(cfg: MetricConfig, taken: Sequence[str] = ()) -> str:
    """Report key for a config: the variant name, disambiguated if reused."""
    if cfg.variant not in taken:
        return cfg.variant
    policy = "topn" if cfg.missing_word_policy == "top_n_lookup" else "full"
    label = f"{cfg.variant}[n={cfg.n},missing={policy}]"
    k = 2
    while label in taken:
        label = f"{cfg.variant}[n={cfg.n},missing={policy}]#{k}"
        k += 1
    return label
