"""Seeded generator of multi-domain bilingual parallel collections.

Each domain is a Zipfian unigram model over a shared core vocabulary plus
a domain-specific tail; ranks are assigned over a per-domain seeded
permutation of that vocabulary so each domain has a distinctive frequency
profile while still overlapping the others. The target side is a
token-for-token translation through a bijective map, with an optional
free-translation knob: each target token is replaced, with probability
``noise_rate``, by a uniform draw from the domain's target vocabulary.

Randomness comes from a single sequential Philox (4x64) counter-based
stream consumed via ``BitGenerator.random_raw``, mapped to uniforms as
``(raw >> 11) * 2**-53``. The draw order is fixed: first one permutation
per domain (in domain order), then per section (domain-major, section
order) an optional size draw followed by source picks, noise uniforms,
and replacement picks, each ``tokens`` long. Draw counts never depend on
``noise_rate``, so replacement sets are nested across noise levels at a
fixed seed, and identical seeds give byte-identical collections.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Mapping, Sequence
from xml.sax.saxutils import escape

import numpy as np
from numpy.random import Philox

from .errors import ConfigError
from .ingest import ParallelDocument, TranslationUnit

TOKENS_PER_SEGMENT = 12


@dataclass(frozen=True)
class SynthConfig:
    """Shape, vocabulary, noise, and seed of a generated collection."""

    n_domains: int = 4
    sections_per_domain: int = 3
    tokens_per_section: int = 20_000
    shared_vocab_size: int = 150
    domain_vocab_size: int = 150
    zipf_exponent: float = 1.0
    noise_rate: float = 0.0
    seed: int = 0
    src_lang: str = "en"
    tgt_lang: str = "fr"
    tokens_range: tuple[int, int] | None = None

    def __post_init__(self):
        for name in (
            "n_domains",
            "sections_per_domain",
            "tokens_per_section",
            "shared_vocab_size",
            "domain_vocab_size",
        ):
            if getattr(self, name) < 1:
                raise ConfigError(f"{name} must be positive, got {getattr(self, name)}")
        if not 0.0 <= self.noise_rate <= 1.0:
            raise ConfigError(f"noise_rate must be in [0, 1], got {self.noise_rate}")
        if self.zipf_exponent < 0.0:
            raise ConfigError(f"zipf_exponent must be >= 0, got {self.zipf_exponent}")
        if self.seed < 0:
            raise ConfigError(f"seed must be >= 0, got {self.seed}")
        if self.src_lang.lower() == self.tgt_lang.lower():
            raise ConfigError("source and target languages must differ")
        if self.tokens_range is not None:
            lo, hi = self.tokens_range
            if lo < 1 or hi < lo:
                raise ConfigError(f"tokens_range must satisfy 1 <= lo <= hi, got {self.tokens_range}")


@dataclass(frozen=True)
class DomainModel:
    """One domain's vocabulary in rank order, Zipf weights, and translation map."""

    domain_name: str
    vocabulary: tuple[str, ...]
    weights: np.ndarray
    translation_map: Mapping[str, str]


@dataclass(frozen=True)
class SectionInfo:
    """Generated-section metadata: id and the domain it was drawn from."""

    id: str
    domain: str


class _PhiloxStream:
    """Sequential uniform stream over Philox raw output."""

    def __init__(self, seed: int):
        self._bg = Philox(key=seed)

    def uniforms(self, n: int) -> np.ndarray:
        raw = self._bg.random_raw(n)
        return (raw >> np.uint64(11)) * 2.0**-53


def _build_domains(cfg: SynthConfig, stream: _PhiloxStream) -> list[DomainModel]:
    total_vocab = cfg.shared_vocab_size + cfg.n_domains * cfg.domain_vocab_size
    width = len(str(total_vocab - 1))
    # Fixed-width indices keep the source->target bijection order-preserving.
    src_names = [f"w{i:0{width}d}" for i in range(total_vocab)]
    tgt_names = [f"v{i:0{width}d}" for i in range(total_vocab)]

    domains = []
    for d in range(cfg.n_domains):
        tail_start = cfg.shared_vocab_size + d * cfg.domain_vocab_size
        indices = list(range(cfg.shared_vocab_size)) + list(
            range(tail_start, tail_start + cfg.domain_vocab_size)
        )
        keys = stream.uniforms(len(indices))
        order = np.argsort(keys, kind="stable")
        vocabulary = tuple(src_names[indices[k]] for k in order)
        ranks = np.arange(1, len(vocabulary) + 1, dtype=np.float64)
        weights = ranks ** (-cfg.zipf_exponent)
        weights.setflags(write=False)
        translation_map = {src_names[i]: tgt_names[i] for i in indices}
        domains.append(
            DomainModel(
                domain_name=f"dom{d}",
                vocabulary=vocabulary,
                weights=weights,
                translation_map=translation_map,
            )
        )
    return domains


def _section_size(cfg: SynthConfig, stream: _PhiloxStream) -> int:
    if cfg.tokens_range is None:
        return cfg.tokens_per_section
    lo, hi = cfg.tokens_range
    u = float(stream.uniforms(1)[0])
    return min(lo + int(u * (hi - lo + 1)), hi)


def _segments(tokens: np.ndarray) -> list[str]:
    return [
        " ".join(tokens[start : start + TOKENS_PER_SEGMENT])
        for start in range(0, len(tokens), TOKENS_PER_SEGMENT)
    ]


def generate_collection(cfg: SynthConfig) -> list[tuple[SectionInfo, ParallelDocument]]:
    """Generate every section of every domain, fully determined by cfg.seed."""
    stream = _PhiloxStream(cfg.seed)
    domains = _build_domains(cfg, stream)
    src = cfg.src_lang.lower()
    tgt = cfg.tgt_lang.lower()

    collection = []
    for model in domains:
        src_vocab = np.array(model.vocabulary)
        tgt_vocab = np.array([model.translation_map[w] for w in model.vocabulary])
        cum = np.cumsum(model.weights)
        cum /= cum[-1]
        vocab_size = len(model.vocabulary)
        for s in range(cfg.sections_per_domain):
            n_tokens = _section_size(cfg, stream)
            picks = np.searchsorted(cum, stream.uniforms(n_tokens), side="right")
            noise_u = stream.uniforms(n_tokens)
            replacement = np.minimum(
                (stream.uniforms(n_tokens) * vocab_size).astype(np.int64), vocab_size - 1
            )
            src_tokens = src_vocab[picks]
            tgt_tokens = tgt_vocab[picks].copy()
            mask = noise_u < cfg.noise_rate
            tgt_tokens[mask] = tgt_vocab[replacement[mask]]

            units = tuple(
                TranslationUnit(variants={src: src_seg, tgt: tgt_seg})
                for src_seg, tgt_seg in zip(_segments(src_tokens), _segments(tgt_tokens))
            )
            section_id = f"{model.domain_name}_u{s}"
            doc = ParallelDocument(
                id=section_id, units=units, languages=frozenset({src, tgt})
            )
            collection.append((SectionInfo(id=section_id, domain=model.domain_name), doc))
    return collection


def write_tmx(doc: ParallelDocument) -> str:
    """Serialize a document to TMX 1.4 text, deterministically."""
    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        '<tmx version="1.4">',
        '  <header creationtool="corpusdist" creationtoolversion="0.1.0" '
        'datatype="plaintext" segtype="block" adminlang="en" srclang="*all*" o-tmf="plaintext"/>',
        "  <body>",
    ]
    for unit in doc.units:
        lines.append("    <tu>")
        for lang in sorted(unit.variants):
            lines.append(
                f'      <tuv xml:lang="{escape(lang)}"><seg>{escape(unit.variants[lang])}</seg></tuv>'
            )
        lines.append("    </tu>")
    lines.extend(["  </body>", "</tmx>"])
    return "\n".join(lines) + "\n"


def write_collection(
    collection: Sequence[tuple[SectionInfo, ParallelDocument]], out_dir: Path
) -> list[Path]:
    """Write one TMX per section plus a labels.csv (id,domain) into out_dir."""
    out_dir.mkdir(parents=True, exist_ok=True)
    paths = []
    label_rows = ["id,domain"]
    for info, doc in collection:
        path = out_dir / f"{info.id}.tmx"
        path.write_text(write_tmx(doc), encoding="utf-8", newline="")
        paths.append(path)
        label_rows.append(f"{info.id},{info.domain}")
    labels_path = out_dir / "labels.csv"
    labels_path.write_text("\n".join(label_rows) + "\n", encoding="utf-8", newline="")
    paths.append(labels_path)
    return paths


_KV_PARSERS = {
    "n_domains": int,
    "sections_per_domain": int,
    "tokens_per_section": int,
    "shared_vocab_size": int,
    "domain_vocab_size": int,
    "zipf_exponent": float,
    "noise_rate": float,
    "seed": int,
    "src_lang": str,
    "tgt_lang": str,
}


def parse_kv_config(text: str) -> dict:
    """Parse a flat key=value config file into SynthConfig keyword arguments."""
    values: dict = {}
    for lineno, raw_line in enumerate(text.splitlines(), start=1):
        line = raw_line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}: expected key=value, got {raw_line!r}")
        key, _, value = line.partition("=")
        key = key.strip()
        value = value.strip()
        if key == "tokens_range":
            lo, sep, hi = value.partition(":")
            if not sep:
                raise ConfigError(f"line {lineno}: tokens_range must be LO:HI, got {value!r}")
            values[key] = (int(lo), int(hi))
        elif key in _KV_PARSERS:
            values[key] = _KV_PARSERS[key](value)
        else:
            raise ConfigError(f"line {lineno}: unknown config key {key!r}")
    return values
