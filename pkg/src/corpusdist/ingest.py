"""Parse TMX parallel documents and plain text into language-tagged token sequences.

The TMX subset handled here is the one produced by translation-memory
exports: a ``<body>`` of ``<tu>`` units, each holding per-language
``<tuv xml:lang="..."><seg>...</seg></tuv>`` variants. Inline markup
(bpt, ept, ph, it, hi) is stripped together with its text content; the
five standard XML entities are decoded by the parser.
"""

from __future__ import annotations

import re
import xml.etree.ElementTree as ET
import xml.parsers.expat
from dataclasses import dataclass, field
from typing import Mapping

from .errors import (
    EncodingError,
    LanguageNotFoundError,
    TmxContentError,
    TmxParseError,
)

_XML_LANG = "{http://www.w3.org/XML/1998/namespace}lang"
_INLINE_TAGS = frozenset({"bpt", "ept", "ph", "it", "hi"})

# Maximal runs of letters/digits, optionally joined by an apostrophe or
# hyphen that sits between letters ("cat's", "usb-port"); everything else
# separates. Underscore is excluded from \w on purpose.
_TOKEN_RE = re.compile(r"[^\W_]+(?:(?<=[^\W\d_])['’-](?=[^\W\d_])[^\W_]+)*")


@dataclass(frozen=True)
class Corpus:
    """An identified, language-tagged token sequence for one section."""

    id: str
    language: str
    tokens: tuple[str, ...]

    @property
    def token_count(self) -> int:
        return len(self.tokens)


@dataclass(frozen=True)
class TranslationUnit:
    """One aligned unit: language tag (lowercase) -> markup-free segment text."""

    variants: Mapping[str, str]


@dataclass(frozen=True)
class ParallelDocument:
    """An ordered sequence of translation units plus the languages they cover."""

    id: str
    units: tuple[TranslationUnit, ...]
    languages: frozenset[str]
    warnings: tuple[str, ...] = field(default=())


def tokenize(text: str) -> list[str]:
    """Split text into lowercase word tokens.

    Tokens are maximal runs of Unicode letters/digits; an apostrophe or a
    hyphen joins two runs only when flanked by letters. Deterministic and
    idempotent on its own space-joined output.
    """
    return [m.group().lower() for m in _TOKEN_RE.finditer(text)]


def _primary_subtag(tag: str) -> str:
    return tag.lower().replace("_", "-").split("-", 1)[0]


def _expat_byte_offset(raw: bytes) -> int:
    parser = xml.parsers.expat.ParserCreate()
    try:
        parser.Parse(raw, True)
    except xml.parsers.expat.ExpatError:
        return parser.ErrorByteIndex
    return -1


def _seg_text(seg: ET.Element, lenient: bool) -> str:
    for el in seg.iter():
        if el is seg:
            continue
        if el.tag not in _INLINE_TAGS and not lenient:
            raise TmxContentError(f"unsupported element <{el.tag}> inside <seg>")
    # Keep only the top-level text: children (inline markup or, leniently,
    # unknown elements) are dropped wholesale, their tails kept.
    parts = [seg.text or ""]
    for child in seg:
        parts.append(child.tail or "")
    return "".join(parts)


def parse_tmx(data: bytes | str, doc_id: str = "doc", *, lenient: bool = False) -> ParallelDocument:
    """Parse TMX file content into a :class:`ParallelDocument`.

    Strict mode (default) rejects content outside the supported subset;
    ``lenient=True`` skips it and records a warning on the document.
    """
    raw = data.encode("utf-8") if isinstance(data, str) else data
    try:
        root = ET.fromstring(raw)
    except ET.ParseError as exc:
        offset = _expat_byte_offset(raw)
        raise TmxParseError(f"malformed TMX XML at byte {offset}: {exc}", byte_offset=offset) from exc

    if root.tag != "tmx":
        raise TmxContentError(f"root element is <{root.tag}>, expected <tmx>")
    body = root.find("body")
    if body is None:
        raise TmxContentError("TMX document has no <body>")

    units: list[TranslationUnit] = []
    warnings: list[str] = []
    languages: set[str] = set()
    skipped_units = 0

    for tu in body.findall("tu"):
        variants: dict[str, str] = {}
        for tuv in tu.findall("tuv"):
            lang_attr = tuv.get(_XML_LANG) or tuv.get("lang")
            if not lang_attr:
                if not lenient:
                    raise TmxContentError("<tuv> without an xml:lang attribute")
                warnings.append("skipped <tuv> without xml:lang")
                continue
            seg = tuv.find("seg")
            if seg is None:
                if not lenient:
                    raise TmxContentError(f"<tuv xml:lang={lang_attr!r}> has no <seg>")
                warnings.append(f"skipped <tuv xml:lang={lang_attr!r}> without <seg>")
                continue
            text = _seg_text(seg, lenient)
            lang = lang_attr.lower()
            variants[lang] = f"{variants[lang]} {text}" if lang in variants else text
            languages.add(lang)
        if not variants:
            skipped_units += 1
            continue
        units.append(TranslationUnit(variants=variants))

    if skipped_units:
        warnings.append(f"skipped {skipped_units} unit(s) with no usable variants")

    return ParallelDocument(
        id=doc_id,
        units=tuple(units),
        languages=frozenset(languages),
        warnings=tuple(warnings),
    )


def extract_side(doc: ParallelDocument, lang: str) -> Corpus:
    """Concatenate every segment of one language side, in unit order, and tokenize.

    Language matching is region-insensitive on the primary subtag, so
    ``"EN-US"`` selects variants tagged ``"en"`` and vice versa.
    """
    wanted = _primary_subtag(lang)
    if wanted not in {_primary_subtag(tag) for tag in doc.languages}:
        available = ", ".join(sorted(doc.languages)) or "none"
        raise LanguageNotFoundError(
            f"language {lang!r} not present in document {doc.id!r}; available: {available}"
        )
    tokens: list[str] = []
    for unit in doc.units:
        for vlang, text in unit.variants.items():
            if _primary_subtag(vlang) == wanted:
                tokens.extend(tokenize(text))
    return Corpus(id=doc.id, language=lang.lower().replace("_", "-"), tokens=tuple(tokens))


def read_plaintext(text: bytes | str, corpus_id: str, lang: str) -> Corpus:
    """Tokenize a UTF-8 plain-text file into a :class:`Corpus`."""
    if isinstance(text, bytes):
        try:
            text = text.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise EncodingError(
                f"invalid UTF-8 at byte {exc.start}: {exc.reason}", byte_offset=exc.start
            ) from exc
    return Corpus(id=corpus_id, language=lang.lower().replace("_", "-"), tokens=tuple(tokenize(text)))
