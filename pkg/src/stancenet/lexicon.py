"""Lexical categories, a social-media tokenizer, and per-tweet category matching."""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources
from pathlib import Path
from typing import Iterable, NamedTuple, Sequence

TOKEN = "token"
SEQUENCE = "sequence"
SUFFIX = "suffix"
CHAR = "char"

_PREFIXES = {"seq:": SEQUENCE, "suf:": SUFFIX, "chr:": CHAR}

_APOSTROPHES = str.maketrans({"’": "'", "‘": "'", "ʼ": "'", "＇": "'"})
# URLs, mentions and hashtags match the first alternatives and yield an empty group
_TOKEN_RE = re.compile(r"https?://\S*|www\.\S+|[@#]\w+|(\w+(?:['\-]\w+)*)")
# without URLs, '@'/'#' runs never overlap a word, so blanking them first is equivalent
_TAG_RE = re.compile(r"[@#]\w+")
_WORD_RE = re.compile(r"\w+(?:['\-]\w+)*")


class LexiconError(ValueError):
    pass


@dataclass(frozen=True)
class LexiconEntry:
    kind: str
    value: str | tuple[str, ...]

    def __post_init__(self):
        v = self.value
        if self.kind == TOKEN:
            if not isinstance(v, str) or not v or any(c.isspace() for c in v):
                raise LexiconError(f"token entry must be a single non-empty word: {v!r}")
        elif self.kind == SEQUENCE:
            if not isinstance(v, tuple) or len(v) < 2:
                raise LexiconError(f"sequence entry needs at least two tokens: {v!r}")
        elif self.kind == SUFFIX:
            if not isinstance(v, str) or len(v) < 2 or not v.startswith("-"):
                raise LexiconError(f"suffix entry must look like '-ass': {v!r}")
        elif self.kind == CHAR:
            if not isinstance(v, str) or len(v) != 1:
                raise LexiconError(f"char entry must be one character: {v!r}")
        else:
            raise LexiconError(f"unknown entry kind {self.kind!r}")

    @classmethod
    def parse(cls, raw: str) -> "LexiconEntry":
        if not isinstance(raw, str):
            raise LexiconError(f"entry must be a string, got {raw!r}")
        for prefix, kind in _PREFIXES.items():
            if raw.startswith(prefix):
                body = raw[len(prefix):]
                if kind == CHAR:
                    return cls(kind, body)
                body = body.translate(_APOSTROPHES).lower().strip()
                if kind == SEQUENCE:
                    return cls(kind, tuple(body.split()))
                return cls(kind, body)
        return cls(TOKEN, raw.translate(_APOSTROPHES).lower().strip())


@dataclass(frozen=True)
class LexicalCategory:
    id: str
    display_name: str
    entries: tuple[LexiconEntry, ...] = ()
    parent: str | None = None
    t1_only: bool = False


class TokenStream(NamedTuple):
    tokens: tuple[str, ...]
    raw_text: str


def tokenize(text: str) -> TokenStream:
    """Lowercase word tokens with URLs, @-mentions and #-hashtags removed.

    Apostrophes and hyphens between word characters stay inside the token, so
    "you're" and "big-ass" are single tokens.
    """
    norm = text.lower() if text.isascii() else text.translate(_APOSTROPHES).lower()
    if "http" in norm or "www." in norm:
        return TokenStream(tuple(filter(None, _TOKEN_RE.findall(norm))), text)
    if "#" in norm or "@" in norm:
        norm = _TAG_RE.sub(" ", norm)
    return TokenStream(tuple(_WORD_RE.findall(norm)), text)


def _reject_duplicate_keys(pairs):
    seen = {}
    for k, v in pairs:
        if k in seen:
            raise LexiconError(f"duplicate category id {k!r}")
        seen[k] = v
    return seen


def parse_lexicons(data: dict) -> list[LexicalCategory]:
    cats_raw = data.get("categories", {}) if isinstance(data, dict) else None
    if not isinstance(cats_raw, dict):
        raise LexiconError("lexicon config must hold a 'categories' object")
    cats = []
    for cid, spec in cats_raw.items():
        if not isinstance(spec, dict):
            raise LexiconError(f"category {cid!r}: definition must be an object")
        entries = []
        for i, raw in enumerate(spec.get("entries", [])):
            try:
                entries.append(LexiconEntry.parse(raw))
            except LexiconError as exc:
                raise LexiconError(f"category {cid!r}, entry {i}: {exc}") from None
        cats.append(LexicalCategory(
            id=cid,
            display_name=spec.get("display_name", cid),
            entries=tuple(entries),
            parent=spec.get("parent"),
            t1_only=bool(spec.get("t1_only", False)),
        ))
    by_id = {c.id: c for c in cats}
    for c in cats:
        if c.parent is None:
            continue
        if c.parent not in by_id:
            raise LexiconError(f"category {c.id!r}: unknown parent {c.parent!r}")
        if by_id[c.parent].parent is not None:
            raise LexiconError(f"category {c.id!r}: parent {c.parent!r} is itself a child")
    return cats


def load_lexicons(source: str | Path | None = None) -> list[LexicalCategory]:
    """Load categories from a JSON file; ``None`` loads the bundled default."""
    if source is None:
        text = resources.files("stancenet").joinpath("data/lexicons.json").read_text("utf-8")
    else:
        text = Path(source).read_text("utf-8")
    if not text.strip():
        return []
    try:
        data = json.loads(text, object_pairs_hook=_reject_duplicate_keys)
    except json.JSONDecodeError as exc:
        raise LexiconError(f"{source}: line {exc.lineno}: {exc.msg}") from None
    return parse_lexicons(data)


class LexiconMatcher:
    """Precompiled lookup tables for a fixed category list."""

    def __init__(self, categories: Sequence[LexicalCategory]):
        self.categories = tuple(categories)
        self.parent = {c.id: c.parent for c in self.categories}
        self.by_token: dict[str, set[str]] = {}
        self.by_first: dict[str, list[tuple[tuple[str, ...], str]]] = {}
        self.suffixes: list[tuple[str, str]] = []
        self.chars: list[tuple[str, str]] = []
        for c in self.categories:
            for e in c.entries:
                if e.kind == TOKEN:
                    self.by_token.setdefault(e.value, set()).add(c.id)
                elif e.kind == SEQUENCE:
                    self.by_first.setdefault(e.value[0], []).append((e.value, c.id))
                elif e.kind == SUFFIX:
                    self.suffixes.append((e.value, c.id))
                else:
                    self.chars.append((e.value, c.id))
        self._keys = frozenset(self.by_token) | frozenset(self.by_first)

    def match_stream(self, stream: TokenStream) -> frozenset[str]:
        hits: set[str] = set()
        toks = stream.tokens
        present = self._keys.intersection(toks)
        for tok in present:
            cats = self.by_token.get(tok)
            if cats:
                hits |= cats
            for seq, cid in self.by_first.get(tok, ()):
                for k, t in enumerate(toks):
                    if t == tok and toks[k:k + len(seq)] == seq:
                        hits.add(cid)
                        break
        if self.suffixes and "-" in stream.raw_text:
            for tok in toks:
                if "-" not in tok:
                    continue
                for suffix, cid in self.suffixes:
                    # the hyphen must be preceded by something: "-ass" alone is not "big-ass"
                    if tok.endswith(suffix) and len(tok) > len(suffix):
                        hits.add(cid)
        for ch, cid in self.chars:
            if ch in stream.raw_text:
                hits.add(cid)
        for cid in list(hits):
            p = self.parent.get(cid)
            if p is not None:
                hits.add(p)
        return frozenset(hits)

    def match(self, text: str) -> frozenset[str]:
        return self.match_stream(tokenize(text))


@lru_cache(maxsize=8)
def _matcher(categories: tuple[LexicalCategory, ...]) -> LexiconMatcher:
    return LexiconMatcher(categories)


def match_categories(tweet, categories: Iterable[LexicalCategory]) -> frozenset[str]:
    """Category ids matched by a tweet (or plain text); parents follow their children."""
    text = tweet if isinstance(tweet, str) else tweet.text
    return _matcher(tuple(categories)).match(text)
