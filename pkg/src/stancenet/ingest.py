"""Corpus ingestion: JSON Lines parsing, topical lemma filter, text dedup."""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from typing import IO, Iterable, Iterator, Protocol

DEFAULT_LEMMAS = ("vacc", "vax")

_HASHTAG_RE = re.compile(r"#(\w+)", re.UNICODE)
_WS_RE = re.compile(r"\s+")

# accepted input keys; the first one is what dump_corpus writes
_ID_KEYS = ("id", "tweet_id")
_USER_KEYS = ("user", "user_id")


class CorpusError(ValueError):
    """Raised for malformed or inconsistent corpus input."""

    def __init__(self, message: str, line: int | None = None, field: str | None = None):
        self.line = line
        self.field = field
        where = []
        if line is not None:
            where.append(f"line {line}")
        if field is not None:
            where.append(f"field '{field}'")
        prefix = f"{', '.join(where)}: " if where else ""
        super().__init__(prefix + message)


def normalize_hashtag(tag: str) -> str:
    tag = tag.strip().lstrip("#").lower()
    if not tag or "#" in tag or _WS_RE.search(tag):
        raise ValueError(f"invalid hashtag {tag!r}")
    return tag


def extract_hashtags(text: str) -> list[str]:
    """Hashtags in order of appearance, as maximal word-character runs after '#'."""
    return [m.group(1).lower() for m in _HASHTAG_RE.finditer(text)]


def normalize_text(text: str) -> str:
    return " ".join(text.split())


@dataclass(frozen=True)
class TweetRecord:
    tweet_id: str
    user_id: str
    text: str
    created_at: str | None = None
    hashtags: tuple[str, ...] = ()
    retweet_of_user: str | None = None
    reply_to_user: str | None = None
    mentioned_users: tuple[str, ...] = ()

    def to_json(self) -> dict:
        return {
            "id": self.tweet_id,
            "user": self.user_id,
            "text": self.text,
            "created_at": self.created_at,
            "hashtags": list(self.hashtags),
            "retweet_of_user": self.retweet_of_user,
            "reply_to_user": self.reply_to_user,
            "mentions": list(self.mentioned_users),
        }


@dataclass(frozen=True)
class Corpus:
    tweets: tuple[TweetRecord, ...] = ()
    users: dict[str, tuple[int, ...]] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        index: dict[str, list[int]] = {}
        for i, t in enumerate(self.tweets):
            index.setdefault(t.user_id, []).append(i)
        object.__setattr__(self, "users", {u: tuple(ix) for u, ix in index.items()})

    def __len__(self) -> int:
        return len(self.tweets)

    def __iter__(self) -> Iterator[TweetRecord]:
        return iter(self.tweets)

    def tweets_of(self, user_id: str) -> list[TweetRecord]:
        return [self.tweets[i] for i in self.users.get(user_id, ())]

    @classmethod
    def from_records(cls, records: Iterable[TweetRecord]) -> "Corpus":
        records = tuple(records)
        seen: set[str] = set()
        for r in records:
            if r.tweet_id in seen:
                raise CorpusError(f"duplicate tweet id {r.tweet_id!r}", field="id")
            seen.add(r.tweet_id)
        return cls(records)


class CorpusSource(Protocol):
    """Adapter seam for non-file collectors; must yield records in the ingest schema."""

    def fetch(self) -> Iterable[dict]: ...


def _pick(obj: dict, keys: tuple[str, ...], lineno: int) -> str:
    for k in keys:
        if k in obj and obj[k] is not None:
            val = obj[k]
            if isinstance(val, (int, float)) and not isinstance(val, bool):
                val = str(val)
            if not isinstance(val, str) or not val.strip():
                raise CorpusError("must be a non-empty string", lineno, keys[0])
            return val
    raise CorpusError("missing required field", lineno, keys[0])


def _optional_str(obj: dict, key: str, lineno: int) -> str | None:
    val = obj.get(key)
    if val is None or val == "":
        return None
    if isinstance(val, (int, float)) and not isinstance(val, bool):
        return str(val)
    if not isinstance(val, str):
        raise CorpusError("must be a string", lineno, key)
    return val


def _str_list(obj: dict, key: str, lineno: int) -> list[str] | None:
    val = obj.get(key)
    if val is None:
        return None
    if not isinstance(val, list) or not all(isinstance(v, (str, int)) for v in val):
        raise CorpusError("must be a list of strings", lineno, key)
    return [str(v) for v in val]


def record_from_json(obj: dict, lineno: int = 0) -> TweetRecord:
    if not isinstance(obj, dict):
        raise CorpusError("record must be a JSON object", lineno)
    tweet_id = _pick(obj, _ID_KEYS, lineno)
    user_id = _pick(obj, _USER_KEYS, lineno)
    text = obj.get("text")
    if not isinstance(text, str):
        raise CorpusError("missing required field" if text is None else "must be a string",
                          lineno, "text")

    raw_tags = _str_list(obj, "hashtags", lineno)
    if raw_tags is None:
        tags = extract_hashtags(text)
    else:
        try:
            tags = [normalize_hashtag(t) for t in raw_tags if t.strip().lstrip("#")]
        except ValueError as exc:
            raise CorpusError(str(exc), lineno, "hashtags") from None

    mentions = _str_list(obj, "mentions", lineno)
    if mentions is None:
        mentions = _str_list(obj, "mentioned_users", lineno) or []

    return TweetRecord(
        tweet_id=tweet_id,
        user_id=user_id,
        text=text,
        created_at=_optional_str(obj, "created_at", lineno),
        hashtags=tuple(tags),
        retweet_of_user=_optional_str(obj, "retweet_of_user", lineno),
        reply_to_user=_optional_str(obj, "reply_to_user", lineno),
        mentioned_users=tuple(mentions),
    )


def _parse_lines(lines: Iterable[str | bytes]) -> Iterator[tuple[int, TweetRecord]]:
    for lineno, line in enumerate(lines, 1):
        if isinstance(line, bytes):
            try:
                line = line.decode("utf-8")
            except UnicodeDecodeError as exc:
                raise CorpusError(f"not valid UTF-8 ({exc.reason})", lineno) from None
        if not line.strip():
            continue
        try:
            obj = json.loads(line)
        except json.JSONDecodeError as exc:
            raise CorpusError(f"invalid JSON ({exc.msg})", lineno) from None
        yield lineno, record_from_json(obj, lineno)


def parse_corpus(source: IO | Iterable[str | bytes]) -> Corpus:
    """Parse a JSON Lines stream (text or bytes) into a corpus.

    Blank lines are skipped. Raises :class:`CorpusError` naming the line and
    field of the first malformed record, or the first repeated tweet id.
    """
    records = []
    seen: dict[str, int] = {}
    for lineno, rec in _parse_lines(source):
        if rec.tweet_id in seen:
            raise CorpusError(
                f"duplicate tweet id {rec.tweet_id!r} (first seen on line {seen[rec.tweet_id]})",
                lineno, "id")
        seen[rec.tweet_id] = lineno
        records.append(rec)
    return Corpus(tuple(records))


def load_corpus(*paths) -> Corpus:
    """Parse and concatenate one or more JSON Lines files; ids must be unique across them."""
    records: list[TweetRecord] = []
    for path in paths:
        with open(path, "rb") as fh:
            try:
                records.extend(parse_corpus(fh).tweets)
            except CorpusError as exc:
                raise CorpusError(f"{path}: {exc}") from None
    return Corpus.from_records(records)


def dump_corpus(corpus: Corpus, fh: IO[str]) -> None:
    for t in corpus.tweets:
        fh.write(json.dumps(t.to_json(), ensure_ascii=False, sort_keys=True))
        fh.write("\n")


def lemma_filter(corpus: Corpus, lemmas: Iterable[str] = DEFAULT_LEMMAS) -> Corpus:
    """Keep tweets whose lowercased text contains any lemma as a substring."""
    lemmas = tuple(lemmas)
    if not lemmas:
        raise ValueError("lemma list must be non-empty")
    lemmas = tuple(l.lower() for l in lemmas)
    kept = [t for t in corpus.tweets if any(l in t.text.lower() for l in lemmas)]
    return Corpus(tuple(kept))


def dedupe(corpus: Corpus) -> Corpus:
    """Keep the first tweet for each whitespace-normalized text."""
    seen: set[str] = set()
    kept = []
    for t in corpus.tweets:
        key = normalize_text(t.text)
        if key in seen:
            continue
        seen.add(key)
        kept.append(t)
    return Corpus(tuple(kept))
