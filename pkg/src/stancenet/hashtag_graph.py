"""Weighted hashtag co-occurrence graph with seed valences."""

from __future__ import annotations

import csv
import logging
from collections import Counter
from dataclasses import dataclass, field, replace
from itertools import combinations
from typing import IO, Iterable, Mapping

from .ingest import Corpus, normalize_hashtag

log = logging.getLogger(__name__)

Pair = tuple[str, str]


def pair_key(a: str, b: str) -> Pair:
    return (a, b) if a < b else (b, a)


@dataclass(frozen=True)
class HashtagGraph:
    nodes: frozenset[str] = frozenset()
    edges: Mapping[Pair, int] = field(default_factory=dict)
    valence: Mapping[str, float] = field(default_factory=dict)
    seeds: frozenset[str] = frozenset()

    def __post_init__(self):
        for (a, b), w in self.edges.items():
            if a == b:
                raise ValueError(f"self-loop on {a!r}")
            if a > b:
                raise ValueError(f"edge key {(a, b)} is not ordered")
            if w < 1:
                raise ValueError(f"edge {(a, b)} has weight {w} < 1")
        for h, v in self.valence.items():
            if not -1.0 <= v <= 1.0:
                raise ValueError(f"valence of {h!r} out of [-1, 1]: {v}")
        for s in self.seeds:
            if self.valence.get(s) not in (1.0, -1.0):
                raise ValueError(f"seed {s!r} lacks a +1/-1 valence")

    def weight(self, a: str, b: str) -> int:
        return self.edges.get(pair_key(a, b), 0)

    def adjacency(self) -> dict[str, dict[str, int]]:
        adj: dict[str, dict[str, int]] = {n: {} for n in self.nodes}
        for (a, b), w in self.edges.items():
            adj[a][b] = w
            adj[b][a] = w
        return adj

    def strength(self) -> dict[str, int]:
        s = Counter({n: 0 for n in self.nodes})
        for (a, b), w in self.edges.items():
            s[a] += w
            s[b] += w
        return dict(s)


def build_cooccurrence(corpus: Corpus | Iterable) -> HashtagGraph:
    """Count, for every hashtag pair, the tweets that carry both.

    Repeated hashtags inside one tweet count once.
    """
    nodes: set[str] = set()
    counts: Counter[Pair] = Counter()
    for tweet in corpus:
        tags = sorted(set(tweet.hashtags))
        nodes.update(tags)
        counts.update(combinations(tags, 2))
    return HashtagGraph(nodes=frozenset(nodes), edges=dict(counts))


def apply_seeds(graph: HashtagGraph, seeds: Mapping[str, float]) -> HashtagGraph:
    if not seeds:
        return graph
    valence = dict(graph.valence)
    nodes = set(graph.nodes)
    frozen = set(graph.seeds)
    for tag, v in seeds.items():
        if v not in (1, -1):
            raise ValueError(f"seed {tag!r} has valence {v}; seeds must be +1 or -1")
        tag = normalize_hashtag(tag)
        if tag not in nodes:
            log.warning("seed hashtag %r does not occur in the corpus; added as isolated node", tag)
            nodes.add(tag)
        valence[tag] = float(v)
        frozen.add(tag)
    return replace(graph, nodes=frozenset(nodes), valence=valence, seeds=frozenset(frozen))


def top_cooccurring(graph: HashtagGraph, anchor: str, k: int) -> list[tuple[str, int]]:
    if anchor not in graph.nodes:
        raise KeyError(f"hashtag {anchor!r} not in graph")
    if k < 1:
        raise ValueError("k must be positive")
    nbrs = []
    for (a, b), w in graph.edges.items():
        if a == anchor:
            nbrs.append((b, w))
        elif b == anchor:
            nbrs.append((a, w))
    nbrs.sort(key=lambda x: (-x[1], x[0]))
    return nbrs[:k]


def parse_seeds(fh: IO[str] | Iterable[str]) -> dict[str, float]:
    """Read ``hashtag,valence`` lines; blank lines and '#' comments are skipped."""
    seeds: dict[str, float] = {}
    for lineno, line in enumerate(fh, 1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        parts = [p.strip() for p in line.split(",")]
        if len(parts) != 2:
            raise ValueError(f"seed line {lineno}: expected 'hashtag,valence', got {line!r}")
        try:
            v = float(parts[1])
        except ValueError:
            raise ValueError(f"seed line {lineno}: valence {parts[1]!r} is not a number") from None
        if v not in (1.0, -1.0):
            raise ValueError(f"seed line {lineno}: valence must be +1 or -1, got {parts[1]}")
        try:
            seeds[normalize_hashtag(parts[0])] = v
        except ValueError as exc:
            raise ValueError(f"seed line {lineno}: {exc}") from None
    return seeds


def write_edges_csv(graph: HashtagGraph, fh: IO[str]) -> None:
    w = csv.writer(fh, lineterminator="\n")
    w.writerow(["h1", "h2", "weight"])
    for (a, b), weight in sorted(graph.edges.items()):
        w.writerow([a, b, weight])
