"""In-memory pipeline stages shared by the CLI, scripts and end-to-end tests."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Mapping, Sequence

from .hashtag_graph import HashtagGraph, apply_seeds, build_cooccurrence, top_cooccurring
from .ingest import Corpus, TweetRecord, dedupe, lemma_filter
from .lexicon import LexicalCategory
from .lingstats import CategoryStats, StatsConfig, analyze
from .netmetrics import KINDS, GroupNetworkMetrics, build_networks, group_metrics
from .propagation import (DEFAULT_GAMMA, Stance, StanceAssignment, assign_stances,
                          propagate)

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class StanceResult:
    graph: HashtagGraph
    stances: StanceAssignment


def prepare(corpus: Corpus, lemmas: Sequence[str] = ("vacc", "vax")) -> tuple[Corpus, Corpus]:
    """Topical filter, then the (full, deduplicated) pair used downstream."""
    full = lemma_filter(corpus, lemmas)
    return full, dedupe(full)


def detect_stances(corpus: Corpus, seeds: Mapping[str, float], gamma: int = DEFAULT_GAMMA,
                   literal_dilution: bool = False) -> StanceResult:
    graph = apply_seeds(build_cooccurrence(corpus), seeds)
    graph = propagate(graph, gamma=gamma, literal_dilution=literal_dilution)
    return StanceResult(graph, assign_stances(corpus, graph.valence))


def curation_aid(graph: HashtagGraph, k: int = 10) -> dict[str, list[tuple[str, int]]]:
    """Most co-occurring hashtags for each seed, to help pick extra seeds by hand."""
    return {s: top_cooccurring(graph, s, k) for s in sorted(graph.seeds)}


def split_by_stance(corpus: Corpus, stances: StanceAssignment,
                    ) -> tuple[list[TweetRecord], list[TweetRecord]]:
    pro, anti = [], []
    for t in corpus.tweets:
        s = stances.label.get(t.user_id)
        if s is Stance.PRO:
            pro.append(t)
        elif s is Stance.ANTI:
            anti.append(t)
    return pro, anti


def linguistic_report(corpus: Corpus, stances: StanceAssignment,
                      categories: Sequence[LexicalCategory],
                      config: StatsConfig = StatsConfig()) -> list[CategoryStats]:
    pro, anti = split_by_stance(corpus, stances)
    return analyze(pro, anti, categories, config)


def network_report(corpus: Corpus, stances: StanceAssignment,
                   ) -> dict[str, GroupNetworkMetrics]:
    """Per-kind metrics; undefined measures come back as ``None``."""
    nets = build_networks(corpus, stances)
    out = {}
    for kind in KINDS:
        try:
            out[kind] = group_metrics(nets[kind])
        except ValueError as exc:
            log.warning("%s", exc)
            out[kind] = group_metrics(nets[kind], strict=False)
    return out
