"""Stance communities from seed hashtags, and how their language and networks differ."""

from .hashtag_graph import HashtagGraph, apply_seeds, build_cooccurrence, top_cooccurring
from .ingest import Corpus, TweetRecord, dedupe, lemma_filter, parse_corpus
from .lexicon import LexicalCategory, load_lexicons, match_categories, tokenize
from .lingstats import analyze, normal_cdf, p_value, z_means, z_prop
from .netmetrics import (CommNetwork, build_networks, density, echo_chamberness, ei_index,
                         group_metrics, reciprocity)
from .propagation import Stance, assign_stance, propagate, user_valence

__version__ = "0.1.0"
