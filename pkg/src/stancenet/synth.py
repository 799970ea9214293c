"""Planted two-community corpora with known stances, lexical rates and homophily.

Every tweet text is built from neutral filler words (one of which always
carries the "vacc" lemma) plus, with the planted per-category probability,
one word drawn from that category's lexicon entries. Only entries that belong
to no other category are drawn, so planting one category never plants
another by accident.
"""

from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Mapping

import numpy as np

from .ingest import Corpus, TweetRecord, dump_corpus
from .lexicon import CHAR, SEQUENCE, TOKEN, LexicalCategory, load_lexicons
from .netmetrics import KINDS

GROUPS = ("pro", "anti")
FILLERS = ("vaccine", "policy", "update", "clinic", "schedule", "report",
           "dose", "booster", "health", "study", "news", "data")
N_FILLERS = 3

DEFAULT_SEEDS = {
    "pro": ("vaccineswork", "vaccinessavelives"),
    "anti": ("learntherisk", "vaccineinjury"),
}


@dataclass
class SynthParams:
    users_per_group: int = 100
    tweets_per_user: int = 20
    seed_hashtag_rate: float = 0.3
    shared_hashtag_vocab: int = 20
    shared_hashtag_rate: float = 0.5
    group_hashtag_vocab: int = 5
    group_hashtag_rate: float = 0.2
    # group -> category id -> probability that a tweet contains a category word
    category_rates: dict[str, dict[str, float]] = field(default_factory=dict)
    # kind -> (pro, anti) within-group per-pair probability
    p_in: dict[str, tuple[float, float]] = field(default_factory=dict)
    # kind -> between-group per-pair probability
    p_out: dict[str, float] = field(default_factory=dict)
    seeds: dict[str, tuple[str, ...]] = field(default_factory=lambda: dict(DEFAULT_SEEDS))
    rng_seed: int = 0

    def __post_init__(self):
        self.p_in = {k: _pair(v) for k, v in self.p_in.items()}
        self.p_out = {k: float(v) for k, v in self.p_out.items()}
        self.seeds = {g: tuple(v) for g, v in self.seeds.items()}
        self.validate()

    def validate(self) -> None:
        if self.users_per_group < 1 or self.tweets_per_user < 1:
            raise ValueError("users_per_group and tweets_per_user must be positive")
        if self.shared_hashtag_vocab < 0 or self.group_hashtag_vocab < 0:
            raise ValueError("hashtag vocabulary sizes must be non-negative")
        probs = {
            "seed_hashtag_rate": self.seed_hashtag_rate,
            "shared_hashtag_rate": self.shared_hashtag_rate,
            "group_hashtag_rate": self.group_hashtag_rate,
        }
        for g, rates in self.category_rates.items():
            if g not in GROUPS:
                raise ValueError(f"unknown group {g!r} in category_rates")
            for c, r in rates.items():
                probs[f"category_rates[{g}][{c}]"] = r
        for k, (a, b) in self.p_in.items():
            probs[f"p_in[{k}][pro]"] = a
            probs[f"p_in[{k}][anti]"] = b
        for k, v in self.p_out.items():
            probs[f"p_out[{k}]"] = v
        for name, p in probs.items():
            if not (isinstance(p, (int, float)) and 0.0 <= p <= 1.0) or math.isnan(p):
                raise ValueError(f"{name} must be a probability in [0, 1], got {p!r}")
        for k in list(self.p_in) + list(self.p_out):
            if k not in KINDS:
                raise ValueError(f"unknown network kind {k!r}")
        if set(self.seeds) != set(GROUPS) or not all(self.seeds[g] for g in GROUPS):
            raise ValueError("seeds must list at least one hashtag for both 'pro' and 'anti'")

    @classmethod
    def from_dict(cls, d: Mapping) -> "SynthParams":
        known = set(cls.__dataclass_fields__)
        unknown = set(d) - known
        if unknown:
            raise ValueError(f"unknown synth parameters: {sorted(unknown)}")
        return cls(**d)

    def to_dict(self) -> dict:
        d = asdict(self)
        d["p_in"] = {k: list(v) for k, v in self.p_in.items()}
        d["seeds"] = {g: list(v) for g, v in self.seeds.items()}
        return d


def _pair(v) -> tuple[float, float]:
    if isinstance(v, (int, float)):
        return (float(v), float(v))
    a, b = v
    return (float(a), float(b))


def planting_vocab(categories: list[LexicalCategory]) -> dict[str, list[str]]:
    """Per category, the word strings that match it and no other category."""
    owners: dict[object, set[str]] = {}
    for c in categories:
        for e in c.entries:
            owners.setdefault(e.value, set()).add(c.id)
    vocab: dict[str, list[str]] = {}
    for c in categories:
        words = []
        for e in c.entries:
            if len(owners[e.value]) != 1:
                continue
            if e.kind == TOKEN:
                words.append(e.value)
            elif e.kind == SEQUENCE:
                words.append(" ".join(e.value))
            elif e.kind == CHAR:
                words.append(e.value)
        vocab[c.id] = words
    return vocab


def user_id(group: str, idx: int) -> str:
    return f"{group[0]}{idx:05d}"


def generate(params: SynthParams, categories: list[LexicalCategory] | None = None,
             ) -> tuple[Corpus, dict]:
    """Build a planted corpus and its ground truth (kept apart from the corpus)."""
    params.validate()
    if categories is None:
        categories = load_lexicons()
    vocab = planting_vocab(categories)
    for g, rates in params.category_rates.items():
        for c, r in rates.items():
            if c not in vocab:
                raise ValueError(f"category_rates names unknown category {c!r}")
            if r > 0 and not vocab[c]:
                raise ValueError(f"category {c!r} has no words unique to it to plant")

    rng = np.random.default_rng(params.rng_seed)
    U, T = params.users_per_group, params.tweets_per_user
    shared = [f"topic{k:03d}" for k in range(params.shared_hashtag_vocab)]

    # interaction edges first so every tweet slot can be assigned below
    users = {g: [user_id(g, i) for i in range(U)] for g in GROUPS}
    planted: dict[str, list[tuple[str, str]]] = {}
    for kind in KINDS:
        p_in = params.p_in.get(kind, (0.0, 0.0))
        p_out = params.p_out.get(kind, 0.0)
        edges = []
        for gi, g in enumerate(GROUPS):
            for h in GROUPS:
                p = p_in[gi] if g == h else p_out
                mask = rng.random((U, U)) < p
                if g == h:
                    np.fill_diagonal(mask, False)
                src, dst = np.nonzero(mask)
                edges.extend((users[g][a], users[h][b]) for a, b in zip(src.tolist(), dst.tolist()))
        edges.sort()
        planted[kind] = edges

    targets: dict[str, dict[str, list[str]]] = {k: {} for k in KINDS}
    for kind, edges in planted.items():
        for u, v in edges:
            targets[kind].setdefault(u, []).append(v)

    tweets: list[TweetRecord] = []
    serial = 0
    for g in GROUPS:
        seeds = params.seeds[g]
        own_tags = [f"{g}tag{k:02d}" for k in range(params.group_hashtag_vocab)]
        rates = params.category_rates.get(g, {})
        for u in users[g]:
            n_rt = len(targets["retweet"].get(u, ()))
            n_rp = len(targets["reply"].get(u, ()))
            n = max(T, n_rt, n_rp)
            seed_on = (rng.random(n) < params.seed_hashtag_rate).tolist()
            seed_pick = rng.integers(len(seeds), size=n).tolist()
            own_on = (rng.random(n) < params.group_hashtag_rate).tolist() if own_tags else [False] * n
            own_pick = rng.integers(max(1, len(own_tags)), size=n).tolist()
            sh_on = (rng.random(n) < params.shared_hashtag_rate).tolist() if shared else [False] * n
            sh_pick = rng.integers(max(1, len(shared)), size=n).tolist()
            fill = rng.integers(len(FILLERS), size=(n, N_FILLERS)).tolist()
            planted_cats = []
            for c in sorted(rates):
                on = (rng.random(n) < rates[c]).tolist()
                pick = rng.integers(max(1, len(vocab[c])), size=n).tolist()
                planted_cats.append((vocab[c], on, pick))
            rt_slots = rng.permutation(n)[:n_rt].tolist()
            rp_slots = rng.permutation(n)[:n_rp].tolist()
            mention_to = targets["mention"].get(u, [])
            mention_slots = rng.integers(n, size=len(mention_to)).tolist()

            retweet_of = dict(zip(rt_slots, targets["retweet"].get(u, [])))
            reply_to = dict(zip(rp_slots, targets["reply"].get(u, [])))
            mentions: dict[int, list[str]] = {}
            for slot, v in zip(mention_slots, mention_to):
                mentions.setdefault(slot, []).append(v)

            for k in range(n):
                words = ["vaccine", *[FILLERS[j] for j in fill[k]], str(serial)]
                bang = False
                for words_c, on, pick in planted_cats:
                    if on[k]:
                        w = words_c[pick[k]]
                        if w == "!":
                            bang = True
                        else:
                            words.append(w)
                tags = []
                if seed_on[k]:
                    tags.append(seeds[seed_pick[k]])
                if own_on[k]:
                    tags.append(own_tags[own_pick[k]])
                if sh_on[k]:
                    tags.append(shared[sh_pick[k]])
                text = " ".join(words)
                if bang:
                    text += "!"
                if tags:
                    text += " #" + " #".join(tags)
                tweets.append(TweetRecord(f"t{serial:08d}", u, text, None, tuple(tags),
                                          retweet_of.get(k), reply_to.get(k),
                                          tuple(mentions.get(k, ()))))
                serial += 1

    truth = {
        "users": {u: ("Pro" if g == "pro" else "Anti") for g in GROUPS for u in users[g]},
        "params": params.to_dict(),
        "edges": {k: [list(e) for e in v] for k, v in planted.items()},
    }
    return Corpus(tuple(tweets)), truth


def write_outputs(corpus: Corpus, truth: dict, corpus_path: Path, truth_path: Path) -> None:
    with open(corpus_path, "w", encoding="utf-8", newline="\n") as fh:
        dump_corpus(corpus, fh)
    with open(truth_path, "w", encoding="utf-8", newline="\n") as fh:
        json.dump(truth, fh, sort_keys=True, indent=1)
        fh.write("\n")
