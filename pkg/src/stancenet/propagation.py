"""Seeded valence propagation over the hashtag graph, and user stance assignment.

Sweeps visit nodes in a fixed order (descending incident edge weight, ties
lexicographic). The slack ``l = floor(i / gamma)`` grows with the sweep
counter ``i`` and relaxes the gate ``|labeled neighbours| + l >= |neighbours|``,
so poorly connected hashtags are labeled late, from whatever evidence has
accumulated by then. Labels are written in place and are final once set.
"""

from __future__ import annotations

import csv
import enum
import logging
from dataclasses import dataclass, replace
from typing import IO, Iterable, Mapping, NamedTuple

from .hashtag_graph import HashtagGraph
from .ingest import Corpus, TweetRecord

log = logging.getLogger(__name__)

DEFAULT_GAMMA = 50


class Stance(str, enum.Enum):
    PRO = "Pro"
    ANTI = "Anti"
    UNLABELED = "Unlabeled"

    def __str__(self) -> str:
        return self.value

    def opposite(self) -> "Stance":
        if self is Stance.PRO:
            return Stance.ANTI
        if self is Stance.ANTI:
            return Stance.PRO
        return self


class LabelEvent(NamedTuple):
    sweep: int   # value of i when the sweep started
    slack: int   # l for that sweep
    node: str
    valence: float


@dataclass
class PropagationState:
    gamma: int = DEFAULT_GAMMA
    i: int = 0
    order: tuple[str, ...] = ()

    def __post_init__(self):
        if self.gamma < 1:
            raise ValueError(f"gamma must be >= 1, got {self.gamma}")

    @property
    def l(self) -> int:
        return self.i // self.gamma


def sweep_order(graph: HashtagGraph) -> tuple[str, ...]:
    strength = graph.strength()
    return tuple(sorted(graph.nodes, key=lambda n: (-strength[n], n)))


def trace_propagation(graph: HashtagGraph, gamma: int = DEFAULT_GAMMA,
                      literal_dilution: bool = False) -> tuple[dict[str, float], list[LabelEvent]]:
    """Run propagation and return the final valences plus the labeling history.

    With ``literal_dilution`` unlabeled neighbours enter the weighted average
    with valence 0 instead of being left out.
    """
    if not graph.seeds:
        raise ValueError("propagation needs at least one seed hashtag")
    state = PropagationState(gamma=gamma, order=sweep_order(graph))
    adj = graph.adjacency()
    valence = dict(graph.valence)
    events: list[LabelEvent] = []

    while True:
        l = state.l
        labeled_now = 0
        for n in state.order:
            if n in valence:
                continue
            nbrs = adj[n]
            labeled = [j for j in nbrs if j in valence]
            if not labeled or len(labeled) + l < len(nbrs):
                continue
            score = sum(valence[j] * nbrs[j] for j in labeled)
            c = sum(nbrs.values()) if literal_dilution else sum(nbrs[j] for j in labeled)
            v = score / c
            valence[n] = max(-1.0, min(1.0, v))
            events.append(LabelEvent(state.i, l, n, valence[n]))
            labeled_now += 1
        state.i += 1
        if labeled_now:
            continue
        # Nothing changed, so further sweeps at this slack are no-ops. Jump to
        # the smallest slack that opens the gate for some node with evidence.
        deficits = [
            len(adj[n]) - sum(1 for j in adj[n] if j in valence)
            for n in state.order
            if n not in valence and any(j in valence for j in adj[n])
        ]
        if not deficits:
            break
        state.i = max(state.i, min(deficits) * gamma)
    log.debug("propagation finished after %d sweeps; %d/%d hashtags valenced",
              state.i, len(valence), len(graph.nodes))
    return valence, events


def propagate(graph: HashtagGraph, gamma: int = DEFAULT_GAMMA,
              literal_dilution: bool = False) -> HashtagGraph:
    valence, _ = trace_propagation(graph, gamma, literal_dilution)
    return replace(graph, valence=valence)


def user_valence(user_tweets: Iterable[TweetRecord], valence: Mapping[str, float]) -> float | None:
    """Mean valence over every valenced hashtag occurrence in the user's tweets."""
    total = 0.0
    count = 0
    for tweet in user_tweets:
        for tag in tweet.hashtags:
            v = valence.get(tag)
            if v is not None:
                total += v
                count += 1
    if count == 0:
        return None
    return total / count


def assign_stance(valence: float | None) -> Stance:
    if valence is None or valence == 0:
        return Stance.UNLABELED
    return Stance.PRO if valence > 0 else Stance.ANTI


@dataclass(frozen=True)
class StanceAssignment:
    user_valence: Mapping[str, float]
    label: Mapping[str, Stance]

    def members(self, stance: Stance) -> set[str]:
        return {u for u, s in self.label.items() if s is stance}

    def counts(self) -> dict[str, int]:
        out = {s.value: 0 for s in Stance}
        for s in self.label.values():
            out[s.value] += 1
        return out


def assign_stances(corpus: Corpus, valence: Mapping[str, float]) -> StanceAssignment:
    values: dict[str, float] = {}
    labels: dict[str, Stance] = {}
    for user in sorted(corpus.users):
        v = user_valence(corpus.tweets_of(user), valence)
        if v is not None:
            values[user] = v
        labels[user] = assign_stance(v)
    return StanceAssignment(values, labels)


def write_valence_csv(graph: HashtagGraph, fh: IO[str]) -> None:
    w = csv.writer(fh, lineterminator="\n")
    w.writerow(["hashtag", "valence", "is_seed"])
    for tag in sorted(graph.valence):
        w.writerow([tag, repr(float(graph.valence[tag])), int(tag in graph.seeds)])


def write_stance_csv(stances: StanceAssignment, fh: IO[str]) -> None:
    w = csv.writer(fh, lineterminator="\n")
    w.writerow(["user_id", "valence", "label"])
    for user in sorted(stances.label):
        v = stances.user_valence.get(user)
        w.writerow([user, "" if v is None else repr(float(v)), stances.label[user].value])


def read_stance_csv(fh: IO[str]) -> StanceAssignment:
    values: dict[str, float] = {}
    labels: dict[str, Stance] = {}
    for row in csv.DictReader(fh):
        user = row["user_id"]
        if row["valence"]:
            values[user] = float(row["valence"])
        labels[user] = Stance(row["label"])
    return StanceAssignment(values, labels)
