"""Directed communication networks and per-community polarization metrics.

All metrics use simple-digraph semantics: repeated interactions between the
same ordered pair count as one edge.
"""

from __future__ import annotations

import csv
from collections import Counter
from dataclasses import asdict, dataclass, field
from typing import IO, Iterable, Mapping

from .ingest import Corpus
from .propagation import Stance, StanceAssignment

KINDS = ("mention", "retweet", "reply")


@dataclass(frozen=True)
class CommNetwork:
    kind: str
    nodes: frozenset[str]
    edges: Mapping[tuple[str, str], int]
    stance: Mapping[str, Stance] = field(default_factory=dict)

    def __post_init__(self):
        for (u, v) in self.edges:
            if u == v:
                raise ValueError(f"self-loop on {u!r}")
            if u not in self.nodes or v not in self.nodes:
                raise ValueError(f"edge {(u, v)} has an endpoint outside the node set")

    def label(self, user: str) -> Stance:
        return self.stance.get(user, Stance.UNLABELED)

    def group(self, stance: Stance) -> frozenset[str]:
        return frozenset(n for n in self.nodes if self.label(n) is stance)

    def relabel(self, stance: Mapping[str, Stance]) -> "CommNetwork":
        return CommNetwork(self.kind, self.nodes, self.edges, dict(stance))


def build_networks(corpus: Corpus, stances: StanceAssignment | Mapping[str, Stance] | None = None,
                   ) -> dict[str, CommNetwork]:
    """Mention, retweet and reply networks keyed by kind.

    Nodes are every corpus author plus every interaction target.
    """
    labels = stances.label if isinstance(stances, StanceAssignment) else (stances or {})
    nodes = set(corpus.users)
    counts = {k: Counter() for k in KINDS}
    for t in corpus.tweets:
        u = t.user_id
        targets = {
            "mention": t.mentioned_users,
            "retweet": (t.retweet_of_user,) if t.retweet_of_user else (),
            "reply": (t.reply_to_user,) if t.reply_to_user else (),
        }
        for kind, vs in targets.items():
            for v in vs:
                if v == u:
                    continue
                nodes.add(v)
                counts[kind][(u, v)] += 1
    frozen = frozenset(nodes)
    return {k: CommNetwork(k, frozen, dict(counts[k]), dict(labels)) for k in KINDS}


def _scope(network: CommNetwork, subset: Iterable[str] | None):
    if subset is None:
        return network.nodes, set(network.edges)
    nodes = frozenset(subset) & network.nodes
    return nodes, {(u, v) for (u, v) in network.edges if u in nodes and v in nodes}


def _density(n: int, edges: set) -> float:
    if n < 2:
        raise ValueError(f"density needs at least two nodes, got {n}")
    return len(edges) / (n * (n - 1))


def _reciprocity(edges: set) -> float:
    if not edges:
        raise ValueError("reciprocity is undefined without edges")
    return sum(1 for (u, v) in edges if (v, u) in edges) / len(edges)


def density(network: CommNetwork, subset: Iterable[str] | None = None) -> float:
    nodes, edges = _scope(network, subset)
    return _density(len(nodes), edges)


def reciprocity(network: CommNetwork, subset: Iterable[str] | None = None) -> float:
    """Share of distinct edges whose reverse edge is also present."""
    return _reciprocity(_scope(network, subset)[1])


def ei_index(network: CommNetwork, group: Stance) -> tuple[float, int, int]:
    """(EI, external links, internal links) for one community against its opponent.

    Edges touching an unlabeled user are ignored.
    """
    if group is Stance.UNLABELED:
        raise ValueError("EI index is defined for Pro or Anti only")
    other = group.opposite()
    label = network.stance.get
    il = el = 0
    for (u, v) in network.edges:
        a, b = label(u), label(v)
        if a is group:
            if b is group:
                il += 1
            elif b is other:
                el += 1
        elif a is other and b is group:
            el += 1
    if il + el == 0:
        raise ValueError(f"EI index undefined for {group.value}: no internal or external links")
    return (el - il) / (el + il), el, il


def ec_from(r: float, d: float) -> float:
    if not (0 <= r <= 1 and 0 <= d <= 1):
        raise ValueError("r and d must lie in [0, 1]")
    return (r * d) ** (1.0 / 3.0)


def echo_chamberness(network: CommNetwork, group: Stance) -> float:
    members = network.group(group)
    r = reciprocity(network, members)
    d = density(network, members)
    return ec_from(r, d)


@dataclass(frozen=True)
class GroupNetworkMetrics:
    kind: str
    density_all: float | None = None
    density_pro: float | None = None
    density_anti: float | None = None
    ei_pro: float | None = None
    ei_anti: float | None = None
    el_pro: int | None = None
    il_pro: int | None = None
    el_anti: int | None = None
    il_anti: int | None = None
    reciprocity_pro: float | None = None
    reciprocity_anti: float | None = None
    ec_pro: float | None = None
    ec_anti: float | None = None

    def as_dict(self) -> dict:
        return asdict(self)


def _maybe(fn, *args):
    try:
        return fn(*args)
    except ValueError:
        return None


def group_metrics(network: CommNetwork, strict: bool = True) -> GroupNetworkMetrics:
    """Every per-community measure for one network kind.

    With ``strict`` a missing community raises; undefined measures of a
    present community (e.g. no internal edges) are reported as ``None``.
    """
    pro, anti = network.group(Stance.PRO), network.group(Stance.ANTI)
    if strict:
        for name, members in (("Pro", pro), ("Anti", anti)):
            if not members:
                raise ValueError(f"{network.kind} network has no {name} users")
    out = {"kind": network.kind, "density_all": _maybe(density, network)}
    for tag, stance, members in (("pro", Stance.PRO, pro), ("anti", Stance.ANTI, anti)):
        _, edges = _scope(network, members)
        d = out[f"density_{tag}"] = _maybe(_density, len(members), edges)
        r = out[f"reciprocity_{tag}"] = _maybe(_reciprocity, edges)
        out[f"ec_{tag}"] = None if d is None or r is None else ec_from(r, d)
        ei = _maybe(ei_index, network, stance)
        if ei is not None:
            out[f"ei_{tag}"], out[f"el_{tag}"], out[f"il_{tag}"] = ei
    return GroupNetworkMetrics(**out)


def write_edges_csv(networks: Mapping[str, CommNetwork], fh: IO[str]) -> None:
    w = csv.writer(fh, lineterminator="\n")
    w.writerow(["src", "dst", "weight", "kind"])
    for kind in KINDS:
        if kind not in networks:
            continue
        for (u, v), n in sorted(networks[kind].edges.items()):
            w.writerow([u, v, n, kind])


TABLE_ROWS = (
    ("Network Density", "density_all"),
    ("Network Density (Pro)", "density_pro"),
    ("Network Density (Anti)", "density_anti"),
    ("EI Index (Pro)", "ei_pro"),
    ("EI Index (Anti)", "ei_anti"),
    ("Echo-chamberness (Pro)", "ec_pro"),
    ("Echo-chamberness (Anti)", "ec_anti"),
)
