import io

import pytest
from hypothesis import given
from hypothesis import strategies as st

from oracles import literal_propagation, trace_graph
from stancenet.hashtag_graph import HashtagGraph, apply_seeds
from stancenet.ingest import TweetRecord
from stancenet.propagation import (PropagationState, Stance, StanceAssignment, assign_stance,
                                   propagate, read_stance_csv, sweep_order, trace_propagation,
                                   user_valence, write_stance_csv, write_valence_csv)


def graph(edges, seeds):
    nodes = {n for e in edges for n in e} | set(seeds)
    keyed = {tuple(sorted(e)): w for e, w in edges.items()}
    return apply_seeds(HashtagGraph(nodes=frozenset(nodes), edges=keyed), seeds)


def test_single_neighbour_copies_seed():
    g = propagate(graph({("a", "b"): 5}, {"a": 1}))
    assert g.valence["b"] == 1.0


def test_mixed_neighbours_weighted_average():
    g = propagate(graph({("h", "spro"): 3, ("h", "santi"): 1}, {"spro": 1, "santi": -1}))
    assert g.valence["h"] == 0.5


def test_slack_gates_poorly_labeled_node():
    # g: one labeled neighbour out of three; the other two hang off g only
    g = graph({("g", "s"): 1, ("g", "x"): 1, ("g", "y"): 1}, {"s": -1})
    _, events = trace_propagation(g, gamma=50)
    first = {e.node: e for e in events}
    assert first["g"].slack == 2 and first["g"].sweep == 100
    assert first["x"].sweep >= 100


def test_hand_trace():
    edges, seeds, expected, expected_events = trace_graph()
    g = graph(edges, seeds)
    assert sweep_order(g) == ("p", "g", "h", "y", "n", "x")
    valence, events = trace_propagation(g, gamma=50)
    assert valence == expected
    assert [(e.sweep, e.slack, e.node) for e in events] == expected_events


def test_requires_seeds_and_valid_gamma():
    g = HashtagGraph(nodes=frozenset("ab"), edges={("a", "b"): 1})
    with pytest.raises(ValueError):
        propagate(g)
    with pytest.raises(ValueError):
        propagate(graph({("a", "b"): 1}, {"a": 1}), gamma=0)
    with pytest.raises(ValueError):
        PropagationState(gamma=0)


def test_seedless_component_stays_unlabeled():
    g = propagate(graph({("a", "b"): 1, ("c", "d"): 2}, {"a": 1}))
    assert "c" not in g.valence and "d" not in g.valence


def test_literal_dilution_pulls_toward_zero():
    g = graph({("g", "s"): 1, ("g", "x"): 1, ("g", "y"): 2}, {"s": 1})
    assert propagate(g).valence["g"] == 1.0
    assert propagate(g, literal_dilution=True).valence["g"] == 0.25


NODES = list("abcdefgh")


@st.composite
def random_graphs(draw):
    n = draw(st.integers(2, 8))
    nodes = NODES[:n]
    pairs = [(a, b) for i, a in enumerate(nodes) for b in nodes[i + 1:]]
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True, max_size=len(pairs)))
    weights = {p: draw(st.integers(1, 5)) for p in chosen}
    seed_nodes = draw(st.lists(st.sampled_from(nodes), unique=True, min_size=1, max_size=n))
    seeds = {s: draw(st.sampled_from([1, -1])) for s in seed_nodes}
    gamma = draw(st.integers(1, 4))
    return nodes, weights, seeds, gamma


@given(random_graphs(), st.booleans())
def test_matches_literal_oracle(case, dilution):
    nodes, weights, seeds, gamma = case
    g = graph(weights, seeds)
    g = HashtagGraph(nodes=frozenset(nodes) | g.nodes, edges=g.edges, valence=g.valence,
                     seeds=g.seeds)
    got = propagate(g, gamma=gamma, literal_dilution=dilution).valence
    want = literal_propagation(nodes, {frozenset(p): w for p, w in weights.items()},
                               {k: float(v) for k, v in seeds.items()}, gamma, dilution)
    assert got == pytest.approx(want, abs=1e-12)
    assert set(got) == set(want)


@given(random_graphs())
def test_bounds_seeds_and_sign_symmetry(case):
    nodes, weights, seeds, gamma = case
    g = graph(weights, seeds)
    out = propagate(g, gamma=gamma).valence
    assert all(-1.0 <= v <= 1.0 for v in out.values())
    assert all(out[s] == v for s, v in seeds.items())
    flipped = propagate(graph(weights, {k: -v for k, v in seeds.items()}), gamma=gamma).valence
    assert set(flipped) == set(out)
    for k in out:
        assert flipped[k] == -out[k]
        assert assign_stance(flipped[k]) is assign_stance(out[k]).opposite()
    assert propagate(g, gamma=gamma).valence == out


def tweets(*tag_lists):
    return [TweetRecord(str(i), "u", "x", hashtags=tuple(t)) for i, t in enumerate(tag_lists)]


def test_user_valence_occurrence_weighted():
    val = {"vaccineswork": 1.0, "learntherisk": -1.0}
    v = user_valence(tweets(["vaccineswork"], ["vaccineswork", "learntherisk"]), val)
    assert v == pytest.approx(1 / 3)
    assert user_valence(tweets(["vaccineswork"]), val) == 1.0
    assert user_valence(tweets(["other"], []), val) is None


def test_assign_stance():
    assert assign_stance(1 / 3) is Stance.PRO
    assert assign_stance(-1.0) is Stance.ANTI
    assert assign_stance(0.0) is Stance.UNLABELED
    assert assign_stance(None) is Stance.UNLABELED


def test_csv_exports_round_trip():
    g = propagate(graph({("a", "b"): 1}, {"a": 1}))
    buf = io.StringIO()
    write_valence_csv(g, buf)
    assert buf.getvalue() == "hashtag,valence,is_seed\na,1.0,1\nb,1.0,0\n"
    s = StanceAssignment({"u1": 0.25}, {"u1": Stance.PRO, "u2": Stance.UNLABELED})
    buf = io.StringIO()
    write_stance_csv(s, buf)
    assert buf.getvalue() == "user_id,valence,label\nu1,0.25,Pro\nu2,,Unlabeled\n"
    assert read_stance_csv(io.StringIO(buf.getvalue())) == s
