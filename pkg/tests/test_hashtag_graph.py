import io
import logging
from math import comb

import pytest
from hypothesis import given
from hypothesis import strategies as st

from stancenet.hashtag_graph import (HashtagGraph, apply_seeds, build_cooccurrence, parse_seeds,
                                     top_cooccurring, write_edges_csv)
from stancenet.ingest import Corpus, TweetRecord


def tagged(*tag_sets):
    return Corpus(tuple(TweetRecord(str(i), "u", "vacc", hashtags=tuple(tags))
                        for i, tags in enumerate(tag_sets)))


def test_repeated_pair_counts_tweets():
    g = build_cooccurrence(tagged("ab", "ab", "ab"))
    assert g.edges == {("a", "b"): 3}


def test_triple_expands_pairwise():
    g = build_cooccurrence(tagged("abc"))
    assert g.edges == {("a", "b"): 1, ("a", "c"): 1, ("b", "c"): 1}


def test_single_hashtag_tweets_give_nodes_only():
    g = build_cooccurrence(tagged("a", "b"))
    assert g.nodes == {"a", "b"} and g.edges == {}


def test_repeated_tag_within_tweet_counts_once():
    g = build_cooccurrence(tagged(("a", "a", "b")))
    assert g.edges == {("a", "b"): 1}


@given(st.lists(st.lists(st.sampled_from("abcdef"), max_size=5), max_size=15))
def test_total_weight_equals_pair_count(tag_lists):
    g = build_cooccurrence(tagged(*tag_lists))
    assert sum(g.edges.values()) == sum(comb(len(set(t)), 2) for t in tag_lists)
    for (a, b), w in g.edges.items():
        assert a < b and w >= 1
        assert g.weight(a, b) == g.weight(b, a) == w
        assert w == sum(1 for t in tag_lists if a in t and b in t)


def test_apply_seeds_freezes():
    g = apply_seeds(build_cooccurrence(tagged(("vaccineswork", "learntherisk"))),
                    {"vaccineswork": 1, "learntherisk": -1})
    assert g.valence == {"vaccineswork": 1.0, "learntherisk": -1.0}
    assert g.seeds == {"vaccineswork", "learntherisk"}


def test_apply_empty_seeds_is_identity():
    g = build_cooccurrence(tagged("ab"))
    assert apply_seeds(g, {}) == g


def test_unseen_seed_added_with_warning(caplog):
    g = build_cooccurrence(tagged("ab"))
    with caplog.at_level(logging.WARNING):
        g2 = apply_seeds(g, {"unseenhashtag": 1})
    assert "unseenhashtag" in g2.nodes
    assert "unseenhashtag" in caplog.text


def test_seed_valence_must_be_unit():
    with pytest.raises(ValueError):
        apply_seeds(build_cooccurrence(tagged("ab")), {"a": 0.5})


def test_graph_invariants_enforced():
    with pytest.raises(ValueError):
        HashtagGraph(nodes=frozenset("a"), edges={("a", "a"): 1})
    with pytest.raises(ValueError):
        HashtagGraph(nodes=frozenset("ab"), edges={("a", "b"): 0})
    with pytest.raises(ValueError):
        HashtagGraph(nodes=frozenset("a"), valence={"a": 1.5})


def test_top_cooccurring():
    g = build_cooccurrence(tagged(*(["ax"] * 5 + ["ay"] * 2)))
    assert top_cooccurring(g, "a", 1) == [("x", 5)]
    assert top_cooccurring(g, "a", 10) == [("x", 5), ("y", 2)]
    tie = build_cooccurrence(tagged(*(["ay"] * 3 + ["ax"] * 3)))
    assert top_cooccurring(tie, "a", 2) == [("x", 3), ("y", 3)]
    with pytest.raises(KeyError):
        top_cooccurring(g, "zzz", 1)


def test_parse_seeds_file():
    text = "# pro\nVaccinesWork,1\n\nlearntherisk, -1\n"
    assert parse_seeds(io.StringIO(text)) == {"vaccineswork": 1.0, "learntherisk": -1.0}
    with pytest.raises(ValueError, match="line 1"):
        parse_seeds(io.StringIO("foo,0.5\n"))


def test_edge_csv():
    buf = io.StringIO()
    write_edges_csv(build_cooccurrence(tagged("ba", "ab")), buf)
    assert buf.getvalue() == "h1,h2,weight\na,b,2\n"
