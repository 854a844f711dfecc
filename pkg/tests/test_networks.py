import itertools
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from oracles import dense_pagerank
from repetext.entities import Mention, build_gazetteer
from repetext.errors import ParameterError
from repetext.networks import (
    AssociationGraph,
    build_graph,
    connected_components,
    degree_weights,
    name_components,
    pagerank,
    subgraph_window_comparison,
)

A, B, C, D, E, F, H = range(7)


def m(p, e):
    return Mention(p, 0, 1, e)


def graph(edges, nodes=None):
    nodes = set(nodes or ()) | {v for pair in edges for v in pair}
    return AssociationGraph(frozenset(nodes), dict(edges), 0)


def test_same_paragraph_edge():
    g = build_graph([m(5, A), m(5, B)])
    assert g.edges == {(A, B): 1}


def test_neighbouring_paragraphs_only_link_at_window_one():
    ms = [m(5, A), m(6, B)]
    assert build_graph(ms, window=0).edges == {}
    assert build_graph(ms, window=1).edges == {(A, B): 1}


def test_weight_counts_paragraph_indices():
    ms = [m(2, A), m(2, B), m(7, A), m(7, B), m(9, A), m(10, B)]
    assert build_graph(ms, window=0).weight(A, B) == 2
    assert build_graph(ms, window=1).weight(A, B) == 3
    assert build_graph(ms, window=1).weight(B, A) == 3


def test_pair_counted_once_per_paragraph_index():
    # A,B together in 3 and also straddling 3/4: paragraph 3 contributes 1
    ms = [m(3, A), m(3, B), m(4, B), m(3, A)]
    assert build_graph(ms, window=1).weight(A, B) == 1


def test_paragraph_set_restricts_nodes_and_links():
    ms = [m(1, A), m(2, B), m(2, C), m(4, D)]
    g = build_graph(ms, paragraph_set={1, 2}, window=1)
    assert g.nodes == {A, B, C}
    assert g.edges == {(A, B): 1, (A, C): 1, (B, C): 1}
    g = build_graph(ms, paragraph_set={1}, window=1)
    assert g.nodes == {A} and g.edges == {}
    assert g.paragraph_filter == "1 paragraphs"


def test_bad_window():
    with pytest.raises(ParameterError):
        build_graph([], window=2)


def test_components():
    part = connected_components(graph({}, nodes={A, B, C}))
    assert part.components == (frozenset({A}), frozenset({B}), frozenset({C}))
    part = connected_components(graph({(A, B): 1, (B, C): 1}, nodes={D}))
    assert part.components == (frozenset({A, B, C}), frozenset({D}))
    assert part.node_to_component == {A: 0, B: 0, C: 0, D: 1}
    assert part.multi_node() == [0]


def test_degree_weights():
    g = graph({(A, B): 2, (B, C): 3})
    assert degree_weights(g) == {A: (1, 2), B: (2, 5), C: (1, 3)}


def test_pagerank_triangle_and_path():
    tri = pagerank(graph({(A, B): 1, (B, C): 1, (A, C): 1}))
    assert all(abs(v - 1 / 3) < 1e-9 for v in tri.values())
    path = pagerank(graph({(A, B): 1, (B, C): 1}))
    assert abs(path[A] - path[C]) < 1e-12 and path[A] < path[B]


def test_pagerank_star():
    # hub h, leaves l: h = 0.15/5 + 0.85*4*l, l = 0.15/5 + 0.85*h/4, solved by hand: h = 88/185
    star = graph({(leaf, H): 1 for leaf in (A, B, C, D)})
    pr = pagerank(star)
    assert abs(pr[H] - 88 / 185) < 1e-9
    assert abs(pr[A] - 97 / 740) < 1e-9
    assert abs(pr[H] - dense_pagerank(star.nodes, star.edges)[H]) < 1e-9


def test_pagerank_isolated_nodes_and_errors():
    pr = pagerank(graph({(A, B): 1}, nodes={C}))
    assert abs(sum(pr.values()) - 1) < 1e-12
    assert pr[C] < pr[A]
    with pytest.raises(ParameterError):
        pagerank(graph({}))
    with pytest.raises(ParameterError):
        pagerank(graph({(A, B): 1}), damping=1.5)


def test_window_comparison_reports_new_edge():
    ms = [m(0, A), m(1, B)]
    cmp = subgraph_window_comparison(build_graph(ms, window=0), build_graph(ms, window=1))
    assert cmp.edges_subset
    assert cmp.new_edges == ((A, B),)
    assert cmp.weight_deltas == {(A, B): (0, 1)}


def test_hub_bridges_two_networks():
    ms = [m(0, A), m(0, B), m(0, C), m(1, H), m(2, D), m(2, E), m(2, F)]
    g0, g1 = build_graph(ms, window=0), build_graph(ms, window=1)
    cmp = subgraph_window_comparison(g0, g1)
    p0 = connected_components(g0)
    assert cmp.merged == ((p0.node_to_component[A], p0.node_to_component[D]),)
    assert cmp.newly_connected == cmp.merged
    assert cmp.bridges == (H,)


def test_window_comparison_requires_matching_graphs():
    ms = [m(0, A), m(0, B)]
    with pytest.raises(ParameterError):
        subgraph_window_comparison(build_graph(ms, window=1), build_graph(ms, window=0))
    with pytest.raises(ParameterError):
        subgraph_window_comparison(build_graph(ms), build_graph(ms[:1], window=1))


def test_component_names():
    g = build_gazetteer([{"canonical": n} for n in ["Odysseus", "Helen", "Rome", "Virgil", "Nobody"]])
    part = connected_components(graph({(0, 1): 1, (2, 3): 1}, nodes={4}))
    assert name_components(part, g, {"Odysseus": "Homeric", "Rome": "Rome"}) == {
        0: "Homeric", 1: "Rome", 2: "component-3"
    }
    merged = connected_components(graph({(0, 1): 1, (1, 2): 1, (2, 3): 1}))
    assert name_components(merged, g, {"Odysseus": "Homeric", "Rome": "Rome"})[0] == "Homeric+Rome"
    with pytest.raises(ParameterError):
        name_components(part, g, {"Zeus": "Olympus"})


def test_bad_edges_rejected():
    with pytest.raises(ParameterError):
        AssociationGraph(frozenset({A, B}), {(B, A): 1}, 0)
    with pytest.raises(ParameterError):
        AssociationGraph(frozenset({A}), {(A, B): 1}, 0)


# property tests ----------------------------------------------------------

mention_streams = st.lists(
    st.builds(m, st.integers(0, 15), st.integers(0, 9)), max_size=40
)


@given(mention_streams)
def test_window_one_dominates_window_zero(ms):
    g0, g1 = build_graph(ms, window=0), build_graph(ms, window=1)
    assert g0.nodes == g1.nodes
    for pair, w in g0.edges.items():
        assert g1.edges[pair] >= w
    assert subgraph_window_comparison(g0, g1).edges_subset


@given(mention_streams)
def test_components_partition_nodes(ms):
    g = build_graph(ms, window=1)
    part = connected_components(g)
    assert sum(len(c) for c in part.components) == len(g.nodes)
    assert set().union(*part.components) == set(g.nodes) if part.components else not g.nodes
    for (a, b) in g.edges:
        assert part.node_to_component[a] == part.node_to_component[b]


@given(mention_streams, st.randoms(use_true_random=False))
def test_relabelling_entities_gives_isomorphic_graph(ms, rnd):
    perm = list(range(10))
    rnd.shuffle(perm)
    g = build_graph(ms, window=1)
    h = build_graph([Mention(x.paragraph_idx, x.start, x.end, perm[x.entity_id]) for x in ms], window=1)
    assert sorted(g.edges.values()) == sorted(h.edges.values())
    for (a, b), w in g.edges.items():
        assert h.weight(perm[a], perm[b]) == w
    sizes = lambda gr: sorted(len(c) for c in connected_components(gr).components)
    assert sizes(g) == sizes(h)


@given(mention_streams.filter(lambda ms: ms))
def test_pagerank_matches_dense_oracle(ms):
    g = build_graph(ms, window=1)
    pr = pagerank(g)
    ref = dense_pagerank(g.nodes, g.edges)
    assert abs(sum(pr.values()) - 1) < 1e-9
    assert max(abs(pr[v] - ref[v]) for v in g.nodes) < 1e-6


def test_pagerank_uniform_on_vertex_transitive_graphs():
    cycle = {tuple(sorted((i, (i + 1) % 7))): 1 for i in range(7)}
    complete = {p: 3 for p in itertools.combinations(range(6), 2)}
    cube = {(a, b): 2 for a, b in itertools.combinations(range(8), 2) if bin(a ^ b).count("1") == 1}
    for edges in (cycle, complete, cube):
        pr = pagerank(graph(edges))
        assert all(abs(v - 1 / len(pr)) < 1e-9 for v in pr.values())


def test_pagerank_random_weighted_graphs():
    rng = random.Random(11)
    for _ in range(10):
        n = rng.randint(2, 40)
        edges = {p: rng.randint(1, 9) for p in itertools.combinations(range(n), 2) if rng.random() < 0.1}
        g = graph(edges, nodes=range(n))
        ref = dense_pagerank(g.nodes, g.edges)
        pr = pagerank(g)
        assert max(abs(pr[v] - ref[v]) for v in g.nodes) < 1e-6
