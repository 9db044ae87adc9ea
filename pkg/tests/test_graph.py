import itertools
import json

import pytest

from raagrh.graph import (
    Graph,
    GraphError,
    canonical_form,
    complete_graph,
    dominates,
    edgeless_graph,
    enumerate_graphs,
    equivalence_classes,
    equivalent,
    figure_left,
    graph6,
    link,
    maximal_vertices,
    path_graph,
    star,
    star_complement_components,
)

from oracles import brute_canonical, brute_components, graph_counts

P3 = path_graph(["a", "b", "c"])


def test_link_and_star():
    assert set(link(P3, "b")) == {"a", "c"}
    assert set(link(P3, "a")) == {"b"}
    assert link(Graph(["a", "v"], []), "v") == ()
    assert set(star(P3, "b")) == {"a", "b", "c"}
    assert set(star(P3, "c")) == {"b", "c"}
    assert set(star(complete_graph(["a", "b", "c"]), "a")) == {"a", "b", "c"}


def test_domination_on_path():
    assert dominates(P3, "a", "b")
    assert not dominates(P3, "b", "a")
    assert dominates(P3, "a", "c") and dominates(P3, "c", "a")
    assert equivalent(P3, "a", "c")


def test_equivalence_classes_and_maximal():
    assert sorted(map(sorted, equivalence_classes(P3))) == [["a", "c"], ["b"]]
    assert set(maximal_vertices(P3)) == {"b"}
    K4 = complete_graph(list("abcd"))
    assert len(equivalence_classes(K4)) == 1 and set(maximal_vertices(K4)) == set("abcd")
    E4 = edgeless_graph(list("abcd"))
    assert len(equivalence_classes(E4)) == 1 and set(maximal_vertices(E4)) == set("abcd")


def test_star_complement_components():
    assert [set(c) for c in star_complement_components(P3, "a")] == [{"c"}]
    assert star_complement_components(P3, "b") == []
    E3 = edgeless_graph(list("abc"))
    assert [set(c) for c in star_complement_components(E3, "a")] == [{"b"}, {"c"}]
    comps = {frozenset(c) for c in star_complement_components(figure_left(), "c")}
    assert comps == {frozenset({"v1", "v9", "v10"}), frozenset({"v4", "v5", "v6"})}


def test_enumeration_counts():
    assert len(list(enumerate_graphs(3, up_to_iso=True))) == 4
    assert len(list(enumerate_graphs(4, up_to_iso=True))) == 11
    assert len(list(enumerate_graphs(2, up_to_iso=False))) == 2
    labeled3 = list(enumerate_graphs(3, up_to_iso=False))
    assert len(labeled3) == 8
    assert len({canonical_form(G) for G in labeled3}) == 4


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5, 6])
def test_class_counts_match_oracle(n):
    assert len(list(enumerate_graphs(n))) == graph_counts()[n]


def test_canonical_form_examples():
    assert canonical_form(path_graph(["a", "b", "c"])) == canonical_form(path_graph(["b", "a", "c"]))
    K3 = complete_graph(["x", "y", "z"])
    assert canonical_form(K3) == canonical_form(complete_graph(["z", "x", "y"]))


def _code(G):
    n = G.n
    c = canonical_form(G)
    idx = {v: i for i, v in enumerate(c.vertices)}
    code = 0
    for j in range(n):
        for i in range(j):
            code = (code << 1) | (c.vertices[j] in link(c, c.vertices[i]))
    return code, {frozenset((idx[a], idx[b])) for a, b in c.edges}


@pytest.mark.parametrize("n", [3, 4, 5])
def test_canonical_form_is_least_code(n):
    for G in enumerate_graphs(n, up_to_iso=False):
        idx = {v: i for i, v in enumerate(G.vertices)}
        want = brute_canonical(n, [(idx[a], idx[b]) for a, b in G.edges])
        assert _code(G)[0] == want


@pytest.mark.parametrize("n", [4, 5])
def test_canonical_form_invariant_under_permutation(n):
    for G in enumerate_graphs(n):
        c = canonical_form(G)
        for perm in itertools.permutations(G.vertices):
            assert canonical_form(G.permute(dict(zip(G.vertices, perm)))) == c


def test_domination_reflexive_and_transitive():
    for n in range(1, 6):
        for G in enumerate_graphs(n):
            V = G.vertices
            assert all(dominates(G, v, v) for v in V)
            for u, v, w in itertools.product(V, repeat=3):
                if dominates(G, u, v) and dominates(G, v, w):
                    assert dominates(G, u, w)


def test_star_complement_components_oracle():
    for n in range(1, 6):
        for G in enumerate_graphs(n):
            for v in G.vertices:
                got = [set(c) for c in star_complement_components(G, v)]
                want = brute_components(G.vertices, G.edges, set(star(G, v)))
                assert sorted(map(sorted, got)) == sorted(map(sorted, want))


def test_twin_dichotomy():
    for G in enumerate_graphs(5):
        for u, v in itertools.combinations(G.vertices, 2):
            adjacent = v in link(G, u)
            if adjacent and set(star(G, u)) == set(star(G, v)):
                assert equivalent(G, u, v)
            if not adjacent and set(link(G, u)) == set(link(G, v)):
                assert equivalent(G, u, v)


def test_star_is_link_plus_vertex():
    for G in enumerate_graphs(5):
        for v in G.vertices:
            assert v not in link(G, v)
            assert set(star(G, v)) == set(link(G, v)) | {v}


@pytest.mark.parametrize("data", [
    {"vertices": ["a", "b"], "edges": [["a", "b"], ["b", "a"]]},
    {"vertices": ["a", "a"], "edges": []},
    {"vertices": ["a"], "edges": [["a", "a"]]},
    {"vertices": ["a"], "edges": [["a", "z"]]},
    {"vertices": ["a b"], "edges": []},
    {"edges": []},
])
def test_invalid_graphs_rejected(data):
    with pytest.raises(GraphError):
        Graph.from_dict(data)


def test_json_round_trip_and_dot():
    G = figure_left()
    assert Graph.from_json(G.to_json()) == G
    assert json.loads(G.to_json())["vertices"][0] == "v1"
    dot = P3.to_dot()
    assert dot.splitlines()[0] == "graph G {" and '"a" -- "b";' in dot
    assert G.to_dot() == G.to_dot()


def test_graph6_known_values():
    assert graph6(complete_graph(list("abc"))) == "Bw"
    assert graph6(edgeless_graph(list("abc"))) == "B?"
