import json
from itertools import combinations

import pytest

from edgemult import (CapExceeded, NotBipartite, ParseError,
                      cycle_graph, disjoint_edges,
                      enumerate_minimal_vertex_covers, from_edge_list,
                      induced_matching_number, induced_subgraph,
                      largest_complete_bipartite, max_matching,
                      min_vertex_cover, path_graph, suspension,
                      suspension_decompose)
from edgemult.graphs import graph_from_json, graph_to_json, matching_number


# -- brute-force oracles -------------------------------------------------------

def brute_max_matching(g):
    best = 0
    edges = sorted(g.edges)
    for r in range(len(edges), 0, -1):
        for combo in combinations(edges, r):
            used = set()
            ok = True
            for u, v in combo:
                if u in used or v in used:
                    ok = False
                    break
                used.update((u, v))
            if ok:
                return r
    return best


def brute_min_cover(g):
    verts = sorted(g.vertices)
    for r in range(len(verts) + 1):
        for combo in combinations(verts, r):
            s = set(combo)
            if all(u in s or v in s for u, v in g.edges):
                return r
    return 0


def brute_minimal_covers(g):
    verts = sorted(g.vertices)
    covers = []
    for r in range(len(verts) + 1):
        for combo in combinations(verts, r):
            s = frozenset(combo)
            if all(u in s or v in s for u, v in g.edges):
                covers.append(s)
    return sorted(
        (c for c in covers if not any(d < c for d in covers)),
        key=lambda s: tuple(sorted(s)),
    )


def brute_induced_matching(g):
    edges = sorted(g.edges)
    best = 0
    for r in range(1, len(edges) + 1):
        for combo in combinations(edges, r):
            verts = {v for e in combo for v in e}
            if len(verts) < 2 * r:
                continue
            inside = [e for e in g.edges if e[0] in verts and e[1] in verts]
            if len(inside) == r:
                best = r
    return best


# -- parsing ---------------------------------------------------------------------

def test_from_edge_list_path():
    g = from_edge_list("a b\nb c")
    assert g.vertices == ("a", "b", "c")
    assert g.bipartition == (frozenset({"a", "c"}), frozenset({"b"}))


def test_from_edge_list_loop_rejected():
    with pytest.raises(ParseError):
        from_edge_list("a a")


def test_from_edge_list_odd_cycle_has_no_bipartition():
    g = from_edge_list("a b\nb c\nc d\nd e\ne a")
    assert g.bipartition is None


def test_from_edge_list_duplicate_warns_and_dedupes():
    with pytest.warns(UserWarning):
        g = from_edge_list("a b\nb a")
    assert len(g.edges) == 1


def test_bipartite_header_respected_and_validated():
    g = from_edge_list("#bipartite V1: a c / V2: b z\na b\nb c")
    assert g.bipartition == (frozenset({"a", "c"}), frozenset({"b", "z"}))
    assert "z" in g.vertices  # isolated vertex introduced by the header
    with pytest.raises(ParseError):
        from_edge_list("#bipartite V1: a b / V2: c\na b")


def test_json_round_trip():
    g = from_edge_list("a b\nb c\n#bipartite V1: a c / V2: b")
    assert graph_from_json(graph_to_json(g)) == g
    assert json.loads(graph_to_json(g))["edges"] == [["a", "b"], ["b", "c"]]


# -- matchings and covers ----------------------------------------------------------

def test_max_matching_examples():
    c4 = from_edge_list("x1 y1\ny1 x2\nx2 y2\ny2 x1")
    assert len(max_matching(c4)) == 2
    k13 = from_edge_list("a b\na c\na d")
    assert len(max_matching(k13)) == 1
    susp5 = suspension(path_graph(5))
    assert len(max_matching(susp5)) == 5 == brute_max_matching(susp5)


def test_min_vertex_cover_examples():
    k13 = from_edge_list("a b\na c\na d")
    assert min_vertex_cover(k13) == {"a"}
    assert len(min_vertex_cover(disjoint_edges(4))) == 4
    c6 = cycle_graph(6)
    assert len(min_vertex_cover(c6)) == 3 == brute_min_cover(c6)


def test_min_cover_is_lexicographically_least():
    g = from_edge_list("a b\nc d")
    assert min_vertex_cover(g) == {"a", "c"}


def test_minimal_covers_enumeration():
    single = from_edge_list("a b")
    assert enumerate_minimal_vertex_covers(single) == [frozenset("a"), frozenset("b")]
    p3 = from_edge_list("a b\nb c")
    assert enumerate_minimal_vertex_covers(p3) == [
        frozenset({"a", "c"}), frozenset({"b"})]
    c4 = from_edge_list("x1 y1\ny1 x2\nx2 y2\ny2 x1")
    assert enumerate_minimal_vertex_covers(c4) == [
        frozenset({"x1", "x2"}), frozenset({"y1", "y2"})]


def test_minimal_covers_match_bruteforce_small():
    from edgemult.enumeration import labeled_graphs

    for g in labeled_graphs(5):
        assert enumerate_minimal_vertex_covers(g) == brute_minimal_covers(g)


def test_minimal_covers_cap():
    with pytest.raises(CapExceeded):
        enumerate_minimal_vertex_covers(disjoint_edges(13), cap=24)


def test_konig_on_all_bipartite_up_to_8():
    from edgemult.enumeration import bipartite_graph_classes, graph_from_masks

    for n in range(1, 9):
        for masks in bipartite_graph_classes(n):
            g = graph_from_masks(masks)
            assert g.bipartition is not None
            assert matching_number(g) == len(min_vertex_cover(g))


# -- induced structure -----------------------------------------------------------

def test_induced_subgraph():
    g = cycle_graph(4)
    assert induced_subgraph(g, []).vertices == ()
    sub = induced_subgraph(g, ["v1", "v2"])
    assert sub.edges == frozenset({("v1", "v2")})
    with pytest.raises(ParseError):
        induced_subgraph(g, ["nope"])
    susp7 = suspension(path_graph(7))
    assert induced_subgraph(susp7, path_graph(7).vertices) == path_graph(7)


def test_induced_matching_number():
    assert induced_matching_number(disjoint_edges(3)) == 3
    p4 = path_graph(4)
    assert induced_matching_number(p4) == 1 == brute_induced_matching(p4)
    assert induced_matching_number(suspension(path_graph(7))) == 4
    g = suspension(path_graph(5))
    assert induced_matching_number(g) == brute_induced_matching(g)
    assert induced_matching_number(g) <= matching_number(g)


def test_suspension_decompose():
    c6 = cycle_graph(6)
    assert suspension_decompose(suspension(c6)) == c6
    assert suspension_decompose(cycle_graph(4)) is None
    p4 = path_graph(4)
    core = suspension_decompose(p4)
    assert core is not None and len(core.vertices) == 2 and len(core.edges) == 1


def test_suspension_round_trip_all_graphs_up_to_6():
    from edgemult.enumeration import labeled_graphs

    for n in range(1, 7):
        for g in labeled_graphs(n):
            assert suspension_decompose(suspension(g)) == g


def test_largest_complete_bipartite():
    assert largest_complete_bipartite(from_edge_list("a b")) == 2
    assert largest_complete_bipartite(from_edge_list("a b\na c\na d")) == 4
    assert largest_complete_bipartite(cycle_graph(6)) == 3
    assert largest_complete_bipartite(path_graph(1)) == 0
    with pytest.raises(NotBipartite):
        largest_complete_bipartite(cycle_graph(5))
