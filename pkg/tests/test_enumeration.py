import random

from edgemult.enumeration import (bipartite_graph_classes,
                                  brute_canon_digraph, canon_digraph,
                                  digraph_candidates, digraph_classes,
                                  digraphs_isomorphic, graph_from_masks,
                                  graphs_isomorphic, is_connected_underlying,
                                  labeled_graphs, poset_classes)
from edgemult.graphs import cycle_graph, path_graph, suspension

# published census values
DIGRAPHS = {1: 1, 2: 3, 3: 16, 4: 218, 5: 9608}
POSETS = {1: 1, 2: 2, 3: 5, 4: 16, 5: 63, 6: 318, 7: 2045}
BIPARTITE = {1: 1, 2: 2, 3: 3, 4: 7, 5: 13, 6: 35, 7: 88, 8: 303}


def permute_rows(rows, p):
    n = len(rows)
    pos = {v: k for k, v in enumerate(p)}
    out = []
    for k in range(n):
        m = 0
        a = rows[p[k]]
        while a:
            b = a & -a
            a ^= b
            m |= 1 << pos[b.bit_length() - 1]
        out.append(m)
    return tuple(out)


def test_digraph_class_counts():
    for c in (1, 2, 3, 4):
        assert len(digraph_classes(c)) == DIGRAPHS[c]


def test_poset_class_counts():
    for c, expect in POSETS.items():
        assert len(poset_classes(c)) == expect


def test_poset_classes_are_posets():
    for rows in poset_classes(5):
        n = len(rows)
        for i in range(n):
            assert not rows[i] >> i & 1
            t = rows[i]
            while t:
                b = t & -t
                t ^= b
                j = b.bit_length() - 1
                assert rows[j] & ~rows[i] & ~(1 << i) == 0  # transitive
                assert not rows[j] >> i & 1  # acyclic


def test_poset_classes_brute_small():
    """Independent route: filter all labeled irreflexive transitive relations."""
    for n in (1, 2, 3, 4):
        seen = set()
        pairs = [(i, j) for i in range(n) for j in range(n) if i != j]
        for code in range(1 << len(pairs)):
            rows = [0] * n
            for k, (i, j) in enumerate(pairs):
                if code >> k & 1:
                    rows[i] |= 1 << j
            ok = True
            for i in range(n):
                if rows[i] >> i & 1:
                    ok = False
                    break
                t = rows[i]
                while t and ok:
                    b = t & -t
                    t ^= b
                    j = b.bit_length() - 1
                    if rows[j] >> i & 1 or rows[j] & ~rows[i] & ~(1 << i):
                        ok = False
                if not ok:
                    break
            if ok:
                seen.add(canon_digraph(tuple(rows)))
        assert len(seen) == POSETS[n]


def test_bipartite_class_counts():
    for n, expect in list(BIPARTITE.items())[:6]:
        assert len(bipartite_graph_classes(n)) == expect


def test_bipartite_against_labeled_bruteforce():
    # filter *all* graphs on 5 vertices for bipartiteness, canonicalize
    got = set()
    for g in labeled_graphs(5):
        if g.bipartition is not None:
            names = sorted(g.vertices)
            idx = {v: k for k, v in enumerate(names)}
            nbr = [0] * 5
            for u, v in g.edges:
                nbr[idx[u]] |= 1 << idx[v]
                nbr[idx[v]] |= 1 << idx[u]
            got.add(canon_digraph(tuple(nbr)))
    assert len(got) == BIPARTITE[5]
    assert got == set(bipartite_graph_classes(5))


def test_canon_permutation_invariance():
    rng = random.Random(17)
    for _ in range(800):
        n = rng.randrange(1, 8)
        rows = tuple(rng.getrandbits(n) & ~(1 << k) for k in range(n))
        p = list(range(n))
        rng.shuffle(p)
        assert canon_digraph(rows) == canon_digraph(permute_rows(rows, p))


def test_canon_certifies_isomorphism():
    rng = random.Random(23)
    for _ in range(300):
        n = rng.randrange(2, 7)
        a = tuple(rng.getrandbits(n) & ~(1 << k) for k in range(n))
        b = tuple(rng.getrandbits(n) & ~(1 << k) for k in range(n))
        same_canon = canon_digraph(a) == canon_digraph(b)
        assert same_canon == digraphs_isomorphic(a, b)
        # brute canonical form agrees on the isomorphism relation
        assert same_canon == (brute_canon_digraph(a) == brute_canon_digraph(b))


def test_graphs_isomorphic():
    assert graphs_isomorphic(suspension(path_graph(5)),
                             suspension(path_graph(5, prefix="w")))
    assert not graphs_isomorphic(suspension(path_graph(6)),
                                 suspension(cycle_graph(6)))
    assert not graphs_isomorphic(path_graph(3), path_graph(4))


def test_attachment_covers_every_class():
    # every 4-vertex class must appear among 3-class parents x attachments
    parents = digraph_classes(3)
    seen = {canon_digraph(rows) for rows in digraph_candidates(4, parents)}
    assert seen == set(digraph_classes(4))


def test_connectivity():
    assert is_connected_underlying((2, 0))  # arc 0->1
    assert not is_connected_underlying((0, 0))
    assert is_connected_underlying(())


def test_graph_from_masks():
    g = graph_from_masks((2, 1))
    assert sorted(g.edges) == [("v1", "v2")]
