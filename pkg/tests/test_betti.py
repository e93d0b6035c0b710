import random
from itertools import combinations

import pytest

from edgemult import (CapExceeded, EdgemultError, cycle_graph, disjoint_edges,
                      from_edge_list, path_graph, suspension)
from edgemult.betti import (SimplicialComplex, betti_table,
                            complete_multipartite_strand, format_table,
                            is_pure, is_quasi_pure, projdim_equals_height,
                            reduced_homology_ranks, stanley_reisner,
                            taylor_oracle_betti)
from edgemult.ideals import (MonomialIdeal, add_var, colon_by_var, edge_ideal,
                             from_generators, height, restrict_to_vars)


def facets_named(complex_):
    return sorted(sorted(f) for f in complex_.facets)


def test_stanley_reisner_examples():
    assert facets_named(stanley_reisner(from_generators("a b"))) == [["a"], ["b"]]
    c4 = from_edge_list("x1 y1\ny1 x2\nx2 y2\ny2 x1")
    assert facets_named(stanley_reisner(edge_ideal(c4))) == [
        ["x1", "x2"], ["y1", "y2"]]
    zero = MonomialIdeal.create(["a", "b", "c"], [])
    assert facets_named(stanley_reisner(zero)) == [["a", "b", "c"]]


def test_reduced_homology_examples():
    two_points = SimplicialComplex(("a", "b"),
                                   frozenset({frozenset("a"), frozenset("b")}))
    assert reduced_homology_ranks(two_points) == [0, 1]
    triangle = SimplicialComplex(
        ("a", "b", "c"),
        frozenset({frozenset("ab"), frozenset("bc"), frozenset("ac")}),
    )
    assert reduced_homology_ranks(triangle) == [0, 0, 1]
    empty_complex = SimplicialComplex(("a",), frozenset({frozenset()}))
    assert reduced_homology_ranks(empty_complex) == [1]
    void = SimplicialComplex((), frozenset())
    assert reduced_homology_ranks(void) == []


def test_betti_single_edge():
    t = betti_table(from_generators("a b"))
    assert t.beta(1, ("a", "b")) == 1
    assert t.beta(0, 0) == 1
    assert t.projdim == 1 and t.reg == 1
    assert is_pure(t)


def test_betti_two_edge_path():
    t = betti_table(from_generators("a b\nb c"))
    assert t.beta(1, 2) == 2 and t.beta(2, 3) == 1
    oracle = taylor_oracle_betti(from_generators("a b\nb c"))
    assert oracle.multigraded == t.multigraded


def test_paper_quoted_nonvanishing():
    # beta_{2,3} of (x4 x5, x5 x6) is nonzero, in characteristic 0 and 2
    i = from_generators("x4 x5\nx5 x6")
    for char in (0, 2):
        assert betti_table(i, char=char).beta(2, 3) == 1
    # the auxiliary 7-variable ideal has beta_{5,7} != 0
    j = from_generators("x1 y5\nx2 y5\nx5 y5\nx2 y6\nx3 y6\nx3 y7")
    for char in (0, 2):
        assert betti_table(j, char=char).beta(5, 7) != 0


def test_betti_cap():
    with pytest.raises(CapExceeded):
        betti_table(edge_ideal(disjoint_edges(4)), cap_n=7)
    with pytest.raises(EdgemultError):
        betti_table(from_generators("x x"))


def test_taylor_oracle_matches_hochster():
    for g in (disjoint_edges(2), cycle_graph(6), path_graph(5)):
        i = edge_ideal(g)
        assert taylor_oracle_betti(i).multigraded == betti_table(i).multigraded


def test_taylor_oracle_cap():
    with pytest.raises(CapExceeded):
        taylor_oracle_betti(edge_ideal(suspension(path_graph(5))), cap_m=5)


def test_purity():
    assert is_pure(betti_table(edge_ideal(disjoint_edges(3))))
    t5 = betti_table(edge_ideal(suspension(path_graph(5))))
    assert is_quasi_pure(t5) and not is_pure(t5)
    t7 = betti_table(edge_ideal(suspension(path_graph(7))))
    assert not is_quasi_pure(t7)


def test_complete_multipartite_strand():
    i = edge_ideal(path_graph(3))
    assert complete_multipartite_strand(i, {"v1", "v2"})
    assert complete_multipartite_strand(i, {"v1", "v2", "v3"})  # K_{1,2}
    sparse = edge_ideal(from_edge_list("#bipartite V1: a c / V2: b\na b"))
    assert not complete_multipartite_strand(sparse, {"a", "b", "c"})
    assert not complete_multipartite_strand(i, {"v1"})


def test_strand_criterion_equals_betti_nonvanishing():
    for g in (path_graph(4), cycle_graph(6), suspension(path_graph(3))):
        i = edge_ideal(g)
        t = betti_table(i)
        names = list(g.vertices)
        for r in range(1, len(names) + 1):
            for sigma in combinations(names, r):
                lhs = complete_multipartite_strand(i, sigma)
                rhs = t.beta(len(sigma) - 1, sigma) != 0
                assert lhs == rhs, (sorted(g.edges), sigma)


def test_restriction_lemma():
    g = suspension(path_graph(4))
    i = edge_ideal(g)
    t = betti_table(i)
    keep = set(list(g.vertices)[:5])
    j = restrict_to_vars(i, keep)
    tj = betti_table(j)
    for (l, sigma), v in tj.multigraded.items():
        if set(sigma) <= keep:
            assert t.multigraded.get((l, sigma), 0) == v
        else:
            assert v == 0
    for (l, sigma), v in t.multigraded.items():
        if set(sigma) <= keep:
            assert tj.multigraded.get((l, sigma), 0) == v


def test_colon_support_lemma():
    g = suspension(path_graph(4))
    i = edge_ideal(g)
    t = betti_table(i)
    for x in list(g.vertices)[:4]:
        tc = betti_table(colon_by_var(i, x))
        for (l, sigma), v in tc.multigraded.items():
            if v and l >= 1:
                bigger = tuple(sorted(set(sigma) | {x}))
                assert (t.multigraded.get((l, sigma), 0)
                        or t.multigraded.get((l, bigger), 0)), (x, l, sigma)


def test_monotonicity_under_colon_and_add():
    g = cycle_graph(6)
    i = edge_ideal(g)
    t = betti_table(i)
    c = height(i)
    for x in g.vertices:
        for derived in (colon_by_var(i, x), add_var(i, x)):
            td = betti_table(derived)
            for l in range(1, c + 1):
                if l in td.M:
                    assert td.M[l] <= t.M[l]
        tc = betti_table(colon_by_var(i, x))
        assert tc.projdim <= t.projdim


def test_prune_matches_unpruned():
    rng = random.Random(3)
    for _ in range(40):
        n = rng.randrange(2, 7)
        names = [f"v{k}" for k in range(n)]
        m = rng.randrange(1, 6)
        gens = [tuple(sorted(rng.sample(names, rng.randrange(1, min(4, n) + 1))))
                for _ in range(m)]
        i = MonomialIdeal.create(names, gens)
        assert (betti_table(i, prune=True).multigraded
                == betti_table(i, prune=False).multigraded)


def test_cm_oracle():
    assert projdim_equals_height(edge_ideal(path_graph(4)))
    c4 = from_edge_list("x1 y1\ny1 x2\nx2 y2\ny2 x1")
    assert not projdim_equals_height(edge_ideal(c4))


def test_zero_ideal_table():
    t = betti_table(MonomialIdeal.create(["a", "b"], []))
    assert t.graded == {(0, 0): 1}
    assert t.projdim == 0 and t.reg == 0
    assert "zero" in format_table(t) or format_table(t)


def test_table_json_and_render():
    t = betti_table(from_generators("a b\nb c"))
    obj = t.to_json_obj()
    assert obj["reg"] == 1 and obj["projdim"] == 2
    assert any(r.get("M") == 3 for r in obj["rows"] if r["l"] == 2)
    text = format_table(t)
    assert "reg 1" in text and "projdim 2" in text


def test_suspension_regularity_is_half_c():
    # suspensions of paths/cycles: reg = ceil(c/2)
    for core, expect in ((path_graph(5), 3), (path_graph(6), 3),
                         (cycle_graph(6), 3), (path_graph(4), 2)):
        t = betti_table(edge_ideal(suspension(core)))
        assert t.reg == expect


def test_hochster_equals_taylor_exhaustive_small_edge_ideals():
    from edgemult.enumeration import labeled_graphs

    for g in labeled_graphs(4):
        if not g.edges:
            continue
        i = edge_ideal(g)
        assert (betti_table(i).multigraded
                == taylor_oracle_betti(i).multigraded), sorted(g.edges)


def test_known_literature_values():
    """Values independent of this project's oracles: C5 is Gorenstein with
    total Betti numbers 1,5,5,1; complete bipartite ideals have linear
    resolutions; C6 has reg 2 and projdim 4."""
    t5 = betti_table(edge_ideal(cycle_graph(5)))
    totals = {}
    for (l, j), v in t5.graded.items():
        totals[l] = totals.get(l, 0) + v
    assert [totals.get(l, 0) for l in range(4)] == [1, 5, 5, 1]
    assert t5.reg == 2 and t5.projdim == 3

    names = [f"x{i}" for i in (1, 2, 3)] + [f"y{i}" for i in (1, 2, 3)]
    edges = [(f"x{i}", f"y{j}") for i in (1, 2, 3) for j in (1, 2, 3)]
    from edgemult import Graph
    from edgemult.ideals import multiplicity

    ik = edge_ideal(Graph.from_edges(names, edges))
    tk = betti_table(ik)
    assert tk.reg == 1 and tk.projdim == 5
    assert multiplicity(ik) == 2 and height(ik) == 3

    t6 = betti_table(edge_ideal(cycle_graph(6)))
    assert t6.reg == 2 and t6.projdim == 4
