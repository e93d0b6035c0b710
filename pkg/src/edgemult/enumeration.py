"""Exhaustive enumeration up to isomorphism, at desk scale.

Digraphs are encoded as tuples of out-neighbor bitmasks. The canonical form
is the minimum encoding over vertex orderings that list color-refinement
cells in invariant order (within a cell, vertices whose transposition is an
automorphism are pinned, collapsing the factorial blow-up of edgeless or
complete cells). The output is always an encoding of a relabeled copy of
the input, so equal forms certify isomorphism; distinct forms for
isomorphic inputs would only cost duplicated work, and the test suite pins
both permutation-invariance on random relabelings and the class counts
against the published census. Decisive pairwise comparisons should use
`digraphs_isomorphic`, which is exact.

Class generation is by vertex extension: every (k+1)-vertex digraph
restricts to a k-vertex one, so attaching a new vertex to each k-class
representative in all 4^k ways covers every (k+1)-class.
"""

from __future__ import annotations

from itertools import combinations, permutations

from .graphs import Graph


def _bits(m: int):
    while m:
        b = m & -m
        yield b.bit_length() - 1
        m ^= b


def _refine(adj, radj, n: int) -> list[int]:
    base = [(bin(adj[i]).count("1"), bin(radj[i]).count("1")) for i in range(n)]
    order = {c: r for r, c in enumerate(sorted(set(base)))}
    colors = [order[c] for c in base]
    while True:
        key = [
            (
                colors[i],
                tuple(sorted(colors[j] for j in _bits(adj[i]))),
                tuple(sorted(colors[j] for j in _bits(radj[i]))),
            )
            for i in range(n)
        ]
        order = {c: r for r, c in enumerate(sorted(set(key)))}
        new = [order[k] for k in key]
        if new == colors:
            return colors
        colors = new


def _is_transposition_automorphism(adj, n, u, v) -> bool:
    for i in range(n):
        src = adj[v] if i == u else adj[u] if i == v else adj[i]
        m = 0
        for j in _bits(src):
            m |= 1 << (v if j == u else u if j == v else j)
        if m != adj[i]:
            return False
    return True


def canon_digraph(adj) -> tuple:
    """Canonical encoding of a digraph given as out-mask rows."""
    n = len(adj)
    if n <= 1:
        return tuple(adj)
    radj = [0] * n
    for i in range(n):
        for j in _bits(adj[i]):
            radj[j] |= 1 << i
    colors = _refine(adj, radj, n)
    cells: dict[int, list[int]] = {}
    for v, c in enumerate(colors):
        cells.setdefault(c, []).append(v)
    ordered = [cells[c] for c in sorted(cells)]
    # pin twin vertices (transposition automorphisms) in ascending order
    cell_perms = []
    for cell in ordered:
        groups: list[list[int]] = []
        for v in cell:
            for grp in groups:
                if _is_transposition_automorphism(adj, n, grp[0], v):
                    grp.append(v)
                    break
            else:
                groups.append([v])
        reps = [g[0] for g in groups]
        perms = []
        for rp in permutations(reps):
            p = []
            for r in rp:
                p.extend(next(g for g in groups if g[0] == r))
            perms.append(p)
        cell_perms.append(perms)
    best = None
    stack = [[]]
    for perms in cell_perms:
        stack = [pre + p for pre in stack for p in perms]
    for p in stack:
        pos = {v: k for k, v in enumerate(p)}
        enc = []
        for k in range(n):
            m = 0
            for j in _bits(adj[p[k]]):
                m |= 1 << pos[j]
            enc.append(m)
        enc = tuple(enc)
        if best is None or enc < best:
            best = enc
    return best


def brute_canon_digraph(adj) -> tuple:
    """Minimum encoding over every permutation; test oracle only."""
    n = len(adj)
    best = None
    for p in permutations(range(n)):
        pos = {v: k for k, v in enumerate(p)}
        enc = []
        for k in range(n):
            m = 0
            for j in _bits(adj[p[k]]):
                m |= 1 << pos[j]
            enc.append(m)
        enc = tuple(enc)
        if best is None or enc < best:
            best = enc
    return best


def digraphs_isomorphic(adj1, adj2) -> bool:
    """Exact isomorphism test by color-guided backtracking."""
    n = len(adj1)
    if n != len(adj2):
        return False
    if sorted(map(int.bit_count, adj1)) != sorted(map(int.bit_count, adj2)):
        return False

    def colors_of(adj):
        radj = [0] * n
        for i in range(n):
            for j in _bits(adj[i]):
                radj[j] |= 1 << i
        return _refine(adj, radj, n), radj

    c1, r1 = colors_of(adj1)
    c2, r2 = colors_of(adj2)
    if sorted(c1) != sorted(c2):
        return False
    mapping = [-1] * n
    used = 0

    def ok(i, j, partial):
        for a in range(i):
            b = partial[a]
            if (adj1[a] >> i & 1) != (adj2[b] >> j & 1):
                return False
            if (adj1[i] >> a & 1) != (adj2[j] >> b & 1):
                return False
        return True

    def rec(i, used):
        if i == n:
            return True
        for j in range(n):
            if used >> j & 1 or c2[j] != c1[i]:
                continue
            if ok(i, j, mapping):
                mapping[i] = j
                if rec(i + 1, used | (1 << j)):
                    return True
        return False

    return rec(0, 0)


def graphs_isomorphic(g1: Graph, g2: Graph) -> bool:
    def masks(g):
        names = sorted(g.vertices)
        idx = {v: k for k, v in enumerate(names)}
        nbr = [0] * len(names)
        for u, v in g.edges:
            nbr[idx[u]] |= 1 << idx[v]
            nbr[idx[v]] |= 1 << idx[u]
        return tuple(nbr)

    return digraphs_isomorphic(masks(g1), masks(g2))


def attach_vertex(parent, code: int) -> tuple:
    """Extend by one vertex; each old vertex gets none/out/in/both arcs
    according to the base-4 digit of `code`."""
    k = len(parent)
    rows = list(parent)
    newrow = 0
    c = code
    for j in range(k):
        t = c & 3
        c >>= 2
        if t & 1:
            newrow |= 1 << j
        if t & 2:
            rows[j] |= 1 << k
    rows.append(newrow)
    return tuple(rows)


def digraph_classes(c: int) -> list[tuple]:
    """Canonical representatives of all digraphs on c vertices."""
    classes = [(0,)]
    for k in range(1, c):
        seen = set()
        for parent in classes:
            for code in range(4 ** k):
                seen.add(canon_digraph(attach_vertex(parent, code)))
        classes = sorted(seen)
    return classes if c >= 1 else [()]


def digraph_candidates(c: int, parents=None):
    """A covering family for digraphs on c vertices: every class appears,
    duplicates allowed (no canonicalization at the last level)."""
    if parents is None:
        parents = digraph_classes(c - 1)
    for parent in parents:
        for code in range(4 ** (c - 1)):
            yield attach_vertex(parent, code)


# -- posets --------------------------------------------------------------------

def poset_classes(c: int) -> list[tuple]:
    """Strict order relations (transitively closed DAGs, arcs i->j meaning
    j above i) on c vertices, up to isomorphism.

    Extension by a new maximal element whose strict down-set runs over the
    down-closed subsets of the smaller poset.
    """
    classes = [(0,)]
    for k in range(1, c):
        seen = set()
        for parent in classes:
            radj = [0] * k
            for i in range(k):
                for j in _bits(parent[i]):
                    radj[j] |= 1 << i
            for d in range(1 << k):
                ok = True
                t = d
                while t:
                    b = t & -t
                    t ^= b
                    if radj[b.bit_length() - 1] & ~d:
                        ok = False
                        break
                if not ok:
                    continue
                rows = list(parent)
                for i in _bits(d):
                    rows[i] |= 1 << k
                rows.append(0)
                seen.add(canon_digraph(tuple(rows)))
        classes = sorted(seen)
    return classes if c >= 1 else [()]


def is_connected_underlying(adj) -> bool:
    n = len(adj)
    if n == 0:
        return True
    und = list(adj)
    for i in range(n):
        for j in _bits(adj[i]):
            und[j] |= 1 << i
    seen = 1
    frontier = 1
    while frontier:
        nxt = 0
        for i in _bits(frontier):
            nxt |= und[i]
        frontier = nxt & ~seen
        seen |= nxt
    return seen == (1 << n) - 1


# -- undirected graphs ----------------------------------------------------------

def canon_graph_masks(nbr) -> tuple:
    """Canonical form of an undirected graph given as symmetric masks."""
    return canon_digraph(tuple(nbr))


def canonical_graph_key(g: Graph) -> tuple:
    """Label-independent key for a Graph (vertices taken in sorted order)."""
    names = sorted(g.vertices)
    idx = {v: k for k, v in enumerate(names)}
    nbr = [0] * len(names)
    for u, v in g.edges:
        nbr[idx[u]] |= 1 << idx[v]
        nbr[idx[v]] |= 1 << idx[u]
    return canon_graph_masks(nbr)


def bipartite_graph_classes(n: int) -> list[tuple]:
    """All bipartite graphs on exactly n vertices up to isomorphism, as
    canonical symmetric masks (isolated vertices included).

    Left rows are enumerated as multisets (any layout can be row-sorted by
    relabeling), which cuts the candidate count by roughly a factorial.
    """
    from itertools import combinations_with_replacement

    seen = set()
    for a in range(0, n // 2 + 1):
        b = n - a
        for rows in combinations_with_replacement(range(1 << b), a):
            nbr = [0] * n
            for i, row in enumerate(rows):
                nbr[i] = row << a
                for j in _bits(row):
                    nbr[a + j] |= 1 << i
            seen.add(canon_graph_masks(nbr))
    return sorted(seen)


def graph_from_masks(nbr, prefix: str = "v") -> Graph:
    names = [f"{prefix}{i}" for i in range(1, len(nbr) + 1)]
    edges = []
    for i in range(len(nbr)):
        for j in _bits(nbr[i]):
            if j > i:
                edges.append((names[i], names[j]))
    return Graph.from_edges(names, edges)


def labeled_graphs(n: int, prefix: str = "v"):
    """Every labeled simple graph on n vertices (2^C(n,2) of them)."""
    pairs = list(combinations(range(n), 2))
    for code in range(1 << len(pairs)):
        nbr = [0] * n
        for k, (i, j) in enumerate(pairs):
            if code >> k & 1:
                nbr[i] |= 1 << j
                nbr[j] |= 1 << i
        yield graph_from_masks(nbr, prefix)
