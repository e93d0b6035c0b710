"""Finite simple graphs: parsing, matchings, vertex covers, induced structure.

Vertices are opaque strings. Everything is immutable and pure; optimization
outputs (matchings, covers) break ties lexicographically so that reports are
reproducible. All algorithms are exact and sized for desk-scale instances
(couple dozen vertices).
"""

from __future__ import annotations

import json
import warnings
from dataclasses import dataclass
from itertools import combinations

from .errors import CapExceeded, NotBipartite, ParseError


@dataclass(frozen=True)
class Graph:
    vertices: tuple[str, ...]
    edges: frozenset[tuple[str, str]]
    bipartition: tuple[frozenset[str], frozenset[str]] | None

    @classmethod
    def from_edges(cls, vertices, edges, bipartition=None) -> "Graph":
        """Build a graph, normalizing edges and auto-detecting a bipartition.

        If `bipartition` is given it is validated; otherwise a 2-coloring is
        attempted (the lexicographically least vertex of each component goes
        to side 1) and `bipartition` is None exactly when none exists.
        """
        vertices = tuple(vertices)
        seen = set()
        for v in vertices:
            if v in seen:
                raise ParseError(f"repeated vertex {v!r}")
            seen.add(v)
        norm = set()
        for u, v in edges:
            if u == v:
                raise ParseError(f"loop edge at {u!r}")
            if u not in seen or v not in seen:
                raise ParseError(f"edge ({u!r}, {v!r}) uses unknown vertex")
            norm.add((u, v) if u < v else (v, u))
        norm = frozenset(norm)
        if bipartition is not None:
            v1, v2 = frozenset(bipartition[0]), frozenset(bipartition[1])
            if v1 & v2 or (v1 | v2) != seen:
                raise ParseError("bipartition sides must partition the vertex set")
            for u, v in norm:
                if (u in v1) == (v in v1):
                    raise ParseError(f"edge ({u}, {v}) does not cross the bipartition")
            bipartition = (v1, v2)
        else:
            bipartition = _two_color(vertices, norm)
        return cls(vertices, norm, bipartition)

    def is_bipartite(self) -> bool:
        return self.bipartition is not None

    def degree(self, v: str) -> int:
        return sum(1 for e in self.edges if v in e)


@dataclass(frozen=True)
class Matching:
    edges: frozenset[tuple[str, str]]

    def __post_init__(self):
        used = set()
        for u, v in self.edges:
            if u in used or v in used:
                raise ParseError("matching edges must be pairwise vertex-disjoint")
            used.update((u, v))

    def __len__(self) -> int:
        return len(self.edges)

    def covered(self) -> frozenset[str]:
        return frozenset(v for e in self.edges for v in e)


def _two_color(vertices, edges):
    adj = {v: set() for v in vertices}
    for u, v in edges:
        adj[u].add(v)
        adj[v].add(u)
    color = {}
    for start in sorted(vertices):
        if start in color:
            continue
        color[start] = 0
        queue = [start]
        while queue:
            u = queue.pop()
            for w in sorted(adj[u]):
                if w not in color:
                    color[w] = 1 - color[u]
                    queue.append(w)
                elif color[w] == color[u]:
                    return None
    v1 = frozenset(v for v in vertices if color[v] == 0)
    v2 = frozenset(v for v in vertices if color[v] == 1)
    return (v1, v2)


def from_edge_list(text: str) -> Graph:
    """Parse an edge-list document.

    Each nonempty line is "u v"; an optional header line
    "#bipartite V1: a b / V2: c d" pins the bipartition (and may name
    isolated vertices). Other "#" lines are comments. Duplicate edges warn
    and are merged; loops are errors.
    """
    vertices: list[str] = []
    vset = set()
    edges = []
    eset = set()
    header = None

    def note(v):
        if v not in vset:
            vset.add(v)
            vertices.append(v)

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            if line.lower().startswith("#bipartite"):
                header = _parse_bipartite_header(line, lineno)
                for side in header:
                    for v in side:
                        note(v)
            continue
        parts = line.split()
        if len(parts) != 2:
            raise ParseError(f"line {lineno}: expected 'u v', got {line!r}")
        u, v = parts
        if u == v:
            raise ParseError(f"line {lineno}: loop edge at {u!r}")
        note(u)
        note(v)
        key = (u, v) if u < v else (v, u)
        if key in eset:
            warnings.warn(f"line {lineno}: duplicate edge {u} {v}, ignoring")
            continue
        eset.add(key)
        edges.append(key)
    return Graph.from_edges(vertices, edges, bipartition=header)


def _parse_bipartite_header(line, lineno):
    body = line[len("#bipartite"):].strip()
    try:
        left, right = body.split("/")
        _, v1 = left.split(":")
        _, v2 = right.split(":")
    except ValueError:
        raise ParseError(
            f"line {lineno}: bad bipartite header, expected '#bipartite V1: ... / V2: ...'"
        ) from None
    return (tuple(v1.split()), tuple(v2.split()))


def graph_to_json(g: Graph) -> str:
    obj = {
        "vertices": list(g.vertices),
        "edges": sorted([list(e) for e in g.edges]),
        "bipartition": None
        if g.bipartition is None
        else {"v1": sorted(g.bipartition[0]), "v2": sorted(g.bipartition[1])},
    }
    return json.dumps(obj, sort_keys=True)


def graph_from_json(text: str) -> Graph:
    obj = json.loads(text)
    bip = obj.get("bipartition")
    return Graph.from_edges(
        obj["vertices"],
        [tuple(e) for e in obj["edges"]],
        bipartition=None if bip is None else (bip["v1"], bip["v2"]),
    )


# -- matchings and covers ----------------------------------------------------

def _adjacency_masks(g: Graph):
    idx = {v: i for i, v in enumerate(g.vertices)}
    nbr = [0] * len(g.vertices)
    for u, v in g.edges:
        nbr[idx[u]] |= 1 << idx[v]
        nbr[idx[v]] |= 1 << idx[u]
    return idx, nbr


def matching_number(g: Graph) -> int:
    _, nbr = _adjacency_masks(g)
    return _matching_number_masks(nbr, (1 << len(g.vertices)) - 1, {})


def _matching_number_masks(nbr, avail, memo) -> int:
    if avail == 0:
        return 0
    cached = memo.get(avail)
    if cached is not None:
        return cached
    b = avail & -avail
    v = b.bit_length() - 1
    rest = avail ^ b
    best = _matching_number_masks(nbr, rest, memo)  # v unmatched
    cand = nbr[v] & avail
    while cand:
        ub = cand & -cand
        cand ^= ub
        got = 1 + _matching_number_masks(nbr, rest ^ ub, memo)
        if got > best:
            best = got
    memo[avail] = best
    return best


def max_matching(g: Graph) -> Matching:
    """A maximum matching; lexicographically least among them."""
    idx, nbr = _adjacency_masks(g)
    full = (1 << len(g.vertices)) - 1
    memo = {}
    target = _matching_number_masks(nbr, full, memo)
    chosen = []
    avail = full
    size = 0
    for u, v in sorted(g.edges):
        bu, bv = 1 << idx[u], 1 << idx[v]
        if avail & bu and avail & bv:
            rest = avail & ~(bu | bv)
            if size + 1 + _matching_number_masks(nbr, rest, memo) == target:
                chosen.append((u, v))
                avail = rest
                size += 1
                if size == target:
                    break
    return Matching(frozenset(chosen))


def is_perfectly_matched(g: Graph) -> bool:
    return 2 * matching_number(g) == len(g.vertices)


def _cover_bb(live, allowed, memo):
    """Minimum cover size of the edges `live` using only `allowed` vertices;
    None when impossible."""
    key = (live, allowed)
    if key in memo:
        return memo[key]
    for e in live:
        if not (e & allowed):
            memo[key] = None
            return None
    if not live:
        memo[key] = 0
        return 0
    e = live[0]
    best = None
    cand = e & allowed
    while cand:
        b = cand & -cand
        cand ^= b
        rest = tuple(f for f in live if not (f & b))
        sub = _cover_bb(rest, allowed & ~b, memo)
        if sub is not None and (best is None or sub + 1 < best):
            best = sub + 1
    memo[key] = best
    return best


def min_vertex_cover(g: Graph) -> frozenset[str]:
    """A minimum vertex cover, lexicographically least among minimum ones."""
    idx, _ = _adjacency_masks(g)
    edge_masks = tuple(
        sorted((1 << idx[u]) | (1 << idx[v]) for u, v in g.edges)
    )
    full = (1 << len(g.vertices)) - 1
    memo = {}
    k = _cover_bb(edge_masks, full, memo)
    chosen = 0
    excluded = 0
    live = edge_masks
    for name in sorted(g.vertices):
        b = 1 << idx[name]
        if excluded & b or chosen & b:
            continue
        rest = tuple(e for e in live if not (e & b))
        sub = _cover_bb(rest, full & ~(excluded | chosen | b), memo)
        need = k - bin(chosen).count("1") - 1
        if sub is not None and sub <= need:
            chosen |= b
            live = rest
        else:
            excluded |= b
        if bin(chosen).count("1") == k:
            break
    return frozenset(v for v in g.vertices if chosen >> idx[v] & 1)


def enumerate_minimal_vertex_covers(g: Graph, cap: int = 24) -> list[frozenset[str]]:
    """All inclusion-minimal vertex covers, sorted lexicographically.

    Computed as complements of maximal independent sets (Bron-Kerbosch with
    pivoting on the complement graph).
    """
    n = len(g.vertices)
    if n > cap:
        raise CapExceeded(f"{n} vertices exceeds enumeration cap {cap}")
    idx, nbr = _adjacency_masks(g)
    full = (1 << n) - 1
    # adjacency of the complement graph
    comp = [full & ~nbr[i] & ~(1 << i) for i in range(n)]
    cliques = []

    def bk(r, p, x):
        if p == 0 and x == 0:
            cliques.append(r)
            return
        pivot_pool = p | x
        pb = pivot_pool & -pivot_pool
        u = pb.bit_length() - 1
        cand = p & ~comp[u]
        while cand:
            b = cand & -cand
            cand ^= b
            v = b.bit_length() - 1
            bk(r | b, p & comp[v], x & comp[v])
            p &= ~b
            x |= b

    bk(0, full, 0)
    covers = [full & ~c for c in cliques]
    named = [
        frozenset(v for v in g.vertices if c >> idx[v] & 1) for c in covers
    ]
    return sorted(named, key=lambda s: tuple(sorted(s)))


# -- induced structure -------------------------------------------------------

def induced_subgraph(g: Graph, sigma) -> Graph:
    sigma = set(sigma)
    unknown = sigma - set(g.vertices)
    if unknown:
        raise ParseError(f"unknown vertices {sorted(unknown)}")
    vertices = tuple(v for v in g.vertices if v in sigma)
    edges = [e for e in g.edges if e[0] in sigma and e[1] in sigma]
    bip = None
    if g.bipartition is not None:
        bip = (g.bipartition[0] & sigma, g.bipartition[1] & sigma)
    return Graph.from_edges(vertices, edges, bipartition=bip)


def induced_matching_number(g: Graph) -> int:
    """Largest set of pairwise disconnected edges (an induced matching)."""
    idx, nbr = _adjacency_masks(g)
    edge_list = sorted(g.edges)
    masks = [(1 << idx[u]) | (1 << idx[v]) for u, v in edge_list]
    closed = [m | nbr[idx[u]] | nbr[idx[v]] for m, (u, v) in zip(masks, edge_list)]
    best = 0

    def rec(start, forbidden, count):
        nonlocal best
        if count > best:
            best = count
        if count + (len(masks) - start) <= best:
            return
        for k in range(start, len(masks)):
            if masks[k] & forbidden:
                continue
            rec(k + 1, forbidden | closed[k], count + 1)

    rec(0, 0, 0)
    return best


def suspension(g: Graph, suffix: str = "'") -> Graph:
    """Attach exactly one new leaf to every vertex of g."""
    leaf = {}
    taken = set(g.vertices)
    for v in g.vertices:
        name = v + suffix
        while name in taken:
            name += suffix
        leaf[v] = name
        taken.add(name)
    vertices = tuple(g.vertices) + tuple(leaf[v] for v in g.vertices)
    edges = list(g.edges) + [(v, leaf[v]) for v in g.vertices]
    bip = None
    if g.bipartition is not None:
        v1, v2 = g.bipartition
        bip = (
            v1 | frozenset(leaf[v] for v in v2),
            v2 | frozenset(leaf[v] for v in v1),
        )
    return Graph.from_edges(vertices, edges, bipartition=bip)


def suspension_decompose(g: Graph) -> Graph | None:
    """Inverse of `suspension` when g is one; None otherwise.

    A single-edge component could hang off either endpoint; the smaller name
    is taken as the core vertex, matching how `suspension` names leaves.
    """
    deg = {v: 0 for v in g.vertices}
    adj = {v: [] for v in g.vertices}
    for u, v in g.edges:
        deg[u] += 1
        deg[v] += 1
        adj[u].append(v)
        adj[v].append(u)
    core = set()
    for v in g.vertices:
        if deg[v] == 0:
            return None
        if deg[v] == 1:
            (w,) = adj[v]
            if deg[w] == 1:  # single-edge component
                if v < w:
                    core.add(v)
        else:
            leaves = [w for w in adj[v] if deg[w] == 1]
            if len(leaves) != 1:
                return None
            core.add(v)
    if 2 * len(core) != len(g.vertices):
        return None
    return induced_subgraph(g, core)


def largest_complete_bipartite(g: Graph) -> int:
    """Most vertices in an induced-complete-bipartite subgraph (both sides
    nonempty); 0 when g has no edges."""
    if g.bipartition is None:
        raise NotBipartite("largest_complete_bipartite needs a bipartite graph")
    if not g.edges:
        return 0
    idx, nbr = _adjacency_masks(g)
    v1, v2 = g.bipartition
    small, other = (v1, v2) if len(v1) <= len(v2) else (v2, v1)
    small = sorted(small)
    other_mask = 0
    for v in other:
        other_mask |= 1 << idx[v]
    best = 0
    for r in range(1, len(small) + 1):
        for combo in combinations(small, r):
            common = other_mask
            for v in combo:
                common &= nbr[idx[v]]
                if not common:
                    break
            if common:
                best = max(best, r + bin(common).count("1"))
    return best


# -- small constructors used throughout the test-bench -----------------------

def path_graph(k: int, prefix: str = "v") -> Graph:
    names = [f"{prefix}{i}" for i in range(1, k + 1)]
    return Graph.from_edges(names, list(zip(names, names[1:])))


def cycle_graph(k: int, prefix: str = "v") -> Graph:
    names = [f"{prefix}{i}" for i in range(1, k + 1)]
    edges = list(zip(names, names[1:])) + [(names[-1], names[0])]
    return Graph.from_edges(names, edges)


def disjoint_edges(c: int) -> Graph:
    names = []
    edges = []
    for i in range(1, c + 1):
        names += [f"x{i}", f"y{i}"]
        edges.append((f"x{i}", f"y{i}"))
    return Graph.from_edges(names, edges)
