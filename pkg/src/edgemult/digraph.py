"""The digraph attached to a perfectly matched bipartite graph, and the
collapse/closure machinery that reduces multiplicity questions to the
Cohen-Macaulay case.

Vertices of the digraph are the matching indices; an arc i -> j records the
cross edge x_i y_j. Collapsing contracts a directed cycle onto its least
vertex; transitive closure then yields a poset exactly when the original
graph was reducible to a Cohen-Macaulay one. Antichain counts of that poset
equal the multiplicity.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction

from .errors import (CapExceeded, EdgemultError, InvariantViolation,
                     NotBipartite, NotPerfectlyMatched)
from .graphs import Graph, Matching, is_perfectly_matched
from .ideals import edge_ideal, multiplicity


@dataclass(frozen=True)
class Digraph:
    vertices: tuple[int, ...]  # sorted; collapse keeps original indices
    arcs: frozenset  # of (i, j), i != j
    labels: tuple | None = None  # ((i, (x_name, y_name)), ...) sorted

    def __post_init__(self):
        vs = set(self.vertices)
        for i, j in self.arcs:
            if i == j:
                raise EdgemultError("no self-arcs; matched pairs are implicit")
            if i not in vs or j not in vs:
                raise EdgemultError(f"arc ({i},{j}) uses unknown vertex")

    @property
    def size(self) -> int:
        return len(self.vertices)

    def label_map(self) -> dict:
        if self.labels is None:
            return {i: (f"x{i}", f"y{i}") for i in self.vertices}
        return dict(self.labels)

    def out(self, i: int) -> list[int]:
        return sorted(j for (a, j) in self.arcs if a == i)

    def is_acyclic(self) -> bool:
        return _find_cycle(self) is None

    def is_transitively_closed(self) -> bool:
        arcs = self.arcs
        for (i, j) in arcs:
            for (a, k) in arcs:
                if a == j and i != k and (i, k) not in arcs:
                    return False
        return True

    def is_poset(self) -> bool:
        return self.is_acyclic() and self.is_transitively_closed()

    def to_json(self) -> str:
        obj = {
            "c": self.size,
            "vertices": list(self.vertices),
            "arcs": sorted([list(a) for a in self.arcs]),
            "labels": {
                str(i): {"x": x, "y": y} for i, (x, y) in self.label_map().items()
            },
        }
        return json.dumps(obj, sort_keys=True)


def make_digraph(vertices, arcs, labels=None) -> Digraph:
    return Digraph(
        tuple(sorted(vertices)),
        frozenset((int(i), int(j)) for i, j in arcs),
        None if labels is None else tuple(sorted(labels.items())),
    )


@dataclass(frozen=True)
class AntichainFamily:
    antichains: tuple  # of frozenset[int], sorted, empty set first
    max_size: int

    def __len__(self) -> int:
        return len(self.antichains)

    def to_json(self) -> str:
        return json.dumps([sorted(a) for a in self.antichains])


# -- construction -------------------------------------------------------------

def _lex_least_perfect_matching(g: Graph) -> Matching:
    from .graphs import max_matching

    return max_matching(g)


def build_digraph(g: Graph) -> Digraph:
    """Digraph on the matching indices of g, labels recording which
    (x_i, y_i) pair each index came from.

    The perfect matching is the lexicographically least one, pairs indexed
    in order of their side-1 vertex.
    """
    if g.bipartition is None:
        raise NotBipartite("digraph needs a bipartite graph")
    if not is_perfectly_matched(g):
        raise NotPerfectlyMatched("digraph needs a perfect matching")
    v1, _ = g.bipartition
    matching = _lex_least_perfect_matching(g)
    pairs = []
    for u, v in matching.edges:
        x, y = (u, v) if u in v1 else (v, u)
        pairs.append((x, y))
    pairs.sort()
    index_of_x = {x: k + 1 for k, (x, y) in enumerate(pairs)}
    index_of_y = {y: k + 1 for k, (x, y) in enumerate(pairs)}
    arcs = set()
    for u, v in g.edges:
        x, y = (u, v) if u in v1 else (v, u)
        i, j = index_of_x[x], index_of_y[y]
        if i != j:
            arcs.add((i, j))
    labels = {k + 1: pair for k, pair in enumerate(pairs)}
    return make_digraph(range(1, len(pairs) + 1), arcs, labels)


def bipartite_graph_of(d: Digraph) -> Graph:
    """The perfectly matched bipartite graph a digraph stands for."""
    lab = d.label_map()
    xs = {i: lab[i][0] for i in d.vertices}
    ys = {i: lab[i][1] for i in d.vertices}
    vertices = [xs[i] for i in d.vertices] + [ys[i] for i in d.vertices]
    edges = [(xs[i], ys[i]) for i in d.vertices]
    edges += [(xs[i], ys[j]) for (i, j) in d.arcs]
    bip = (frozenset(xs.values()), frozenset(ys.values()))
    return Graph.from_edges(vertices, edges, bipartition=bip)


# -- collapse and closure -----------------------------------------------------

def _find_cycle(d: Digraph):
    """First directed cycle found by DFS from the least vertex, neighbors in
    ascending order; None when acyclic. Deterministic."""
    color = {v: 0 for v in d.vertices}  # 0 new, 1 on stack, 2 done
    out = {v: d.out(v) for v in d.vertices}
    for root in d.vertices:
        if color[root]:
            continue
        stack = [(root, iter(out[root]))]
        color[root] = 1
        path = [root]
        while stack:
            v, it = stack[-1]
            advanced = False
            for w in it:
                if color[w] == 1:
                    return path[path.index(w):]
                if color[w] == 0:
                    color[w] = 1
                    path.append(w)
                    stack.append((w, iter(out[w])))
                    advanced = True
                    break
            if not advanced:
                color[v] = 2
                path.pop()
                stack.pop()
    return None


def collapse(d: Digraph) -> Digraph:
    """Contract one directed cycle onto its least vertex."""
    cycle = _find_cycle(d)
    if cycle is None:
        raise EdgemultError("collapse needs a directed cycle")
    keep = min(cycle)
    gone = set(cycle) - {keep}

    def f(v):
        return keep if v in gone else v

    arcs = set()
    for i, j in d.arcs:
        a, b = f(i), f(j)
        if a != b:
            arcs.add((a, b))
    labels = {i: p for i, p in d.label_map().items() if i not in gone}
    return make_digraph([v for v in d.vertices if v not in gone], arcs, labels)


def transitive_closure(d: Digraph) -> Digraph:
    reach = {v: set(d.out(v)) for v in d.vertices}
    changed = True
    while changed:
        changed = False
        for v in d.vertices:
            add = set()
            for w in reach[v]:
                add |= reach[w] - reach[v]
            if add:
                reach[v] |= add
                changed = True
    arcs = {(v, w) for v in d.vertices for w in reach[v] if v != w}
    return make_digraph(d.vertices, arcs, d.label_map())


def collapse_sequence(d: Digraph) -> list[Digraph]:
    """d itself, then each collapse step, ending acyclic."""
    steps = [d]
    guard = d.size + 1
    while not steps[-1].is_acyclic():
        steps.append(collapse(steps[-1]))
        if len(steps) > guard:
            raise InvariantViolation("collapse failed to terminate")
    return steps


def reduce_to_cm(g: Graph, check: bool = True):
    """Collapse until acyclic, then close transitively.

    Returns (d_hat, G_hat, I_hat). With check=True the proved guarantees
    (multiplicity preserved at every step, height and kappa never increase)
    are verified and an InvariantViolation is raised on any mismatch.
    """
    from .ideals import height

    d0 = build_digraph(g)
    steps = collapse_sequence(d0)
    closed = transitive_closure(steps[-1])
    ghat = bipartite_graph_of(closed)
    ihat = edge_ideal(ghat)
    if check:
        i0 = edge_ideal(g)
        e0 = multiplicity(i0)
        prev_height = height(i0)
        prev_kappa = kappa_of_digraph(d0)
        for step in steps[1:] + [closed]:
            gi = bipartite_graph_of(step)
            ii = edge_ideal(gi)
            if multiplicity(ii) != e0:
                raise InvariantViolation("multiplicity changed during reduction")
            h = height(ii)
            k = kappa_of_digraph(step)
            if h > prev_height or k > prev_kappa:
                raise InvariantViolation("height or kappa increased during reduction")
            prev_height, prev_kappa = h, k
    return closed, ghat, ihat


# -- antichains and the poset side --------------------------------------------

def _reachability(d: Digraph) -> dict:
    reach = {v: set() for v in d.vertices}
    for i, j in d.arcs:
        reach[i].add(j)
    changed = True
    while changed:
        changed = False
        for v in d.vertices:
            add = set()
            for w in reach[v]:
                add |= reach[w] - reach[v]
            if add:
                reach[v] |= add
                changed = True
    return reach


def succeeds(d: Digraph, j: int, i: int) -> bool:
    """j > i in the order: a directed path from i to j exists."""
    return j in _reachability(d)[i]


def antichains(d: Digraph, cap: int = 24) -> AntichainFamily:
    """Every antichain of an acyclic digraph, the empty set included."""
    if d.size > cap:
        raise CapExceeded(f"{d.size} vertices exceeds antichain cap {cap}")
    if not d.is_acyclic():
        raise EdgemultError("antichain enumeration needs an acyclic digraph")
    reach = _reachability(d)
    verts = list(d.vertices)
    incomparable = {}
    for v in verts:
        incomparable[v] = {
            w for w in verts
            if w != v and w not in reach[v] and v not in reach[w]
        }
    found = [frozenset()]

    def rec(chosen, candidates):
        for k, v in enumerate(candidates):
            nxt = chosen + (v,)
            found.append(frozenset(nxt))
            rec(nxt, [w for w in candidates[k + 1:] if w in incomparable[v]])

    rec((), verts)
    fam = sorted(found, key=lambda a: tuple(sorted(a)))
    return AntichainFamily(tuple(fam), max((len(a) for a in fam), default=0))


def kappa_of_digraph(d: Digraph) -> int:
    """Largest coclique of the underlying undirected graph."""
    und = {v: set() for v in d.vertices}
    for i, j in d.arcs:
        und[i].add(j)
        und[j].add(i)
    verts = sorted(d.vertices)
    best = 0

    def rec(start, chosen, banned):
        nonlocal best
        if chosen > best:
            best = chosen
        if chosen + (len(verts) - start) <= best:
            return
        for k in range(start, len(verts)):
            v = verts[k]
            if v in banned:
                continue
            rec(k + 1, chosen + 1, banned | und[v] | {v})

    rec(0, 0, set())
    return best


def kappa(g: Graph) -> int:
    return kappa_of_digraph(build_digraph(g))


# -- the rational bound on antichain counts ------------------------------------

def mu(rho_: int, gamma: int) -> Fraction:
    """(2 rho + 1) ... (gamma + rho) over (rho + 1) ... gamma when
    rho < gamma; 1 otherwise. Exact."""
    if rho_ >= gamma:
        return Fraction(1)
    num = 1
    for t in range(2 * rho_ + 1, gamma + rho_ + 1):
        num *= t
    den = 1
    for t in range(rho_ + 1, gamma + 1):
        den *= t
    return Fraction(num, den)


@dataclass(frozen=True)
class MuInequality:
    holds: bool
    hypothesis_met: bool
    lhs: Fraction
    rhs: Fraction

    def __bool__(self) -> bool:
        return self.holds


def mu_inequality_holds(rho_: int, gamma: int, gamma1: int) -> MuInequality:
    """2^rho mu(rho, gamma-1) + 2^(rho-1) mu(rho-1, gamma-gamma1)
    < 2^rho mu(rho, gamma), with the lemma's hypotheses evaluated, never
    assumed."""
    two = Fraction(2)
    lhs = two ** rho_ * mu(rho_, gamma - 1) + two ** (rho_ - 1) * mu(rho_ - 1, gamma - gamma1)
    rhs = two ** rho_ * mu(rho_, gamma)
    hyp = 2 <= rho_ < gamma <= rho_ * gamma1 and rho_ - 1 <= gamma - gamma1
    return MuInequality(lhs < rhs, hyp, lhs, rhs)


# -- Cohen-Macaulay characterization -------------------------------------------

@dataclass(frozen=True)
class CMWitness:
    is_cm: bool
    matching: tuple | None  # ((x_i, y_i), ...) in label order, a valid HH labeling
    order: tuple | None  # the matching indices in topological order

    def __bool__(self) -> bool:
        return self.is_cm


def _perfect_matchings(g: Graph):
    """All perfect matchings of a bipartite graph, as tuples of (x, y)."""
    v1, v2 = g.bipartition
    xs = sorted(v1)
    adj = {x: sorted(b if a == x else a for (a, b) in g.edges if x in (a, b))
           for x in xs}
    used = set()
    out = []

    def rec(k, acc):
        if k == len(xs):
            out.append(tuple(acc))
            return
        x = xs[k]
        for y in adj[x]:
            if y not in used:
                used.add(y)
                acc.append((x, y))
                rec(k + 1, acc)
                acc.pop()
                used.remove(y)

    rec(0, [])
    return out


def is_cm_bipartite(g: Graph) -> CMWitness:
    """Herzog-Hibi test: some perfect matching makes the digraph a poset.

    Isolated vertices are irrelevant to Cohen-Macaulayness and are dropped
    before testing. Searches every perfect matching (the property can depend
    on the choice), returning the first witness in deterministic order.
    """
    if g.bipartition is None:
        raise NotBipartite("is_cm_bipartite needs a bipartite graph")
    support = {v for e in g.edges for v in e}
    if support != set(g.vertices):
        from .graphs import induced_subgraph

        g = induced_subgraph(g, support)
    if not g.vertices:
        return CMWitness(True, (), ())
    v1, v2 = g.bipartition
    if len(v1) != len(v2) or not is_perfectly_matched(g):
        return CMWitness(False, None, None)
    for pm in _perfect_matchings(g):
        d = _digraph_for_matching(g, pm)
        if d.is_poset():
            order = _topological_order(d)
            lab = d.label_map()
            return CMWitness(True, tuple(lab[i] for i in order), tuple(order))
    return CMWitness(False, None, None)


def _digraph_for_matching(g: Graph, pairs) -> Digraph:
    v1, _ = g.bipartition
    pairs = sorted(pairs)
    ix = {x: k + 1 for k, (x, y) in enumerate(pairs)}
    iy = {y: k + 1 for k, (x, y) in enumerate(pairs)}
    arcs = set()
    for u, v in g.edges:
        x, y = (u, v) if u in v1 else (v, u)
        if ix[x] != iy[y]:
            arcs.add((ix[x], iy[y]))
    return make_digraph(range(1, len(pairs) + 1),
                        arcs, {k + 1: p for k, p in enumerate(pairs)})


def _topological_order(d: Digraph) -> list[int]:
    indeg = {v: 0 for v in d.vertices}
    for _, j in d.arcs:
        indeg[j] += 1
    ready = sorted(v for v in d.vertices if indeg[v] == 0)
    out = []
    while ready:
        v = ready.pop(0)
        out.append(v)
        for w in d.out(v):
            indeg[w] -= 1
            if indeg[w] == 0:
                ready.append(w)
        ready.sort()
    return out


def cm_matching_survey(g: Graph) -> dict:
    """Per-matching poset verdicts: whether the digraph is a poset can
    depend on the chosen perfect matching, so report all of them."""
    if g.bipartition is None:
        raise NotBipartite("survey needs a bipartite graph")
    support = {v for e in g.edges for v in e}
    if support != set(g.vertices):
        from .graphs import induced_subgraph

        g = induced_subgraph(g, support)
    if not g.vertices:
        return {"matchings": 0, "poset_matchings": 0}
    v1, v2 = g.bipartition
    if len(v1) != len(v2) or not is_perfectly_matched(g):
        return {"matchings": 0, "poset_matchings": 0}
    pms = _perfect_matchings(g)
    n_poset = sum(1 for pm in pms if _digraph_for_matching(g, pm).is_poset())
    return {"matchings": len(pms), "poset_matchings": n_poset}


# -- multiplicity through antichains -------------------------------------------

def antichain_multiplicity(d: Digraph) -> int:
    if not d.is_poset():
        raise EdgemultError("antichain multiplicity needs a poset")
    return len(antichains(d))


def unmixed_primes_from_antichains(d: Digraph) -> list[frozenset]:
    """For each antichain A: the prime generated by the y_j with j above
    some member of A and the x_j with j above no member."""
    if not d.is_poset():
        raise EdgemultError("unmixed primes need a poset")
    reach = _reachability(d)
    lab = d.label_map()
    primes = []
    for a in antichains(d).antichains:
        ys = set()
        for i in a:
            ys |= {i} | reach[i]
        prime = frozenset(
            lab[j][1] if j in ys else lab[j][0] for j in d.vertices
        )
        primes.append(prime)
    return sorted(primes, key=lambda s: tuple(sorted(s)))
