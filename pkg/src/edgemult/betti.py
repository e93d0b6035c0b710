"""Multigraded Betti numbers of square-free monomial ideals.

Two independent routes:

* `betti_table` applies Hochster's formula: beta_{l,sigma} is the rank of
  the reduced homology of the Stanley-Reisner complex restricted to sigma,
  in dimension |sigma| - l - 1, summed over all square-free multidegrees.
* `taylor_oracle_betti` reads the same numbers off the Taylor complex
  tensored down to the residue field, grouping basis subsets by their lcm.

Homology is computed from boundary-matrix ranks in exact arithmetic, either
over Q or modulo a prime, so characteristic-dependence is surfaced rather
than hidden. Restrictions whose complex is a cone (some vertex of sigma in
no generator support inside sigma) are acyclic and skipped; the unpruned
path is kept for the correctness test.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

from . import linalg
from .errors import CapExceeded, EdgemultError
from .ideals import MonomialIdeal, mono_lcm


@dataclass(frozen=True)
class SimplicialComplex:
    vertices: tuple[str, ...]
    facets: frozenset  # of frozenset[str]

    def __post_init__(self):
        for f in self.facets:
            for g in self.facets:
                if f != g and f <= g:
                    raise EdgemultError("facets must be pairwise incomparable")

    def faces(self) -> set:
        out = set()
        for f in self.facets:
            f = tuple(sorted(f))
            for k in range(len(f) + 1):
                out.update(map(frozenset, combinations(f, k)))
        return out


def stanley_reisner(i: MonomialIdeal) -> SimplicialComplex:
    """Faces are the variable subsets containing no generator support; the
    facets are complements of the minimal covers."""
    if not i.is_squarefree():
        raise EdgemultError("Stanley-Reisner complex needs a square-free ideal")
    from .ideals import minimal_support_covers

    vs = set(i.variables)
    facets = frozenset(frozenset(vs - c) for c in minimal_support_covers(i))
    return SimplicialComplex(tuple(i.variables), facets)


def reduced_homology_ranks(complex_: SimplicialComplex, char: int = 0) -> list[int]:
    """Ranks of reduced homology; entry d+1 is dim H~_d, for d = -1..dim.

    The void complex gives []; the complex {0} (only the empty face) gives
    [1], the H~_{-1} convention.
    """
    faces = complex_.faces()
    if not faces:
        return []
    idx = {v: k for k, v in enumerate(complex_.vertices)}
    masks = sorted({sum(1 << idx[v] for v in f) for f in faces})
    by_size: dict[int, list[int]] = {}
    for m in masks:
        by_size.setdefault(bin(m).count("1"), []).append(m)
    return _homology_from_masks(by_size, char)


def _homology_from_masks(by_size: dict[int, list[int]], char: int) -> list[int]:
    dims = sorted(by_size)
    top = dims[-1]
    index = {}
    for k in dims:
        by_size[k].sort()
        index[k] = {m: i for i, m in enumerate(by_size[k])}
    boundary_rank = {}
    for k in dims:
        if k == 0:
            continue
        cols = []
        lower = index[k - 1]
        for m in by_size[k]:
            col = {}
            t = m
            pos = 0
            while t:
                b = t & -t
                t ^= b
                col[lower[m ^ b]] = 1 if pos % 2 == 0 else -1
                pos += 1
            cols.append(col)
        boundary_rank[k] = linalg.rank(cols, char)
    out = []
    for k in range(top + 1):
        nk = len(by_size.get(k, ()))
        out.append(nk - boundary_rank.get(k, 0) - boundary_rank.get(k + 1, 0))
    return out


@dataclass
class BettiTable:
    characteristic: int
    multigraded: dict  # (l, Multidegree) -> int
    graded: dict = field(default_factory=dict)  # (l, j) -> int
    M: dict = field(default_factory=dict)  # l -> max j, l >= 1
    m: dict = field(default_factory=dict)  # l -> min j
    projdim: int = 0
    reg: int = 0

    @classmethod
    def from_multigraded(cls, char: int, multigraded: dict) -> "BettiTable":
        graded: dict = {}
        for (l, sigma), v in multigraded.items():
            if not v:
                continue
            key = (l, len(sigma))
            graded[key] = graded.get(key, 0) + v
        M: dict = {}
        m: dict = {}
        projdim = 0
        reg = 0
        for (l, j) in graded:
            if l >= 1:
                M[l] = max(M.get(l, 0), j)
                m[l] = min(m.get(l, j + 1), j)
            projdim = max(projdim, l)
            reg = max(reg, j - l)
        return cls(char, dict(multigraded), graded, M, m, projdim, reg)

    def beta(self, l: int, degree) -> int:
        """beta_{l,j} for integer degree, beta_{l,sigma} for a multidegree."""
        if isinstance(degree, int):
            return self.graded.get((l, degree), 0)
        return self.multigraded.get((l, tuple(sorted(degree))), 0)

    def M_list(self) -> list[int]:
        return [self.M[l] for l in range(1, self.projdim + 1)]

    def m_list(self) -> list[int]:
        return [self.m[l] for l in range(1, self.projdim + 1)]

    def to_json_obj(self) -> dict:
        rows = []
        for l in range(0, self.projdim + 1):
            entries = [
                {"j": j, "beta": v}
                for (ll, j), v in sorted(self.graded.items())
                if ll == l
            ]
            row = {"l": l, "entries": entries}
            if l in self.M:
                row["M"] = self.M[l]
                row["m"] = self.m[l]
            rows.append(row)
        return {
            "char": self.characteristic,
            "rows": rows,
            "reg": self.reg,
            "projdim": self.projdim,
        }


_COMPONENT_MEMO: dict = {}


def betti_table(i: MonomialIdeal, char: int = 0, cap_n: int = 20,
                prune: bool = True) -> BettiTable:
    """Full multigraded Betti table via Hochster's formula.

    The restriction to a multidegree splits as a join over the connected
    components of the generator hypergraph inside it, and over a field the
    reduced homology of a join is the convolution of the factors; component
    homology is memoized process-wide, which is what makes sweeps cheap.
    The prune=False path computes every restriction directly and exists to
    test the pruned one.
    """
    if not i.is_squarefree():
        raise EdgemultError("betti_table needs a square-free ideal; polarize first")
    n = len(i.variables)
    if n > cap_n:
        raise CapExceeded(f"{n} variables exceeds cap {cap_n}")
    idx = {v: k for k, v in enumerate(i.variables)}
    gens = sorted(
        sum(1 << idx[v] for v in g) for g in i.generators
    )
    gens_by_var = [[] for _ in range(n)]
    for gm in gens:
        t = gm
        while t:
            b = t & -t
            t ^= b
            gens_by_var[b.bit_length() - 1].append(gm)
    names = list(i.variables)
    multigraded: dict = {}
    for sigma in range(1 << n):
        if prune:
            if _is_cone(sigma, gens_by_var):
                continue
            h = _joined_homology(sigma, gens, char)
        else:
            by_size = _restricted_faces(sigma, n, gens_by_var)
            h = _homology_from_masks(by_size, char)
        ssize = bin(sigma).count("1")
        if any(h):
            key = tuple(
                sorted(names[k] for k in range(n) if sigma >> k & 1)
            )
            for d, r in enumerate(h):
                if r:
                    l = ssize - (d - 1) - 1
                    multigraded[(l, key)] = r
    return BettiTable.from_multigraded(char, multigraded)


def _joined_homology(sigma: int, gens, char: int) -> list:
    """Reduced homology vector (offset 1) of the restriction to sigma,
    assembled from its hypergraph components. Assumes every vertex of sigma
    lies in some generator inside sigma (the cone prune ran first)."""
    if sigma == 0:
        return [1]
    inside = [gm for gm in gens if gm & ~sigma == 0]
    parent = {}

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    t = sigma
    while t:
        b = t & -t
        t ^= b
        parent[b.bit_length() - 1] = b.bit_length() - 1
    for gm in inside:
        bits = []
        t = gm
        while t:
            b = t & -t
            t ^= b
            bits.append(b.bit_length() - 1)
        root = find(bits[0])
        for v in bits[1:]:
            parent[find(v)] = root
    comps: dict[int, int] = {}
    for v in parent:
        comps[find(v)] = comps.get(find(v), 0) | (1 << v)
    h = [1]
    for cmask in sorted(comps.values()):
        hv = _component_homology(cmask, inside, char)
        h = [
            sum(h[a] * hv[t - a] for a in range(max(0, t - len(hv) + 1),
                                                min(len(h), t + 1)))
            for t in range(len(h) + len(hv) - 1)
        ]
        if not any(h):
            return h
    return h


def _component_homology(cmask: int, gens_inside, char: int) -> list:
    verts = []
    t = cmask
    while t:
        b = t & -t
        t ^= b
        verts.append(b.bit_length() - 1)
    pos = {v: k for k, v in enumerate(verts)}
    local = []
    for gm in gens_inside:
        if gm & cmask == gm:
            lm = 0
            t = gm
            while t:
                b = t & -t
                t ^= b
                lm |= 1 << pos[b.bit_length() - 1]
            local.append(lm)
    local.sort()
    key = (char, len(verts), tuple(local))
    got = _COMPONENT_MEMO.get(key)
    if got is None:
        k = len(verts)
        by_var = [[] for _ in range(k)]
        for lm in local:
            t = lm
            while t:
                b = t & -t
                t ^= b
                by_var[b.bit_length() - 1].append(lm)
        by_size = _restricted_faces((1 << k) - 1, k, by_var)
        got = _homology_from_masks(by_size, char)
        _COMPONENT_MEMO[key] = got
    return got


def _is_cone(sigma: int, gens_by_var) -> bool:
    """True when some vertex of sigma lies in no generator support inside
    sigma; the restricted complex is then a cone with that apex."""
    t = sigma
    while t:
        b = t & -t
        t ^= b
        v = b.bit_length() - 1
        if not any(gm & ~sigma == 0 for gm in gens_by_var[v]):
            return True
    return False


def _restricted_faces(sigma: int, n: int, gens_by_var) -> dict:
    """Faces of the restriction to sigma, grouped by cardinality."""
    verts = [k for k in range(n) if sigma >> k & 1]
    by_size: dict[int, list[int]] = {0: [0]}

    def rec(pos, cur):
        for k in range(pos, len(verts)):
            v = verts[k]
            b = 1 << v
            new = cur | b
            if any(gm & ~new == 0 for gm in gens_by_var[v]):
                continue
            by_size.setdefault(bin(new).count("1"), []).append(new)
            rec(k + 1, new)

    rec(0, 0)
    return by_size


def taylor_oracle_betti(i: MonomialIdeal, char: int = 0, cap_m: int = 14) -> BettiTable:
    """Betti numbers as homology of the Taylor complex tensored with the
    residue field; independent of the Hochster route. Works for arbitrary
    monomial ideals (multidegrees are then genuine monomials)."""
    m = i.num_generators
    if m > cap_m:
        raise CapExceeded(f"{m} generators exceeds Taylor cap {cap_m}")
    gens = i.sorted_generators()
    lcm_of: list = [()] * (1 << m)
    for s in range(1, 1 << m):
        low = s & -s
        lcm_of[s] = mono_lcm(lcm_of[s ^ low], gens[low.bit_length() - 1])
    classes: dict = {}
    for s in range(1 << m):
        classes.setdefault(lcm_of[s], []).append(s)
    multigraded: dict = {}
    for sigma, subsets in classes.items():
        by_card: dict[int, list[int]] = {}
        for s in subsets:
            by_card.setdefault(bin(s).count("1"), []).append(s)
        index = {}
        for k, ss in by_card.items():
            ss.sort()
            index[k] = {s: t for t, s in enumerate(ss)}
        boundary_rank = {}
        for k in sorted(by_card):
            if k == 0:
                continue
            cols = []
            lower = index.get(k - 1, {})
            for s in by_card[k]:
                col = {}
                t = s
                pos = 0
                while t:
                    b = t & -t
                    t ^= b
                    rest = s ^ b
                    if lcm_of[rest] == sigma:
                        col[lower[rest]] = 1 if pos % 2 == 0 else -1
                    pos += 1
                cols.append(col)
            boundary_rank[k] = linalg.rank(cols, char)
        for k, ss in by_card.items():
            hk = len(ss) - boundary_rank.get(k, 0) - boundary_rank.get(k + 1, 0)
            if hk:
                multigraded[(k, sigma)] = hk
    return BettiTable.from_multigraded(char, multigraded)


def is_pure(t: BettiTable) -> bool:
    return all(t.M[l] == t.m[l] for l in range(1, t.projdim + 1))


def is_quasi_pure(t: BettiTable) -> bool:
    """Consecutive degree ranges may touch but not overlap backwards:
    m_{l+1} >= M_l for every l below the projective dimension."""
    return all(t.m[l + 1] >= t.M[l] for l in range(1, t.projdim))


def complete_multipartite_strand(i: MonomialIdeal, sigma) -> bool:
    """Whether the induced graph on sigma is complete multipartite, i.e. the
    restricted coclique complex is disconnected; equivalent to
    beta_{|sigma|-1, sigma} != 0 for edge ideals."""
    if not (i.is_squarefree() and i.is_quadratic()):
        raise EdgemultError("complete_multipartite_strand needs an edge ideal")
    sigma = sorted(set(sigma))
    edges = {tuple(sorted(g)) for g in i.generators}
    # complement graph on sigma
    comp = {v: set() for v in sigma}
    for a, b in combinations(sigma, 2):
        if (a, b) not in edges:
            comp[a].add(b)
            comp[b].add(a)
    if len(sigma) < 2:
        return False
    seen = {sigma[0]}
    stack = [sigma[0]]
    while stack:
        u = stack.pop()
        for w in comp[u]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return len(seen) < len(sigma)


def projdim_equals_height(i: MonomialIdeal, char: int = 0) -> bool:
    """Betti-level Cohen-Macaulay test over a polynomial ring
    (Auslander-Buchsbaum)."""
    from .ideals import height

    return betti_table(i, char=char).projdim == height(i)


def format_table(t: BettiTable) -> str:
    """Macaulay-style triangle: row d holds beta_{l, l+d}."""
    if not t.graded:
        return "(zero table)"
    cols = list(range(0, t.projdim + 1))
    rows = list(range(0, t.reg + 1))
    width = max(
        [len(str(v)) for v in t.graded.values()] + [len(str(l)) for l in cols]
    ) + 1
    lines = ["      " + "".join(str(l).rjust(width) for l in cols)]
    lines.append("      " + "-" * (width * len(cols)))
    for d in rows:
        cells = []
        for l in cols:
            v = t.graded.get((l, l + d), 0)
            cells.append((str(v) if v else ".").rjust(width))
        lines.append(f"{d:>4}: " + "".join(cells))
    lines.append(
        f"reg {t.reg}, projdim {t.projdim}, char {t.characteristic}"
    )
    return "\n".join(lines)
