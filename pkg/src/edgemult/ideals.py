"""Monomial ideals: polarization, colons, heights, Taylor twists, multiplicity.

A monomial is a sorted tuple of variable names with multiplicity, so "x^2 y"
is ("x", "x", "y"). Ideals keep their unique minimal monomial generating set.
Square-free is the main case; polarization bridges the rest.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

from .errors import CapExceeded, EdgemultError, ParseError
from .graphs import Graph

Monomial = tuple  # tuple[str, ...], sorted, variables repeated per exponent

MAX_EXPONENT = 256


def mono(*names) -> Monomial:
    return tuple(sorted(names))


def mono_degree(m: Monomial) -> int:
    return len(m)


def mono_support(m: Monomial) -> frozenset:
    return frozenset(m)


def mono_is_squarefree(m: Monomial) -> bool:
    return len(set(m)) == len(m)


def mono_divides(a: Monomial, b: Monomial) -> bool:
    ca, cb = Counter(a), Counter(b)
    return all(cb[v] >= k for v, k in ca.items())


def mono_lcm(a: Monomial, b: Monomial) -> Monomial:
    ca, cb = Counter(a), Counter(b)
    out = []
    for v in set(ca) | set(cb):
        out.extend([v] * max(ca[v], cb[v]))
    return tuple(sorted(out))


def _minimalize(gens) -> frozenset:
    gens = set(gens)
    out = set()
    for g in sorted(gens, key=lambda m: (len(m), m)):
        if not any(mono_divides(h, g) for h in out):
            out.add(g)
    return frozenset(out)


@dataclass(frozen=True)
class MonomialIdeal:
    variables: tuple[str, ...]
    generators: frozenset  # of Monomial

    @classmethod
    def create(cls, variables, generators) -> "MonomialIdeal":
        variables = tuple(variables)
        vset = set(variables)
        if len(vset) != len(variables):
            raise ParseError("repeated variable name")
        gens = []
        for g in generators:
            g = tuple(sorted(g))
            if not g:
                raise ParseError("empty generator (the unit monomial) not allowed")
            for v in g:
                if v not in vset:
                    raise ParseError(f"generator uses unknown variable {v!r}")
            if max(Counter(g).values()) > MAX_EXPONENT:
                raise CapExceeded(f"exponent above {MAX_EXPONENT}")
            gens.append(g)
        return cls(variables, _minimalize(gens))

    @property
    def num_generators(self) -> int:
        return len(self.generators)

    def is_squarefree(self) -> bool:
        return all(mono_is_squarefree(g) for g in self.generators)

    def is_quadratic(self) -> bool:
        return all(len(g) == 2 for g in self.generators)

    def sorted_generators(self) -> list:
        return sorted(self.generators, key=lambda m: (len(m), m))

    def to_json(self) -> str:
        import json

        return json.dumps(
            {
                "variables": list(self.variables),
                "generators": sorted([list(g) for g in self.generators]),
            },
            sort_keys=True,
        )


@dataclass(frozen=True)
class TaylorTwists:
    """T_1..T_m together with the regular-sequence length the closed form uses."""

    values: tuple
    rho: int

    def __post_init__(self):
        vals = self.values
        for a, b in zip(vals, vals[1:]):
            if b < a:
                raise EdgemultError("Taylor twists must be nondecreasing")


def from_generators(text: str, variables=None) -> MonomialIdeal:
    """Parse a monomial-list document: one generator per line, each a
    space-separated variable list with multiplicity ("x x y" is x^2 y)."""
    gens = []
    seen: list[str] = []
    sset = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if line.startswith("#"):
            continue
        if not line:
            raise ParseError(f"line {lineno}: empty generator line")
        names = line.split()
        for v in names:
            if v not in sset:
                sset.add(v)
                seen.append(v)
        gens.append(tuple(sorted(names)))
    if variables is None:
        variables = seen
    return MonomialIdeal.create(variables, gens)


def edge_ideal(g: Graph) -> MonomialIdeal:
    return MonomialIdeal.create(g.vertices, [mono(u, v) for u, v in g.edges])


def graph_of(i: MonomialIdeal) -> Graph:
    if not (i.is_squarefree() and i.is_quadratic()):
        raise EdgemultError("graph_of needs a square-free quadratic ideal")
    return Graph.from_edges(i.variables, [tuple(g) for g in i.generators])


def polarize(i: MonomialIdeal) -> MonomialIdeal:
    """Square-free ideal with the same graded Betti numbers.

    x with maximal exponent e is split into x#1..x#e; exponent-1 variables
    keep their names, so square-free input comes back unchanged.
    """
    if i.is_squarefree():
        return i
    maxexp = Counter()
    for g in i.generators:
        for v, k in Counter(g).items():
            maxexp[v] = max(maxexp[v], k)
    names = {}
    variables = []
    for v in i.variables:
        e = maxexp.get(v, 1)
        if e == 1:
            names[v] = [v]
            variables.append(v)
        else:
            names[v] = [f"{v}#{k}" for k in range(1, e + 1)]
            variables.extend(names[v])
    gens = []
    for g in i.generators:
        out = []
        for v, k in Counter(g).items():
            out.extend(names[v][:k])
        gens.append(tuple(sorted(out)))
    return MonomialIdeal.create(variables, gens)


def colon_by_var(i: MonomialIdeal, x: str) -> MonomialIdeal:
    """(I : x) for square-free-in-x generators: strip one factor of x."""
    if x not in i.variables:
        raise ParseError(f"unknown variable {x!r}")
    gens = []
    for g in i.generators:
        if x in g:
            g = list(g)
            g.remove(x)
            if not g:
                # x itself was a generator: (I : x) = (1); not an ideal we model
                raise EdgemultError("colon by a generator variable gives the unit ideal")
            gens.append(tuple(g))
        else:
            gens.append(g)
    return MonomialIdeal.create(i.variables, gens)


def add_var(i: MonomialIdeal, x: str) -> MonomialIdeal:
    if x not in i.variables:
        raise ParseError(f"unknown variable {x!r}")
    return MonomialIdeal.create(i.variables, list(i.generators) + [(x,)])


def restrict_to_vars(i: MonomialIdeal, keep) -> MonomialIdeal:
    """(I ∩ k[W])R: the generators supported inside W, same ambient ring."""
    keep = set(keep)
    gens = [g for g in i.generators if set(g) <= keep]
    return MonomialIdeal.create(i.variables, gens)


# -- heights and covers -------------------------------------------------------

def _support_masks(i: MonomialIdeal):
    idx = {v: k for k, v in enumerate(i.variables)}
    masks = []
    for g in i.generators:
        m = 0
        for v in set(g):
            m |= 1 << idx[v]
        masks.append(m)
    return idx, sorted(set(masks))


def minimal_support_covers(i: MonomialIdeal) -> list[frozenset]:
    """All inclusion-minimal variable sets meeting every generator's support.

    Branch on the variables of the first unhit generator, with sibling
    exclusion to avoid rescanning, then keep the sets with a private
    generator for every member (inclusion-minimality).
    """
    idx, masks = _support_masks(i)
    if not masks:
        return [frozenset()]
    results = set()

    def rec(chosen, forbidden):
        pending = None
        for m in masks:
            if not (m & chosen):
                pending = m
                break
        if pending is None:
            results.add(chosen)
            return
        cand = pending & ~forbidden
        newly = 0
        while cand:
            b = cand & -cand
            cand ^= b
            rec(chosen | b, forbidden | newly)
            newly |= b

    rec(0, 0)
    minimal = []
    for c in results:
        ok = True
        t = c
        while t:
            b = t & -t
            t ^= b
            if not any((m & c) == b for m in masks):
                ok = False
                break
        if ok:
            minimal.append(c)
    names = []
    for c in minimal:
        names.append(frozenset(v for v in i.variables if c >> idx[v] & 1))
    return sorted(names, key=lambda s: tuple(sorted(s)))


def _min_hitting_size(masks, allowed, memo):
    key = (masks, allowed)
    if key in memo:
        return memo[key]
    if not masks:
        memo[key] = 0
        return 0
    m = masks[0]
    cand = m & allowed
    best = None
    while cand:
        b = cand & -cand
        cand ^= b
        rest = tuple(f for f in masks if not (f & b))
        sub = _min_hitting_size(rest, allowed & ~b, memo)
        if sub is not None and (best is None or sub + 1 < best):
            best = sub + 1
    memo[key] = best
    return best


def height(i: MonomialIdeal) -> int:
    """Smallest variable set meeting every generator support (polarizes
    non-square-free input first; heights agree)."""
    if not i.is_squarefree():
        i = polarize(i)
    _, masks = _support_masks(i)
    if not masks:
        return 0
    got = _min_hitting_size(tuple(masks), (1 << len(i.variables)) - 1, {})
    assert got is not None
    return got


def essential_height(i: MonomialIdeal) -> int:
    linear = sum(1 for g in i.generators if len(g) == 1)
    return height(i) - linear


def rho(i: MonomialIdeal, cap: int = 20) -> int:
    """Longest regular sequence among the generators: the largest
    pairwise-coprime (disjoint-support) subset."""
    if not i.is_squarefree():
        raise EdgemultError("rho is defined here for square-free ideals")
    if i.num_generators > cap:
        raise CapExceeded(f"{i.num_generators} generators exceeds cap {cap}")
    _, masks = _support_masks(i)
    masks.sort(key=lambda m: bin(m).count("1"))
    best = 0

    def rec(start, used, count):
        nonlocal best
        if count > best:
            best = count
        if count + (len(masks) - start) <= best:
            return
        for k in range(start, len(masks)):
            if masks[k] & used:
                continue
            rec(k + 1, used | masks[k], count + 1)

    rec(0, 0, 0)
    return best


def is_complete_intersection(i: MonomialIdeal) -> bool:
    _, masks = _support_masks(i)
    total = 0
    for m in masks:
        if m & total:
            return False
        total |= m
    return True


# -- Taylor twists ------------------------------------------------------------

def taylor_twists(i: MonomialIdeal, cap: int = 20) -> TaylorTwists:
    """Exact T_l = max deg lcm of l generators, for l = 1..m.

    Brute force under the cap; for quadratic square-free ideals satisfying
    the standing hypothesis the closed form (2l up to rho, then rho + l,
    clipped at n) takes over.
    """
    m = i.num_generators
    if m == 0:
        return TaylorTwists((), 0)
    if m <= cap:
        vals = _taylor_bruteforce(i)
        return TaylorTwists(vals, rho(polarize(i), cap=max(cap, m)))
    if i.is_squarefree() and i.is_quadratic() and check_standing_hypothesis(i).holds:
        r = rho(i, cap=m)
        return TaylorTwists(taylor_closed_form(i, r), r)
    raise CapExceeded(
        f"{m} generators exceeds cap {cap} and the closed form does not apply"
    )


def taylor_closed_form(i: MonomialIdeal, r: int | None = None) -> tuple:
    """T_l for quadratic square-free ideals under the standing hypothesis."""
    n = len({v for g in i.generators for v in g})
    m = i.num_generators
    if r is None:
        r = rho(i, cap=m)
    return tuple(2 * l if l <= r else min(r + l, n) for l in range(1, m + 1))


def _taylor_bruteforce(i: MonomialIdeal) -> tuple:
    """Subset DP over the polarized supports: deg lcm = |union of supports|."""
    p = polarize(i)
    idx = {v: k for k, v in enumerate(p.variables)}
    masks = []
    for g in p.generators:
        mm = 0
        for v in g:
            mm |= 1 << idx[v]
        masks.append(mm)
    masks.sort()
    m = len(masks)
    best = [0] * (m + 1)
    union = [0] * (1 << m)
    for s in range(1, 1 << m):
        low = s & -s
        union[s] = union[s ^ low] | masks[low.bit_length() - 1]
        size = bin(s).count("1")
        deg = bin(union[s]).count("1")
        if deg > best[size]:
            best[size] = deg
    return tuple(best[1:])


def taylor_bruteforce_edge_ideal(i: MonomialIdeal) -> tuple:
    """Independent T_l oracle for edge ideals via Gallai: a vertex set S is
    the union of exactly l edges iff it has no isolated vertex in G|S and
    |S| - matching(G|S) <= l <= #edges(G|S)."""
    if not (i.is_squarefree() and i.is_quadratic()):
        raise EdgemultError("Gallai oracle needs a square-free quadratic ideal")
    idx = {v: k for k, v in enumerate(i.variables)}
    n = len(i.variables)
    nbr = [0] * n
    edge_masks = []
    for g in i.generators:
        a, b = (idx[v] for v in g)
        nbr[a] |= 1 << b
        nbr[b] |= 1 << a
        edge_masks.append((1 << a) | (1 << b))
    m = len(edge_masks)
    vals = [0] * (m + 1)
    match_memo = {0: 0}

    def matching(avail):
        got = match_memo.get(avail)
        if got is not None:
            return got
        b = avail & -avail
        v = b.bit_length() - 1
        rest = avail ^ b
        best = matching(rest)
        cand = nbr[v] & avail
        while cand:
            ub = cand & -cand
            cand ^= ub
            t = 1 + matching(rest ^ ub)
            if t > best:
                best = t
        match_memo[avail] = best
        return best

    for s in range(1, 1 << n):
        ok = True
        t = s
        while t:
            b = t & -t
            if not (nbr[b.bit_length() - 1] & s):
                ok = False
                break
            t ^= b
        if not ok:
            continue
        inside = sum(1 for e in edge_masks if e & ~s == 0)
        size = bin(s).count("1")
        low = size - matching(s)
        for l in range(low, min(inside, m) + 1):
            if size > vals[l]:
                vals[l] = size
    return tuple(vals[1:])


# -- the standing hypothesis and multiplicity ---------------------------------

@dataclass(frozen=True)
class StandingHypothesis:
    holds: bool
    height: int
    witness: tuple | None  # (variable, side, observed height)

    def __bool__(self) -> bool:
        return self.holds


def check_standing_hypothesis(i: MonomialIdeal) -> StandingHypothesis:
    """height(I : x) = height(I) = height(I, x) for every variable x."""
    if not i.is_squarefree():
        raise EdgemultError("standing hypothesis check needs a square-free ideal")
    c = height(i)
    for x in i.variables:
        ha = height(add_var(i, x))
        if ha != c:
            return StandingHypothesis(False, c, (x, "sum", ha))
        if any(g == (x,) for g in i.generators):
            # (I : x) is the unit ideal; heights cannot match
            return StandingHypothesis(False, c, (x, "colon", None))
        hc = height(colon_by_var(i, x))
        if hc != c:
            return StandingHypothesis(False, c, (x, "colon", hc))
    return StandingHypothesis(True, c, None)


def multiplicity(i: MonomialIdeal) -> int:
    """e(R/I) for square-free I: the number of height-many minimal covers."""
    if not i.is_squarefree():
        raise EdgemultError("multiplicity via unmixed primes needs square-free input")
    covers = minimal_support_covers(i)
    if not covers:
        return 0
    c = min(len(s) for s in covers)
    return sum(1 for s in covers if len(s) == c)
