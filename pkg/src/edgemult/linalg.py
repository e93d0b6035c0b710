"""Exact rank computation for the sparse integer matrices of boundary maps.

All matrices here come from simplicial or Taylor-complex differentials: very
sparse, entries +-1. Ranks are needed either over Q (characteristic 0) or
over a prime field F_p, and must be exact; floating point is never used.

The characteristic-0 path eliminates with +-1 pivots, which keeps every
intermediate entry an integer and is fraction-free. If fill-in ever leaves a
submatrix with no unit entry, the small dense leftover is finished with
Bareiss fraction-free elimination.
"""

from __future__ import annotations

SparseCols = "list[dict[int, int]]"


def rank(columns, char: int = 0) -> int:
    """Rank of a matrix given as a list of sparse columns (row -> value)."""
    if char:
        return _rank_mod_p(columns, char)
    return _rank_over_q(columns)


def _rank_over_q(columns) -> int:
    cols = [dict(c) for c in columns if c]
    rank_ = 0
    while cols:
        piv_ci = piv_r = None
        best_weight = None
        for ci, col in enumerate(cols):
            for r, v in col.items():
                if v == 1 or v == -1:
                    if best_weight is None or len(col) < best_weight:
                        best_weight = len(col)
                        piv_ci, piv_r = ci, r
                    break
        if piv_ci is None:
            return rank_ + _bareiss_rank(cols)
        pcol = cols.pop(piv_ci)
        pv = pcol[piv_r]
        rank_ += 1
        surviving = []
        for col in cols:
            cv = col.get(piv_r)
            if cv is not None:
                f = cv * pv  # pv in {1,-1}, so cv/pv == cv*pv
                for r, v in pcol.items():
                    nv = col.get(r, 0) - f * v
                    if nv:
                        col[r] = nv
                    else:
                        col.pop(r, None)
            if col:
                surviving.append(col)
        cols = surviving
    return rank_


def _bareiss_rank(cols) -> int:
    """Fraction-free Gaussian elimination on a dense copy; exact over Z."""
    rows_seen = sorted({r for c in cols for r in c})
    rmap = {r: i for i, r in enumerate(rows_seen)}
    m = [[0] * len(cols) for _ in rows_seen]
    for j, col in enumerate(cols):
        for r, v in col.items():
            m[rmap[r]][j] = v
    nrows, ncols = len(m), len(cols)
    rank_ = 0
    prev = 1
    row = 0
    for col in range(ncols):
        piv = None
        for i in range(row, nrows):
            if m[i][col]:
                piv = i
                break
        if piv is None:
            continue
        m[row], m[piv] = m[piv], m[row]
        pv = m[row][col]
        for i in range(row + 1, nrows):
            iv = m[i][col]
            mi, mr = m[i], m[row]
            for j in range(col + 1, ncols):
                mi[j] = (mi[j] * pv - iv * mr[j]) // prev
            mi[col] = 0
        prev = pv
        rank_ += 1
        row += 1
        if row == nrows:
            break
    return rank_


def _rank_mod_p(columns, p: int) -> int:
    cols = []
    for c in columns:
        col = {}
        for r, v in c.items():
            v %= p
            if v:
                col[r] = v
        if col:
            cols.append(col)
    rank_ = 0
    while cols:
        col = cols.pop()
        piv_r, piv_v = next(iter(col.items()))
        inv = pow(piv_v, -1, p)
        rank_ += 1
        surviving = []
        for other in cols:
            cv = other.get(piv_r)
            if cv is not None:
                f = cv * inv % p
                for r, v in col.items():
                    nv = (other.get(r, 0) - f * v) % p
                    if nv:
                        other[r] = nv
                    else:
                        other.pop(r, None)
            if other:
                surviving.append(other)
        cols = surviving
    return rank_
