"""Exact integer echelon and diagonal forms.

Matrices are lists of generator vectors ("columns" in the JSON format); every
routine works on plain Python ints so entries never overflow.

Canonical form of a lattice L in Z^k, as returned by :func:`hnf`:

* generators are listed with strictly increasing pivot coordinate (the first
  nonzero coordinate of each generator);
* every pivot is positive;
* for each generator g_j with pivot coordinate c_j, every *earlier* generator
  g_i (i < j) has its coordinate c_j reduced into [0, pivot_j).

Two generating sets of the same lattice give identical tuples.
"""

from __future__ import annotations

from typing import Iterable, Sequence

Vector = tuple[int, ...]
Matrix = tuple[Vector, ...]


def _pivot(v: Sequence[int]) -> int:
    for i, a in enumerate(v):
        if a:
            return i
    return len(v)


def hnf(gens: Iterable[Sequence[int]], k: int) -> Matrix:
    rows = [list(g) for g in gens]
    for r in rows:
        if len(r) != k:
            raise ValueError(f"vector {r} does not have length {k}")
    rows = [r for r in rows if any(r)]
    out: list[list[int]] = []
    pivots: list[int] = []
    col = 0
    while rows and col < k:
        active = [r for r in rows if r[col]]
        if not active:
            col += 1
            continue
        rest = [r for r in rows if not r[col]]
        while len(active) > 1:
            active.sort(key=lambda r: abs(r[col]))
            head = active[0]
            for r in active[1:]:
                q = r[col] // head[col]
                for c in range(col, k):
                    r[c] -= q * head[c]
            keep = [head]
            for r in active[1:]:
                if r[col]:
                    keep.append(r)
                elif any(r):
                    rest.append(r)
            active = keep
        head = active[0]
        if head[col] < 0:
            head = [-a for a in head]
        out.append(head)
        pivots.append(col)
        rows = rest
        col += 1
    for j, (row, c) in enumerate(zip(out, pivots)):
        p = row[c]
        for i in range(j):
            q = out[i][c] // p
            if q:
                above = out[i]
                for t in range(c, k):
                    above[t] -= q * row[t]
    return tuple(tuple(r) for r in out)


def pivots(h: Matrix) -> list[int]:
    return [_pivot(r) for r in h]


def reduce(h: Matrix, x: Sequence[int]) -> tuple[int, ...]:
    """Remainder of x after greedy reduction by an echelon basis.

    Zero iff x lies in the lattice; for a full-rank lattice the remainder is
    the unique representative with 0 <= x_c < pivot_c at every pivot c.
    """
    v = list(x)
    for row in h:
        c = _pivot(row)
        q = v[c] // row[c]
        if q:
            for t in range(c, len(v)):
                v[t] -= q * row[t]
    return tuple(v)


def solve(h: Matrix, x: Sequence[int]) -> list[int] | None:
    """Coefficients c with sum c_i h_i = x, or None if x is not in the lattice."""
    v = list(x)
    coeffs = []
    for row in h:
        c = _pivot(row)
        if v[c] % row[c]:
            return None
        q = v[c] // row[c]
        coeffs.append(q)
        if q:
            for t in range(c, len(v)):
                v[t] -= q * row[t]
    return coeffs if not any(v) else None


def identity(k: int) -> list[list[int]]:
    return [[int(i == j) for j in range(k)] for i in range(k)]


def snf(a: Sequence[Sequence[int]], k: int) -> tuple[list[int], list[list[int]], list[list[int]]]:
    """Diagonal form U A V = D of a t x k matrix whose rows are generators.

    Returns (diagonal, V, V_inv) where diagonal lists the nonzero invariant
    factors d_1 | d_2 | ... (units included) and V is the k x k unimodular
    column transform.  With y = x V, the lattice spanned by the rows of A
    becomes the lattice spanned by d_i e_i.
    """
    m = [list(r) for r in a if any(r)]
    v = identity(k)
    vinv = identity(k)
    t = len(m)

    def col_add(dst: int, src: int, q: int) -> None:
        # column dst -= q * column src, mirrored on the inverse
        for r in m:
            r[dst] -= q * r[src]
        for r in v:
            r[dst] -= q * r[src]
        row_s, row_d = vinv[src], vinv[dst]
        for c in range(k):
            row_s[c] += q * row_d[c]

    def col_swap(i: int, j: int) -> None:
        for r in m:
            r[i], r[j] = r[j], r[i]
        for r in v:
            r[i], r[j] = r[j], r[i]
        vinv[i], vinv[j] = vinv[j], vinv[i]

    diag: list[int] = []
    s = 0
    while s < min(t, k):
        cells = [(abs(m[i][j]), i, j) for i in range(s, t) for j in range(s, k) if m[i][j]]
        if not cells:
            break
        _, i, j = min(cells)
        m[s], m[i] = m[i], m[s]
        if j != s:
            col_swap(s, j)
        while True:
            p = m[s][s]
            dirty = False
            for i in range(s + 1, t):
                q = m[i][s] // p
                if q:
                    m[i] = [a - q * b for a, b in zip(m[i], m[s])]
                if m[i][s]:
                    dirty = True
            for j in range(s + 1, k):
                q = m[s][j] // p
                if q:
                    col_add(j, s, q)
                if m[s][j]:
                    dirty = True
            if not dirty:
                bad = next(((i, j) for i in range(s + 1, t) for j in range(s + 1, k)
                            if m[i][j] % p), None)
                if bad is None:
                    break
                m[s] = [a + b for a, b in zip(m[s], m[bad[0]])]
                dirty = True
            # bring the smallest nonzero entry of row s / column s to the corner
            cells = [(abs(m[i][s]), i, s) for i in range(s, t) if m[i][s]]
            cells += [(abs(m[s][j]), s, j) for j in range(s, k) if m[s][j]]
            _, i, j = min(cells)
            if i != s:
                m[s], m[i] = m[i], m[s]
            if j != s:
                col_swap(s, j)
        if m[s][s] < 0:
            m[s] = [-a for a in m[s]]
        diag.append(m[s][s])
        s += 1
    return diag, v, vinv


def mat_vec(x: Sequence[int], mat: Sequence[Sequence[int]]) -> list[int]:
    """Row vector times matrix."""
    k = len(mat[0]) if mat else 0
    out = [0] * k
    for a, row in zip(x, mat):
        if a:
            for c in range(k):
                out[c] += a * row[c]
    return out
