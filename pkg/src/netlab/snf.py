"""Smith normal form of integer matrices, exact over Python ints."""

from __future__ import annotations


def smith_normal_form(rows, track_transforms=False):
    """Diagonalize an integer matrix D = P A Q with unimodular P, Q.

    ``rows`` is a list of lists of ints.  Returns the diagonal entries in
    divisibility order (zeros dropped) or, with ``track_transforms``, the
    triple (diag, P, Q).  Everything is exact Python int arithmetic; intended
    for the small dense cores left over after sparse unit-pivot elimination.
    """
    A = [list(map(int, r)) for r in rows]
    m = len(A)
    n = len(A[0]) if m else 0
    P = [[int(i == j) for j in range(m)] for i in range(m)]
    Q = [[int(i == j) for j in range(n)] for i in range(n)]

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        P[i], P[j] = P[j], P[i]

    def swap_cols(i, j):
        for r in A:
            r[i], r[j] = r[j], r[i]
        for r in Q:
            r[i], r[j] = r[j], r[i]

    def add_row(src, dst, f):
        # row dst += f * row src
        Ar, Pd = A[src], P[src]
        for k in range(n):
            A[dst][k] += f * Ar[k]
        for k in range(m):
            P[dst][k] += f * Pd[k]

    def add_col(src, dst, f):
        for r in A:
            r[dst] += f * r[src]
        for r in Q:
            r[dst] += f * r[src]

    def negate_row(i):
        A[i] = [-v for v in A[i]]
        P[i] = [-v for v in P[i]]

    t = 0
    while t < min(m, n):
        # locate smallest nonzero pivot in the trailing block
        piv = None
        for i in range(t, m):
            for j in range(t, n):
                v = abs(A[i][j])
                if v and (piv is None or v < abs(A[piv[0]][piv[1]])):
                    piv = (i, j)
        if piv is None:
            break
        swap_rows(t, piv[0])
        swap_cols(t, piv[1])
        dirty = True
        while dirty:
            dirty = False
            for i in range(t + 1, m):
                if A[i][t]:
                    q = A[i][t] // A[t][t]
                    add_row(t, i, -q)
                    if A[i][t]:
                        swap_rows(t, i)
                        dirty = True
            for j in range(t + 1, n):
                if A[t][j]:
                    q = A[t][j] // A[t][t]
                    add_col(t, j, -q)
                    if A[t][j]:
                        swap_cols(t, j)
                        dirty = True
        # divisibility: pivot must divide every trailing entry
        for i in range(t + 1, m):
            for j in range(t + 1, n):
                if A[i][j] % A[t][t]:
                    add_row(i, t, 1)
                    dirty = True
                    break
            if dirty:
                break
        if dirty:
            continue
        if A[t][t] < 0:
            negate_row(t)
        t += 1

    diag = [A[i][i] for i in range(min(m, n)) if A[i][i]]
    if track_transforms:
        return diag, P, Q
    return diag


def sparse_unit_eliminate(rows, n_cols):
    """Gaussian elimination over Z using only +-1 pivots.

    ``rows`` is a list of {col: coeff} dicts.  Mutates nothing; returns
    (unit_rank, leftover_rows, remaining_cols) where leftover rows have no
    unit entries and are restricted to the non-eliminated columns.  Used to
    crush the huge sparse relator matrices of simplicial presentations down
    to a small dense core for :func:`smith_normal_form`.
    """
    rows = [dict(r) for r in rows if r]
    col_rows = {}
    for ri, r in enumerate(rows):
        for c in r:
            col_rows.setdefault(c, set()).add(ri)
    active = set(range(len(rows)))
    # queue of candidate pivot rows, shortest first for low fill-in
    unit_rank = 0
    eliminated = set()
    while True:
        pivot = None
        best_len = None
        for ri in active:
            r = rows[ri]
            for c, v in r.items():
                if v == 1 or v == -1:
                    if best_len is None or len(r) < best_len:
                        pivot = (ri, c)
                        best_len = len(r)
                    break
        if pivot is None:
            break
        ri, c = pivot
        pr = rows[ri]
        pv = pr[c]  # +-1, so its inverse is itself
        unit_rank += 1
        eliminated.add(c)
        active.discard(ri)
        for rj in list(col_rows.get(c, ())):
            if rj == ri or rj not in active:
                continue
            rr = rows[rj]
            f = rr[c] * pv
            for cc, vv in pr.items():
                nv = rr.get(cc, 0) - f * vv
                if nv == 0:
                    if cc in rr:
                        del rr[cc]
                        col_rows[cc].discard(rj)
                else:
                    if cc not in rr:
                        col_rows.setdefault(cc, set()).add(rj)
                    rr[cc] = nv
            if not rr:
                active.discard(rj)
        for rj in list(col_rows.get(c, ())):
            rows[rj].pop(c, None)
        col_rows.pop(c, None)

    remaining_cols = sorted(set(range(n_cols)) - eliminated)
    leftover = [rows[ri] for ri in active if rows[ri]]
    return unit_rank, leftover, remaining_cols


def abelian_invariants_of_rows(rows, n_gens):
    """Invariants of Z^n_gens modulo the row span: (free_rank, torsion list)."""
    unit_rank, leftover, remaining = sparse_unit_eliminate(rows, n_gens)
    if not leftover:
        return n_gens - unit_rank, []
    colmap = {c: k for k, c in enumerate(remaining)}
    dense = []
    for r in leftover:
        row = [0] * len(remaining)
        for c, v in r.items():
            row[colmap[c]] = v
        dense.append(row)
    diag = smith_normal_form(dense)
    free_rank = n_gens - unit_rank - len(diag)
    torsion = [d for d in diag if d > 1]
    return free_rank, torsion
