"""Canonical small fixtures shared by tests, docs and the CLI examples.

CHAIN3   a <= b <= c, a total order.
V2       two bottoms a1, a2 under a single top O.
CYCLEn   bottoms a1..an and tops O1..On with a_i, a_{i+1 mod n} <= O_i; the
         order complex is a 2n-cycle, so pi_1 is Z.  Causal disjointness is
         disjointness of the bottom down-sets (the qualifier "non-adjacent"
         would starve small n of perp partners, violating the existence
         axiom, so plain disjointness is used; see the decisions ledger).
PAULIk   interval poset on a k-site circular slice: proper arcs ordered by
         inclusion, perp = site disjointness.
"""

from __future__ import annotations

import numpy as np

from .poset import CausalDisjointness, Poset, validate_poset


def chain3():
    pairs = [("a", "b"), ("b", "c"), ("a", "c")]
    return validate_poset(["a", "b", "c"], pairs)


def v2():
    return validate_poset(["a1", "a2", "O"], [("a1", "O"), ("a2", "O")])


def cycle(n: int):
    """CYCLEn poset with its causal disjointness relation."""
    if n < 3:
        raise ValueError("need n >= 3")
    bottoms = [f"a{i+1}" for i in range(n)]
    tops = [f"O{i+1}" for i in range(n)]
    pairs = []
    for i in range(n):
        pairs.append((bottoms[i], tops[i]))
        pairs.append((bottoms[(i + 1) % n], tops[i]))
    poset = validate_poset(bottoms + tops, pairs)

    def bottom_set(x):
        if x.startswith("a"):
            return {x}
        i = int(x[1:]) - 1
        return {bottoms[i], bottoms[(i + 1) % n]}

    els = poset.elements
    m = np.zeros((len(els), len(els)), dtype=bool)
    for i, x in enumerate(els):
        for j, y in enumerate(els):
            if i != j and not (bottom_set(x) & bottom_set(y)):
                m[i, j] = True
    disj = CausalDisjointness(poset, m).validated()
    return poset, disj


def pauli_intervals(k: int):
    """Interval poset on a k-site circular slice; elements are (start, length).

    All proper arcs (length 1 .. k-1) ordered by site-set inclusion; two arcs
    are causally disjoint iff they share no site.
    """
    if k < 3:
        raise ValueError("need k >= 3")
    arcs = []
    sites = {}
    for length in range(1, k):
        for start in range(k):
            arc = (start, length)
            arcs.append(arc)
            sites[arc] = frozenset((start + d) % k for d in range(length))
    n = len(arcs)
    leq = np.zeros((n, n), dtype=bool)
    perp = np.zeros((n, n), dtype=bool)
    for i, a in enumerate(arcs):
        for j, b in enumerate(arcs):
            if sites[a] <= sites[b]:
                leq[i, j] = True
            if i != j and not (sites[a] & sites[b]):
                perp[i, j] = True
    poset = validate_poset(arcs, leq_matrix=leq)
    disj = CausalDisjointness(poset, perp).validated()
    return poset, disj, sites


def cycle_arc_cover(n: int):
    """Arc cover of the unit circle realizing CYCLEn as a topological basis.

    Returns (poset, opens) where the bottoms a_i are half-open quarter arcs
    and the tops O_i are the unions of two consecutive bottom arcs.
    """
    poset, _ = cycle(n)
    width = 2.0 * np.pi / n
    opens = {}
    for i in range(n):
        opens[f"a{i+1}"] = (i * width, (i + 1) * width)
        opens[f"O{i+1}"] = (i * width, (i + 2) * width)
    return poset, opens
