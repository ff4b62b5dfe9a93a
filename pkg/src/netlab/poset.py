"""Finite posets with causal disjointness relations, sieves and refinements.

Every relation is stored as a dense boolean table over the element list, so
axiom checking is an exhaustive scan.  Posets are immutable after validation
and all operations here are pure functions.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from .errors import (
    AntisymmetryViolation,
    EmptyRefinement,
    PerpAxiomViolation,
    PosetError,
    ReflexivityViolation,
    SizeOverflow,
    TransitivityViolation,
    UnknownElement,
)

# Dense bool tables keep axiom scans trivial; the cap bounds table size, not
# the mathematics.  Diamond posets of desk-scale lattices need a few thousand.
MAX_ELEMENTS = 4096


class Poset:
    """Immutable finite poset over hashable element ids.

    The order is held as a dense boolean matrix ``leq[i, j]`` meaning
    ``elements[i] <= elements[j]``.
    """

    __slots__ = ("elements", "index", "leq_matrix", "_up_bits", "_down_bits",
                 "_cache")

    def __init__(self, elements, leq_matrix):
        self.elements = tuple(elements)
        self.index = {e: i for i, e in enumerate(self.elements)}
        m = np.asarray(leq_matrix, dtype=bool)
        m.setflags(write=False)
        self.leq_matrix = m
        # bitset rows for fast upper/lower set intersection tests
        self._up_bits = [_row_bits(m[i, :]) for i in range(len(self.elements))]
        self._down_bits = [_row_bits(m[:, j]) for j in range(len(self.elements))]
        self._cache = {}  # derived-structure memos (presentations etc.)

    def __len__(self):
        return len(self.elements)

    def __contains__(self, x):
        return x in self.index

    def leq(self, x, y) -> bool:
        return bool(self.leq_matrix[self.index[x], self.index[y]])

    def up_bits(self, i: int) -> int:
        """Upper set of element index i as a bitmask."""
        return self._up_bits[i]

    def down_bits(self, i: int) -> int:
        return self._down_bits[i]

    def upper_set(self, x):
        i = self.index[x]
        return [self.elements[j] for j in range(len(self)) if self.leq_matrix[i, j]]

    def lower_set(self, x):
        j = self.index[x]
        return [self.elements[i] for i in range(len(self)) if self.leq_matrix[i, j]]

    def have_common_upper(self, i: int, j: int) -> bool:
        return bool(self._up_bits[i] & self._up_bits[j])

    def restrict(self, subset) -> "Poset":
        """Induced subposet on the given elements (order preserved)."""
        subset = list(subset)
        for x in subset:
            if x not in self.index:
                raise UnknownElement(repr(x))
        ids = [self.index[x] for x in subset]
        sub = self.leq_matrix[np.ix_(ids, ids)]
        return Poset(subset, sub)

    def __repr__(self):
        return f"Poset({len(self.elements)} elements)"


def _row_bits(row) -> int:
    bits = 0
    for j in np.flatnonzero(row):
        bits |= 1 << int(j)
    return bits


def check_poset_axioms(elements, leq_matrix):
    """Exhaustively scan the three order axioms; return every violation."""
    n = len(elements)
    m = np.asarray(leq_matrix, dtype=bool)
    violations = []
    for i in range(n):
        if not m[i, i]:
            violations.append(ReflexivityViolation(elements[i]))
    both = m & m.T
    for i, j in zip(*np.nonzero(both)):
        if i < j:
            violations.append(AntisymmetryViolation(elements[i], elements[j]))
    # closure = reachability; any pair reachable in two steps but not one
    closure = m @ m
    for i, j in zip(*np.nonzero(closure & ~m)):
        # recover one witness k per pair
        k = int(np.nonzero(m[i, :] & m[:, j])[0][0])
        violations.append(TransitivityViolation(elements[i], elements[k], elements[j]))
    return violations


def validate_poset(elements, leq_pairs=None, leq_matrix=None, max_elements=None) -> Poset:
    """Build a Poset from a raw relation table, checking all axioms.

    Raises PosetError naming every violated axiom (the first violation is the
    exception; the full list rides on ``.violations``).  Duplicate ids and
    duplicate pairs are rejected rather than repaired.
    """
    elements = list(elements)
    if not elements:
        raise PosetError("empty element list")
    cap = MAX_ELEMENTS if max_elements is None else max_elements
    if len(elements) > cap:
        raise SizeOverflow(f"{len(elements)} elements exceeds cap {cap}")
    if len(set(elements)) != len(elements):
        raise PosetError("duplicate element ids")
    index = {e: i for i, e in enumerate(elements)}
    if leq_matrix is None:
        if leq_pairs is None:
            raise PosetError("need leq_pairs or leq_matrix")
        seen = set()
        m = np.eye(len(elements), dtype=bool)
        for pair in leq_pairs:
            x, y = pair
            if x not in index or y not in index:
                raise UnknownElement(repr(pair))
            if (x, y) in seen:
                raise PosetError(f"duplicate relation pair {pair!r}")
            seen.add((x, y))
            m[index[x], index[y]] = True
    else:
        m = np.asarray(leq_matrix, dtype=bool).copy()
    violations = check_poset_axioms(elements, m)
    if violations:
        err = violations[0]
        err.violations = violations
        raise err
    return Poset(elements, m)


def transitive_closure(matrix):
    """Reflexive-transitive closure of a boolean relation (Warshall)."""
    m = np.asarray(matrix, dtype=bool).copy()
    np.fill_diagonal(m, True)
    n = m.shape[0]
    for k in range(n):
        m |= np.outer(m[:, k], m[k, :])
    return m


class CausalDisjointness:
    """Symmetric causal disjointness relation over a Poset's elements."""

    __slots__ = ("poset", "perp_matrix")

    def __init__(self, poset: Poset, perp_matrix):
        self.poset = poset
        m = np.asarray(perp_matrix, dtype=bool)
        m.setflags(write=False)
        self.perp_matrix = m

    def perp(self, x, y) -> bool:
        return bool(self.perp_matrix[self.poset.index[x], self.poset.index[y]])

    def validate(self):
        """Check symmetry, existence of partners, monotone closure, no self-perp."""
        m = self.perp_matrix
        leq = self.poset.leq_matrix
        els = self.poset.elements
        problems = []
        bad = np.nonzero(m != m.T)
        for i, j in zip(*bad):
            if i < j:
                problems.append(f"perp not symmetric on ({els[i]!r}, {els[j]!r})")
        if np.any(np.diag(m)):
            i = int(np.nonzero(np.diag(m))[0][0])
            problems.append(f"element {els[i]!r} is perp to itself")
        no_partner = ~m.any(axis=1)
        for i in np.flatnonzero(no_partner):
            problems.append(f"element {els[int(i)]!r} has no perp partner")
        # x <= y and y perp z  =>  x perp z: perp row of y must be within row of x
        implied = leq @ m  # implied[x, z] true if some y >= x has y perp z
        missing = implied & ~m
        for i, j in zip(*np.nonzero(missing)):
            problems.append(
                f"perp not monotone: {els[i]!r} <= some y perp {els[j]!r} "
                f"but not {els[i]!r} perp {els[j]!r}"
            )
        return problems

    def validated(self) -> "CausalDisjointness":
        problems = self.validate()
        if problems:
            raise PerpAxiomViolation("; ".join(problems[:5]))
        return self


@dataclass(frozen=True)
class Sieve:
    """Downward closed subset of a poset."""

    poset: Poset
    members: frozenset

    def __post_init__(self):
        leq = self.poset.leq_matrix
        idx = self.poset.index
        ms = {idx[x] for x in self.members}
        for j in ms:
            below = np.flatnonzero(leq[:, j])
            for i in below:
                if int(i) not in ms:
                    raise PosetError(
                        f"not a sieve: {self.poset.elements[int(i)]!r} <= "
                        f"{self.poset.elements[j]!r} but missing"
                    )

    def __contains__(self, x):
        return x in self.members

    def __len__(self):
        return len(self.members)


def causal_complement(poset: Poset, disj: CausalDisjointness, subset) -> Sieve:
    """All elements perp to every member of ``subset``; always a sieve."""
    for x in subset:
        if x not in poset.index:
            raise UnknownElement(repr(x))
    ids = [poset.index[x] for x in subset]
    if not ids:
        members = frozenset(poset.elements)
    else:
        rows = disj.perp_matrix[ids, :]
        mask = rows.all(axis=0)
        members = frozenset(poset.elements[j] for j in np.flatnonzero(mask))
    return Sieve(poset, members)


def is_directed(poset: Poset) -> bool:
    """True iff every pair of elements has a common upper bound."""
    n = len(poset)
    for i in range(n):
        for j in range(i + 1, n):
            if not poset.have_common_upper(i, j):
                return False
    return True


def is_pathwise_connected(poset: Poset) -> bool:
    """Connectivity under the common-upper-bound graph (1-simplex adjacency)."""
    return len(_component(poset, 0)) == len(poset)


def _component(poset: Poset, start: int):
    n = len(poset)
    seen = {start}
    stack = [start]
    while stack:
        u = stack.pop()
        for v in range(n):
            if v not in seen and poset.have_common_upper(u, v):
                seen.add(v)
                stack.append(v)
    return seen


def check_refinement(poset: Poset, phat) -> dict:
    """Refinement and local relative connectedness of a subposet.

    ``phat`` is a subset of the poset's elements, carrying the induced order.
    Local relative connectedness asks, for each element O and each pair of
    phat-elements below O, for a phat-path whose supports all lie below O.
    """
    phat = list(phat)
    if not phat:
        raise EmptyRefinement("refinement candidate is empty")
    for x in phat:
        if x not in poset.index:
            raise UnknownElement(repr(x))
    phat_ids = [poset.index[x] for x in phat]
    phat_set = set(phat_ids)
    leq = poset.leq_matrix
    n = len(poset)

    refinement_witness = None
    for o in range(n):
        if not any(leq[h, o] for h in phat_ids):
            refinement_witness = poset.elements[o]
            break
    is_ref = refinement_witness is None

    lrc_witness = None
    for o in range(n):
        below = [h for h in phat_ids if leq[h, o]]
        if len(below) <= 1:
            continue
        # graph on phat-elements <= o; edge iff a common support in phat <= o
        comp = {below[0]}
        stack = [below[0]]
        below_set = set(below)
        while stack:
            u = stack.pop()
            for s in below:
                if not leq[u, s]:
                    continue
                for v in below:
                    if v not in comp and leq[v, s]:
                        comp.add(v)
                        stack.append(v)
        missing = below_set - comp
        if missing:
            lrc_witness = (
                poset.elements[o],
                poset.elements[below[0]],
                poset.elements[next(iter(missing))],
            )
            break
    is_lrc = lrc_witness is None

    return {
        "is_refinement": is_ref,
        "is_locally_relatively_connected": is_ref and is_lrc,
        "witnesses": {
            "uncovered_element": refinement_witness,
            "disconnected_triple": lrc_witness,
        },
    }


# ---- JSON interface ---------------------------------------------------------

def poset_from_json(obj):
    """Load {"elements": [...], "leq": [[x, y], ...], "perp": [[x, y], ...]}.

    ``leq`` lists generating relations; the reflexive-transitive closure is
    taken before validation, and closure-created antisymmetry violations are
    reported.
    """
    if isinstance(obj, str):
        obj = json.loads(obj)
    elements = obj["elements"]
    index = {e: i for i, e in enumerate(elements)}
    n = len(elements)
    gen = np.zeros((n, n), dtype=bool)
    for x, y in obj.get("leq", []):
        if x not in index or y not in index:
            raise UnknownElement(f"[{x!r}, {y!r}]")
        gen[index[x], index[y]] = True
    closed = transitive_closure(gen)
    poset = validate_poset(elements, leq_matrix=closed)
    disj = None
    if "perp" in obj:
        pm = np.zeros((n, n), dtype=bool)
        for x, y in obj["perp"]:
            if x not in index or y not in index:
                raise UnknownElement(f"[{x!r}, {y!r}]")
            pm[index[x], index[y]] = True
            pm[index[y], index[x]] = True
        disj = CausalDisjointness(poset, pm).validated()
    return poset, disj


def poset_to_json(poset: Poset, disj: CausalDisjointness | None = None):
    """Canonical JSON form: generating pairs are all non-reflexive relations."""
    leq = []
    n = len(poset)
    for i in range(n):
        for j in range(n):
            if i != j and poset.leq_matrix[i, j]:
                leq.append([poset.elements[i], poset.elements[j]])
    obj = {"elements": list(poset.elements), "leq": leq}
    if disj is not None:
        pairs = []
        for i in range(n):
            for j in range(i + 1, n):
                if disj.perp_matrix[i, j]:
                    pairs.append([poset.elements[i], poset.elements[j]])
        obj["perp"] = pairs
    return obj
