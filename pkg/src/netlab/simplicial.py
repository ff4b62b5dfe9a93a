"""Singular 0/1/2-simplices of a poset, paths, and elementary deformations.

A 1-simplex is a triple (start, end, support) with both endpoints below the
support; two 1-simplices with equal endpoints but different supports are
distinct objects throughout, since cocycles take values in the support's
algebra.  Paths store their edges in application order: ``edges[0]`` is
traversed first.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import EndpointMismatch, SizeOverflow
from .poset import Poset

SIMPLEX2_CAP = 200_000


@dataclass(frozen=True)
class Simplex1:
    """Oriented 1-simplex: d1 --(support)--> d0."""

    d1: object  # start vertex
    d0: object  # end vertex
    support: object

    def reverse(self):
        return Simplex1(self.d0, self.d1, self.support)

    @property
    def is_degenerate(self):
        return self.d0 == self.d1 == self.support

    def triple(self):
        return [self.d1, self.d0, self.support]


def degenerate(a) -> Simplex1:
    """The 1-simplex b(a) degenerate to a."""
    return Simplex1(a, a, a)


@dataclass(frozen=True)
class Simplex2:
    """2-simplex with faces f0: B->C, f1: A->C, f2: A->B and a support.

    Vertex chain relations: d1(f0) = d0(f2), d1(f1) = d1(f2), d0(f1) = d0(f0).
    """

    f0: Simplex1
    f1: Simplex1
    f2: Simplex1
    support: object

    def faces(self):
        return (self.f0, self.f1, self.f2)


def validate_simplex1(poset: Poset, s: Simplex1) -> bool:
    return poset.leq(s.d0, s.support) and poset.leq(s.d1, s.support)


def validate_simplex2(poset: Poset, c: Simplex2) -> bool:
    if not all(validate_simplex1(poset, f) for f in c.faces()):
        return False
    chain = (
        c.f0.d1 == c.f2.d0
        and c.f1.d1 == c.f2.d1
        and c.f1.d0 == c.f0.d0
    )
    if not chain:
        return False
    return all(poset.leq(f.support, c.support) for f in c.faces())


class Path:
    """Nonempty composable sequence of 1-simplices, first-applied first."""

    __slots__ = ("edges",)

    def __init__(self, edges):
        edges = tuple(edges)
        if not edges:
            raise EndpointMismatch("empty path")
        for a, b in zip(edges, edges[1:]):
            if a.d0 != b.d1:
                raise EndpointMismatch(f"{a} then {b}")
        self.edges = edges

    @property
    def start(self):
        return self.edges[0].d1

    @property
    def end(self):
        return self.edges[-1].d0

    def __len__(self):
        return len(self.edges)

    def __eq__(self, other):
        return isinstance(other, Path) and self.edges == other.edges

    def __hash__(self):
        return hash(self.edges)

    def __repr__(self):
        return f"Path({self.start!r} -> {self.end!r}, {len(self.edges)} edges)"

    def to_json(self):
        return [e.triple() for e in self.edges]

    @staticmethod
    def from_json(triples):
        return Path([Simplex1(d1, d0, s) for d1, d0, s in triples])


def reverse_path(p: Path) -> Path:
    return Path([e.reverse() for e in reversed(p.edges)])


def compose_paths(q: Path, p: Path) -> Path:
    """q * p: traverse p first, then q."""
    if p.end != q.start:
        raise EndpointMismatch(f"cannot compose: {p.end!r} != {q.start!r}")
    return Path(p.edges + q.edges)


def enumerate_simplices(poset: Poset, n: int, cap: int = SIMPLEX2_CAP):
    """All singular n-simplices (n <= 2), lexicographically ordered by ids.

    For n = 1 this includes both orientations, loop edges and all valid
    supports.  For n = 2 all face triples with all valid supports.
    """
    els = poset.elements
    if n == 0:
        return list(els)
    if n == 1:
        out = []
        for s in els:
            below = sorted(poset.lower_set(s), key=_key)
            for d1 in below:
                for d0 in below:
                    out.append(Simplex1(d1, d0, s))
        out.sort(key=lambda e: (_key(e.d1), _key(e.d0), _key(e.support)))
        if len(out) > cap:
            raise SizeOverflow(f"{len(out)} 1-simplices exceeds cap {cap}")
        return out
    if n == 2:
        out = []
        for sup in els:
            below = sorted(poset.lower_set(sup), key=_key)
            # candidate supports below sup for each face, per vertex pair
            for a in below:
                for b in below:
                    sup_ab = [t for t in below if poset.leq(a, t) and poset.leq(b, t)]
                    for c in below:
                        sup_bc = [
                            t for t in below if poset.leq(b, t) and poset.leq(c, t)
                        ]
                        sup_ac = [
                            t for t in below if poset.leq(a, t) and poset.leq(c, t)
                        ]
                        for s2 in sup_ab:
                            for s0 in sup_bc:
                                for s1 in sup_ac:
                                    out.append(
                                        Simplex2(
                                            Simplex1(b, c, s0),
                                            Simplex1(a, c, s1),
                                            Simplex1(a, b, s2),
                                            sup,
                                        )
                                    )
                                    if len(out) > cap:
                                        raise SizeOverflow(
                                            f"2-simplex count exceeds cap {cap}"
                                        )
        return out
    raise ValueError("only n in {0, 1, 2} is materialized")


def _key(x):
    return (str(type(x)), repr(x))


def iter_face_triples(poset: Poset, cap: int = SIMPLEX2_CAP):
    """Distinct (f0, f1, f2) face triples of 2-simplices, support dropped.

    A triple qualifies iff some common support above all three face supports
    exists; the choice of that support does not affect anything downstream
    (cocycle identities and relators only see the faces).
    """
    n = len(poset)
    els = poset.elements
    leq = poset.leq_matrix
    count = 0
    for ai in range(n):
        ua = poset.up_bits(ai)
        for bi in range(n):
            uab = ua & poset.up_bits(bi)
            if not uab:
                continue
            for ci in range(n):
                ubc = poset.up_bits(bi) & poset.up_bits(ci)
                uac = ua & poset.up_bits(ci)
                if not ubc or not uac:
                    continue
                s2s = _bits_to_ids(uab)
                s0s = _bits_to_ids(ubc)
                s1s = _bits_to_ids(uac)
                for s2 in s2s:
                    u2 = poset.up_bits(s2)
                    for s0 in s0s:
                        u20 = u2 & poset.up_bits(s0)
                        if not u20:
                            continue
                        for s1 in s1s:
                            if not (u20 & poset.up_bits(s1)):
                                continue
                            count += 1
                            if count > cap:
                                raise SizeOverflow(
                                    f"face triple count exceeds cap {cap}"
                                )
                            yield (
                                Simplex1(els[bi], els[ci], els[s0]),
                                Simplex1(els[ai], els[ci], els[s1]),
                                Simplex1(els[ai], els[bi], els[s2]),
                            )


def _bits_to_ids(bits: int):
    out = []
    while bits:
        low = bits & -bits
        out.append(low.bit_length() - 1)
        bits ^= low
    return out


def deformation_neighbors(p: Path, poset: Poset):
    """All paths one elementary deformation away from p.

    Expansion replaces an edge matching the f1-face of some 2-simplex by the
    pair (f2 then f0); contraction replaces a consecutive (f2 then f0) pair by
    f1.  The relation is symmetric by construction.
    """
    out = []
    edges = p.edges
    for i, e in enumerate(edges):
        for f0, f2 in _expansions(poset, e):
            out.append(Path(edges[:i] + (f2, f0) + edges[i + 1 :]))
    for i in range(len(edges) - 1):
        f2, f0 = edges[i], edges[i + 1]
        for f1 in _contractions(poset, f2, f0):
            out.append(Path(edges[:i] + (f1,) + edges[i + 2 :]))
    return out


def _expansions(poset: Poset, f1: Simplex1):
    """(f0, f2) pairs forming a 2-simplex whose f1-face is the given edge."""
    n = len(poset)
    els = poset.elements
    ai = poset.index[f1.d1]
    ci = poset.index[f1.d0]
    s1i = poset.index[f1.support]
    u1 = poset.up_bits(s1i)
    out = []
    for bi in range(n):
        for s2i in _bits_to_ids(poset.up_bits(ai) & poset.up_bits(bi)):
            u12 = u1 & poset.up_bits(s2i)
            if not u12:
                continue
            for s0i in _bits_to_ids(poset.up_bits(bi) & poset.up_bits(ci)):
                if not (u12 & poset.up_bits(s0i)):
                    continue
                out.append(
                    (
                        Simplex1(els[bi], els[ci], els[s0i]),
                        Simplex1(els[ai], els[bi], els[s2i]),
                    )
                )
    return out


def _contractions(poset: Poset, f2: Simplex1, f0: Simplex1):
    """f1 candidates closing the 2-simplex over a consecutive (f2, f0) pair."""
    ai = poset.index[f2.d1]
    ci = poset.index[f0.d0]
    u20 = poset.up_bits(poset.index[f2.support]) & poset.up_bits(
        poset.index[f0.support]
    )
    if not u20:
        return []
    out = []
    for s1i in _bits_to_ids(poset.up_bits(ai) & poset.up_bits(ci)):
        if u20 & poset.up_bits(s1i):
            out.append(Simplex1(poset.elements[ai], poset.elements[ci],
                                poset.elements[s1i]))
    return out


def are_homotopic(p: Path, q: Path, poset: Poset, budget: int = 100_000):
    """Three-valued homotopy test: "yes" | "no" | "unknown".

    "yes" comes from a bidirectional search over elementary deformations
    within the state budget; "no" from differing abelianized word images in
    the fundamental group (sound, since cocycle evaluation is homotopy
    invariant); "unknown" otherwise.  The two routes are cross-checked.
    """
    if p.start != q.start or p.end != q.end:
        raise EndpointMismatch("paths must share endpoints")

    # word-image route (may prove "no")
    from . import homotopy  # local import; homotopy builds on this module

    images_differ = homotopy.word_images_differ(poset, p, q)

    found = _bidirectional_search(p, q, poset, budget)
    if found and images_differ:
        raise AssertionError(
            "internal contradiction: deformation path found but word images differ"
        )
    if found:
        return "yes"
    if images_differ:
        return "no"
    return "unknown"


def _bidirectional_search(p: Path, q: Path, poset: Poset, budget: int) -> bool:
    if p == q:
        return True
    seen_p = {p}
    seen_q = {q}
    frontier_p = [p]
    frontier_q = [q]
    visited = 0
    while frontier_p and frontier_q and visited < budget:
        # expand the smaller frontier
        if len(frontier_p) <= len(frontier_q):
            frontier, seen, other = frontier_p, seen_p, seen_q
            which = "p"
        else:
            frontier, seen, other = frontier_q, seen_q, seen_p
            which = "q"
        nxt = []
        for node in frontier:
            for nb in deformation_neighbors(node, poset):
                if nb in other:
                    return True
                if nb not in seen:
                    seen.add(nb)
                    nxt.append(nb)
                    visited += 1
                    if visited >= budget:
                        break
            if visited >= budget:
                break
        if which == "p":
            frontier_p = nxt
        else:
            frontier_q = nxt
    return bool(seen_p & seen_q)
