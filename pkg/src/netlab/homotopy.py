"""Fundamental groups of posets, simple-connectedness certificates, and poset
approximation of sampled curves.

Two presentation constructions are offered.  The default works on the order
complex: generators are non-tree comparable pairs, relators come from chains
x < y < z.  The ``singular`` construction follows the 1-skeleton of singular
simplices literally (one generator per support-tagged non-tree edge, one
relator per 2-simplex face triple); it grows much faster but the two agree,
which the test suite checks on small posets.  Every support-tagged edge
(x, y, s) deforms through the 2-simplex over s into the pair x -> s -> y,
which is exactly how paths are translated to words here.

Word convention: a word is a list of signed 1-based generator indices in
application order; the corresponding operator product puts the last symbol
leftmost.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import snf
from .coset_enum import coset_enumeration
from .errors import DisconnectedBasepoint, GapTooLarge, NoCover, SizeOverflow
from .poset import Poset
from .simplicial import (
    Path,
    Simplex1,
    degenerate,
    iter_face_triples,
)


@dataclass
class GroupPresentation:
    """Finitely presented pi_1(P, a0) with the path-to-word dictionary."""

    generators: list
    relators: list
    basepoint: object
    spanning_tree: set
    component: frozenset
    kind: str
    edge_words: dict = field(repr=False)

    @property
    def n_generators(self):
        return len(self.generators)


@dataclass(frozen=True)
class AbelianInvariants:
    free_rank: int
    torsion: tuple

    def is_trivial(self):
        return self.free_rank == 0 and not self.torsion


def _connected_component(poset: Poset, a0):
    """Pathwise component of a0 under the common-upper-bound adjacency."""
    n = len(poset)
    start = poset.index[a0]
    seen = {start}
    stack = [start]
    while stack:
        u = stack.pop()
        for v in range(n):
            if v not in seen and poset.have_common_upper(u, v):
                seen.add(v)
                stack.append(v)
    return seen


def pi1_presentation(poset: Poset, a0, method: str = "nerve") -> GroupPresentation:
    """Present pi_1(P, a0) over the path component of a0.

    ``method="nerve"`` uses the order complex (scales to thousands of
    elements); ``method="singular"`` enumerates support-tagged 1-simplices and
    2-simplex face triples literally.
    """
    if a0 not in poset.index:
        raise DisconnectedBasepoint(f"unknown basepoint {a0!r}")
    key = ("pi1", method, a0)
    if key in poset._cache:
        return poset._cache[key]
    if method == "nerve":
        pres = _nerve_presentation(poset, a0)
    elif method == "singular":
        pres = _singular_presentation(poset, a0)
    else:
        raise ValueError(f"unknown method {method!r}")
    poset._cache[key] = pres
    return pres


def _nerve_presentation(poset: Poset, a0) -> GroupPresentation:
    comp = _connected_component(poset, a0)
    els = poset.elements
    leq = poset.leq_matrix
    # undirected comparability edges inside the component, oriented upward
    edges = []
    for i in sorted(comp):
        for j in sorted(comp):
            if i != j and leq[i, j]:
                edges.append((i, j))
    # BFS spanning tree from the basepoint over the comparability graph
    adj = {i: [] for i in comp}
    for i, j in edges:
        adj[i].append(j)
        adj[j].append(i)
    root = poset.index[a0]
    tree = set()
    seen = {root}
    frontier = [root]
    while frontier:
        nxt = []
        for u in frontier:
            for v in sorted(adj[u]):
                if v not in seen:
                    seen.add(v)
                    tree.add((min(u, v), max(u, v)))
                    nxt.append(v)
        frontier = nxt
    if seen != comp:
        # comparability connectivity equals common-upper connectivity
        raise DisconnectedBasepoint("component bookkeeping failed")

    generators = []
    gen_index = {}
    edge_words = {}
    for i, j in edges:
        canon = (min(i, j), max(i, j))
        if canon in tree:
            edge_words[(i, j, "up")] = ()
            continue
        if canon not in gen_index:
            gen_index[canon] = len(generators)
            generators.append(("pair", els[canon[0]], els[canon[1]]))
        g = gen_index[canon] + 1
        # canonical orientation: lower index to higher index
        edge_words[(i, j, "up")] = (g,) if (i, j) == canon else (-g,)

    def up_word(i, j):
        return edge_words[(i, j, "up")]

    relators = []
    seen_rel = set()
    comp_sorted = sorted(comp)
    for x in comp_sorted:
        ups_x = [y for y in comp_sorted if y != x and leq[x, y]]
        for y in ups_x:
            for z in comp_sorted:
                if z != x and z != y and leq[y, z]:
                    # triangle x < y < z: apply (x->y), then (y->z), equals (x->z)
                    word = _concat(up_word(x, y), up_word(y, z),
                                   _invert(up_word(x, z)))
                    word = _free_reduce(word)
                    if word and tuple(word) not in seen_rel:
                        seen_rel.add(tuple(word))
                        relators.append(list(word))
    return GroupPresentation(
        generators=generators,
        relators=relators,
        basepoint=a0,
        spanning_tree={(els[i], els[j]) for i, j in tree},
        component=frozenset(els[i] for i in comp),
        kind="nerve",
        edge_words={
            (els[i], els[j]): w for (i, j, _), w in edge_words.items()
        },
    )


def _singular_presentation(poset: Poset, a0) -> GroupPresentation:
    comp = _connected_component(poset, a0)
    els = poset.elements
    leq = poset.leq_matrix
    comp_sorted = sorted(comp)

    # all support-tagged edges within the component
    def canon_key(i, j, s):
        return (min(i, j), max(i, j), s)

    oriented = []
    for s in comp_sorted:
        below = [i for i in comp_sorted if leq[i, s]]
        for i in below:
            for j in below:
                oriented.append((i, j, s))

    # spanning tree from basepoint: BFS over edges, remember the support used
    root = poset.index[a0]
    tree = {}
    seen = {root}
    frontier = [root]
    adjacency = {}
    for i, j, s in oriented:
        adjacency.setdefault(i, []).append((j, s))
    while frontier:
        nxt = []
        for u in frontier:
            for v, s in sorted(adjacency.get(u, [])):
                if v not in seen:
                    seen.add(v)
                    tree[canon_key(u, v, s)] = True
                    nxt.append(v)
        frontier = nxt
    if seen != comp:
        raise DisconnectedBasepoint("component bookkeeping failed")

    generators = []
    gen_index = {}
    edge_words = {}
    for i, j, s in oriented:
        key = canon_key(i, j, s)
        if i == j == s:
            edge_words[(i, j, s)] = ()  # degenerate edge b(a)
            continue
        if key in tree:
            edge_words[(i, j, s)] = ()
            continue
        if key not in gen_index:
            gen_index[key] = len(generators)
            generators.append(("edge", els[key[0]], els[key[1]], els[key[2]]))
        g = gen_index[key] + 1
        edge_words[(i, j, s)] = (g,) if (i, j) == key[:2] else (-g,)

    def w(simplex: Simplex1):
        return edge_words[
            (poset.index[simplex.d1], poset.index[simplex.d0],
             poset.index[simplex.support])
        ]

    relators = []
    seen_rel = set()
    for f0, f1, f2 in iter_face_triples(poset):
        if poset.index[f1.d1] not in comp:
            continue
        word = _free_reduce(_concat(w(f2), w(f0), _invert(w(f1))))
        if word and tuple(word) not in seen_rel:
            seen_rel.add(tuple(word))
            relators.append(list(word))
    return GroupPresentation(
        generators=generators,
        relators=relators,
        basepoint=a0,
        spanning_tree={
            (els[i], els[j], els[s]) for (i, j, s) in tree
        },
        component=frozenset(els[i] for i in comp),
        kind="singular",
        edge_words={
            (els[i], els[j], els[s]): word
            for (i, j, s), word in edge_words.items()
        },
    )


def _concat(*words):
    out = []
    for w in words:
        out.extend(w)
    return out


def _invert(word):
    return [-s for s in reversed(word)]


def _free_reduce(word):
    out = []
    for s in word:
        if out and out[-1] == -s:
            out.pop()
        else:
            out.append(s)
    return out


def path_word(pres: GroupPresentation, path: Path):
    """Image of a path as a word over the presentation's generators.

    In the nerve presentation an edge (x, y, s) factors through x -> s -> y;
    in the singular presentation it is looked up directly.
    """
    word = []
    for e in path.edges:
        if pres.kind == "singular":
            word.extend(pres.edge_words[(e.d1, e.d0, e.support)])
        else:
            if e.d1 == e.d0:
                continue
            if e.d0 == e.support:
                word.extend(pres.edge_words[(e.d1, e.support)])
            elif e.d1 == e.support:
                word.extend(_invert(pres.edge_words[(e.d0, e.support)]))
            else:
                word.extend(pres.edge_words[(e.d1, e.support)])
                word.extend(_invert(pres.edge_words[(e.d0, e.support)]))
    return _free_reduce(word)


def abelianized_word(pres: GroupPresentation, word) -> np.ndarray:
    vec = np.zeros(pres.n_generators, dtype=np.int64)
    for s in word:
        vec[abs(s) - 1] += 1 if s > 0 else -1
    return vec


def abelianized_path_image(pres: GroupPresentation, path: Path) -> np.ndarray:
    return abelianized_word(pres, path_word(pres, path))


def word_images_differ(poset: Poset, p: Path, q: Path) -> bool:
    """Sound inequality test for homotopy classes via abelianization."""
    pres = pi1_presentation(poset, p.start)
    # quotient out torsion and relators: compare against the relator lattice
    vp = abelianized_path_image(pres, p)
    vq = abelianized_path_image(pres, q)
    diff = vp - vq
    if not diff.any():
        return False
    rows = []
    for rel in pres.relators:
        row = {}
        for s in rel:
            row[abs(s) - 1] = row.get(abs(s) - 1, 0) + (1 if s > 0 else -1)
        row = {c: v for c, v in row.items() if v}
        if row:
            rows.append(row)
    return not _in_row_lattice(rows, pres.n_generators, diff)


def _in_row_lattice(rows, n, vec) -> bool:
    """Whether an integer vector lies in the lattice spanned by sparse rows."""
    target = {int(c): int(v) for c, v in enumerate(vec) if v}
    work = [dict(r) for r in rows]
    work.append(dict(target))
    rank_with = snf.sparse_unit_eliminate(work, n)
    rank_without = snf.sparse_unit_eliminate([dict(r) for r in rows], n)
    # vec in lattice iff appending it does not enlarge the span; unit pivots
    # suffice only when leftovers vanish, so fall back to SNF rank otherwise
    def full_rank(res):
        unit_rank, leftover, remaining = res
        if not leftover:
            return unit_rank, []
        colmap = {c: k for k, c in enumerate(remaining)}
        dense = []
        for r in leftover:
            row = [0] * len(remaining)
            for c, v in r.items():
                row[colmap[c]] = v
            dense.append(row)
        diag = snf.smith_normal_form(dense)
        return unit_rank + len(diag), diag

    rw, dw = full_rank(rank_with)
    ro, do = full_rank(rank_without)
    if rw != ro:
        return False
    # equal rank: membership also needs matching torsion structure
    return dw == do


def abelian_invariants(pres: GroupPresentation) -> AbelianInvariants:
    """Smith-form invariants of the abelianized presentation."""
    rows = []
    for rel in pres.relators:
        row = {}
        for s in rel:
            row[abs(s) - 1] = row.get(abs(s) - 1, 0) + (1 if s > 0 else -1)
        row = {c: v for c, v in row.items() if v}
        if row:
            rows.append(row)
    free_rank, torsion = snf.abelian_invariants_of_rows(rows, pres.n_generators)
    return AbelianInvariants(free_rank, tuple(torsion))


def certify_simply_connected(pres: GroupPresentation, coset_budget: int = 10_000):
    """"yes" / "no" / "unknown" verdict on triviality of the presented group."""
    inv = abelian_invariants(pres)
    if not inv.is_trivial():
        return "no"
    result = coset_enumeration(
        pres.n_generators, pres.relators, max_cosets=coset_budget
    )
    if result["status"] == "complete":
        return "yes" if result["index"] == 1 else "no"
    return "unknown"


def presentation_to_text(pres: GroupPresentation) -> str:
    """Plain generators/relators export; inverses carry a trailing apostrophe."""
    names = [f"g{k}" for k in range(pres.n_generators)]
    lines = ["generators: " + " ".join(names)]
    for rel in pres.relators:
        lines.append(" ".join(
            names[abs(s) - 1] + ("" if s > 0 else "'") for s in rel
        ))
    return "\n".join(lines) + "\n"


# ---- poset approximation of sampled curves ----------------------------------

def approximate_curve(samples, opens, poset: Poset, model: str = "circle"):
    """Approximate a sampled curve by a poset path.

    ``samples`` is a sequence of points on the model space (angles for the
    circle, reals for the interval); ``opens`` maps poset elements to point
    sets given as half-open spans (lo, hi) -- on the circle a span may wrap.
    Returns (path, partition) where partition lists the sample indices
    bounding each edge's segment.
    """
    samples = list(samples)
    if not samples:
        raise NoCover("no samples")
    spans = {e: opens[e] for e in poset.elements if e in opens}

    def contains(el, pt):
        lo, hi = spans[el]
        if model == "circle":
            width = 2.0 * np.pi
            rel = (pt - lo) % width
            return rel < ((hi - lo) % width or width)
        return lo <= pt < hi

    def diameter(el):
        lo, hi = spans[el]
        if model == "circle":
            width = 2.0 * np.pi
            return (hi - lo) % width or width
        return hi - lo

    min_diam = min(diameter(e) for e in spans)
    for a, b in zip(samples, samples[1:]):
        gap = abs(b - a)
        if model == "circle":
            gap = min(gap % (2 * np.pi), (2 * np.pi) - gap % (2 * np.pi))
        if gap >= min_diam:
            raise GapTooLarge(f"sample gap {gap} >= min open diameter {min_diam}")

    order = sorted(spans, key=lambda e: (repr(e)))

    def vertex_for(pt):
        # deterministic: the inclusion-minimal covering element, ties by repr
        covering = [e for e in order if contains(e, pt)]
        if not covering:
            raise NoCover(f"sample {pt} lies in no open")
        minimal = [
            e for e in covering
            if not any(o != e and poset.leq(o, e) for o in covering)
        ]
        return minimal[0]

    verts = [vertex_for(p) for p in samples]
    runs = [[0, verts[0]]]
    for k in range(1, len(verts)):
        if verts[k] != runs[-1][1]:
            runs.append([k, verts[k]])

    if len(runs) == 1:
        v = runs[0][1]
        return Path([degenerate(v)]), [0, len(samples) - 1]

    edges = []
    for (k0, v0), (k1, v1) in zip(runs, runs[1:]):
        support = _minimal_common_upper(poset, v0, v1)
        if support is None:
            raise NoCover(f"no common support above {v0!r}, {v1!r}")
        edges.append(Simplex1(v0, v1, support))
    # segment i runs from partition[i] to partition[i+1]; interior breakpoints
    # sit at the first sample of each intermediate run
    partition = [0] + [runs[i][0] for i in range(1, len(runs) - 1)]
    partition.append(len(samples) - 1)
    path = Path(edges)
    ok, why = is_approximation(path, partition, samples, spans, poset, model)
    if not ok:
        raise NoCover(f"constructed path fails approximation conditions: {why}")
    return path, partition


def _minimal_common_upper(poset: Poset, x, y):
    i, j = poset.index[x], poset.index[y]
    ups = poset.up_bits(i) & poset.up_bits(j)
    candidates = []
    k = 0
    while ups:
        if ups & 1:
            candidates.append(k)
        ups >>= 1
        k += 1
    if not candidates:
        return None
    minimal = [
        c for c in candidates
        if not any(
            d != c and poset.leq_matrix[d, c] for d in candidates
        )
    ]
    minimal.sort(key=lambda c: repr(poset.elements[c]))
    return poset.elements[minimal[0]]


def is_approximation(path: Path, partition, samples, spans, poset: Poset,
                     model: str = "circle"):
    """Check the defining conditions of a poset approximation."""

    def contains(el, pt):
        lo, hi = spans[el]
        if model == "circle":
            width = 2.0 * np.pi
            rel = (pt - lo) % width
            return rel < ((hi - lo) % width or width)
        return lo <= pt < hi

    if len(partition) != len(path.edges) + 1:
        return False, "partition length mismatch"
    if partition[0] != 0 or partition[-1] != len(samples) - 1:
        return False, "partition does not span the samples"
    for e, (lo, hi) in zip(path.edges, zip(partition, partition[1:])):
        if not contains(e.d1, samples[lo]):
            return False, f"segment start not in d1 of {e}"
        if not contains(e.d0, samples[hi]):
            return False, f"segment end not in d0 of {e}"
        for k in range(lo, hi + 1):
            if not contains(e.support, samples[k]):
                return False, f"sample {k} escapes support of {e}"
    return True, ""
