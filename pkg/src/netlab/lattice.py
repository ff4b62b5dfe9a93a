"""Discretized 1+1D globally hyperbolic spacetimes: strips and cylinders.

Sites are (t, x) pairs with lightcone slope one site per time step; on the
cylinder the spatial distance is the minimum arc length.  Diamonds are the
full lattice domains of dependence of proper slice intervals.  The module
also enumerates the wider family of causally convex regions used as the
lattice stand-in for generic globally hyperbolic subregions.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (
    NotAchronal,
    NotCausallyConvex,
    OutOfBounds,
    SizeOverflow,
)
from .poset import CausalDisjointness, Poset, validate_poset

MAX_SITES = 400


class CausalLattice:
    """Finite strip or cylinder lattice with its causal order."""

    def __init__(self, topology: str, width: int, height: int):
        if topology not in ("strip", "cylinder"):
            raise ValueError(f"unknown topology {topology!r}")
        if width < 3 or height < 2:
            raise ValueError("need width >= 3 and height >= 2")
        if width * height > MAX_SITES:
            raise SizeOverflow(f"{width * height} sites exceeds cap {MAX_SITES}")
        self.topology = topology
        self.width = width
        self.height = height
        self.sites = [(t, x) for t in range(height) for x in range(width)]
        self.site_index = {s: i for i, s in enumerate(self.sites)}
        n = len(self.sites)
        m = np.zeros((n, n), dtype=bool)
        for i, a in enumerate(self.sites):
            for j, b in enumerate(self.sites):
                m[i, j] = self._leq(a, b)
        m.setflags(write=False)
        self.leq_matrix = m
        self.related_matrix = m | m.T
        self._cache = {}

    def distance(self, x1: int, x2: int) -> int:
        d = abs(x1 - x2)
        if self.topology == "cylinder":
            d = d % self.width
            return min(d, self.width - d)
        return d

    def _leq(self, a, b) -> bool:
        (t1, x1), (t2, x2) = a, b
        return t2 >= t1 and self.distance(x1, x2) <= t2 - t1

    def leq(self, a, b) -> bool:
        return bool(self.leq_matrix[self.site_index[a], self.site_index[b]])

    def related(self, a, b) -> bool:
        return bool(self.related_matrix[self.site_index[a], self.site_index[b]])

    def __repr__(self):
        return f"CausalLattice({self.topology!r}, {self.width}x{self.height})"

    def to_json(self):
        return {
            "topology": self.topology,
            "width": self.width,
            "height": self.height,
        }


def build_lattice(topology: str, width: int, height: int) -> CausalLattice:
    """Construct and validate a lattice.

    Checks: the causal order satisfies the poset axioms, time reflection
    reverses the order, and constant-t slices behave as Cauchy slices (every
    covering step advances by one slice, so maximal chains meet each slice
    exactly once).
    """
    lat = CausalLattice(topology, width, height)
    validate_poset(lat.sites, leq_matrix=lat.leq_matrix)
    # time reflection
    n = len(lat.sites)
    refl = [lat.site_index[(height - 1 - t, x)] for (t, x) in lat.sites]
    m = lat.leq_matrix
    for i in range(n):
        for j in range(n):
            if m[i, j] != m[refl[j], refl[i]]:
                raise AssertionError("time reflection does not reverse the order")
    # Cauchy-slice analog: related pairs two or more slices apart always admit
    # an intermediate one slice up, so saturated chains never skip a slice
    for i, (t1, x1) in enumerate(lat.sites):
        for j, (t2, x2) in enumerate(lat.sites):
            if m[i, j] and t2 - t1 >= 2:
                ok = any(
                    m[i, lat.site_index[(t1 + 1, xm)]]
                    and m[lat.site_index[(t1 + 1, xm)], j]
                    for xm in range(width)
                )
                if not ok:
                    raise AssertionError(f"chain skips a slice between {lat.sites[i]} and {lat.sites[j]}")
    return lat


# ---- causal set operations ------------------------------------------------

def causal_sets(lat: CausalLattice, region) -> dict:
    """J+/J-/perp of a site set, and the domain of dependence when achronal."""
    region = set(region)
    if not region:
        raise ValueError("empty region")
    for s in region:
        if s not in lat.site_index:
            raise OutOfBounds(repr(s))
    ids = [lat.site_index[s] for s in region]
    future = {
        lat.sites[j]
        for j in range(len(lat.sites))
        if any(lat.leq_matrix[i, j] for i in ids)
    }
    past = {
        lat.sites[j]
        for j in range(len(lat.sites))
        if any(lat.leq_matrix[j, i] for i in ids)
    }
    perp = {
        lat.sites[j]
        for j in range(len(lat.sites))
        if not any(lat.related_matrix[i, j] for i in ids)
    }
    out = {"future": future, "past": past, "perp": perp, "dod": None}
    achronal = all(
        not lat.related_matrix[i, j] for i in ids for j in ids if i != j
    )
    if not achronal:
        out["achronal"] = False
        return out
    out["achronal"] = True
    out["dod"] = domain_of_dependence(lat, region)
    return out


def domain_of_dependence(lat: CausalLattice, region) -> frozenset:
    """Sites all of whose maximal causal chains meet the (achronal) region.

    A site escapes downward if some saturated chain reaches slice 0 avoiding
    the region, and upward likewise; membership in the domain is failure of
    either escape.
    """
    region = set(region)
    ids = [lat.site_index[s] for s in region]
    for i in ids:
        for j in ids:
            if i != j and lat.related_matrix[i, j]:
                raise NotAchronal("region is not achronal")
    H, W = lat.height, lat.width

    def neighbors(t, x, dt):
        for dx in (-1, 0, 1):
            nx = x + dx
            if lat.topology == "cylinder":
                nx %= W
            elif not (0 <= nx < W):
                continue
            nt = t + dt
            if 0 <= nt < H:
                yield (nt, nx)

    esc_down = {}
    for t in range(H):
        for x in range(W):
            s = (t, x)
            if s in region:
                esc_down[s] = False
            elif t == 0:
                esc_down[s] = True
            else:
                esc_down[s] = any(esc_down[n] for n in neighbors(t, x, -1))
    esc_up = {}
    for t in range(H - 1, -1, -1):
        for x in range(W):
            s = (t, x)
            if s in region:
                esc_up[s] = False
            elif t == H - 1:
                esc_up[s] = True
            else:
                esc_up[s] = any(esc_up[n] for n in neighbors(t, x, +1))
    out = set(region)
    for s in lat.sites:
        if s not in region and not (esc_down[s] and esc_up[s]):
            out.add(s)
    return frozenset(out)


# ---- diamonds ---------------------------------------------------------------

@dataclass(frozen=True)
class Diamond:
    """Domain of dependence of a proper interval in a time slice."""

    slice: int
    start: int
    length: int
    points: frozenset

    @property
    def key(self):
        return (self.slice, self.start, self.length)

    def to_json(self):
        return [self.slice, self.start, self.length]


def base_sites(lat: CausalLattice, t: int, start: int, length: int):
    if lat.topology == "cylinder":
        return [(t, (start + d) % lat.width) for d in range(length)]
    if start + length > lat.width:
        raise OutOfBounds("interval exceeds strip width")
    return [(t, start + d) for d in range(length)]


def enumerate_diamonds(lat: CausalLattice):
    """All diamonds, their inclusion poset and causal disjointness.

    Bases are proper intervals (cylinder: proper arcs; strips additionally
    drop spanning bases, whose causal complement is empty).  The order is
    point-set inclusion and two diamonds are disjoint iff no pair of their
    points is causally related.
    """
    key = "diamonds"
    if key in lat._cache:
        return lat._cache[key]
    diamonds = []
    for t in range(lat.height):
        max_len = lat.width - 1
        for length in range(1, max_len + 1):
            starts = range(lat.width) if lat.topology == "cylinder" else range(
                lat.width - length + 1
            )
            for start in starts:
                pts = domain_of_dependence(lat, base_sites(lat, t, start, length))
                diamonds.append(Diamond(t, start, length, pts))
    n = len(diamonds)
    leq = np.zeros((n, n), dtype=bool)
    perp = np.zeros((n, n), dtype=bool)
    site_ids = [
        [lat.site_index[s] for s in d.points] for d in diamonds
    ]
    related = lat.related_matrix
    for i in range(n):
        related_i = related[site_ids[i], :].any(axis=0)
        for j in range(n):
            leq[i, j] = diamonds[i].points <= diamonds[j].points
            if i != j:
                perp[i, j] = not any(related_i[k] for k in site_ids[j])
    ids = [d.key for d in diamonds]
    poset = validate_poset(ids, leq_matrix=leq)
    disj = CausalDisjointness(poset, perp).validated()
    by_key = {d.key: d for d in diamonds}
    result = (poset, disj, by_key)
    lat._cache[key] = result
    return result


# ---- embeddings -------------------------------------------------------------

@dataclass(frozen=True)
class LatticeEmbedding:
    """Injective causal-order isomorphism onto a causally convex image."""

    src: CausalLattice
    dst: CausalLattice
    site_map: dict

    def apply(self, site):
        return self.site_map[site]

    @property
    def image(self):
        return frozenset(self.site_map.values())

    def compose(self, outer: "LatticeEmbedding") -> "LatticeEmbedding":
        """outer after self: src -> self.dst=outer.src -> outer.dst."""
        if outer.src is not self.dst:
            raise ValueError("embeddings not composable")
        return LatticeEmbedding(
            self.src,
            outer.dst,
            {s: outer.site_map[v] for s, v in self.site_map.items()},
        )


def embed_lattice(src: CausalLattice, dst: CausalLattice, dt: int = 0,
                  dx: int = 0) -> LatticeEmbedding:
    """Embed by offset (dt, dx), validating the causal morphism conditions.

    The site map must be injective, preserve and reflect the causal order,
    and have a causally convex image; otherwise NotCausallyConvex (with a
    witness chain) or OutOfBounds is raised.
    """
    site_map = {}
    for (t, x) in src.sites:
        nt = t + dt
        nx = x + dx
        if dst.topology == "cylinder":
            nx %= dst.width
        if not (0 <= nt < dst.height) or not (0 <= nx < dst.width):
            raise OutOfBounds(f"site {(t, x)} maps outside the target")
        site_map[(t, x)] = (nt, nx)
    if len(set(site_map.values())) != len(site_map):
        raise OutOfBounds("site map not injective")
    emb = LatticeEmbedding(src, dst, site_map)
    validate_embedding(emb)
    return emb


def validate_embedding(emb: LatticeEmbedding):
    src, dst = emb.src, emb.dst
    for a in src.sites:
        for b in src.sites:
            if src.leq(a, b) != dst.leq(emb.apply(a), emb.apply(b)):
                raise NotCausallyConvex(
                    (emb.apply(a), emb.apply(b))
                )
    image = emb.image
    img_ids = [dst.site_index[s] for s in image]
    for i in img_ids:
        for j in img_ids:
            if not dst.leq_matrix[i, j]:
                continue
            for k in range(len(dst.sites)):
                if dst.leq_matrix[i, k] and dst.leq_matrix[k, j]:
                    if dst.sites[k] not in image:
                        raise NotCausallyConvex(
                            (dst.sites[i], dst.sites[k], dst.sites[j])
                        )
    return emb


def identity_embedding(lat: CausalLattice) -> LatticeEmbedding:
    return LatticeEmbedding(lat, lat, {s: s for s in lat.sites})


def push_diamond(emb: LatticeEmbedding, diamond: Diamond):
    """Image of a source diamond's points in the target lattice."""
    return frozenset(emb.apply(s) for s in diamond.points)


def check_diamond_stability(emb: LatticeEmbedding) -> dict:
    """Pushed source diamonds versus target diamonds inside the image.

    Exact set equality of the two point-set families, the lattice version of
    stability of diamonds under causal embeddings.
    """
    _, _, src_diamonds = enumerate_diamonds(emb.src)
    _, _, dst_diamonds = enumerate_diamonds(emb.dst)
    image = emb.image
    pushed = {push_diamond(emb, d) for d in src_diamonds.values()}
    restricted = {
        d.points for d in dst_diamonds.values() if d.points <= image
    }
    return {
        "equal": pushed == restricted,
        "pushed_not_restricted": pushed - restricted,
        "restricted_not_pushed": restricted - pushed,
    }


def check_dod_commutes(emb: LatticeEmbedding) -> bool:
    """psi(dod(B)) == dod(psi(B)) for every diamond base B."""
    src, dst = emb.src, emb.dst
    for t in range(src.height):
        for length in range(1, src.width):
            starts = (
                range(src.width)
                if src.topology == "cylinder"
                else range(src.width - length + 1)
            )
            for start in starts:
                base = base_sites(src, t, start, length)
                lhs = frozenset(emb.apply(s) for s in domain_of_dependence(src, base))
                rhs = domain_of_dependence(dst, [emb.apply(s) for s in base])
                if lhs != rhs:
                    return False
    return True


# ---- geometry lemma analogs ---------------------------------------------------

def check_geometry_lemmas(lat: CausalLattice, regions=None) -> dict:
    """Lattice analogs of the basic diamond geometry facts, with witnesses.

    (i)   perp diamond pairs admit a common superset diamond;
    (ii)  every diamond has a perp partner and, width permitting, a common
          superset with one such partner;
    (iii) a diamond strictly inside a region leaves room for a causally
          disjoint site inside that region.
    """
    poset, disj, by_key = enumerate_diamonds(lat)
    keys = list(poset.elements)
    pts = {k: by_key[k].points for k in keys}
    n = len(keys)

    report = {}
    fails_i = []
    checked = 0
    for i in range(n):
        for j in range(n):
            if i < j and disj.perp_matrix[i, j]:
                checked += 1
                union = pts[keys[i]] | pts[keys[j]]
                if not any(union <= pts[k] for k in keys):
                    fails_i.append((keys[i], keys[j]))
    report["i"] = {
        "pass": not fails_i,
        "checked_pairs": checked,
        "witnesses": fails_i[:5],
    }

    fails_partner = []
    fails_superset = []
    for i in range(n):
        partners = [j for j in range(n) if disj.perp_matrix[i, j]]
        if not partners:
            fails_partner.append(keys[i])
            continue
        if not any(
            any((pts[keys[i]] | pts[keys[j]]) <= pts[k] for k in keys)
            for j in partners
        ):
            fails_superset.append(keys[i])
    report["ii"] = {
        "pass": not fails_partner and not fails_superset,
        "no_partner": fails_partner[:5],
        "no_common_superset": fails_superset[:5],
    }

    if regions is None:
        regions = [frozenset(lat.sites)]
    fails_iii = []
    for S in regions:
        S = frozenset(S)
        s_ids = [lat.site_index[s] for s in S]
        for k in keys:
            if pts[k] < S:
                d_ids = [lat.site_index[s] for s in pts[k]]
                related = lat.related_matrix[d_ids, :].any(axis=0)
                if not any(not related[i] for i in s_ids):
                    fails_iii.append((k, "no perp site inside region"))
    report["iii"] = {"pass": not fails_iii, "witnesses": fails_iii[:5]}
    return report


# ---- causally convex region family ----------------------------------------------

def convex_regions(lat: CausalLattice):
    """All proper causally convex site sets with nonempty causal complement.

    Enumerated by hull-growth from singletons; since the causal complement is
    antitone, growth is pruned at regions whose complement empties out.
    """
    key = "convex_regions"
    if key in lat._cache:
        return lat._cache[key]
    n = len(lat.sites)
    m = lat.leq_matrix
    between = {}
    for i in range(n):
        for j in range(n):
            if m[i, j]:
                mask = 0
                for k in range(n):
                    if m[i, k] and m[k, j]:
                        mask |= 1 << k
                between[(i, j)] = mask
    related_bits = [
        _mask_from_row(lat.related_matrix[i]) for i in range(n)
    ]
    full = (1 << n) - 1

    def related_mask(mask):
        out = 0
        mm = mask
        while mm:
            low = mm & -mm
            out |= related_bits[low.bit_length() - 1]
            mm ^= low
        return out

    def hull_add(mask, new_bit):
        # betweenness closure; only pairs touching fresh points need scanning
        cur = mask | new_bit
        fresh = new_bit
        while fresh:
            added = 0
            fb = fresh
            while fb:
                low = fb & -fb
                i = low.bit_length() - 1
                fb ^= low
                mm = cur
                while mm:
                    lo2 = mm & -mm
                    j = lo2.bit_length() - 1
                    mm ^= lo2
                    if (i, j) in between:
                        added |= between[(i, j)]
                    if (j, i) in between:
                        added |= between[(j, i)]
            added &= ~cur
            cur |= added
            fresh = added
        return cur

    seen = set()
    frontier = []
    for i in range(n):
        mask = 1 << i
        seen.add(mask)
        frontier.append(mask)
    while frontier:
        nxt = []
        for mask in frontier:
            for i in range(n):
                bit = 1 << i
                if mask & bit:
                    continue
                h = hull_add(mask, bit)
                if h == full or h in seen:
                    continue
                seen.add(h)
                if related_mask(h) == full:
                    continue  # complement empty; supersets pruned too
                nxt.append(h)
        frontier = nxt
    out = [
        frozenset(lat.sites[i] for i in range(n) if mask >> i & 1)
        for mask in sorted(seen)
        if related_mask(mask) != full
    ]
    lat._cache[key] = out
    return out


def _mask_from_row(row) -> int:
    out = 0
    for j in np.flatnonzero(row):
        out |= 1 << int(j)
    return out


def hyperbolic_regions(lat: CausalLattice):
    """Causally convex connected proper regions with nonempty complement.

    Connectivity is poset-theoretic, mirroring the topological fact that an
    open set is arcwise-connected exactly when its sieve of basis elements is
    pathwise-connected: the diamonds inside the region must form a pathwise-
    connected poset.  With that reading, the diamond family is a locally
    relatively connected refinement of this one by construction.
    """
    key = "hyperbolic_regions"
    if key in lat._cache:
        return lat._cache[key]
    _, _, by_key = enumerate_diamonds(lat)
    dpoints = [d.points for d in by_key.values()]
    out = []
    for region in convex_regions(lat):
        inside = [p for p in dpoints if p <= region]
        if not inside:
            continue
        if _diamond_connected(region, inside):
            out.append(region)
    lat._cache[key] = out
    return out


def _diamond_connected(region, inside) -> bool:
    m = len(inside)
    seen = {0}
    stack = [0]
    while stack:
        u = stack.pop()
        for s in range(m):
            if inside[u] <= inside[s]:
                for v in range(m):
                    if v not in seen and inside[v] <= inside[s]:
                        seen.add(v)
                        stack.append(v)
    return len(seen) == m


def region_poset(lat: CausalLattice):
    """Poset + disjointness over the convex-region family.

    Elements are sorted site tuples; the diamond point sets are a subfamily.
    """
    key = "region_poset"
    if key in lat._cache:
        return lat._cache[key]
    regions = hyperbolic_regions(lat)
    ids = [tuple(sorted(r)) for r in regions]
    masks = [
        _mask_of(lat, r) for r in regions
    ]
    rel_bits = [
        _mask_from_row(lat.related_matrix[i]) for i in range(len(lat.sites))
    ]

    def related_mask(mask):
        out = 0
        mm = mask
        while mm:
            low = mm & -mm
            out |= rel_bits[low.bit_length() - 1]
            mm ^= low
        return out

    n = len(ids)
    leq = np.zeros((n, n), dtype=bool)
    perp = np.zeros((n, n), dtype=bool)
    rmasks = [related_mask(m) for m in masks]
    for i in range(n):
        for j in range(n):
            leq[i, j] = masks[i] & ~masks[j] == 0
            if i != j:
                perp[i, j] = rmasks[i] & masks[j] == 0
    poset = validate_poset(ids, leq_matrix=leq)
    disj = CausalDisjointness(poset, perp).validated()
    result = (poset, disj)
    lat._cache[key] = result
    return result


def _mask_of(lat: CausalLattice, region) -> int:
    out = 0
    for s in region:
        out |= 1 << lat.site_index[s]
    return out


def lattice_from_json(obj) -> CausalLattice:
    return build_lattice(obj["topology"], int(obj["width"]), int(obj["height"]))
