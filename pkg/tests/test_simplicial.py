import itertools

import pytest
from hypothesis import given, settings, strategies as st

from netlab import fixtures
from netlab.errors import EndpointMismatch
from netlab.poset import validate_poset
from netlab.simplicial import (
    Path,
    Simplex1,
    Simplex2,
    are_homotopic,
    compose_paths,
    deformation_neighbors,
    degenerate,
    enumerate_simplices,
    iter_face_triples,
    reverse_path,
    validate_simplex2,
)


def brute_force_simplex1(poset):
    """Oracle: all (d1, d0, s) triples with both endpoints below s."""
    out = set()
    for s in poset.elements:
        for d1 in poset.elements:
            for d0 in poset.elements:
                if poset.leq(d1, s) and poset.leq(d0, s):
                    out.add((d1, d0, s))
    return out


def test_sigma0_is_elements():
    p = fixtures.chain3()
    assert set(enumerate_simplices(p, 0)) == {"a", "b", "c"}


def test_sigma1_v2_exhaustive():
    p = fixtures.v2()
    got = {(e.d1, e.d0, e.support) for e in enumerate_simplices(p, 1)}
    assert got == brute_force_simplex1(p)
    assert ("a1", "a2", "O") in got
    for x in p.elements:
        assert (x, x, x) in got  # degenerate edges present


def test_sigma2_chain_relations_hold():
    p = fixtures.chain3()
    for c in enumerate_simplices(p, 2):
        assert validate_simplex2(p, c)


def test_sigma2_rejects_face_permutations():
    p = fixtures.chain3()
    cs = [c for c in enumerate_simplices(p, 2) if len({c.f0, c.f1, c.f2}) == 3]
    hit = False
    for c in cs:
        for perm in itertools.permutations((c.f0, c.f1, c.f2)):
            if perm == (c.f0, c.f1, c.f2):
                continue
            cand = Simplex2(*perm, support=c.support)
            if not validate_simplex2(p, cand):
                hit = True
    assert hit


def test_sigma2_cycle4_supports_single_downset():
    p, _ = fixtures.cycle(4)
    for c in enumerate_simplices(p, 2):
        # no element dominates two tops, so every 2-simplex lives below one O
        assert str(c.support).startswith("O") or c.support.startswith("a")
        verts = {c.f0.d0, c.f0.d1, c.f1.d0, c.f1.d1, c.f2.d0, c.f2.d1}
        for v in verts:
            assert p.leq(v, c.support)


def test_reverse_involution_and_fields():
    p, _ = fixtures.cycle(4)
    e = Simplex1("a1", "a2", "O1")
    path = Path([e])
    rev = reverse_path(path)
    assert rev.edges[0] == Simplex1("a2", "a1", "O1")
    assert reverse_path(rev) == path
    d = Path([degenerate("a1")])
    assert reverse_path(d) == d


def test_compose_associative_and_endpoint_check():
    p1 = Path([Simplex1("a1", "a2", "O1")])
    p2 = Path([Simplex1("a2", "a3", "O2")])
    p3 = Path([Simplex1("a3", "a4", "O3")])
    assert compose_paths(p3, compose_paths(p2, p1)) == compose_paths(
        compose_paths(p3, p2), p1
    )
    with pytest.raises(EndpointMismatch):
        compose_paths(p1, p3)


def test_degenerate_precomposition_endpoints():
    p = Path([Simplex1("a1", "a2", "O1")])
    q = compose_paths(p, Path([degenerate("a1")]))
    assert q.start == p.start and q.end == p.end


def test_cycle4_bottom_loop():
    edges = [
        Simplex1("a1", "a2", "O1"),
        Simplex1("a2", "a3", "O2"),
        Simplex1("a3", "a4", "O3"),
        Simplex1("a4", "a1", "O4"),
    ]
    loop = Path(edges)
    assert loop.start == loop.end == "a1"


def test_chain3_edge_deforms_to_pair():
    p = fixtures.chain3()
    direct = Path([Simplex1("a", "c", "c")])
    nbrs = deformation_neighbors(direct, p)
    two_step = Path([Simplex1("a", "b", "c"), Simplex1("b", "c", "c")])
    assert two_step in nbrs


def test_deformation_symmetry_random():
    p, _ = fixtures.cycle(4)
    import random

    rng = random.Random(0)
    edges = enumerate_simplices(p, 1)
    paths = []
    for _ in range(30):
        e = rng.choice(edges)
        path = [e]
        for _ in range(rng.randint(0, 2)):
            nxt = [f for f in edges if f.d1 == path[-1].d0]
            path.append(rng.choice(nxt))
        paths.append(Path(path))
    for q in paths:
        for nb in deformation_neighbors(q, p):
            assert q in deformation_neighbors(nb, p)


def test_degenerate_expansion_includes_double_degenerate():
    p = validate_poset(["a"], [])
    path = Path([degenerate("a")])
    nbrs = deformation_neighbors(path, p)
    assert Path([degenerate("a"), degenerate("a")]) in nbrs


def test_homotopy_degenerate_compositions():
    p, _ = fixtures.cycle(4)
    a12 = Path([Simplex1("a1", "a2", "O1")])
    with_tail = compose_paths(a12, Path([degenerate("a1")]))
    assert are_homotopic(a12, with_tail, p) == "yes"
    back_forth = compose_paths(reverse_path(a12), a12)
    assert are_homotopic(back_forth, Path([degenerate("a1")]), p) == "yes"


def test_homotopy_generator_vs_degenerate_is_no():
    p, _ = fixtures.cycle(4)
    loop = Path(
        [
            Simplex1("a1", "a2", "O1"),
            Simplex1("a2", "a3", "O2"),
            Simplex1("a3", "a4", "O3"),
            Simplex1("a4", "a1", "O4"),
        ]
    )
    assert are_homotopic(loop, Path([degenerate("a1")]), p, budget=2000) == "no"


def test_homotopy_endpoint_mismatch():
    p, _ = fixtures.cycle(4)
    with pytest.raises(EndpointMismatch):
        are_homotopic(
            Path([Simplex1("a1", "a2", "O1")]),
            Path([Simplex1("a2", "a3", "O2")]),
            p,
        )


def test_face_triples_support_existence():
    p, _ = fixtures.cycle(4)
    for f0, f1, f2 in iter_face_triples(p):
        ups = (
            p.up_bits(p.index[f0.support])
            & p.up_bits(p.index[f1.support])
            & p.up_bits(p.index[f2.support])
        )
        assert ups != 0


def test_path_json_roundtrip():
    path = Path([Simplex1("a1", "a2", "O1"), Simplex1("a2", "a3", "O2")])
    assert Path.from_json(path.to_json()) == path
