import numpy as np
from hypothesis import given, settings, strategies as st

from netlab.snf import (
    abelian_invariants_of_rows,
    smith_normal_form,
    sparse_unit_eliminate,
)


def test_snf_identity():
    diag, P, Q = smith_normal_form([[1, 0], [0, 1]], track_transforms=True)
    assert diag == [1, 1]


def test_snf_known_case():
    # classic: [[2, 4, 4], [-6, 6, 12], [10, -4, -16]] -> diag(2, 6, 12)
    diag = smith_normal_form([[2, 4, 4], [-6, 6, 12], [10, -4, -16]])
    assert diag == [2, 6, 12]


def test_snf_torsion_3():
    assert smith_normal_form([[3]]) == [3]


def test_snf_divisibility_chain():
    diag = smith_normal_form([[2, 0], [0, 3]])
    assert diag == [1, 6]


@settings(max_examples=150, deadline=None)
@given(
    st.integers(min_value=1, max_value=4),
    st.integers(min_value=1, max_value=4),
    st.data(),
)
def test_snf_transform_postconditions(m, n, data):
    rows = [
        [data.draw(st.integers(min_value=-9, max_value=9)) for _ in range(n)]
        for _ in range(m)
    ]
    diag, P, Q = smith_normal_form(rows, track_transforms=True)
    A = np.array(rows, dtype=object)
    Pm = np.array(P, dtype=object)
    Qm = np.array(Q, dtype=object)
    D = Pm @ A @ Qm
    # D diagonal with the computed entries, in divisibility order
    for i in range(m):
        for j in range(n):
            expect = diag[i] if i == j and i < len(diag) else 0
            assert D[i, j] == expect
    for a, b in zip(diag, diag[1:]):
        assert b % a == 0
    # unimodular transforms: integer inverses exist (det = +-1)
    assert round(abs(np.linalg.det(Pm.astype(float)))) == 1
    assert round(abs(np.linalg.det(Qm.astype(float)))) == 1


def test_sparse_unit_eliminate_simple():
    rows = [{0: 1, 1: 1}, {1: 1, 2: 1}]
    rank, leftover, remaining = sparse_unit_eliminate(rows, 3)
    assert rank == 2 and not leftover
    assert remaining == [2]


def test_abelian_invariants_of_rows():
    # <g | g^3>: one generator, row (3)
    assert abelian_invariants_of_rows([{0: 3}], 1) == (0, [3])
    # free of rank 1
    assert abelian_invariants_of_rows([], 1) == (1, [])
    # trivial
    assert abelian_invariants_of_rows([{0: 1}], 1) == (0, [])
    # Z x Z/2: two generators, row 2*g2
    assert abelian_invariants_of_rows([{1: 2}], 2) == (1, [2])


@settings(max_examples=80, deadline=None)
@given(st.data())
def test_sparse_vs_dense_invariants(data):
    n = data.draw(st.integers(min_value=1, max_value=5))
    m = data.draw(st.integers(min_value=0, max_value=6))
    rows = []
    for _ in range(m):
        row = {}
        for c in range(n):
            v = data.draw(st.integers(min_value=-3, max_value=3))
            if v:
                row[c] = v
        if row:
            rows.append(row)
    free, torsion = abelian_invariants_of_rows(rows, n)
    dense = [[r.get(c, 0) for c in range(n)] for r in rows]
    diag = smith_normal_form(dense) if dense else []
    assert free == n - len(diag)
    assert torsion == [d for d in diag if d > 1]
