import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from netlab import fixtures
from netlab.errors import (
    AntisymmetryViolation,
    PosetError,
    UnknownElement,
)
from netlab.poset import (
    CausalDisjointness,
    Sieve,
    causal_complement,
    check_poset_axioms,
    check_refinement,
    is_directed,
    poset_from_json,
    poset_to_json,
    transitive_closure,
    validate_poset,
)


def brute_force_axiom_check(elements, m):
    """Independent triple-loop oracle for the order axioms."""
    n = len(elements)
    for i in range(n):
        if not m[i][i]:
            return False
    for i in range(n):
        for j in range(n):
            if i != j and m[i][j] and m[j][i]:
                return False
    for i in range(n):
        for j in range(n):
            for k in range(n):
                if m[i][j] and m[j][k] and not m[i][k]:
                    return False
    return True


def test_chain3_is_valid():
    p = fixtures.chain3()
    assert p.leq("a", "c")
    assert not p.leq("c", "a")


def test_antisymmetry_violation_reported():
    with pytest.raises(AntisymmetryViolation) as e:
        validate_poset(["a", "b"], [("a", "b"), ("b", "a")])
    assert set(e.value.pair) == {"a", "b"}


def test_duplicate_pairs_rejected():
    with pytest.raises(PosetError):
        validate_poset(["a", "b"], [("a", "b"), ("a", "b")])


def test_duplicate_ids_rejected():
    with pytest.raises(PosetError):
        validate_poset(["a", "a"], [])


def test_cycle4_valid_and_not_directed():
    p, _ = fixtures.cycle(4)
    assert len(p) == 8
    assert not is_directed(p)
    assert is_directed(fixtures.chain3())
    assert is_directed(fixtures.v2())


@settings(max_examples=200, deadline=None)
@given(st.data())
def test_validate_agrees_with_triple_loop_oracle(data):
    n = data.draw(st.integers(min_value=1, max_value=8))
    bits = data.draw(st.lists(st.booleans(), min_size=n * n, max_size=n * n))
    m = np.array(bits, dtype=bool).reshape(n, n)
    np.fill_diagonal(m, data.draw(st.booleans()))
    elements = [f"e{i}" for i in range(n)]
    ok_oracle = brute_force_axiom_check(elements, m.tolist())
    violations = check_poset_axioms(elements, m)
    assert (not violations) == ok_oracle


def test_cycle_perp_axioms():
    for n in (3, 4, 5, 6):
        _, disj = fixtures.cycle(n)
        assert disj.validate() == []


def test_cycle4_complement_of_a1():
    p, disj = fixtures.cycle(4)
    comp = causal_complement(p, disj, ["a1"])
    # disjoint bottom down-sets: everything not containing a1
    assert "a3" in comp and "a2" in comp and "O2" in comp
    assert "a1" not in comp and "O1" not in comp and "O4" not in comp


def test_complement_of_empty_is_everything():
    p, disj = fixtures.cycle(4)
    comp = causal_complement(p, disj, [])
    assert len(comp) == len(p)


def test_complement_is_downward_closed_and_galois():
    p, disj = fixtures.cycle(5)
    for seed in ("a1", "O2", "a4"):
        c1 = causal_complement(p, disj, [seed])
        # Sieve construction already asserts downward closure
        c2 = causal_complement(p, disj, c1.members)
        c3 = causal_complement(p, disj, c2.members)
        assert c3.members == c1.members


def test_perp_row_monotone():
    p, disj = fixtures.cycle(6)
    n = len(p)
    for i in range(n):
        for j in range(n):
            if p.leq_matrix[i, j]:
                # perp row of the larger is within the row of the smaller
                assert not np.any(disj.perp_matrix[j] & ~disj.perp_matrix[i])


def test_sieve_rejects_non_downward_closed():
    p, _ = fixtures.cycle(4)
    with pytest.raises(PosetError):
        Sieve(p, frozenset(["O1"]))


def test_refinement_identity():
    p = fixtures.chain3()
    rep = check_refinement(p, list(p.elements))
    assert rep["is_refinement"] and rep["is_locally_relatively_connected"]


def test_refinement_chain3_bottom():
    p = fixtures.chain3()
    rep = check_refinement(p, ["a"])
    assert rep["is_refinement"] and rep["is_locally_relatively_connected"]


def test_refinement_failure_witness():
    p, _ = fixtures.cycle(4)
    rep = check_refinement(p, ["a1"])  # nothing below a2's component branch
    assert not rep["is_refinement"]
    assert rep["witnesses"]["uncovered_element"] is not None


def test_json_roundtrip_and_closure():
    obj = {
        "elements": ["a", "b", "c"],
        "leq": [["a", "b"], ["b", "c"]],
        "perp": [],
    }
    with pytest.raises(PosetError):
        # perp axiom (existence of partners) fails on an empty relation
        poset_from_json(obj)
    obj.pop("perp")
    p, disj = poset_from_json(obj)
    assert disj is None
    assert p.leq("a", "c")  # closure applied
    back = poset_to_json(p)
    p2, _ = poset_from_json(back)
    assert p2.elements == p.elements
    assert np.array_equal(p2.leq_matrix, p.leq_matrix)


def test_json_closure_detects_antisymmetry():
    obj = {"elements": ["a", "b"], "leq": [["a", "b"], ["b", "a"]]}
    with pytest.raises(AntisymmetryViolation):
        poset_from_json(obj)


def test_unknown_element_in_complement():
    p, disj = fixtures.cycle(4)
    with pytest.raises(UnknownElement):
        causal_complement(p, disj, ["zz"])


def test_transitive_closure_small():
    m = np.zeros((3, 3), dtype=bool)
    m[0, 1] = m[1, 2] = True
    c = transitive_closure(m)
    assert c[0, 2] and c[0, 0]
