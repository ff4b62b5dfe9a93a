from netlab.coset_enum import coset_enumeration, simplify_presentation


def test_trivial_group():
    res = coset_enumeration(1, [[1]])
    assert res["status"] == "complete" and res["index"] == 1


def test_cyclic_3():
    res = coset_enumeration(1, [[1, 1, 1]])
    assert res["status"] == "complete" and res["index"] == 3


def test_cyclic_6_two_gens():
    # <a, b | a^2, b^3, a b a^-1 b^-1> = Z/6
    res = coset_enumeration(2, [[1, 1], [2, 2, 2], [1, 2, -1, -2]])
    assert res["status"] == "complete" and res["index"] == 6


def test_s3():
    # <a, b | a^2, b^2, (ab)^3>
    res = coset_enumeration(2, [[1, 1], [2, 2], [1, 2, 1, 2, 1, 2]])
    assert res["status"] == "complete" and res["index"] == 6


def test_quaternion_8():
    # <i, j | i^4, i^2 j^-2, j i j^-1 i>
    res = coset_enumeration(
        2, [[1, 1, 1, 1], [1, 1, -2, -2], [2, 1, -2, 1]]
    )
    assert res["status"] == "complete" and res["index"] == 8


def test_free_group_overflows():
    res = coset_enumeration(1, [], max_cosets=50)
    assert res["status"] == "overflow"


def test_redundant_generators_simplify():
    # b = a, a^3 = 1: 3 elements
    n, rels = simplify_presentation(2, [[1, -2], [1, 1, 1]])
    assert n == 1
    res = coset_enumeration(2, [[1, -2], [1, 1, 1]])
    assert res["status"] == "complete" and res["index"] == 3


def test_many_generators_all_killed():
    # a chain of identifications collapsing to the trivial group
    rels = [[i, -(i + 1)] for i in range(1, 10)] + [[10]]
    res = coset_enumeration(10, rels)
    assert res["status"] == "complete" and res["index"] == 1


def test_z2_x_z2():
    res = coset_enumeration(2, [[1, 1], [2, 2], [1, 2, -1, -2]])
    assert res["status"] == "complete" and res["index"] == 4
