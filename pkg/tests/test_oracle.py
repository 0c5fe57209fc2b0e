import random

import pytest

from cyclocolour.core import build_field, conjugate, parse_element
from cyclocolour.ideals import norm
from cyclocolour.oracle import (
    brute_force_H,
    brute_force_K,
    build_coset_table,
    count_ideals_bruteforce,
    hermite_normal_form,
    homomorphism_spot_check,
    smith_normal_form,
    verify_colour_action,
)
from cyclocolour.symmetry import HKind, PointOp, point_group_K


def _matmul(a, b):
    return [[sum(x * y for x, y in zip(row, col)) for col in zip(*b)] for row in a]


def _det(m):
    from sympy import Matrix

    return int(Matrix(m).det())


def _random_matrix(rng, k):
    while True:
        m = [[rng.randint(-9, 9) for _ in range(k)] for _ in range(k)]
        if _det(m):
            return m


def test_smith_normal_form_properties():
    rng = random.Random(7)
    for _ in range(200):
        k = rng.randint(1, 5)
        M = _random_matrix(rng, k)
        diag, U, V = smith_normal_form(M)
        D = _matmul(_matmul(U, M), V)
        assert D == [[diag[i] if i == j else 0 for j in range(k)] for i in range(k)]
        assert all(d > 0 for d in diag)
        assert all(diag[i + 1] % diag[i] == 0 for i in range(k - 1))
        prod = 1
        for d in diag:
            prod *= d
        assert prod == abs(_det(M))


def test_smith_normal_form_known():
    assert smith_normal_form([[2, 4, 4], [-6, 6, 12], [10, -4, -16]])[0] == [2, 6, 12]
    with pytest.raises(ValueError, match="singular"):
        smith_normal_form([[1, 2], [2, 4]])


def test_hermite_normal_form_properties():
    rng = random.Random(11)
    for _ in range(200):
        k = rng.randint(1, 4)
        M = _random_matrix(rng, k)
        diag, _, _ = smith_normal_form(M)
        H = hermite_normal_form(M)
        index = 1
        for d in diag:
            index *= d
        prod = 1
        for i in range(k):
            assert all(H[i][j] == 0 for j in range(i + 1, k))
            assert all(0 <= H[i][j] < H[i][i] for j in range(i))
            prod *= H[i][i]
        assert prod == index


@pytest.mark.parametrize("n,text,index", [(4, "1+x", 2), (3, "2", 4), (20, "1+x-x^3", 5), (7, "1-x", 7)])
def test_index_equals_norm(n, text, index):
    fld = build_field(n)
    q = parse_element(fld, text)
    table = build_coset_table(fld, q)
    assert table.index == index == norm(q)
    assert sorted(table.labels(table.representatives).tolist()) == list(range(index))
    assert sorted(table.labels(table.shifted_representatives).tolist()) == list(range(index))


def test_oracle_symmetry_examples():
    f4 = build_field(4)
    t = build_coset_table(f4, parse_element(f4, "1+x"))
    assert brute_force_H(t) is HKind.G
    assert brute_force_K(t).label == "D4"
    f8 = build_field(8)
    t = build_coset_table(f8, parse_element(f8, "1-x"))
    assert brute_force_K(t).label == "D8"
    f4_q = parse_element(f4, "2+x")
    t = build_coset_table(f4, f4_q)
    assert brute_force_H(t) is HKind.GPRIME
    assert brute_force_K(t) == point_group_K(f4, f4_q)


def test_identity_and_conjugation_actions():
    f20 = build_field(20)
    q = parse_element(f20, "1+x-x^3")
    t = build_coset_table(f20, q)
    assert verify_colour_action(t, PointOp(0, False)) == {i: i for i in range(5)}
    # (q) and (conj q) differ, so conjugation does not permute the cosets
    assert verify_colour_action(t, PointOp(0, True)) is None
    t_bar = build_coset_table(f20, conjugate(q))
    assert brute_force_H(t_bar) is HKind.GPRIME


def test_homomorphism_spot_check():
    f8 = build_field(8)
    t = build_coset_table(f8, parse_element(f8, "3+x-x^3"))
    ops = [PointOp(j, r) for j in range(0, 8, 3) for r in (False, True)]
    assert homomorphism_spot_check(t, ops)
    f20 = build_field(20)
    t = build_coset_table(f20, parse_element(f20, "1+x-x^3"))
    assert homomorphism_spot_check(t, [PointOp(j, False) for j in range(0, 20, 7)])
    with pytest.raises(ValueError):
        homomorphism_spot_check(t, [PointOp(0, True)])


def test_seed_changes_only_the_second_rep_set():
    f7 = build_field(7)
    q = parse_element(f7, "1+x+x^3")
    a, b = build_coset_table(f7, q, seed=1), build_coset_table(f7, q, seed=2)
    assert (a.representatives == b.representatives).all()
    assert a.labels(a.shifted_representatives).tolist() == a.labels(a.representatives).tolist()


def test_count_ideals_bruteforce_examples():
    assert count_ideals_bruteforce(build_field(4), 25) == 3
    assert count_ideals_bruteforce(build_field(3), 49) == 3
    assert count_ideals_bruteforce(build_field(3), 2) == 0
    with pytest.raises(ValueError):
        count_ideals_bruteforce(build_field(5), 5)


def test_unit_generator_has_one_coset():
    f33 = build_field(33)
    t = build_coset_table(f33, parse_element(f33, "x^6"))
    assert t.index == 1
    assert brute_force_H(t) is HKind.G
    assert brute_force_K(t).group_order == 2 * f33.N
