from math import gcd

import pytest

from cyclocolour.core import CLASS_NUMBER_ONE, build_field
from cyclocolour.oracle import count_ideals_bruteforce
from cyclocolour.series import (
    dirichlet_coefficients,
    load_table_h,
    perfect_index_test_via_series,
    table_row,
    verify_table_h,
)
from cyclocolour.symmetry import is_perfect_index


def test_full_mode_examples():
    a = dirichlet_coefficients(build_field(4), 100, "full")
    assert (a[2], a[25], a[50], a[100]) == (1, 3, 3, 3)
    assert a[3] == 0


def test_perfect_mode_row_n3():
    a = dirichlet_coefficients(build_field(3), 110, "perfect")
    assert a.terms() == [
        (1, 1), (3, 1), (4, 1), (9, 1), (12, 1), (16, 1), (25, 1), (27, 1), (36, 1),
        (48, 1), (49, 3), (64, 1), (75, 1), (81, 1), (100, 1), (108, 1),
    ]


def test_limit_one_and_errors():
    for n in (3, 84):
        assert dirichlet_coefficients(build_field(n), 1).coeffs == {1: 1}
    with pytest.raises(ValueError):
        dirichlet_coefficients(build_field(3), 0)
    with pytest.raises(ValueError):
        dirichlet_coefficients(build_field(3), 10, "half")
    with pytest.raises(ValueError):
        dirichlet_coefficients(build_field(23), 10)
    with pytest.raises(ValueError):
        dirichlet_coefficients(build_field(3), 10)[11]


def test_perfect_index_via_series_examples():
    s = dirichlet_coefficients(build_field(24), 1000, "perfect")
    assert perfect_index_test_via_series(s, 4)
    assert not perfect_index_test_via_series(s, 2)
    assert perfect_index_test_via_series(s, 1)
    with pytest.raises(ValueError):
        perfect_index_test_via_series(s, 1001)
    with pytest.raises(ValueError):
        perfect_index_test_via_series(dirichlet_coefficients(build_field(24), 10), 4)


def test_table_row_examples():
    assert table_row(build_field(7), 5) == [(1, 1), (7, 1), (49, 1), (64, 3), (343, 1)]
    assert table_row(build_field(32), 8) == [(2**k, 1) for k in range(8)]
    assert table_row(build_field(84), 4) == [(1, 1), (2401, 3), (4096, 3), (531441, 3)]


@pytest.mark.parametrize("n", [3, 4, 8, 15, 84])
def test_full_mode_multiplicative(n):
    a = dirichlet_coefficients(build_field(n), 10**4, "full")
    for x in range(1, 101):
        for y in range(1, 10**4 // x + 1):
            if gcd(x, y) == 1:
                assert a[x * y] == a[x] * a[y]


def test_perfect_support_inside_full_support():
    for n in CLASS_NUMBER_ONE:
        fld = build_field(n)
        full = dirichlet_coefficients(fld, 10**5, "full")
        perfect = dirichlet_coefficients(fld, 10**5, "perfect")
        for ell, c in perfect.terms():
            assert full[ell] == c


@pytest.mark.parametrize("n", [3, 4])
def test_full_mode_matches_sublattice_enumeration(n):
    fld = build_field(n)
    a = dirichlet_coefficients(fld, 300, "full")
    for ell in range(1, 301):
        assert a[ell] == count_ideals_bruteforce(fld, ell)


def test_perfect_support_matches_closed_form_small():
    for n in (3, 8, 24, 28):
        fld = build_field(n)
        s = dirichlet_coefficients(fld, 5000, "perfect")
        for ell in range(1, 5001):
            assert (is_perfect_index(fld, ell) is not None) == (ell in s.coeffs)


def test_table_h_fixture_shape():
    data = load_table_h()
    assert sorted(map(int, data["rows"])) == sorted(CLASS_NUMBER_ONE)
    assert data["rows"]["15"][11] == [50626, 1]
    assert [513441, 35] in data["rows"]["13"]


def test_verify_table_h_reports_suspects_with_computed_values():
    rows = verify_table_h(build_field(15))
    bad = {r["ell"]: r for r in rows if r["kind"] == "term" and r["status"] == "diff"}
    assert bad[50626]["computed"] == 0
    omitted = {r["ell"]: r["computed"] for r in rows if r["kind"] == "omitted"}
    assert omitted[50625] == 1
    rows = verify_table_h(build_field(3))
    assert all(r["status"] == "match" for r in rows)
