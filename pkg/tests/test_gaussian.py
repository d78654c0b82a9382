from math import isqrt

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from chatelet_manin.errors import NotSplitError
from chatelet_manin.gaussian import (GaussInt, QI, canonical_element, canonical_split, chi,
                                     factorize, ideal_from_primes, ideal_intersection_norm,
                                     ideals_of_norm, in_D, omega_table, r_count, r_table,
                                     representations, squarefree_ideals_up_to)


def brute_r(n):
    R = isqrt(n)
    return sum(1 for x in range(-R, R + 1) for y in range(-R, R + 1) if x * x + y * y == n)


def test_chi():
    assert (chi(5), chi(3), chi(-6)) == (1, -1, 0)


@pytest.mark.parametrize("n,r", [(1, 4), (5, 8), (180, 8), (6, 0), (25, 12), (9, 4)])
def test_r_examples(n, r):
    assert r_count(n) == r == brute_r(n)


def test_r_table_matches_scan():
    t = r_table(600)
    assert all(int(t[n]) == brute_r(n) for n in range(1, 601))


@given(st.integers(1, 10 ** 12))
@settings(max_examples=200, deadline=None)
def test_factorize_roundtrip(n):
    f = factorize(n)
    out = 1
    for p, e in f.items():
        assert factorize(p) == {p: 1}
        out *= p ** e
    assert out == n


def test_representations():
    assert representations(2) == [(-1, -1), (-1, 1), (1, -1), (1, 1)]
    reps = representations(25)
    assert len(reps) == 12 and (3, 4) in reps and (0, -5) in reps
    assert representations(3) == []


def test_canonical_split():
    assert canonical_split(5).pi == GaussInt(2, 1)
    assert canonical_split(13).pi == GaussInt(3, 2)
    with pytest.raises(NotSplitError):
        canonical_split(7)
    for p in (5, 13, 17, 29, 37, 41, 101):
        assert canonical_split(p).pi.norm() == p


@pytest.mark.parametrize("n", [1, 2, 5, 10, 25, 50, 65, 180, 1105])
def test_canonical_element_norm(n):
    z = canonical_element(n)
    assert z is not None and z.norm() == n


def test_canonical_element_none_for_non_norms():
    assert canonical_element(3) is None and canonical_element(21) is None


def test_squarefree_ideals():
    assert [I.norm for I in squarefree_ideals_up_to(4)] == [1]
    five = squarefree_ideals_up_to(5)
    assert [(I.norm, I.mu) for I in five] == [(1, 1), (5, -1), (5, -1)]
    norms = [I.norm for I in squarefree_ideals_up_to(25)]
    assert norms.count(25) == 1   # (2+i)(2-i); (2+i)^2 is not squarefree
    I25 = [I for I in squarefree_ideals_up_to(25) if I.norm == 25][0]
    assert I25.mu == 1 and I25.gen.norm() == 25


def test_intersection_norm():
    one = ideal_from_primes(())
    a = ideal_from_primes(((5, 1),))
    b = ideal_from_primes(((5, -1),))
    assert ideal_intersection_norm(one, one, one, one) == 1
    assert ideal_intersection_norm(a, a, one, one) == 5
    assert ideal_intersection_norm(a, b, one, one) == 25


def test_ideals_of_norm():
    assert len(ideals_of_norm(65)) == 4
    assert ideals_of_norm(125) == []


def test_qi_division():
    z = QI.of(GaussInt(12, 6)) / QI.of(GaussInt(6, 12))
    assert z.norm() == 1 and not z.is_integral()


def test_in_D_and_omega():
    assert in_D(65) and not in_D(15) and in_D(1)
    w = omega_table(30)
    assert w[30] == 3 and w[1] == 0 and w[29] == 1
    assert np.array_equal(r_table(10)[1:], [r_count(k) for k in range(1, 11)])
