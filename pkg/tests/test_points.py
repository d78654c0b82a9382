from fractions import Fraction
from math import gcd, prod

import pytest

from chatelet_manin.errors import DegeneratePoint, InvalidPoint
from chatelet_manin.points import (RationalPoint, assign_class, brauer_color, count_histogram,
                                   count_points, degenerate_points, enumerate_points,
                                   figure_color, height_via_psi, hilbert_minus_one,
                                   lift_to_torsor, normalize_lift, real_component,
                                   torsor_equations_hold)
from chatelet_manin.surface import build_sigma, validate

SPECS = [(1, 1, 1, -1), (1, 2, 1, 3), (2, 1, 1, 1), (1, 5, 1, 1)]


def test_normalize_examples(showcase):
    P = normalize_lift(showcase, 12, 6, 1, 5, 4)
    assert P == RationalPoint(12, 6, 1, 5, 4, 25)
    # scaling (u, v) by 2 multiplies prod L by 16
    assert normalize_lift(showcase, 48, 24, 1, 10, 8) == P
    assert normalize_lift(showcase, -24, -12, -2, 5, 4) == P
    with pytest.raises(InvalidPoint):
        normalize_lift(showcase, 1, 1, 1, 5, 4)
    with pytest.raises(InvalidPoint):
        normalize_lift(showcase, 0, 0, 0, 1, 1)


def test_height_via_psi(showcase):
    P = normalize_lift(showcase, 12, 6, 1, 5, 4)
    assert height_via_psi(showcase, P) == P.height == 25
    for r in enumerate_points(showcase, 400):
        if not r.degenerate:
            assert height_via_psi(showcase, r.point) == r.point.height


def test_small_bounds(showcase):
    assert count_points(showcase, 1) == (0, 4)
    assert count_points(showcase, 24) == (0, 4)
    assert count_points(showcase, 25) == (16, 4)
    assert len(degenerate_points(showcase)) == 4
    assert all(P.height == 1 for P in degenerate_points(showcase))


@pytest.mark.parametrize("c", SPECS)
def test_fast_count_matches_enumeration(c):
    s = validate(*c)
    recs = enumerate_points(s, 1500)
    for B in (25, 100, 401, 1000, 1500):
        n = sum(1 for r in recs if not r.degenerate and r.point.height <= B)
        d = sum(1 for r in recs if r.degenerate and r.point.height <= B)
        assert count_points(s, B) == (n, d)
    H = count_histogram(s, 1500)
    assert H.sum() == count_points(s, 1500)[0]
    for r in recs[:50]:
        if not r.degenerate:
            assert H[r.point.height] > 0


def test_enumeration_sorted_and_primitive(showcase):
    recs = enumerate_points(showcase, 800)
    keys = [r.sort_key() for r in recs]
    assert keys == sorted(keys)
    for r in recs:
        P = r.point
        assert gcd(P.u, P.v) == 1 and gcd(gcd(P.x, P.y), P.t) == 1
        assert P.x ** 2 + P.y ** 2 == P.t ** 2 * prod(showcase.L(P.u, P.v))


def test_assign_class_examples(showcase):
    sigma = build_sigma(showcase)
    P = normalize_lift(showcase, 12, 6, 1, 5, 4)
    assert assign_class(showcase, P, sigma).m == (1, 1, 1, 1)
    Q = RationalPoint(-12, -6, 1, 4, -5, 25)
    assert assign_class(showcase, Q, sigma).m == (1, -1, -1, 1)
    for r in enumerate_points(showcase, 1000):
        assert r.torsor_class in sigma


def test_lift_example(showcase):
    sigma = build_sigma(showcase)
    P = normalize_lift(showcase, 12, 6, 1, 5, 4)
    m = assign_class(showcase, P, sigma)
    lift = lift_to_torsor(showcase, P, m)
    assert [z.norm() for z in lift.z] == [5, 4, 9, 1]
    assert lift.z0p.norm() == 1
    assert torsor_equations_hold(showcase, m, lift)


@pytest.mark.parametrize("c", SPECS[:3])
def test_lift_identity_all_points(c):
    s = validate(*c)
    sigma = build_sigma(s)
    for r in enumerate_points(s, 600):
        if r.degenerate:
            with pytest.raises(DegeneratePoint):
                lift_to_torsor(s, r.point, r.torsor_class)
            continue
        lift = lift_to_torsor(s, r.point, r.torsor_class)
        L = s.L(r.point.u, r.point.v)
        assert [z.norm() for z in lift.z] == [Fraction(Lj, mj) for Lj, mj in
                                              zip(L, r.torsor_class.m)]


def test_hilbert_examples():
    assert hilbert_minus_one(-1, "inf") == -1
    assert hilbert_minus_one(3, 3) == -1
    assert hilbert_minus_one(-6, 2) == 1
    assert hilbert_minus_one(5, 5) == 1
    assert hilbert_minus_one(Fraction(7, 3), 7) == -1
    assert hilbert_minus_one(3, 2) == -1


def test_product_formula(showcase):
    for r in enumerate_points(showcase, 600):
        if r.degenerate:
            continue
        for pair in ((1, 2), (3, 4), (1, 3)):
            inv, _ = brauer_color(showcase, r.point, pair)
            assert sum(inv.values()) % 1 == 0


def test_colors(showcase):
    P = normalize_lift(showcase, 12, 6, 1, 5, 4)
    Q = RationalPoint(-12, -6, 1, 4, -5, 25)
    assert figure_color(P) == "black"
    assert figure_color(Q) == "white"
    assert real_component(showcase, 5, 4) != real_component(showcase, 4, -5)
    with pytest.raises(DegeneratePoint):
        brauer_color(showcase, degenerate_points(showcase)[0], (1, 2))
