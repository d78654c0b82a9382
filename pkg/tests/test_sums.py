from fractions import Fraction

import numpy as np
import pytest

from chatelet_manin.errors import DomainError, ParityError
from chatelet_manin.points import count_histogram, count_points
from chatelet_manin.surface import TorsorClass, build_sigma, validate
from chatelet_manin.sums import (C_m_constant, build_dD, m_of, moebius_count,
                                 moebius_count_literal, moebius_counts, r_over_t_partial,
                                 s0_closed, s0_truncated, slope_fit, u_sum, u_sum_naive,
                                 u_sum_reduced)

SPECS = [(1, 1, 1, -1), (1, 2, 1, 3), (2, 1, 1, 1), (1, 5, 1, 1)]


def test_m_of():
    assert m_of((0, 0, 0, 0)) == 0
    assert m_of((3, 1, 4, 1)) == 7
    assert m_of((2, 2, 2, 2)) == 4


def test_s0_exact():
    assert s0_closed(-1, Fraction(1, 2)) == Fraction(4, 45)
    assert s0_closed(1, Fraction(0)) == 1
    with pytest.raises(DomainError):
        s0_closed(1, 1)
    # the truncation at N already contains every monomial of degree <= N
    for eps in (1, -1):
        z = Fraction(1, 3)
        assert s0_truncated(eps, z, 0) == 1
        d12 = abs(s0_closed(eps, z) - s0_truncated(eps, z, 12))
        d20 = abs(s0_closed(eps, z) - s0_truncated(eps, z, 20))
        assert d20 < 1e-8 and d20 < d12 / 1000


def test_build_dD():
    assert build_dD((1, 1, 1, 1)).D == (1, 1, 1, 1)
    dv = build_dD((1, 1, 1, 1), ell=3)
    assert dv.d == (1, 1, 1, 1) and dv.D == (3, 3, 1, 1)
    dv = build_dD((1, 1, 1, 1), b=(5, 1, 1, 1), ell=5)
    assert dv.d == (5, 1, 1, 1) and dv.D == (5, 5, 1, 1)
    dv = build_dD((-3, 1, -3, 1), b=(1, 5, 1, 1), ell=7)
    assert dv.d == (3, 5, 3, 1) and dv.D == (21, 35, 3, 1)
    assert dv.signed_d == (-3, 5, -3, 1)
    with pytest.raises(ParityError):
        build_dD((1, 1, 1, 1), ell=2)


def test_u_sum_examples(showcase):
    one = build_dD((1, 1, 1, 1))
    assert u_sum(showcase, 4, (1, 1, 1, 1), one) == 0
    assert u_sum(showcase, 25, (1, 1, 1, 1), one) == 512
    assert u_sum(showcase, 25, (1, -1, -1, 1), one) == 512


@pytest.mark.parametrize("c", SPECS)
def test_u_sum_naive_equals_reduced(c):
    s = validate(*c)
    for mc in build_sigma(s):
        for ell in (1, 3, 5):
            dv = build_dD(mc, ell=ell)
            for T in (30, 200, Fraction(1001, 3)):
                assert u_sum_naive(s, T, mc.m, dv) == u_sum_reduced(s, T, mc.m, dv)


def test_C_m():
    c1 = C_m_constant(1)
    assert abs(C_m_constant(5) / c1 - 16 / 25) < 1e-14
    assert C_m_constant(3) == c1
    assert abs(C_m_constant(1, 10 ** 6) - C_m_constant(1, 10 ** 7)) < 1e-7
    v, err = C_m_constant(1, with_error=True)
    assert 0 < err < 1e-7


def test_r_over_t_partial():
    assert r_over_t_partial(4) == 4
    assert abs(r_over_t_partial(5) - (4 + 8 / 5)) < 1e-15
    assert r_over_t_partial(5, m=5) == 4


def test_slope_matches_C1():
    T = [int(10 ** (4 + k / 2)) for k in range(5)]
    slope, _ = slope_fit(1, T)
    assert abs(slope / C_m_constant(1) - 1) < 1e-3


def test_moebius_anchors(showcase):
    G = moebius_counts(showcase, 25)
    assert G[1] == 0 and G[24] == 0 and G[25] == 16
    assert moebius_count(showcase, 25) == 16


@pytest.mark.parametrize("c", SPECS[:3])
def test_literal_equals_fast(c):
    s = validate(*c)
    for B in (25, 60, 100):
        for tw in ("r", "primitive"):
            assert moebius_count_literal(s, B, tw) == moebius_count(s, B, tw)


@pytest.mark.parametrize("c", SPECS + [(3, 7, 2, 5)])
def test_primitive_variant_equals_direct(c):
    s = validate(*c)
    direct = np.cumsum(count_histogram(s, 1000))
    assert np.array_equal(moebius_counts(s, 1000, "primitive")[1:], direct[1:])


def test_r_weight_overcounts_from_2025(showcase):
    direct = np.cumsum(count_histogram(showcase, 2025))
    G = moebius_counts(showcase, 2025, "r")
    assert np.array_equal(G[1:2025], direct[1:2025])
    assert G[2025] > direct[2025]
    assert count_points(showcase, 2025)[0] == direct[2025]
