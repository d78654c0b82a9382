from fractions import Fraction
from itertools import product
from math import isclose, log, pi

import numpy as np
import pytest

from chatelet_manin.densities import (_R, assemble_constant, c_class, constant_limit, eta,
                                      f_main, fit_empirical, omega_infty, sigma_2,
                                      sigma_p_closed, sigma_p_oracle, sigma_p_oracle_limit,
                                      sigma_p_series)
from chatelet_manin.errors import DomainError, ParityError
from chatelet_manin.surface import build_sigma, positive_product_area, validate
from chatelet_manin.sums import C_m_constant, build_dD, s0_closed

ONE = (1, 1, 1, 1)


def test_closed_examples():
    assert sigma_p_closed(3) == Fraction(32, 45)
    assert sigma_p_closed(5) == Fraction(259, 225)
    with pytest.raises(DomainError):
        sigma_p_closed(3, validate(1, 2, 1, 3))


@pytest.mark.parametrize("p", [3, 5, 7, 13])
def test_closed_is_s0(p):
    c = 1 if p % 4 == 1 else -1
    x = Fraction(1, p)
    assert sigma_p_closed(p) == (1 - c * x) ** 4 * s0_closed(c, x)


@pytest.mark.parametrize("p", [3, 5, 13])
def test_series_equals_closed(showcase, p):
    s = sigma_p_series(showcase, p, ONE, ONE)
    assert abs(s.value - float(sigma_p_closed(p))) < 1e-12
    assert s.error < 1e-14


def test_oracle_level_zero(showcase):
    assert sigma_p_oracle(showcase, 3, ONE, (3, 1, 1, 1), 0) == 1


def test_R_brute_force():
    for p in (3, 5):
        for N in (1, 2, 3):
            q = p ** N
            sq = [(s * s + t * t) % q for s in range(q) for t in range(q)]
            for A in range(q):
                v = 0
                a = A
                while a and a % p == 0 and v < N:
                    a //= p
                    v += 1
                if A == 0:
                    v = N
                assert _R(p, v, N) == sq.count(A)


@pytest.mark.parametrize("d,D", [(ONE, (3, 1, 1, 1)), ((3, 1, 1, 1), (3, 3, 1, 1)),
                                 (ONE, (1, 1, 3, 1)), ((1, 3, 1, 1), (9, 3, 1, 1))])
def test_oracle_matches_series(showcase, d, D):
    lim = sigma_p_oracle_limit(showcase, 3, d, D)
    ser = sigma_p_series(showcase, 3, d, D)
    assert abs(float(lim.value) - ser.value) < 1e-9


def test_oracle_at_bad_prime():
    s = validate(1, 2, 1, 3)
    lim = sigma_p_oracle_limit(s, 3, ONE, ONE, tol=1e-8)
    ser = sigma_p_series(s, 3, ONE, ONE)
    assert abs(float(lim.value) - ser.value) < 1e-7


def test_sigma2(showcase):
    a = sigma_2(showcase, ONE)
    assert a.value == Fraction(3, 4) and a.method == "brute_force"
    assert sigma_2(showcase, ONE, (3, 3, 1, 1)).value == a.value
    for d in [(1, -1, -1, 1), (-3, 1, -3, 1), (5, 1, 1, 1)]:
        v = sigma_2(showcase, d)
        assert v.value > 0 and v.level <= 12
    with pytest.raises(ParityError):
        sigma_2(showcase, (2, 1, 1, 1))


def test_omega_infty(showcase):
    total = sum(omega_infty(showcase, m) for m in build_sigma(showcase))
    classes = len(build_sigma(showcase))
    assert isclose(total, pi ** 4, rel_tol=1e-14)
    assert isclose(sum(omega_infty(showcase, m.m) for m in build_sigma(showcase)
                       if m.m == (1, 1, 1, 1)), pi ** 4 / 2, rel_tol=1e-14)
    assert omega_infty(showcase, (1, 1, -1, -1)) == 0
    assert classes == 4


def test_c_class_stable_in_P0(showcase):
    m = build_sigma(showcase)[0]
    dv = build_dD(m, ell=3)
    a = c_class(showcase, m, dv, 10 ** 4)
    b = c_class(showcase, m, dv, 10 ** 5)
    assert abs(a.c_class - b.c_class) <= a.truncation_error
    empty = c_class(showcase, (1, 1, -1, -1), build_dD((1, 1, -1, -1)))
    assert empty.c_class == 0


def test_generic_log_bound():
    for p in range(11, 1000, 2):
        if all(p % q for q in range(3, int(p ** 0.5) + 1, 2)):
            assert abs(log(sigma_p_closed(p))) <= 8 / p ** 2


def test_assemble_single_term(showcase):
    rep = assemble_constant(showcase, 1, 1, with_limit=False)
    C1 = C_m_constant(1)
    s = sum(c_class(showcase, m, build_dD(m)).c_class for m in build_sigma(showcase))
    # two of the four classes have empty regions
    assert rep.terms == 2
    assert isclose(rep.c, C1 * s / 256, rel_tol=1e-12)


def test_truncations_approach_limit(showcase):
    lim, err = constant_limit(showcase)
    assert err < 1e-4
    c0 = assemble_constant(showcase, 1, 1, with_limit=False).c
    c1 = assemble_constant(showcase, 15, 1, with_limit=False).c
    assert abs(c1 - lim) < abs(c0 - lim)
    prim, _ = constant_limit(showcase, t_weight="primitive")
    assert prim < lim


def test_eta_and_main_term():
    assert isclose(eta(), 1 - (1 + log(log(2))) / log(2))
    assert isclose(eta(), 0.08607133, abs_tol=1e-8)
    assert f_main(1) == 0
    assert isclose(f_main(100), 100 * log(100) - 99)


def test_fit_rows(showcase):
    counts = {1000: 1234, 2000: 2500}
    rows = fit_empirical(showcase, [1000, 2000], counts=counts)
    assert [r.N for r in rows] == [1234, 2500]
    for r in rows:
        assert r.ratio > 0 and r.ratio_primitive > r.ratio
