"""Congruence lattices Gamma_D = {(u,v) : D_j | L_j(u,v)}, their index rho(D),
Lagrange-Gauss reduction and box enumeration."""

from dataclasses import dataclass
from functools import lru_cache
from math import gcd, isqrt, sqrt


@dataclass(frozen=True)
class Lattice2:
    basis: tuple    # ((e1u, e1v), (e2u, e2v))
    det: int


@dataclass(frozen=True)
class Minima:
    s1: float
    s2: float
    s1sq: int
    s2sq: int


def hnf(g, h, f):
    """Rows (g, h), (0, f) with g, f > 0 and 0 <= h < f."""
    return Lattice2(((g, h % f), (0, f)), g * f)


def _congruence_sublattice(lat, a, b, D):
    """Intersect lat (in HNF) with {a u + b v = 0 mod D}."""
    if D == 1:
        return lat
    (g, h), (_, f) = lat.basis
    # x (g, h) + y (0, f): alpha x + beta y = 0 mod D
    alpha = (a * g + b * h) % D
    beta = (b * f) % D
    g1 = gcd(beta, D)
    x0 = g1 // gcd(alpha, g1)
    Dp = D // g1
    if Dp == 1:
        y0 = 0
    else:
        rhs = (-alpha * x0) // g1
        y0 = (rhs * pow(beta // g1, -1, Dp)) % Dp
    # basis in (u, v): x0*(g,h) + y0*(0,f), Dp*(0,f)
    return hnf(x0 * g, x0 * h + y0 * f, Dp * f)


def gamma_basis(spec, D):
    lat = Lattice2(((1, 0), (0, 1)), 1)
    for a, b, Dj in zip(spec.a, spec.b, D):
        if Dj < 1:
            raise ValueError("D_j must be positive")
        lat = _congruence_sublattice(lat, a, b, int(Dj))
    return lat


def rho(spec, D):
    return gamma_basis(spec, D).det


@lru_cache(maxsize=None)
def rho_exp(spec, p, e):
    """log_p rho(p^e1, ..., p^e4)."""
    r = rho(spec, tuple(p ** k for k in e))
    k = 0
    while r > 1:
        assert r % p == 0
        r //= p
        k += 1
    return k


def reduce_basis(lat):
    """Lagrange-Gauss reduction; returns ((e1, e2), Minima) with |e1| <= |e2|."""
    e1, e2 = lat.basis

    def dot(x, y):
        return x[0] * y[0] + x[1] * y[1]

    n1, n2 = dot(e1, e1), dot(e2, e2)
    if n1 > n2:
        e1, e2, n1, n2 = e2, e1, n2, n1
    while True:
        # nearest-integer projection, exact
        num = dot(e1, e2)
        q = (2 * num + n1) // (2 * n1)
        e2 = (e2[0] - q * e1[0], e2[1] - q * e1[1])
        n2 = dot(e2, e2)
        if n2 >= n1:
            break
        e1, e2, n1, n2 = e2, e1, n2, n1
    return (e1, e2), Minima(sqrt(n1), sqrt(n2), n1, n2)


def box_points(basis, R):
    """All lattice points (u, v) with |u|, |v| <= R for the given (reduced)
    basis, via the coordinate bound |y| <= (|e1u| + |e1v|) R / det."""
    (a, b), (c, d) = basis
    det = a * d - b * c
    if det < 0:
        c, d, det = -c, -d, -det
    ymax = ((abs(a) + abs(b)) * R) // det
    out = []
    for y in range(-ymax, ymax + 1):
        lo, hi = None, None
        ok = True
        # u = x a + y c in [-R, R], v = x b + y d in [-R, R]
        for coef, off in ((a, y * c), (b, y * d)):
            if coef == 0:
                if abs(off) > R:
                    ok = False
                continue
            if coef > 0:
                l_, h_ = -((R + off) // coef), (R - off) // coef
            else:
                l_, h_ = -((R - off) // -coef), (R + off) // -coef
            lo = l_ if lo is None else max(lo, l_)
            hi = h_ if hi is None else min(hi, h_)
        if not ok or lo is None or lo > hi:
            continue
        for x in range(lo, hi + 1):
            out.append((x * a + y * c, x * b + y * d))
    return out


def in_lattice(spec, D, u, v):
    return all(L % Dj == 0 for L, Dj in zip(spec.L(u, v), D))


def rho_bruteforce(spec, D):
    """M^2 / #{(u,v) mod M : D_j | L_j(u,v)} with M = lcm(D)."""
    import numpy as np
    M = 1
    for Dj in D:
        M = M * Dj // gcd(M, Dj)
    v = np.arange(M, dtype=np.int64)
    cnt = 0
    for u in range(M):
        ok = np.ones(M, dtype=bool)
        for a, b, Dj in zip(spec.a, spec.b, D):
            if Dj > 1:
                ok &= (a * u + b * v) % Dj == 0
        cnt += int(ok.sum())
    assert (M * M) % cnt == 0
    return M * M // cnt


def isqrt_floor_frac(T):
    """floor(sqrt(T)) for a nonnegative Fraction or int."""
    from fractions import Fraction
    T = Fraction(T)
    return isqrt(T.numerator // T.denominator)
