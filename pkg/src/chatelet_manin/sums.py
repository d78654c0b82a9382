"""Geometric series S0, the parameter map (m, a, b, l) -> (d, D), the lattice
sums U(T), the constants C_m and the exact Moebius-decomposed count."""

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product
from math import gcd, isqrt, pi, prod

import mpmath
import numpy as np

from .errors import DivisibilityError, DomainError, MismatchError, ParityError
from .gaussian import (D_mask, factorize, omega_table, ideal_intersection_norm, ideals_of_norm, lcm,
                       primes_up_to, r_table, squarefree_ideals_up_to, squarefree_odd_upto)
from .lattice import box_points, gamma_basis, isqrt_floor_frac, reduce_basis
from .surface import build_sigma, build_sigma_prime


def m_of(n):
    a = sorted(n, reverse=True)
    return a[0] + a[1]


def s0_closed(eps, z):
    """Closed forms of S0^-(z) and S0^+(z); exact for Fraction input."""
    if abs(z) >= 1:
        raise DomainError("need |z| < 1")
    if eps < 0:
        return (1 - z) ** 2 / ((1 + z) ** 2 * (1 + z * z))
    return (1 + 2 * z + 6 * z ** 2 + 2 * z ** 3 + z ** 4) / ((1 - z) ** 4 * (1 + z) ** 2)


@lru_cache(maxsize=None)
def _m_histogram(N):
    """Counts c[k, s] of n in [0,N]^4 with m(n) = k and sum(n) = s mod 2."""
    r = np.arange(N + 1)
    g = np.stack(np.meshgrid(r, r, r, r, indexing="ij"), axis=-1).reshape(-1, 4)
    g.sort(axis=1)
    m = g[:, 3] + g[:, 2]
    par = g.sum(axis=1) % 2
    c = np.zeros((2 * N + 1, 2), dtype=np.int64)
    np.add.at(c, (m, par), 1)
    return c


def s0_truncated(eps, z, N):
    """Sum over n in [0,N]^4 of eps^(n1+..+n4) z^m(n); exact for Fraction z,
    otherwise evaluated in 50-digit arithmetic."""
    if abs(z) >= 1:
        raise DomainError("need |z| < 1")
    c = _m_histogram(int(N))
    coef = [int(c[k, 0]) + (eps if eps < 0 else 1) * int(c[k, 1]) for k in range(c.shape[0])]
    if isinstance(z, (Fraction, int)):
        return sum(Fraction(a) * Fraction(z) ** k for k, a in enumerate(coef))
    with mpmath.workdps(50):
        zz = mpmath.mpf(z)
        return float(mpmath.fsum(a * zz ** k for k, a in enumerate(coef)))


@dataclass(frozen=True)
class DVector:
    d: tuple      # |m_j| N(a_j) N(b_j)
    D: tuple
    ell: int
    sign: tuple = (1, 1, 1, 1)   # sign of m_j, carried for 2-adic densities

    @property
    def signed_d(self):
        return tuple(s * x for s, x in zip(self.sign, self.d))


def build_dD(m, a=None, b=None, ell=1):
    mm = m.m if hasattr(m, "m") else tuple(m)
    an = a.norms if a is not None else (1, 1, 1, 1)
    bn = tuple(x.norm if hasattr(x, "norm") else int(x) for x in b) if b is not None else (1, 1, 1, 1)
    if ell % 2 == 0:
        raise ParityError("ell must be odd")
    d = tuple(abs(mj) * na * nb for mj, na, nb in zip(mm, an, bn))
    if any(x % 2 == 0 for x in d):
        raise ParityError("even d_j: %s" % (d,))
    D = (lcm(d[0], ell), lcm(d[1], ell), d[2], d[3])
    return DVector(d, D, ell, tuple(1 if x > 0 else -1 for x in mm))


def _in_region(spec, m, L):
    return all(mj * Lj > 0 for mj, Lj in zip(m, L))


def _weight(L, d, rt):
    w = 1
    for Lj, dj in zip(L, d):
        q, rem = divmod(abs(Lj), dj)
        if rem:
            raise AssertionError("d_j does not divide L_j")
        w *= int(rt[q]) if q < len(rt) else _r(q)
        if w == 0:
            return 0
    return w


def _r(n):
    from .gaussian import r_count
    return r_count(n)


def u_sum_naive(spec, T, m, dvec, rt=None):
    mm = m.m if hasattr(m, "m") else tuple(m)
    R = isqrt_floor_frac(T)
    rt = _rt_for(spec, R) if rt is None else rt
    s = 0
    for u in range(-R, R + 1):
        for v in range(-R, R + 1):
            if u % 2 == 0 and v % 2 == 0:
                continue
            L = spec.L(u, v)
            if not _in_region(spec, mm, L):
                continue
            if any(Lj % Dj for Lj, Dj in zip(L, dvec.D)):
                continue
            s += _weight(L, dvec.d, rt)
    return s


def u_sum_reduced(spec, T, m, dvec, rt=None):
    mm = m.m if hasattr(m, "m") else tuple(m)
    R = isqrt_floor_frac(T)
    rt = _rt_for(spec, R) if rt is None else rt
    basis, _ = reduce_basis(gamma_basis(spec, dvec.D))
    s = 0
    for u, v in box_points(basis, R):
        if u % 2 == 0 and v % 2 == 0:
            continue
        L = spec.L(u, v)
        if _in_region(spec, mm, L):
            s += _weight(L, dvec.d, rt)
    return s


def u_sum(spec, T, m, dvec):
    a = u_sum_naive(spec, T, m, dvec)
    b = u_sum_reduced(spec, T, m, dvec)
    if a != b:
        raise MismatchError("U(T) naive %d != reduced %d" % (a, b))
    return a


def _rt_for(spec, R):
    K = max(1, R * max(abs(x) + abs(y) for x, y in zip(spec.a, spec.b)))
    return r_table(K)


# C_m and sums of r(t)/t

def _A_product(P0):
    ps = primes_up_to(P0)
    ps = ps[ps % 4 == 3].astype(np.longdouble)
    logs = np.log1p(-1 / (ps * ps))
    return np.exp(np.sum(logs, dtype=np.longdouble))


def C_m_constant(m, P0=10**7, with_error=False):
    """C_m = 2 L(1, chi) prod_{p=3(4)} (1 - p^-2) prod_{p | m, p=1(4)} (1 - 1/p)^2."""
    A = _A_product(P0)
    # sum_{p > P0} p^-2 <= 2.52 / (P0 log P0) from pi(t) < 1.26 t / log t
    tail = 2.52 / (P0 * np.log(P0))
    lo, hi = A * np.exp(np.longdouble(-tail)), A
    A_mid = (lo + hi) / 2
    f = Fraction(1)
    for p in factorize(m) if m > 1 else {}:
        if p % 4 == 1:
            f *= (1 - Fraction(1, p)) ** 2
    c = 2 * (np.longdouble(pi) / 4) * A_mid * np.longdouble(f.numerator) / np.longdouble(f.denominator)
    err = float(c * (hi - lo) / (2 * A_mid))
    if with_error:
        return float(c), err
    return float(c)


def r_over_t_partial(T, m=1):
    """sum of r(t)/t over t in D, t <= T, gcd(t, m) = 1 (exact for T <= 10^5)."""
    T = int(T)
    rt = r_table(T)
    mask = D_mask(T)
    ts = np.nonzero(mask)[0]
    ts = ts[np.gcd(ts, m) == 1]
    if T <= 10**5:
        return float(sum(Fraction(int(rt[t]), int(t)) for t in ts))
    import math
    return math.fsum((rt[ts] / ts).tolist())


def r_over_t_curve(T_list, m=1):
    """Partial sums at every T in T_list (float64 cumulative sums)."""
    Tmax = int(max(T_list))
    rt = r_table(Tmax).astype(np.float64)
    mask = D_mask(Tmax)
    k = np.arange(Tmax + 1)
    if m > 1:
        mask &= np.gcd(k, m) == 1
    vals = np.where(mask, rt / np.maximum(k, 1), 0.0)
    cs = np.cumsum(vals)
    return np.array([cs[int(T)] for T in T_list])


def slope_fit(m, T_list):
    y = r_over_t_curve(T_list, m)
    x = np.log(np.asarray(T_list, dtype=float))
    slope, icpt = np.polyfit(x, y, 1)
    return float(slope), float(icpt)


# the counting identity

def _ideal_weights(n):
    """For norm quadruple n: {N(intersection): sum of mu(b)} over squarefree
    ideal quadruples b with N(b_j) = n_j."""
    primes = set()
    facs = []
    for x in n:
        f = factorize(x) if x > 1 else {}
        facs.append(f)
        primes |= set(f)
    W = {1: 1}
    for p in sorted(primes):
        local = {}
        opts = []
        for f in facs:
            e = f.get(p, 0)
            opts.append([frozenset()] if e == 0 else
                        [frozenset({1}), frozenset({-1})] if e == 1 else [frozenset({1, -1})])
        for combo in product(*opts):
            k = sum(len(c) for c in combo)
            inter = len(frozenset().union(*combo))
            local[p ** inter] = local.get(p ** inter, 0) + (-1) ** k
        W2 = {}
        for a, wa in W.items():
            for b, wb in local.items():
                if wb:
                    W2[a * b] = W2.get(a * b, 0) + wa * wb
        W = {k: v for k, v in W2.items() if v}
    return W


def _norm_set(X):
    """Norms <= X of squarefree ideals with norm in D."""
    out = []
    mask = D_mask(X)
    for n in np.nonzero(mask)[0].tolist():
        if n == 1 or max(factorize(n).values()) <= 2:
            out.append(n)
    return out


class _Ctx:
    def __init__(self, spec, Bmax, t_weight="r"):
        self.spec = spec
        self.Bmax = Bmax
        self.R = isqrt(Bmax)
        self.rt = _rt_for(spec, self.R)
        self.rB = r_table(Bmax)
        self.t_weight = t_weight
        if t_weight == "primitive":
            self.w2 = 4 * 2 ** omega_table(Bmax)
        elif t_weight != "r":
            raise ValueError("t_weight must be 'r' or 'primitive'")
        self.Dl = np.nonzero(D_mask(Bmax))[0]
        self.cop = {}

    def dlist(self, Na):
        if Na not in self.cop:
            Dl = self.Dl
            self.cop[Na] = Dl[np.gcd(Dl, Na) == 1] if Na > 1 else Dl
        return self.cop[Na]


def _contrib(ctx, H, m, Na, coef, dv, W):
    """Add coef * sum_b mu(b) r(t/N) * weight at heights h0 * t."""
    spec, R = ctx.spec, ctx.R
    basis, mins = reduce_basis(gamma_basis(spec, dv.D))
    if mins.s1sq > 2 * R * R:
        return 0
    Ws = [(N, w) for N, w in W.items() if gcd(N, Na) == 1]
    prim = ctx.t_weight == "primitive"
    if prim:
        # z0 primitive with conj(z0) in the intersection: impossible when it
        # contains both primes above some p, i.e. when N is not squarefree
        Ws = [(N, w) for N, w in Ws if _squarefree(N)]
    if not Ws:
        return 0
    Dl = ctx.dlist(Na)
    rB = ctx.rB
    npts = 0
    for u, v in box_points(basis, R):
        if u % 2 == 0 and v % 2 == 0:
            continue
        L = spec.L(u, v)
        if not _in_region(spec, m, L):
            continue
        P = _weight(L, dv.d, ctx.rt)
        if P == 0:
            continue
        npts += 1
        h0 = max(abs(u), abs(v)) ** 2
        X = ctx.Bmax // h0
        for N, w in Ws:
            if N > X:
                continue
            s = Dl[: np.searchsorted(Dl, X // N, side="right")]
            if prim:
                H[h0 * N * s] += coef * w * P * (ctx.w2[N * s] >> _omega(N))
            else:
                H[h0 * N * s] += coef * w * P * rB[s]
    return npts


def _squarefree(n):
    return n == 1 or max(factorize(n).values()) == 1


def _omega(n):
    return 0 if n == 1 else len(factorize(n))


def moebius_histogram(spec, Bmax, t_weight="r", terms=None):
    """Array G with G[h] = 256 x (contribution of height exactly h) to the
    Moebius-decomposed count, for 1 <= h <= Bmax.

    t_weight="r" is the sum exactly as written, with r(t / N(cap b)) counting
    every z0 of norm t in conj(cap b). t_weight="primitive" counts only z0
    with no rational prime factor, which is what gcd(x, y, t) = 1 needs."""
    Bmax = int(Bmax)
    ctx = _Ctx(spec, Bmax, t_weight)
    R = ctx.R
    H = np.zeros(Bmax + 1, dtype=np.int64)
    ells = squarefree_odd_upto(max(R, 1))
    cap = [R, R] + [(abs(spec.a[j]) + abs(spec.b[j])) * R for j in (2, 3)]
    nsets = {}

    def norms(X):
        if X not in nsets:
            nsets[X] = _norm_set(X) if X >= 1 else []
        return nsets[X]

    wcache = {}
    for mc in build_sigma(spec):
        m = mc.m
        for a in build_sigma_prime(spec):
            if a.mu == 0:
                continue
            Na = a.norm
            d0 = [abs(mj) * nj for mj, nj in zip(m, a.norms)]
            for ell, mul in ells:
                for n1 in norms(cap[0] // d0[0]):
                    D1 = lcm(d0[0] * n1, ell)
                    if D1 > R:
                        continue
                    for n2 in norms(cap[1] // d0[1]):
                        D2 = lcm(d0[1] * n2, ell)
                        if D2 > R:
                            continue
                        for n3 in norms(cap[2] // d0[2]):
                            D3 = d0[2] * n3
                            _, mins = reduce_basis(gamma_basis(spec, (D1, D2, D3, 1)))
                            if mins.s1sq > 2 * R * R:
                                continue
                            for n4 in norms(cap[3] // d0[3]):
                                n = (n1, n2, n3, n4)
                                dv = build_dD(mc, a, n, ell)
                                if n not in wcache:
                                    wcache[n] = _ideal_weights(n)
                                k = _contrib(ctx, H, m, Na, a.mu * mul, dv, wcache[n])
                                if terms is not None and k:
                                    terms.append((m, a.choice, ell, n, k))
    return H


def moebius_counts(spec, Bmax, t_weight="r"):
    """N(B) for all 0 <= B <= Bmax from the decomposition."""
    G = np.cumsum(moebius_histogram(spec, Bmax, t_weight))
    bad = np.nonzero(G % 256)[0]
    if len(bad):
        raise DivisibilityError("total not divisible by 2^8 at B=%d" % bad[0])
    return G // 256


def moebius_count(spec, B, t_weight="r"):
    return int(moebius_counts(spec, B, t_weight)[int(B)])


def moebius_count_literal(spec, B, t_weight="r"):
    """Term-by-term evaluation of the quadruple sum with U(B/t) recomputed for
    every (m, a, l, b, t); only practical for small B."""
    B = int(B)
    R = isqrt(B)
    total = 0
    caps = [(abs(spec.a[j]) + abs(spec.b[j])) * R for j in range(4)]
    ideals = [squarefree_ideals_up_to(max(c, 1)) for c in caps]
    mask = D_mask(B)
    ts = [t for t in range(1, B + 1) if mask[t]]
    rB = r_table(B)
    for mc in build_sigma(spec):
        for a in build_sigma_prime(spec):
            if a.mu == 0:
                continue
            for ell, mul in squarefree_odd_upto(max(R, 1)):
                for b in product(*ideals):
                    dv = build_dD(mc, a, b, ell)
                    if min(dv.D[0], dv.D[1]) > R:
                        continue
                    mub = prod(x.mu for x in b)
                    Ni = ideal_intersection_norm(*b)
                    if t_weight == "primitive" and not _squarefree(Ni):
                        continue
                    for t in ts:
                        if gcd(t, a.norm) != 1 or t % Ni:
                            continue
                        if t_weight == "primitive":
                            rr = 4 * 2 ** (_omega(t) - _omega(Ni))
                        else:
                            rr = int(rB[t // Ni])
                        if rr == 0:
                            continue
                        U = u_sum_reduced(spec, Fraction(B, t), mc, dv)
                        total += a.mu * mul * mub * rr * U
    if total % 256:
        raise DivisibilityError("total %d not divisible by 2^8" % total)
    return total // 256
