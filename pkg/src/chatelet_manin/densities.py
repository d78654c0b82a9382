"""Local densities sigma_p(d, D) and sigma_2(d), the archimedean factor, the
per-class constants c_{d,D,R_m} and the assembled leading constant c."""

import json
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, product
from math import gcd, log, pi, prod

import numpy as np

from .errors import DomainError, NoStabilization, ParityError, ResourceError
from .gaussian import chi, factorize, primes_up_to, squarefree_ideals_up_to, squarefree_odd_upto
from .lattice import rho_exp
from .sums import C_m_constant, build_dD
from .surface import build_sigma, build_sigma_prime, region_polygon

PAIRS = list(combinations(range(4), 2))
ALPHA_S = 1
BETA_S = 4
TORS = 2 ** 8
# sum_{p > P} p^-2 <= PRIME_TAIL / (P log P), from pi(t) < 1.26 t / log t
PRIME_TAIL = 2.52
LOG_BOUND = 8     # |log sigma_p| <= 8 / p^2 for generic p >= 11


@dataclass(frozen=True)
class LocalDensity:
    p: int
    value: object           # float, or Fraction when exact
    method: str             # closed_form, series, brute_force
    error: float = 0.0
    level: int = 0          # nu_max for series, n for brute force


@dataclass
class DensityReport:
    omega_inf: float
    sigma2: float
    sigma_p: list
    generic_product: float
    c_class: float
    truncation_error: float
    P0: int = 0
    m: tuple = ()
    d: tuple = ()
    D: tuple = ()

    def to_json(self):
        return json.dumps(_plain(asdict(self)), sort_keys=True)


@dataclass
class ConstantReport:
    c: float
    terms: int
    tail_bound: float
    c_limit: float
    c_limit_error: float
    c_primitive: float
    c_primitive_error: float
    Lmax: int
    Bmax: int
    P0: int
    precision: str = "float80"
    alpha_S: int = ALPHA_S
    beta_S: int = BETA_S
    tors: int = TORS
    notes: list = field(default_factory=list)

    def to_json(self):
        return json.dumps(_plain(asdict(self)), sort_keys=True)


def _plain(x):
    if isinstance(x, dict):
        return {k: _plain(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_plain(v) for v in x]
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, (np.floating, np.integer)):
        return x.item() if isinstance(x, np.integer) else float(x)
    return x


def vp(n, p):
    n = abs(int(n))
    if n == 0:
        raise DomainError("valuation of 0")
    k = 0
    while n % p == 0:
        n //= p
        k += 1
    return k


def _check_odd_prime(p):
    if p < 3 or p % 2 == 0 or factorize(p) != {p: 1}:
        raise DomainError("%d is not an odd prime" % p)


# closed forms

def sigma_p_closed(p, spec=None):
    """(1 - chi(p)/p)^4 S0^{chi(p)}(1/p) for trivial d, D."""
    _check_odd_prime(p)
    if spec is not None and spec.Delta % p == 0:
        raise DomainError("p = %d divides Delta" % p)
    x = Fraction(1, p)
    if p % 4 == 1:
        return (1 + 2 * x + 6 * x ** 2 + 2 * x ** 3 + x ** 4) / (1 + x) ** 2
    return (1 - x * x) ** 2 / (1 + x * x)


def _closed_array(ps):
    x = 1 / ps.astype(np.longdouble)
    one = (1 + 2 * x + 6 * x ** 2 + 2 * x ** 3 + x ** 4) / (1 + x) ** 2
    three = (1 - x * x) ** 2 / (1 + x * x)
    return np.where(ps % 4 == 1, one, three)


@lru_cache(maxsize=None)
def _log_generic(P0):
    ps = primes_up_to(P0)
    ps = ps[ps > 2]
    return np.sum(np.log(_closed_array(ps)), dtype=np.longdouble)


def prime_tail(P0):
    return PRIME_TAIL / (P0 * log(P0))


# the exponent of rho(p^e) for many e at once

def _nondiv_pairs(spec, p):
    return [(j, k) for j, k in PAIRS if spec.delta(j + 1, k + 1) % p]


def _delta_exp(spec, p):
    return max(vp(spec.delta(j + 1, k + 1), p) for j, k in PAIRS)


@lru_cache(maxsize=None)
def _residual_table(spec, p, E):
    """log_p rho on vectors whose support has p | Delta_jk for every pair."""
    nd = set(_nondiv_pairs(spec, p))
    T = np.full((E + 1,) * 4, -1, dtype=np.int32)
    T[0, 0, 0, 0] = 0
    for r in range(1, 5):
        for J in combinations(range(4), r):
            if any(pr in nd for pr in combinations(J, 2)):
                continue
            for vals in product(range(1, E + 1), repeat=r):
                e = [0, 0, 0, 0]
                for j, x in zip(J, vals):
                    e[j] = x
                T[tuple(e)] = vals[0] if r == 1 else rho_exp(spec, p, tuple(e))
    return T


def rho_exponents(spec, p, e):
    """log_p rho(p^e1, ..., p^e4) for an (N, 4) integer array of exponents.

    Whenever two entries j, k are positive with p not dividing Delta_jk the
    lattice lies in p Z^2 and rho(e) = p^2 rho(max(e - 1, 0)); the remaining
    vectors are looked up in an exact table."""
    e = np.asarray(e, dtype=np.int64)
    nd = _nondiv_pairs(spec, p)
    M = np.zeros(len(e), dtype=np.int64)
    for j, k in nd:
        M = np.maximum(M, np.minimum(e[:, j], e[:, k]))
    r = np.maximum(e - M[:, None], 0)
    if len(nd) == 6:
        f0 = r.max(axis=1)
    else:
        T = _residual_table(spec, p, int(r.max()) if len(r) else 0)
        f0 = T[r[:, 0], r[:, 1], r[:, 2], r[:, 3]]
        assert (f0 >= 0).all()
    return 2 * M + f0


@lru_cache(maxsize=4)
def _nu_grid(K):
    return np.indices((K + 1,) * 4).reshape(4, -1).T.astype(np.int64)


def _tail_constant(p):
    # sum over (n2, n3, n4) of p^-max = sum_k ((k+1)^3 - k^3) p^-k
    return sum((3 * k * k + 3 * k + 1) / p ** k for k in range(400))


def _series_bound(p, delta, K):
    """Bound for the terms of the sigma_p series with some nu_j > K, using
    rho(p^e) >= p^(m(e) - delta)."""
    return (1 + 1 / p) ** 4 * p ** delta * 4 * _tail_constant(p) * p ** (-K) / (p - 1)


def _choose_K(p, delta, tol=1e-15):
    K = 8
    while _series_bound(p, delta, K) > tol and K < 60:
        K += 1
    return K


@lru_cache(maxsize=None)
def _series_exact(spec, p, lam, mu, K):
    """Exact rational value of the series truncated to nu in [0, K]^4."""
    nu = _nu_grid(K)
    e = np.maximum(np.array(mu), nu + np.array(lam))
    f = rho_exponents(spec, p, e)
    par = nu.sum(axis=1) % 2
    c = chi(p)
    cnt = np.bincount(2 * f + par)
    x = Fraction(1, p)
    s = Fraction(0)
    for i in range(0, len(cnt), 2):
        odd = int(cnt[i + 1]) if i + 1 < len(cnt) else 0
        s += (int(cnt[i]) + c * odd) * x ** (i // 2)
    return (1 - c * x) ** 4 * s


def sigma_p_series(spec, p, d, D, nu_max=None):
    """(1 - chi/p)^4 sum_nu chi^|nu| / rho(p^max(mu_j, lam_j + nu_j)) with
    lam = v_p(d), mu = v_p(D); this is omega_{d,D}(p) itself."""
    _check_odd_prime(p)
    lam = tuple(vp(x, p) for x in d)
    mu = tuple(vp(x, p) for x in D)
    delta = _delta_exp(spec, p)
    K = _choose_K(p, delta) if nu_max is None else int(nu_max)
    val = _series_exact(spec, p, lam, mu, K)
    return LocalDensity(p, float(val), "series", _series_bound(p, delta, K), K)


# brute-force oracle

@lru_cache(maxsize=None)
def _R(p, v, N):
    """#{(s, t) mod p^N : s^2 + t^2 = A} for odd p, v = v_p(A) capped at N."""
    if N == 0:
        return 1
    v = min(v, N)
    c = chi(p)
    prim = p ** (N - 1) * (p - c) if v == 0 else p ** (N - 1) * (p - 1) * (1 + c)
    if N <= 2:
        rest = p ** (2 * (N - 1)) if v == N else 0
    else:
        rest = p * p * _R(p, v - 2, N - 2) if v >= 2 else 0
    return prim + rest


def _local_weight(p, lam, mu, k, n):
    """#{(s, t) mod p^n : d (s^2 + t^2) = L} with v_p(d) = lam, given
    v_p(L) = k (capped at n), and 0 unless p^mu | L."""
    if k < min(mu, n):
        return 0
    if lam >= n:
        return p ** (2 * n) if k == n else 0
    if k < lam:
        return 0
    return p ** (2 * lam) * _R(p, k - lam, n - lam)


def _valuations(L, p, cap):
    v = np.zeros(L.shape, dtype=np.int64)
    alive = np.ones(L.shape, dtype=bool)
    m = L.copy()
    for _ in range(cap):
        alive &= (m % p == 0)
        if not alive.any():
            break
        v += alive
        m = np.where(alive, m // p, m)
    return v


@lru_cache(maxsize=None)
def _valuation_hist(spec, p, n):
    """{(k_1, .., k_4): number of (u, v) mod p^n with v_p(L_j) = k_j (capped
    at n)}. Pairs are grouped as p^g (u', v') with (u', v') primitive; the
    valuations are invariant under units, so one representative per point of
    P^1(Z / p^(n-g)) suffices."""
    hist = {}
    for g in range(n):
        k = n - g
        q = p ** k
        U = np.concatenate([np.ones(q, dtype=np.int64), p * np.arange(q // p, dtype=np.int64)])
        V = np.concatenate([np.arange(q, dtype=np.int64), np.ones(q // p, dtype=np.int64)])
        ks = np.stack([g + _valuations(Lj, p, k) for Lj in spec.L(U, V)], axis=1)
        rows, counts = np.unique(ks, axis=0, return_counts=True)
        mult = p ** (k - 1) * (p - 1)
        for row, c in zip(rows.tolist(), counts.tolist()):
            hist[tuple(row)] = hist.get(tuple(row), 0) + c * mult
    hist[(n,) * 4] = hist.get((n,) * 4, 0) + 1
    return hist


def sigma_p_oracle(spec, p, d, D, n, cap=5 * 10 ** 6):
    """p^(-6n - lam_1 - ... - lam_4) N_{d,D}(p^n) as an exact rational, from
    the number of (s, t) mod p^n with d_j (s^2 + t^2) = L_j for each j."""
    _check_odd_prime(p)
    n = int(n)
    if p ** n > cap:
        raise ResourceError("p^n = %d above the cap %d" % (p ** n, cap))
    lam = [vp(x, p) for x in d]
    mu = [vp(x, p) for x in D]
    if n == 0:
        return Fraction(1)
    total = 0
    for ks, c in _valuation_hist(spec, p, n).items():
        total += c * prod(_local_weight(p, lam[j], mu[j], ks[j], n) for j in range(4))
    return Fraction(total, p ** (6 * n + sum(lam)))


def sigma_p_oracle_limit(spec, p, d, D, tol=1e-10, cap=5 * 10 ** 6):
    """Oracle values at n = 1, 2, ... until three consecutive levels agree to
    tol. Two are not enough: odd valuations make the values move in pairs."""
    vals = []
    n = 1
    while p ** n <= cap:
        vals.append(sigma_p_oracle(spec, p, d, D, n, cap))
        if len(vals) > 2 and max(abs(float(vals[-1] - v)) for v in vals[-3:-1]) < tol:
            return LocalDensity(p, vals[-1], "brute_force", tol, n)
        n += 1
    raise NoStabilization("sigma_%d oracle did not stabilize below the cap" % p, vals)


# p = 2

@lru_cache(maxsize=None)
def _R2(n):
    q = 1 << n
    s = np.arange(q, dtype=np.int64)
    h = np.bincount((s * s) % q, minlength=q)
    out = np.zeros(q, dtype=np.int64)
    for x in np.nonzero(h)[0]:
        out += h[x] * np.roll(h, x)
    return out


@lru_cache(maxsize=None)
def _sigma2_level(spec, d, n):
    q = 1 << n
    R = _R2(n)
    g = int(np.gcd.reduce(R[R > 0]))
    Rg = R // g
    if int(Rg.max()) ** 4 * q >= 2 ** 62:
        raise ResourceError("sigma_2 level %d overflows" % n)
    dinv = [pow(dj % q, -1, q) for dj in d]
    v_all = np.arange(q, dtype=np.int64)
    total = 0
    for u in range(q):
        v = v_all if u % 2 else v_all[1::2]
        Ls = spec.L(u, v)
        w = np.ones(len(v), dtype=np.int64)
        for j in range(4):
            w *= Rg[(dinv[j] * (Ls[j] % q)) % q]
        total += int(w.sum())
    return Fraction(total * g ** 4, 2 ** (6 * n))


def sigma_2(spec, d, D=None, n_max=12):
    """2^(-6n) N_{d,D}(2^n) with 2 not dividing gcd(u, v), for n = 1, 2, ...
    until two consecutive levels are equal. D is accepted and ignored: the
    2-adic count carries no D condition."""
    d = tuple(int(x) for x in d)
    if any(x % 2 == 0 for x in d):
        raise ParityError("sigma_2 needs odd d")
    vals = []
    for n in range(1, n_max + 1):
        q = 1 << n
        vals.append(_sigma2_level(spec, tuple(x % q for x in d), n))
        if len(vals) > 1 and vals[-1] == vals[-2]:
            return LocalDensity(2, vals[-1], "brute_force", 0.0, n)
    raise NoStabilization("sigma_2 did not stabilize by n = %d" % n_max, vals)


# archimedean factor and per-class constant

@lru_cache(maxsize=None)
def _area(spec, m):
    return region_polygon(spec, m).area


def omega_infty(spec, m):
    mm = m.m if hasattr(m, "m") else tuple(m)
    return pi ** 4 * float(_area(spec, mm))


def c_class(spec, m, dvec, P0=10 ** 5):
    """omega_inf(m) sigma_2 prod_p sigma_p(d, D); primes p not dividing
    2 Delta d D use the closed form, the product over p > P0 is bracketed."""
    mm = m.m if hasattr(m, "m") else tuple(m)
    area = _area(spec, mm)
    if area == 0:
        return DensityReport(0.0, 0.0, [], 0.0, 0.0, 0.0, P0, mm, dvec.d, dvec.D)
    om = np.longdouble(pi) ** 4 * np.longdouble(area.numerator) / np.longdouble(area.denominator)
    s2 = sigma_2(spec, dvec.signed_d)
    big = abs(spec.Delta) * prod(dvec.d) * prod(dvec.D)
    special = sorted(p for p in factorize(big) if p > 2) if big > 1 else []
    gen = np.exp(_log_generic(P0))
    locs = []
    for p in special:
        if p <= P0:
            gen /= _closed_array(np.array([p]))[0]
        locs.append(sigma_p_series(spec, p, dvec.d, dvec.D))
    val = om * np.longdouble(float(s2.value)) * gen
    for L in locs:
        val *= np.longdouble(L.value)
    tau = LOG_BOUND * prime_tail(P0)
    err = abs(float(val)) * (np.expm1(tau))
    for i, L in enumerate(locs):
        others = om * float(s2.value) * gen * prod(M.value for k, M in enumerate(locs) if k != i)
        err += abs(float(others)) * L.error
    return DensityReport(float(om), float(s2.value), locs, float(gen), float(val), float(err),
                         P0, mm, dvec.d, dvec.D)


# the leading constant

@lru_cache(maxsize=None)
def _C(n):
    return C_m_constant(n)


def assemble_constant(spec, Lmax=15, Bmax=5, P0=10 ** 5, with_limit=True):
    """(1/2^8) sum over m, a, odd squarefree l <= Lmax and squarefree b with
    N(b_j) <= Bmax of mu(a) mu(l) mu(b) c_{a,b} c_{d,D,R_m} / N(cap b_j)."""
    classes = [mc for mc in build_sigma(spec) if _area(spec, mc.m) > 0]
    ideals = squarefree_ideals_up_to(Bmax)
    ells = squarefree_odd_upto(Lmax)
    total = np.longdouble(0)
    err = 0.0
    terms = 0
    for mc in classes:
        for a in build_sigma_prime(spec):
            if a.mu == 0:
                continue
            Ca = _C(a.norm)
            for ell, mul in ells:
                for b in product(ideals, repeat=4):
                    primes = set().union(*(I.primes for I in b))
                    Ni = prod(p for p, _ in primes)
                    if gcd(Ni, a.norm) != 1:
                        continue
                    rep = c_class(spec, mc, build_dD(mc, a, b, ell), P0)
                    sign = a.mu * mul * prod(I.mu for I in b)
                    total += np.longdouble(sign * Ca) * np.longdouble(rep.c_class) / Ni
                    err += Ca * rep.truncation_error / Ni
                    terms += 1
    c = float(total / TORS)
    err /= TORS
    lim = constant_limit(spec, P0) if with_limit else (float("nan"), float("nan"))
    prim = constant_limit(spec, P0, "primitive") if with_limit else (float("nan"), float("nan"))
    tail = abs(lim[0] - c) + lim[1] + err if with_limit else float("nan")
    notes = ["tail_bound is |c_limit - c| plus both evaluation errors: an estimate, not a proof",
             "c_primitive counts only z0 with gcd(x, y, t) = 1 in the t-sum"]
    return ConstantReport(c, terms, tail, lim[0], lim[1], prim[0], prim[1], Lmax, Bmax, P0,
                          notes=notes)


def _local_raw(p, m, asets):
    """Local choices at p of (l, b): {(lam, mu, inter): signed count}, where
    inter = v_p N(cap b_j). asets holds the primes of a_j above p."""
    out = {}
    if chi(p) == -1:
        lam = tuple(vp(x, p) for x in m)
        for el in (0, 1):
            mu = (max(lam[0], el), max(lam[1], el), lam[2], lam[3])
            out[(lam, mu, 0)] = out.get((lam, mu, 0), 0) + (-1) ** el
        return out
    pa = any(asets)
    subsets = [frozenset(), frozenset({1}), frozenset({-1}), frozenset({1, -1})]
    for bsets in product(subsets, repeat=4):
        inter = len(frozenset().union(*bsets))
        if pa and inter:
            continue
        sgn = (-1) ** sum(len(s) for s in bsets)
        lam = tuple(len(sa) + len(sb) for sa, sb in zip(asets, bsets))
        for el in (0, 1):
            mu = (max(lam[0], el), max(lam[1], el), lam[2], lam[3])
            key = (lam, mu, inter)
            out[key] = out.get(key, 0) + sgn * (-1) ** el
    return {k: v for k, v in out.items() if v}


def _t_weight(p, inter, pa, t_weight):
    """Weight of the t-sum at p relative to C_{N(a)}: 1 / p^inter as written;
    for primitive z0 the factor is 0, 1/(p+1) or 1 - 1/p^2 (when p does not
    divide N(a) and p = 1 mod 4)."""
    x = Fraction(1, p)
    if t_weight == "r":
        return x ** inter
    if p % 4 == 3:
        return Fraction(1)
    w = [Fraction(1), Fraction(1, p + 1), Fraction(0)][inter]
    return w if pa else w * (1 - x * x)


def _E_exact(spec, p, m, a, t_weight):
    asets = [frozenset(s for q, s in I.primes if q == p) for I in a.ideals]
    pa = any(asets)
    val, err = 0.0, 0.0
    for (lam, mu, inter), k in sorted(_local_raw(p, m, asets).items()):
        w = k * _t_weight(p, inter, pa, t_weight)
        if w == 0:
            continue
        L = sigma_p_series(spec, p, tuple(p ** e for e in lam), tuple(p ** e for e in mu))
        val += float(w) * L.value
        err += abs(float(w)) * L.error
    return val, err


def _generic_exponents(e):
    M = np.zeros(len(e), dtype=np.int64)
    for j, k in PAIRS:
        M = np.maximum(M, np.minimum(e[:, j], e[:, k]))
    return 2 * M + np.maximum(e - M[:, None], 0).max(axis=1)


@lru_cache(maxsize=None)
def _generic_poly(c, t_weight, deg=30):
    """Local factor at an odd prime p with chi(p) = c not dividing Delta, as a
    power series in x = 1/p truncated after x^deg."""
    nu = _nu_grid(deg)
    sgn = np.where(nu.sum(axis=1) % 2, c, 1)
    unit = np.array([1, -4 * c, 6, -4 * c, 1], dtype=float)
    alt = (-1.0) ** np.arange(deg + 1)
    weights = {0: np.eye(1, deg + 1, 0)[0], 1: np.eye(1, deg + 1, 1)[0],
               2: np.eye(1, deg + 1, 2)[0]}
    if t_weight == "primitive" and c == 1:
        one_m = np.zeros(deg + 1)
        one_m[0], one_m[2] = 1, -1
        xp1 = np.concatenate([[0], alt[:deg]])       # x / (1 + x)
        weights = {0: one_m, 1: np.convolve(xp1, one_m)[: deg + 1], 2: np.zeros(deg + 1)}
    p = 5 if c == 1 else 3
    poly = np.zeros(deg + 1)
    for (lam, mu, inter), k in _local_raw(p, (1, 1, 1, 1), [frozenset()] * 4).items():
        e = np.maximum(np.array(mu), nu + np.array(lam))
        f = _generic_exponents(e)
        s = np.bincount(f, weights=sgn, minlength=deg + 1)[: deg + 1]
        s = np.convolve(s, unit)[: deg + 1]
        poly += k * np.convolve(s, weights[inter])[: deg + 1]
    return poly


def _generic_primes_log(spec, P0, pmin, t_weight):
    ps = primes_up_to(P0)
    ps = ps[(ps > pmin) & (abs(spec.Delta) % ps != 0)]
    total = np.longdouble(0)
    for c in (1, -1):
        poly = _generic_poly(c, t_weight)
        sel = ps[ps % 4 == (1 if c == 1 else 3)]
        x = 1 / sel.astype(np.longdouble)
        v = np.zeros(len(sel), dtype=np.longdouble)
        for coef in poly[::-1]:
            v = v * x + np.longdouble(coef)
        total += np.sum(np.log(v), dtype=np.longdouble)
    return total


def _generic_log_bound(P0, t_weight):
    b = 0.0
    for c in (1, -1):
        poly = _generic_poly(c, t_weight)
        assert abs(poly[0] - 1) < 1e-12 and abs(poly[1]) < 1e-12
        s = sum(abs(poly[k]) * float(P0) ** (2 - k) for k in range(2, len(poly)))
        b = max(b, s / (1 - s / P0 ** 2))
    return b


@lru_cache(maxsize=None)
def constant_limit(spec, P0=10 ** 5, t_weight="r", pmin=100):
    """The full sum over all l and b, factored into an Euler product for each
    (m, a): the summand is multiplicative in (l, b) once c_{d,D,R_m} is
    written through its local densities, and sigma_2 depends only on (m, a).
    Returns (value, error)."""
    classes = [mc for mc in build_sigma(spec) if _area(spec, mc.m) > 0]
    odd = [int(p) for p in primes_up_to(max(pmin, 3)) if p > 2]
    odd += [p for p in (factorize(abs(spec.Delta)) if abs(spec.Delta) > 1 else {})
            if p > pmin]
    logG = _generic_primes_log(spec, P0, pmin, t_weight)
    tau = _generic_log_bound(P0, t_weight) * prime_tail(P0)
    total, err = 0.0, 0.0
    for mc in classes:
        om = omega_infty(spec, mc)
        for a in build_sigma_prime(spec):
            if a.mu == 0:
                continue
            d = [mj * n for mj, n in zip(mc.m, a.norms)]
            s2 = float(sigma_2(spec, d).value)
            val = om * s2 * _C(a.norm) * float(np.exp(logG))
            rel = float(np.expm1(tau))
            for p in sorted(set(odd)):
                E, e = _E_exact(spec, p, mc.m, a, t_weight)
                val *= E
                rel += e / abs(E) if E else 0.0
            total += a.mu * val
            err += abs(val) * rel
    return total / TORS, err / TORS


# bookkeeping

def eta():
    return 1 - (1 + log(log(2))) / log(2)


def f_main(B):
    B = float(B)
    return B * log(B) - B + 1


@dataclass(frozen=True)
class FitRow:
    B: int
    N: int
    cf: float
    ratio: float
    ratio_primitive: float


def fit_empirical(spec, B_list, report=None, P0=10 ** 5, counts=None):
    """Rows (B, N_nondeg(B), c f(B), N / (c f(B))) with c the complete sum
    c_limit, plus the ratio against the primitive-t constant."""
    from .points import count_points
    if report is None:
        report = assemble_constant(spec, Lmax=1, Bmax=1, P0=P0)
    rows = []
    for B in B_list:
        N = counts[B] if counts is not None else count_points(spec, B)[0]
        f = f_main(B)
        cf = report.c_limit * f
        ratio = N / cf if cf > 0 else float("nan")
        rp = N / (report.c_primitive * f) if cf > 0 else float("nan")
        rows.append(FitRow(int(B), int(N), cf, ratio, rp))
    return rows
