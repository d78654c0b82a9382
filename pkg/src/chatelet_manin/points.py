"""Rational points by height: normalized lifts, enumeration, torsor classes,
Gaussian torsor lifts, Hilbert symbols and the two-coloring."""

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt, prod

import numpy as np

from .errors import ClassNotInSigma, DegeneratePoint, InvalidPoint, LiftFailure
from .gaussian import (QI, GaussInt, canonical_element, factorize, gaussian_elements_of_norm,
                       kernel3_table, omega_table, D_mask, is_square, oddpart)
from .surface import TorsorClass, bad_prime_data, build_sigma, sigma_j


@dataclass(frozen=True, order=True)
class RationalPoint:
    x: int
    y: int
    t: int
    u: int
    v: int
    height: int


@dataclass(frozen=True)
class PointRecord:
    point: RationalPoint
    torsor_class: TorsorClass
    degenerate: bool
    figure_color: str
    real_component: str

    def sort_key(self):
        P = self.point
        return (P.height, P.u, P.v, P.x, P.y)


@dataclass(frozen=True)
class TorsorLift:
    z0p: QI
    z1p: QI
    z2p: QI
    z3p: QI
    z4p: QI

    @property
    def z(self):
        return (self.z1p, self.z2p, self.z3p, self.z4p)


def _uv_sign_ok(spec, u, v):
    L = spec.L(u, v)
    if L[0] != 0:
        return L[0] > 0
    return L[1] * L[2] * L[3] > 0


def normalize_lift(spec, x, y, t, u, v):
    x, y, t, u, v = (int(c) for c in (x, y, t, u, v))
    if (u, v) == (0, 0) or (x, y, t) == (0, 0, 0):
        raise InvalidPoint("zero block")
    n = prod(spec.L(u, v))
    if x * x + y * y != t * t * n:
        raise InvalidPoint("x^2 + y^2 != t^2 prod L_j for %s" % ((x, y, t, u, v),))
    if t == 0:
        raise InvalidPoint("t = 0 is not a point of the affine model")
    g = gcd(u, v)
    u, v = u // g, v // g
    # rescaling (u,v) by g multiplies prod L by g^4: absorb g^2 into t
    x, y, t = x, y, t * g * g
    h = gcd(gcd(x, y), t)
    x, y, t = x // h, y // h, t // h
    if t < 0:
        x, y, t = -x, -y, -t
    if not _uv_sign_ok(spec, u, v):
        u, v = -u, -v
        if not _uv_sign_ok(spec, u, v):
            raise InvalidPoint("no admissible sign for (u, v)")
    return RationalPoint(x, y, t, u, v, max(abs(u), abs(v)) ** 2 * t)


def height_via_psi(spec, P):
    """H_4 of (v^2 t : uvt : u^2 t : x : y), with the last two divided by C."""
    c = [P.v * P.v * P.t, P.u * P.v * P.t, P.u * P.u * P.t, P.x, P.y]
    g = 0
    for a in c:
        g = gcd(g, a)
    if g == 0:
        raise InvalidPoint("zero coordinates")
    c = [a // g for a in c]
    Csq = spec.Csq
    # compare |x|/C against integer candidates exactly via squares
    best = max(abs(a) for a in c[:3])
    for a in c[3:]:
        if a * a > best * best * Csq:
            raise InvalidPoint("x/C dominates: height not integral")
    return best


# torsor classes

def _sf3(n):
    """Product of primes p = 3 mod 4 with odd v_p(n)."""
    return prod(p for p, e in factorize(n).items() if p % 4 == 3 and e % 2)


def _sqfree_kernel(n):
    return prod(p for p, e in factorize(n).items() if e % 2)


def assign_class(spec, P, sigma=None, bp=None):
    bp = bad_prime_data(spec) if bp is None else bp
    L = spec.L(P.u, P.v)
    m = [None] * 4
    for j in range(4):
        if L[j] != 0:
            m[j] = (1 if L[j] > 0 else -1) * _sf3(L[j])
    zeros = [j for j in range(4) if L[j] == 0]
    if len(zeros) > 1:
        raise ClassNotInSigma("two forms vanish at %s" % ((P.u, P.v),))
    if zeros:
        j = zeros[0]
        rest = prod(m[k] for k in range(4) if k != j)
        need = (1 if rest > 0 else -1) * _sqfree_kernel(rest)
        if need not in sigma_j(bp.Sj[j]):
            raise ClassNotInSigma("no element of Sigma_%d completes %s" % (j + 1, m))
        m[j] = need
    m = tuple(m)
    sig = build_sigma(spec) if sigma is None else sigma
    for c in sig:
        if c.m == m:
            return c
    raise ClassNotInSigma("class %s of %s not in Sigma" % (m, P))


def lift_to_torsor(spec, P, m, z1=None):
    L = spec.L(P.u, P.v)
    if prod(L) == 0:
        raise DegeneratePoint("lift needs a nondegenerate point")
    mm = m.m
    z0 = canonical_element(P.t)
    zs = []
    for j in range(3):
        q = L[j] // mm[j]
        if L[j] % mm[j] or q <= 0:
            raise LiftFailure("L_%d / m_%d not a positive integer" % (j + 1, j + 1))
        z = canonical_element(q)
        if z is None:
            raise LiftFailure("L_%d / m_%d not a norm" % (j + 1, j + 1))
        zs.append(QI.of(z))
    if z0 is None:
        raise LiftFailure("t is not a norm")
    if z1 is not None:
        zs[0] = QI.of(z1)
    z0 = QI.of(z0)
    den = z0 * z0 * zs[0] * zs[1] * zs[2] * m.alpha
    z4 = QI.of(GaussInt(P.x, P.y)) / den
    if z4.norm() != Fraction(L[3], mm[3]):
        raise LiftFailure("N(z4) = %s != L4/m4" % z4.norm())
    lift = TorsorLift(z0, zs[0], zs[1], zs[2], z4)
    if not torsor_equations_hold(spec, m, lift):
        raise LiftFailure("torsor equations fail")
    return lift


def torsor_equations_hold(spec, m, lift):
    N = [z.norm() for z in lift.z]
    mm = m.m
    d = spec.delta
    for j, k, l in ((1, 2, 3), (1, 2, 4), (1, 3, 4), (2, 3, 4)):
        s = (d(j, k) * mm[l - 1] * N[l - 1] + d(k, l) * mm[j - 1] * N[j - 1]
             + d(l, j) * mm[k - 1] * N[k - 1])
        if s != 0:
            return False
    return True


# Hilbert symbols and coloring

def hilbert_minus_one(q, place):
    """(-1, q) at place 'inf' or a prime p."""
    q = Fraction(q)
    if q == 0:
        raise ValueError("q = 0")
    if place in ("inf", None, float("inf")):
        return -1 if q < 0 else 1
    p = int(place)
    num, den = q.numerator, q.denominator
    if p == 2:
        u = oddpart(num * den)
        return -1 if (u % 4) == 3 else 1
    v = 0
    while num % p == 0:
        num //= p
        v += 1
    while den % p == 0:
        den //= p
        v -= 1
    return -1 if (v * (p - 1) // 2) % 2 else 1


def brauer_color(spec, P, pair):
    """Local invariants of (-1, L_j/L_k) at every relevant place, and the
    figure color (black iff oddpart(u v) = 1 mod 4)."""
    j, k = pair
    L = spec.L(P.u, P.v)
    if prod(L) == 0:
        raise DegeneratePoint("coloring needs a nondegenerate point")
    q = Fraction(L[j - 1], L[k - 1])
    places = {"inf", 2} | set(factorize(q.numerator)) | set(factorize(q.denominator))
    places.discard(1)
    inv = {}
    for w in sorted(places, key=lambda x: (x != "inf", 0 if x == "inf" else x)):
        inv[w] = Fraction(0) if hilbert_minus_one(q, w) == 1 else Fraction(1, 2)
    return inv, figure_color(P)


def figure_color(P):
    if P.u * P.v == 0:
        return "none"
    return "black" if oddpart(P.u * P.v) % 4 == 1 else "white"


def component_patterns(spec):
    """The two sign patterns of (L_j) (with L_1 > 0) on S(R), ordered A, B."""
    import math
    rays = []
    for a, b in zip(spec.a, spec.b):
        rays += [(-b, a), (b, -a)]
    rays = sorted(set((x // gcd(x, y), y // gcd(x, y)) for x, y in rays),
                  key=lambda d: math.atan2(d[1], d[0]))
    pats = set()
    for i in range(len(rays)):
        r0, r1 = rays[i], rays[(i + 1) % len(rays)]
        mid = (r0[0] + r1[0], r0[1] + r1[1])
        L = spec.L(*mid)
        if mid[0] > 0 and prod(L) > 0:
            pats.add(tuple(1 if x > 0 else -1 for x in L))
    pats = sorted(pats, reverse=True)
    assert len(pats) == 2, pats
    return pats


def real_component(spec, u, v, patterns=None):
    pats = component_patterns(spec) if patterns is None else patterns
    L = spec.L(u, v)
    if prod(L) == 0:
        # side of the root where prod L > 0
        for du, dv in ((-v, u), (v, -u)):
            K = 4 * (abs(u) + abs(v) + 1) * max(1, max(abs(x) for x in spec.a + spec.b))
            uu, vv = K * u + du, K * v + dv
            if uu < 0 or (uu == 0 and vv < 0):
                uu, vv = -uu, -vv
            LL = spec.L(uu, vv)
            if prod(LL) > 0 and LL[0] > 0:
                L = LL
                break
    pat = tuple(1 if x > 0 else -1 for x in L)
    return "A" if pat == pats[0] else "B"


# enumeration

def degenerate_points(spec):
    """The four points over roots of prod L_j, normalized, with heights."""
    out = []
    for a, b in zip(spec.a, spec.b):
        u, v = -b, a
        g = gcd(u, v)
        u, v = u // g, v // g
        if not _uv_sign_ok(spec, u, v):
            u, v = -u, -v
        out.append(RationalPoint(0, 0, 1, u, v, max(abs(u), abs(v)) ** 2))
    return out


def _make_record(spec, P, sigma, bp, pats):
    deg = prod(spec.L(P.u, P.v)) == 0
    return PointRecord(P, assign_class(spec, P, sigma, bp), deg,
                       "none" if deg else figure_color(P), real_component(spec, P.u, P.v, pats))


def primitive_pairs(R):
    """Normalized-candidate (u, v) with 0 <= u <= R, |v| <= R, gcd 1
    (u = 0 only with v = +-1)."""
    for u in range(0, R + 1):
        for v in range(-R, R + 1):
            if gcd(u, v) == 1:
                yield u, v


def enumerate_points(spec, B):
    """All points of height <= B, ordered by (height, u, v, x, y)."""
    B = int(B)
    R = isqrt(B)
    sigma = build_sigma(spec)
    bp = bad_prime_data(spec)
    pats = component_patterns(spec)
    recs = []
    for P in degenerate_points(spec):
        if P.height <= B:
            recs.append(_make_record(spec, P, sigma, bp, pats))
    for u, v in primitive_pairs(R):
        if not _uv_sign_ok(spec, u, v):
            continue
        n = prod(spec.L(u, v))
        if n <= 0:
            continue
        M2 = max(abs(u), abs(v)) ** 2
        nf = factorize(n)
        for t in range(1, B // M2 + 1):
            f = dict(nf)
            for p, e in factorize(t).items():
                f[p] = f.get(p, 0) + 2 * e
            for x, y in sorted((z.re, z.im) for z in gaussian_elements_of_norm(t * t * n, f)):
                if gcd(gcd(x, y), t) == 1:
                    P = RationalPoint(x, y, t, u, v, M2 * t)
                    recs.append(_make_record(spec, P, sigma, bp, pats))
    recs.sort(key=PointRecord.sort_key)
    return recs


def _hash3_table(n, seed=12345):
    """XOR of random 64-bit labels of primes p = 3 mod 4 with odd v_p."""
    from .gaussian import primes_up_to
    rng = np.random.default_rng(seed)
    h = np.zeros(n + 1, dtype=np.uint64)
    for p in primes_up_to(n):
        p = int(p)
        if p % 4 != 3:
            continue
        lab = np.uint64(rng.integers(1, 2**63, dtype=np.int64))
        pk = p
        while pk <= n:
            h[pk::pk] ^= lab
            pk *= p
    return h


def _candidates(spec, R):
    """Nondegenerate normalized coprime (u, v) with max(|u|,|v|) <= R whose
    product of forms has square 3-mod-4 part (exactly verified)."""
    if R < 1:
        return []
    u, v = np.meshgrid(np.arange(1, R + 1, dtype=np.int64), np.arange(-R, R + 1, dtype=np.int64),
                       indexing="ij")
    u, v = u.ravel(), v.ravel()
    keep = (v != 0) & (np.gcd(u, v) == 1)
    u, v = u[keep], v[keep]
    L3 = spec.a3 * u + spec.b3 * v
    L4 = spec.a4 * u + spec.b4 * v
    keep = (L3 != 0) & (L4 != 0) & (np.sign(v) * np.sign(L3) * np.sign(L4) > 0)
    u, v, L3, L4 = u[keep], v[keep], L3[keep], L4[keep]
    K = int(max(R, np.abs(L3).max(initial=1), np.abs(L4).max(initial=1)))
    h = _hash3_table(K)
    x = h[u] ^ h[np.abs(v)] ^ h[np.abs(L3)] ^ h[np.abs(L4)]
    keep = x == 0
    out = []
    k3 = kernel3_table(K)
    for uu, vv, l3, l4 in zip(u[keep].tolist(), v[keep].tolist(), L3[keep].tolist(), L4[keep].tolist()):
        ker = int(k3[uu]) * int(k3[abs(vv)]) * int(k3[abs(l3)]) * int(k3[abs(l4)])
        if is_square(ker):
            out.append((uu, vv, (uu, vv, l3, l4)))
    return out


def _split_exponents(L):
    f = {}
    for x in L:
        for p, e in factorize(x).items():
            if p % 4 == 1:
                f[p] = f.get(p, 0) + e
    return f


class _DTables:
    def __init__(self, n):
        self.n = n
        mask = D_mask(n)
        self.w2 = np.where(mask, 2 ** omega_table(n), 0).astype(np.int64)
        self.W = np.cumsum(self.w2)
        self.Dlist = np.nonzero(mask)[0]
        self.mask = mask

    def F(self, X, q):
        if q == 1:
            return int(self.W[X])
        return int(self.w2[q::q][: X // q].sum())


def count_points(spec, B, workers=1):
    """(nondegenerate, degenerate) numbers of points of height <= B."""
    B = int(B)
    R = isqrt(B)
    deg = sum(1 for P in degenerate_points(spec) if P.height <= B)
    cands = _candidates(spec, R)
    if not cands:
        return 0, deg
    tab = _DTables(B)
    total = 0
    for u, v, L in cands:
        X = B // max(abs(u), abs(v)) ** 2
        f = _split_exponents(L)
        small = [(p, e) for p, e in f.items() if p <= X]
        const = prod(e + 1 for p, e in f.items() if p > X)
        acc = 0
        k = len(small)
        for mask in range(1 << k):
            coef, q = 1, 1
            for i, (p, e) in enumerate(small):
                if mask >> i & 1:
                    coef *= -e
                    q *= p
                else:
                    coef *= e + 1
            if q > X:
                continue
            acc += coef * tab.F(X, q)
        total += 4 * const * acc
    return total, deg


def count_histogram(spec, Bmax):
    """Array H with H[h] = number of nondegenerate points of height exactly h."""
    Bmax = int(Bmax)
    R = isqrt(Bmax)
    H = np.zeros(Bmax + 1, dtype=np.int64)
    tab = _DTables(Bmax)
    Dl = tab.Dlist
    tfac = {}
    for u, v, L in _candidates(spec, R):
        M2 = max(abs(u), abs(v)) ** 2
        X = Bmax // M2
        f = _split_exponents(L)
        for t in Dl[: np.searchsorted(Dl, X, side="right")].tolist():
            if t not in tfac:
                tfac[t] = tuple(factorize(t)) if t > 1 else ()
            tp = tfac[t]
            val = 4 * 2 ** len(tp) * prod(e + 1 for p, e in f.items() if p not in tp)
            H[M2 * t] += val
    return H


def cumulative(H):
    return np.cumsum(H)
