"""Surface data: coefficients, linear forms, resultants, bad primes, the
torsor-class set Sigma, the ideal corrections Sigma' and the regions R_m."""

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import combinations, product
from math import gcd, isqrt, prod, sqrt

from .errors import DegenerateError, GcdError
from .gaussian import IdealRep, canonical_split, factorize, ideal_from_primes

COEFF_CAP = 10**6


@dataclass(frozen=True)
class SurfaceSpec:
    """Y^2 + Z^2 = X(a3 X + b3)(a4 X + b4), forms L1=U, L2=V, L3, L4."""
    a3: int
    b3: int
    a4: int
    b4: int

    @property
    def a(self):
        return (1, 0, self.a3, self.a4)

    @property
    def b(self):
        return (0, 1, self.b3, self.b4)

    def delta(self, j, k):
        """Resultant of L_j and L_k (1-based)."""
        a, b = self.a, self.b
        return a[j - 1] * b[k - 1] - a[k - 1] * b[j - 1]

    @cached_property
    def deltas(self):
        return {(j, k): self.delta(j, k) for j in range(1, 5) for k in range(1, 5)}

    @property
    def Delta(self):
        return self.a3 * self.b3 * self.a4 * self.b4 * (self.a3 * self.b4 - self.a4 * self.b3)

    @property
    def Csq(self):
        return prod(abs(x) + abs(y) for x, y in zip(self.a, self.b))

    @property
    def C(self):
        return sqrt(self.Csq)

    @property
    def coeffs(self):
        return (self.a3, self.b3, self.a4, self.b4)

    def L(self, u, v):
        return (u, v, self.a3 * u + self.b3 * v, self.a4 * u + self.b4 * v)

    def __str__(self):
        return "%d,%d,%d,%d" % self.coeffs


def validate(a3, b3, a4, b4, cap=COEFF_CAP):
    a3, b3, a4, b4 = (int(x) for x in (a3, b3, a4, b4))
    if max(abs(a3), abs(b3), abs(a4), abs(b4)) > cap:
        raise ValueError("coefficients exceed the cap %d" % cap)
    if gcd(a3, b3) != 1 or gcd(a4, b4) != 1:
        raise GcdError("need gcd(a3,b3) = gcd(a4,b4) = 1, got %s" % ((a3, b3, a4, b4),))
    spec = SurfaceSpec(a3, b3, a4, b4)
    for j, k in combinations(range(1, 5), 2):
        if spec.delta(j, k) == 0:
            raise DegenerateError("L%d and L%d are proportional" % (j, k))
    assert spec.delta(1, 2) == 1
    return spec


def cross_ratio(spec):
    d = spec.delta
    return (Fraction(d(3, 1), d(3, 2))) / Fraction(d(4, 1), d(4, 2))


@dataclass(frozen=True)
class BadPrimeData:
    S: frozenset
    Sj: tuple          # S_1..S_4
    Sprime: frozenset


def bad_prime_data(spec):
    P = prod(abs(spec.delta(j, k)) for j, k in combinations(range(1, 5), 2))
    S = set(factorize(P)) | {2}
    Sj = []
    for j in range(1, 5):
        Pj = prod(abs(spec.delta(j, k)) for k in range(1, 5) if k != j)
        Sj.append(frozenset(p for p in S if p % 4 == 3 and Pj % p == 0))
    Sprime = frozenset(p for p in S if p % 4 == 1)
    return BadPrimeData(frozenset(S), tuple(Sj), Sprime)


@dataclass(frozen=True)
class TorsorClass:
    m: tuple
    alpha: int

    def __str__(self):
        return "(%d,%d,%d,%d)" % self.m


def sigma_j(primes):
    """Signed squarefree products of the given primes."""
    ps = sorted(primes)
    out = []
    for k in range(len(ps) + 1):
        for c in combinations(ps, k):
            out += [prod(c), -prod(c)]
    return sorted(set(out), key=lambda x: (abs(x), -x))


def build_sigma(spec):
    bp = bad_prime_data(spec)
    out = []
    for m in product(*(sigma_j(s) for s in bp.Sj)):
        if m[0] < 0:
            continue
        P = prod(m)
        if P < 0 or isqrt(P) ** 2 != P:
            continue
        if gcd(*m) != 1:
            continue
        out.append(TorsorClass(tuple(m), isqrt(P)))
    out.sort(key=lambda c: (tuple(abs(x) for x in c.m), tuple(-x for x in c.m)))
    return out


@dataclass(frozen=True)
class SigmaPrimeTerm:
    ideals: tuple       # IdealRep for a_1^+, ..., a_4^+
    mu: int
    norms: tuple
    choice: tuple = field(default=())   # ((p, I_p), ...) with I_p a frozenset of (j, sign)

    @property
    def norm(self):
        """Product of the norms; only its prime support is used."""
        return prod(self.norms)


def moebius_poset(pairs):
    """Elements of E_p (unions of I_jk = {(j,-1),(k,+1)}) with their Moebius
    weights, for the given list of pairs (j, k)."""
    gens = [frozenset({(j, -1), (k, 1)}) for j, k in pairs]
    elems = {frozenset()}
    for r in range(1, len(gens) + 1):
        for c in combinations(gens, r):
            elems.add(frozenset().union(*c))
    elems = sorted(elems, key=lambda I: (len(I), sorted(I)))
    mu = {}
    for I in elems:
        if not I:
            mu[I] = 1
        else:
            mu[I] = -sum(mu[J] for J in mu if J < I)
    return [(I, mu[I]) for I in elems]


def _ideals_for(choice):
    """Ideal quadruple a_j^+ from per-prime subsets I_p of {delta_j^+-}."""
    primes = [set() for _ in range(4)]
    for p, I in choice:
        for j, s in I:
            primes[j - 1].add((p, s))
    return tuple(ideal_from_primes(tuple(sorted(ps))) for ps in primes)


def build_sigma_prime(spec):
    bp = bad_prime_data(spec)
    per_p = []
    for p in sorted(bp.Sprime):
        canonical_split(p)
        pairs = [(j, k) for j, k in combinations(range(1, 5), 2) if spec.delta(j, k) % p == 0]
        per_p.append([(p, I, w) for I, w in moebius_poset(pairs)])
    out = []
    for combo in product(*per_p):
        mu = prod(w for _, _, w in combo)
        choice = tuple((p, I) for p, I, _ in combo)
        ideals = _ideals_for(choice)
        out.append(SigmaPrimeTerm(ideals, mu, tuple(I.norm for I in ideals), choice))
    return out


# regions R_m

@dataclass(frozen=True)
class Region:
    m: TorsorClass
    polygon: tuple
    area: Fraction


SQUARE = [(Fraction(-1), Fraction(-1)), (Fraction(1), Fraction(-1)),
          (Fraction(1), Fraction(1)), (Fraction(-1), Fraction(1))]


def clip(poly, a, b):
    """Keep the part of a convex polygon where a*u + b*v >= 0."""
    out = []
    n = len(poly)
    for i in range(n):
        P, Q = poly[i], poly[(i + 1) % n]
        fP = a * P[0] + b * P[1]
        fQ = a * Q[0] + b * Q[1]
        if fP >= 0:
            out.append(P)
        if (fP > 0 and fQ < 0) or (fP < 0 and fQ > 0):
            s = fP / (fP - fQ)
            out.append((P[0] + s * (Q[0] - P[0]), P[1] + s * (Q[1] - P[1])))
    dedup = []
    for P in out:
        if not dedup or dedup[-1] != P:
            dedup.append(P)
    if len(dedup) > 1 and dedup[0] == dedup[-1]:
        dedup.pop()
    return dedup


def shoelace(poly):
    n = len(poly)
    s = Fraction(0)
    for i in range(n):
        (x0, y0), (x1, y1) = poly[i], poly[(i + 1) % n]
        s += x0 * y1 - x1 * y0
    return abs(s) / 2


def region_polygon(spec, m):
    mm = m.m if isinstance(m, TorsorClass) else tuple(m)
    poly = list(SQUARE)
    for sgn, a, b in zip(mm, spec.a, spec.b):
        s = 1 if sgn > 0 else -1
        poly = clip(poly, s * a, s * b)
        if not poly:
            break
    area = shoelace(poly) if len(poly) >= 3 else Fraction(0)
    if area == 0:
        poly = []
    else:
        k = poly.index(min(poly))
        poly = poly[k:] + poly[:k]
    if not isinstance(m, TorsorClass):
        m = TorsorClass(mm, isqrt(abs(prod(mm))))
    return Region(m, tuple(poly), area)


def _ray_exit(d):
    """Point where the ray t*d, t > 0, leaves the square [-1,1]^2."""
    s = max(abs(d[0]), abs(d[1]))
    return (Fraction(d[0], s), Fraction(d[1], s))


def positive_product_area(spec, half=False):
    """Exact area of {prod L_j > 0} in [-1,1]^2 (restricted to u > 0 when
    `half`), by splitting the square into sectors along the lines L_j = 0."""
    import math
    rays = []
    for a, b in zip(spec.a, spec.b):
        rays += [(-b, a), (b, -a)]
    rays = sorted(set((x // gcd(x, y), y // gcd(x, y)) for x, y in rays),
                  key=lambda d: math.atan2(d[1], d[0]))
    corners = [(1, 1), (-1, 1), (-1, -1), (1, -1)]
    total = Fraction(0)
    n = len(rays)

    def cross(p, q):
        return p[0] * q[1] - p[1] * q[0]

    for i in range(n):
        r0, r1 = rays[i], rays[(i + 1) % n]
        mid = (r0[0] + r1[0], r0[1] + r1[1])
        if mid == (0, 0) or cross(r0, r1) <= 0:
            # sector of angle >= pi cannot occur: opposite rays are both present
            raise AssertionError("unexpected sector")
        # sample direction strictly inside the sector
        Lm = spec.L(*mid)
        if prod(Lm) <= 0:
            continue
        if half and mid[0] <= 0:
            continue
        pts = [(Fraction(0), Fraction(0)), _ray_exit(r0)]
        inner = [c for c in corners if cross(r0, c) > 0 and cross(c, r1) > 0]
        inner.sort(key=lambda c: math.atan2(c[1] * r0[0] - c[0] * r0[1], c[0] * r0[0] + c[1] * r0[1]))
        pts += [(Fraction(c[0]), Fraction(c[1])) for c in inner]
        pts.append(_ray_exit(r1))
        total += shoelace(pts)
    return total
