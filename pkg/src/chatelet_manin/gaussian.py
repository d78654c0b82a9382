"""Arithmetic in Z[i]: chi, r(n), two-square representations, split primes
and squarefree ideals with norm in D (all prime factors = 1 mod 4)."""

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product
from math import gcd, isqrt

import numpy as np

from .errors import NotSplitError

SIEVE_MAX = 10**7

_spf = np.zeros(2, dtype=np.int32)
_primes = np.zeros(0, dtype=np.int64)


def _build_sieve(n):
    global _spf, _primes
    n = max(n, 1000)
    spf = np.zeros(n + 1, dtype=np.int32)
    spf[1] = 1
    for p in range(2, isqrt(n) + 1):
        if spf[p] == 0:
            blk = spf[p * p::p]
            blk[blk == 0] = p
            spf[p] = p
    rest = np.nonzero(spf == 0)[0]
    spf[rest] = rest
    spf[0] = 0
    _spf = spf
    _primes = np.nonzero(spf[2:] == np.arange(2, n + 1))[0] + 2


def spf_table(n):
    """Smallest-prime-factor table covering [0, n] (grown on demand)."""
    if n > SIEVE_MAX:
        raise ValueError("sieve limit exceeded: %d > %d" % (n, SIEVE_MAX))
    if len(_spf) <= n:
        _build_sieve(min(SIEVE_MAX, max(n, 2 * (len(_spf) - 1))))
    return _spf


def primes_up_to(n):
    spf_table(n)
    return _primes[: np.searchsorted(_primes, n, side="right")]


def factorize(n):
    """Prime factorization of |n| as a dict {p: e}. n must be nonzero."""
    n = abs(int(n))
    if n == 0:
        raise ValueError("cannot factor 0")
    out = {}
    if n <= SIEVE_MAX:
        spf = spf_table(n)
        while n > 1:
            p = int(spf[n])
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            out[p] = e
        return out
    if n > SIEVE_MAX * SIEVE_MAX:
        raise ValueError("input %d beyond trial-division range" % n)
    for p in primes_up_to(isqrt(n) + 1):
        p = int(p)
        if p * p > n:
            break
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            out[p] = e
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def chi(n):
    n = int(n)
    if n % 2 == 0:
        return 0
    return 1 if n % 4 == 1 else -1


def r_count(n):
    """Number of (x, y) in Z^2 with x^2 + y^2 = n."""
    if n < 1:
        raise ValueError("r_count needs n >= 1")
    r = 4
    for p, e in factorize(n).items():
        if p % 4 == 3:
            if e % 2:
                return 0
        elif p % 4 == 1:
            r *= e + 1
    return r


def r_table(n):
    """numpy array r[k] = r(k) for 0 <= k <= n (r[0] set to 1 by convention)."""
    n = int(n)
    r = np.ones(n + 1, dtype=np.int64)
    k3 = kernel3_table(n)
    for p in primes_up_to(n):
        p = int(p)
        if p % 4 != 1:
            continue
        pk, k = p, 1
        # factor k on multiples of p^k becomes k+1
        while pk <= n:
            r[pk::pk] = r[pk::pk] // k * (k + 1)
            pk *= p
            k += 1
    bad = k3 > 1
    out = 4 * r
    out[bad] = 0
    out[0] = 1
    return out


def kernel3_table(n):
    """k3[k] = product of primes p = 3 mod 4 with v_p(k) odd."""
    k3 = np.ones(n + 1, dtype=np.int64)
    for p in primes_up_to(n):
        p = int(p)
        if p % 4 != 3:
            continue
        pk, k = p, 1
        while pk <= n:
            if k % 2:
                k3[pk::pk] *= p
            else:
                k3[pk::pk] //= p
            pk *= p
            k += 1
    return k3


@dataclass(frozen=True)
class GaussInt:
    re: int
    im: int

    def __add__(self, o):
        return GaussInt(self.re + o.re, self.im + o.im)

    def __sub__(self, o):
        return GaussInt(self.re - o.re, self.im - o.im)

    def __mul__(self, o):
        if isinstance(o, int):
            return GaussInt(self.re * o, self.im * o)
        return GaussInt(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __neg__(self):
        return GaussInt(-self.re, -self.im)

    def conj(self):
        return GaussInt(self.re, -self.im)

    def norm(self):
        return self.re * self.re + self.im * self.im

    def __pow__(self, k):
        out = GaussInt(1, 0)
        for _ in range(k):
            out = out * self
        return out

    def __str__(self):
        if self.im == 0:
            return str(self.re)
        if self.re == 0:
            return "%di" % self.im
        return "%d%+di" % (self.re, self.im)


ONE = GaussInt(1, 0)
UNITS = (GaussInt(1, 0), GaussInt(0, 1), GaussInt(-1, 0), GaussInt(0, -1))


@dataclass(frozen=True)
class QI:
    """Element of Q(i) with Fraction coordinates."""
    re: Fraction
    im: Fraction

    @staticmethod
    def of(z):
        if isinstance(z, QI):
            return z
        if isinstance(z, GaussInt):
            return QI(Fraction(z.re), Fraction(z.im))
        return QI(Fraction(z), Fraction(0))

    def __mul__(self, o):
        o = QI.of(o)
        return QI(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    def __add__(self, o):
        o = QI.of(o)
        return QI(self.re + o.re, self.im + o.im)

    def conj(self):
        return QI(self.re, -self.im)

    def norm(self):
        return self.re * self.re + self.im * self.im

    def __truediv__(self, o):
        o = QI.of(o)
        n = o.norm()
        if n == 0:
            raise ZeroDivisionError
        w = self * o.conj()
        return QI(w.re / n, w.im / n)

    def is_integral(self):
        return self.re.denominator == 1 and self.im.denominator == 1

    def __str__(self):
        return "(%s)+(%s)i" % (self.re, self.im)


@dataclass(frozen=True)
class SplitPrime:
    p: int
    pi: GaussInt


@lru_cache(maxsize=None)
def canonical_split(p):
    """The fixed Gaussian prime above p: a+bi with a > b > 0 (1+i for p=2)."""
    if p == 2:
        return SplitPrime(2, GaussInt(1, 1))
    if p % 4 != 1:
        raise NotSplitError("%d is not split in Z[i]" % p)
    # square root of -1 mod p, then Euclid (Hermite-Serret)
    c = 2
    while pow(c, (p - 1) // 2, p) != p - 1:
        c += 1
    x = pow(c, (p - 1) // 4, p)
    a, b = p, x
    s = isqrt(p)
    while b > s:
        a, b = b, a % b
    c2 = p - b * b
    a2 = isqrt(c2)
    assert a2 * a2 == c2
    hi, lo = max(a2, b), min(a2, b)
    return SplitPrime(p, GaussInt(hi, lo))


def canonical_element(n, fac=None):
    """A fixed Gaussian integer of norm n (canonical primes, no conjugates),
    or None when n is not a sum of two squares."""
    fac = factorize(n) if fac is None else fac
    z = ONE
    for p, e in sorted(fac.items()):
        if p == 2:
            z = z * (GaussInt(1, 1) ** (e % 2)) * (2 ** (e // 2))
        elif p % 4 == 3:
            if e % 2:
                return None
            z = z * (p ** (e // 2))
        else:
            z = z * canonical_split(p).pi ** e
    return z


def gaussian_elements_of_norm(n, fac=None):
    """All z in Z[i] with N(z) = n."""
    fac = factorize(n) if fac is None else fac
    base = ONE
    choices = []
    for p, e in sorted(fac.items()):
        if p == 2:
            base = base * GaussInt(1, 1) ** e
        elif p % 4 == 3:
            if e % 2:
                return []
            base = base * p ** (e // 2)
        else:
            w = canonical_split(p).pi
            wb = w.conj()
            choices.append([w ** a * wb ** (e - a) for a in range(e + 1)])
    out = []
    for combo in product(*choices):
        z = base
        for c in combo:
            z = z * c
        for u in UNITS:
            out.append(z * u)
    return out


def representations(n, fac=None):
    """Sorted list of (x, y) with x^2 + y^2 = n."""
    return sorted((z.re, z.im) for z in gaussian_elements_of_norm(n, fac))


@dataclass(frozen=True)
class IdealRep:
    """Squarefree ideal of Z[i] with norm in D. `primes` holds pairs (p, s):
    s = +1 for the canonical prime above p, s = -1 for its conjugate."""
    gen: GaussInt
    norm: int
    mu: int
    primes: frozenset = frozenset()

    def __str__(self):
        return "(%s)" % self.gen


UNIT_IDEAL = IdealRep(ONE, 1, 1, frozenset())


def ideal_from_primes(primes):
    gen, norm = ONE, 1
    for p, s in sorted(primes):
        w = canonical_split(p).pi
        gen = gen * (w if s > 0 else w.conj())
        norm *= p
    return IdealRep(gen, norm, (-1) ** len(primes), frozenset(primes))


def squarefree_ideals_up_to(X):
    """All squarefree ideals with norm in D and norm <= X, with Moebius sign."""
    X = int(X)
    split = [int(p) for p in primes_up_to(X) if p % 4 == 1]
    out = []

    def rec(i, norm, primes):
        out.append(ideal_from_primes(primes))
        for k in range(i, len(split)):
            p = split[k]
            if norm * p > X:
                break
            rec(k + 1, norm * p, primes + ((p, 1),))
            rec(k + 1, norm * p, primes + ((p, -1),))
            if norm * p * p <= X:
                rec(k + 1, norm * p * p, primes + ((p, 1), (p, -1)))

    rec(0, 1, ())
    out.sort(key=lambda I: (I.norm, sorted(I.primes)))
    return out


def ideals_of_norm(n):
    """Squarefree ideals with norm exactly n (n in D)."""
    choices = []
    for p, e in sorted(factorize(n).items()):
        if p % 4 != 1 or e > 2:
            return []
        if e == 2:
            choices.append([((p, 1), (p, -1))])
        else:
            choices.append([((p, 1),), ((p, -1),)])
    return [ideal_from_primes(sum(c, ())) for c in product(*choices)]


def ideal_intersection_norm(*ideals):
    primes = set()
    for I in ideals:
        primes |= I.primes
    n = 1
    for p, _ in primes:
        n *= p
    return n


def in_D(n):
    """True iff every prime factor of n is 1 mod 4."""
    return n >= 1 and all(p % 4 == 1 for p in factorize(n))


def D_mask(n):
    """Boolean array: mask[k] iff k in D, for 0 <= k <= n."""
    mask = np.ones(n + 1, dtype=bool)
    mask[0] = False
    for p in primes_up_to(n):
        if p % 4 != 1:
            mask[p::p] = False
    return mask


def omega_table(n):
    """Number of distinct prime factors for 0 <= k <= n."""
    w = np.zeros(n + 1, dtype=np.int64)
    for p in primes_up_to(n):
        w[p::p] += 1
    return w


def oddpart(n):
    n = int(n)
    if n == 0:
        raise ValueError("oddpart(0)")
    while n % 2 == 0:
        n //= 2
    return n


def squarefree_odd_upto(n):
    """Odd squarefree positive integers <= n with their Moebius value."""
    out = []
    for k in range(1, n + 1, 2):
        if k == 1:
            out.append((1, 1))
            continue
        f = factorize(k)
        if max(f.values()) == 1:
            out.append((k, (-1) ** len(f)))
    return out


def is_square(n):
    return n >= 0 and isqrt(n) ** 2 == n


def lcm(a, b):
    return a // gcd(a, b) * b
