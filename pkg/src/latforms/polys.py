"""Dense univariate polynomial arithmetic over a prime field F_p.

A polynomial c0 + c1*t + ... + cd*t^d is stored as the tuple
(c0, c1, ..., cd) of integers in {0, ..., p-1} with cd != 0; the zero
polynomial is the empty tuple.  Values are immutable and hashable.

Degrees live in Z together with NEG_INF (the degree of 0), so that
deg(f*g) = deg f + deg g holds with NEG_INF absorbing.
"""

from __future__ import annotations

import random
from typing import Iterable, Optional

NEG_INF = float("-inf")


def is_prime(n: int) -> bool:
    # deterministic Miller-Rabin for n < 3.3e24
    if n < 2:
        return False
    for q in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


class FpPoly:
    """An element of F_p[t], p prime."""

    __slots__ = ("p", "coeffs")

    def __init__(self, p: int, coeffs: Iterable[int] = ()):
        cs = [c % p for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, *_):
        raise AttributeError("FpPoly is immutable")

    @classmethod
    def zero(cls, p: int) -> "FpPoly":
        return cls(p, ())

    @classmethod
    def one(cls, p: int) -> "FpPoly":
        return cls(p, (1,))

    @classmethod
    def const(cls, p: int, c: int) -> "FpPoly":
        return cls(p, (c,))

    @classmethod
    def x(cls, p: int) -> "FpPoly":
        return cls(p, (0, 1))

    @property
    def degree(self):
        """Degree of the polynomial; NEG_INF for 0."""
        return len(self.coeffs) - 1 if self.coeffs else NEG_INF

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def is_unit(self) -> bool:
        return len(self.coeffs) == 1

    @property
    def lc(self) -> int:
        """Leading coefficient (0 for the zero polynomial)."""
        return self.coeffs[-1] if self.coeffs else 0

    @property
    def is_monic(self) -> bool:
        return self.lc == 1

    def _check(self, other: "FpPoly") -> None:
        if not isinstance(other, FpPoly) or other.p != self.p:
            raise TypeError("operands must be FpPoly over the same prime field")

    def __add__(self, other: "FpPoly") -> "FpPoly":
        self._check(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = (out[i] + c) % self.p
        return FpPoly(self.p, out)

    def __neg__(self) -> "FpPoly":
        return FpPoly(self.p, [-c for c in self.coeffs])

    def __sub__(self, other: "FpPoly") -> "FpPoly":
        return self + (-other)

    def __mul__(self, other: "FpPoly") -> "FpPoly":
        self._check(other)
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return FpPoly.zero(self.p)
        out = [0] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    out[i + j] += ai * bj
        return FpPoly(self.p, out)

    def scale(self, c: int) -> "FpPoly":
        return FpPoly(self.p, [c * a for a in self.coeffs])

    def shift(self, k: int) -> "FpPoly":
        """Multiply by t^k."""
        if self.is_zero:
            return self
        return FpPoly(self.p, (0,) * k + self.coeffs)

    def __divmod__(self, other: "FpPoly") -> tuple["FpPoly", "FpPoly"]:
        self._check(other)
        if other.is_zero:
            raise ZeroDivisionError("division by zero polynomial")
        p = self.p
        rem = list(self.coeffs)
        db = len(other.coeffs) - 1
        inv_lc = pow(other.lc, p - 2, p)
        quot = [0] * max(len(rem) - db, 0)
        for i in range(len(rem) - 1, db - 1, -1):
            c = rem[i] % p
            if c:
                q = c * inv_lc % p
                quot[i - db] = q
                for j, bc in enumerate(other.coeffs):
                    rem[i - db + j] = (rem[i - db + j] - q * bc) % p
        return FpPoly(p, quot), FpPoly(p, rem[:db])

    def __floordiv__(self, other: "FpPoly") -> "FpPoly":
        return divmod(self, other)[0]

    def __mod__(self, other: "FpPoly") -> "FpPoly":
        return divmod(self, other)[1]

    def __pow__(self, e: int) -> "FpPoly":
        if e < 0:
            raise ValueError("negative exponent")
        out = FpPoly.one(self.p)
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def monic(self) -> "FpPoly":
        if self.is_zero or self.lc == 1:
            return self
        return self.scale(pow(self.lc, self.p - 2, self.p))

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, FpPoly)
            and self.p == other.p
            and self.coeffs == other.coeffs
        )

    def __hash__(self) -> int:
        return hash((self.p, self.coeffs))

    def __repr__(self) -> str:
        if self.is_zero:
            return "0"
        terms = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if i == 0:
                terms.append(str(c))
            elif i == 1:
                terms.append(f"{c}*t" if c != 1 else "t")
            else:
                terms.append(f"{c}*t^{i}" if c != 1 else f"t^{i}")
        return " + ".join(terms)


def poly_gcd(a: FpPoly, b: FpPoly) -> FpPoly:
    """Monic gcd."""
    while not b.is_zero:
        a, b = b, a % b
    return a.monic()


class FpRat:
    """A rational function num/den over F_p, reduced, with monic denominator."""

    __slots__ = ("num", "den")

    def __init__(self, num: FpPoly, den: Optional[FpPoly] = None):
        p = num.p
        if den is None:
            den = FpPoly.one(p)
        if den.is_zero:
            raise ZeroDivisionError("zero denominator")
        g = poly_gcd(num, den)
        if g.degree is not NEG_INF and g.degree > 0:
            num, den = num // g, den // g
        if not den.is_monic:
            inv = pow(den.lc, p - 2, p)
            num, den = num.scale(inv), den.scale(inv)
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    def __setattr__(self, *_):
        raise AttributeError("FpRat is immutable")

    @property
    def p(self) -> int:
        return self.num.p

    @property
    def degree(self):
        """deg num - deg den, extending deg to the fraction field."""
        if self.num.is_zero:
            return NEG_INF
        return self.num.degree - self.den.degree

    @property
    def is_zero(self) -> bool:
        return self.num.is_zero

    def __add__(self, other: "FpRat") -> "FpRat":
        return FpRat(self.num * other.den + other.num * self.den, self.den * other.den)

    def __neg__(self) -> "FpRat":
        return FpRat(-self.num, self.den)

    def __sub__(self, other: "FpRat") -> "FpRat":
        return self + (-other)

    def __mul__(self, other: "FpRat") -> "FpRat":
        return FpRat(self.num * other.num, self.den * other.den)

    def mul_poly(self, f: FpPoly) -> "FpRat":
        return FpRat(self.num * f, self.den)

    def __truediv__(self, other: "FpRat") -> "FpRat":
        if other.num.is_zero:
            raise ZeroDivisionError("division by zero rational function")
        return FpRat(self.num * other.den, self.den * other.num)

    def __bool__(self) -> bool:
        return not self.num.is_zero

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, FpRat)
            and self.num == other.num
            and self.den == other.den
        )

    def __hash__(self):
        return hash((self.num, self.den))

    def __repr__(self) -> str:
        if self.den.is_unit:
            return repr(self.num)
        return f"({self.num!r})/({self.den!r})"


def poly_ext_gcd(a: FpPoly, b: FpPoly) -> tuple[FpPoly, FpPoly, FpPoly]:
    """(g, u, v) with g = u*a + v*b monic."""
    p = a.p
    r0, r1 = a, b
    s0, s1 = FpPoly.one(p), FpPoly.zero(p)
    t0, t1 = FpPoly.zero(p), FpPoly.one(p)
    while not r1.is_zero:
        q, r = divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if r0.is_zero:
        return r0, s0, t0
    inv = pow(r0.lc, p - 2, p)
    return r0.scale(inv), s0.scale(inv), t0.scale(inv)


def poly_lcm(a: FpPoly, b: FpPoly) -> FpPoly:
    if a.is_zero or b.is_zero:
        return FpPoly.zero(a.p)
    return ((a * b) // poly_gcd(a, b)).monic()


def poly_powmod(base: FpPoly, e: int, mod: FpPoly) -> FpPoly:
    out = FpPoly.one(base.p)
    base = base % mod
    while e:
        if e & 1:
            out = out * base % mod
        base = base * base % mod
        e >>= 1
    return out


def poly_derivative(f: FpPoly) -> FpPoly:
    return FpPoly(f.p, [i * c for i, c in enumerate(f.coeffs)][1:])


def nth_poly(p: int, index: int) -> FpPoly:
    """The index-th polynomial in the canonical order (base-p digits = coeffs)."""
    cs = []
    while index:
        index, r = divmod(index, p)
        cs.append(r)
    return FpPoly(p, cs)


def is_irreducible(f: FpPoly) -> bool:
    """Rabin's irreducibility test."""
    n = f.degree
    if n is NEG_INF or n == 0:
        return False
    if n == 1:
        return True
    p = f.p
    x = FpPoly.x(p)
    primes = set()
    m = n
    d = 2
    while d * d <= m:
        while m % d == 0:
            primes.add(d)
            m //= d
        d += 1
    if m > 1:
        primes.add(m)
    for q in primes:
        h = poly_powmod(x, p ** (n // q), f) - (x % f)
        if poly_gcd(h, f).degree != 0:
            return False
    return (poly_powmod(x, p**n, f) - (x % f)).is_zero


def _squarefree_parts(f: FpPoly) -> list[tuple[FpPoly, int]]:
    # Yun-style decomposition, char p handled via p-th-root recursion.
    p = f.p
    out: list[tuple[FpPoly, int]] = []
    if f.degree < 1:
        return out
    fd = poly_derivative(f)
    if fd.is_zero:
        # f = g(t^p) = (p-th root of f)^p since coefficients are in F_p
        root = FpPoly(p, f.coeffs[::p])
        for g, m in _squarefree_parts(root):
            out.append((g, m * p))
        return out
    c = poly_gcd(f, fd)
    w = f // c
    m = 1
    while w.degree != 0:
        y = poly_gcd(w, c)
        z = w // y
        if z.degree != 0:
            out.append((z.monic(), m))
        w = y
        c = c // y
        m += 1
    if c.degree != 0:
        for g, k in _squarefree_parts(c):
            out.append((g, k * p))
    return out


def _distinct_degree(f: FpPoly) -> list[tuple[FpPoly, int]]:
    # f squarefree monic; returns (product of irreducible factors of degree d, d)
    p = f.p
    out = []
    x = FpPoly.x(p)
    h = x % f
    d = 0
    rest = f
    while rest.degree > 0 and rest.degree >= 2 * (d + 1):
        d += 1
        h = poly_powmod(h, p, rest)
        g = poly_gcd(h - (x % rest), rest)
        if g.degree > 0:
            out.append((g, d))
            rest = rest // g
            h = h % rest
    if rest.degree > 0:
        out.append((rest, rest.degree))
    return out


def _split_equal_degree(f: FpPoly, d: int, rng: random.Random) -> list[FpPoly]:
    # Cantor-Zassenhaus; requires p odd.
    p = f.p
    n = f.degree
    if n == d:
        return [f]
    if p == 2:
        raise NotImplementedError("equal-degree splitting implemented for odd p")
    exponent = (p**d - 1) // 2
    while True:
        u = FpPoly(p, [rng.randrange(p) for _ in range(n)])
        if u.degree is NEG_INF or u.degree < 1:
            continue
        g = poly_gcd(u, f)
        if 0 < g.degree < n:
            pass
        else:
            g = poly_gcd(poly_powmod(u, exponent, f) - FpPoly.one(p), f)
            if not (0 < g.degree < n):
                continue
        left = _split_equal_degree(g, d, rng)
        right = _split_equal_degree(f // g, d, rng)
        return left + right


def poly_factor(f: FpPoly) -> list[tuple[FpPoly, int]]:
    """Factor f into monic irreducibles with multiplicities (odd p).

    Returns a list of (irreducible, exponent) sorted canonically; the unit
    leading coefficient is dropped.
    """
    if f.is_zero:
        raise ValueError("cannot factor the zero polynomial")
    if f.p == 2 and f.degree > 1:
        raise NotImplementedError("factorization implemented for odd p")
    rng = random.Random(hash((f.p, f.coeffs)) & 0xFFFFFFFF)
    out: list[tuple[FpPoly, int]] = []
    for g, m in _squarefree_parts(f.monic()):
        for part, d in _distinct_degree(g):
            for irr in _split_equal_degree(part, d, rng):
                out.append((irr.monic(), m))
    out.sort(key=lambda t: (t[0].degree, t[0].coeffs))
    return out


def poly_is_square(f: FpPoly) -> bool:
    return poly_sqrt(f) is not None


def poly_sqrt(f: FpPoly) -> Optional[FpPoly]:
    """A g with g*g = f, or None; g is normalized with lc the smaller root."""
    p = f.p
    if f.is_zero:
        return FpPoly.zero(p)
    d = f.degree
    if d % 2:
        return None
    if p == 2:
        if any(c for i, c in enumerate(f.coeffs) if i % 2):
            return None
        return FpPoly(p, f.coeffs[::2])
    m = d // 2
    lead = sqrt_mod_prime(f.lc, p)
    if lead is None:
        return None
    inv2lead = pow(2 * lead, p - 2, p)
    g = [0] * (m + 1)
    g[m] = lead
    fc = list(f.coeffs) + [0]
    for k in range(m - 1, -1, -1):
        acc = 0
        for i in range(k + 1, m):
            j = m + k - i
            if m > j > k:
                acc += g[i] * g[j]
        g[k] = (fc[m + k] - acc) * inv2lead % p
    cand = FpPoly(p, g)
    if cand * cand == f:
        return cand
    return None


def sqrt_mod_prime(a: int, p: int) -> Optional[int]:
    """Tonelli-Shanks: smaller r with r*r = a mod p, or None; p an odd prime."""
    a %= p
    if a == 0:
        return 0
    if p == 2:
        return a % 2
    if pow(a, (p - 1) // 2, p) != 1:
        return None
    if p % 4 == 3:
        r = pow(a, (p + 1) // 4, p)
        return min(r, p - r)
    q, s = p - 1, 0
    while q % 2 == 0:
        q //= 2
        s += 1
    z = 2
    while pow(z, (p - 1) // 2, p) != p - 1:
        z += 1
    c = pow(z, q, p)
    r = pow(a, (q + 1) // 2, p)
    t = pow(a, q, p)
    m = s
    while t != 1:
        i, x = 0, t
        while x != 1:
            x = x * x % p
            i += 1
        b = pow(c, 1 << (m - i - 1), p)
        r = r * b % p
        c = b * b % p
        t = t * c % p
        m = i
    return min(r, p - r)
