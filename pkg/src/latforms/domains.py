"""The two base rings: Z with the absolute value, F_p[t] with the degree norm.

A Domain value describes which ring is active and exposes exact element
operations so that lattice and solver code can run over either ring.
Elements are plain ints (Z) or FpPoly values (F_p[t]).  Norms are exact
integers (|x| for Z, q^deg for F_p[t], 0 for 0); degrees are ints or
NEG_INF.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence, Union

from .errors import InvalidInput
from .polys import NEG_INF, FpPoly, is_prime, nth_poly, poly_ext_gcd, poly_gcd, sqrt_mod_prime

Element = Union[int, FpPoly]

INTEGERS_KIND = "integers"
POLY_KIND = "poly_fp"


@dataclass(frozen=True)
class Domain:
    """Descriptor of the active normed ring."""

    kind: str
    p: Optional[int] = None

    def __post_init__(self):
        if self.kind == INTEGERS_KIND:
            if self.p is not None:
                raise InvalidInput("integers domain takes no prime")
        elif self.kind == POLY_KIND:
            if self.p is None or not (2 <= self.p < 2**31) or not is_prime(self.p):
                raise InvalidInput("poly_fp domain needs a prime p with 2 <= p < 2^31")
        else:
            raise InvalidInput(f"unknown domain kind {self.kind!r}")

    @property
    def is_poly(self) -> bool:
        return self.kind == POLY_KIND

    @property
    def q(self) -> Optional[int]:
        """Norm base: |x| = q^deg x over F_p[t]; unused over Z."""
        return self.p if self.is_poly else None

    @property
    def artin_constant(self) -> int:
        """Least C with |x+y| <= C*max(|x|,|y|): 2 for Z, 1 for F_p[t]."""
        return 1 if self.is_poly else 2

    # -- element plumbing ------------------------------------------------

    def check(self, x: Element) -> Element:
        if self.is_poly:
            if not isinstance(x, FpPoly) or x.p != self.p:
                raise InvalidInput(f"element {x!r} does not belong to F_{self.p}[t]")
        elif not isinstance(x, int) or isinstance(x, bool):
            raise InvalidInput(f"element {x!r} does not belong to Z")
        return x

    def zero(self) -> Element:
        return FpPoly.zero(self.p) if self.is_poly else 0

    def one(self) -> Element:
        return FpPoly.one(self.p) if self.is_poly else 1

    def is_zero(self, x: Element) -> bool:
        return x.is_zero if self.is_poly else x == 0

    def is_unit(self, x: Element) -> bool:
        return x.is_unit if self.is_poly else x in (1, -1)

    def add(self, x: Element, y: Element) -> Element:
        return x + y

    def sub(self, x: Element, y: Element) -> Element:
        return x - y

    def mul(self, x: Element, y: Element) -> Element:
        return x * y

    def neg(self, x: Element) -> Element:
        return -x

    def divmod(self, x: Element, y: Element) -> tuple[Element, Element]:
        return divmod(x, y)

    def divides(self, d: Element, x: Element) -> bool:
        if self.is_zero(d):
            return self.is_zero(x)
        return self.is_zero(divmod(x, d)[1])

    def exact_div(self, x: Element, d: Element) -> Element:
        q, r = divmod(x, d)
        if not self.is_zero(r):
            raise ArithmeticError("division is not exact")
        return q

    def gcd(self, x: Element, y: Element) -> Element:
        if self.is_poly:
            return poly_gcd(x, y)
        import math

        return math.gcd(x, y)

    # -- norms and sizes -------------------------------------------------

    def norm(self, x: Element) -> int:
        """|x|: absolute value over Z, q^deg over F_p[t]; 0 iff x = 0."""
        self.check(x)
        if self.is_poly:
            return 0 if x.is_zero else self.p ** x.degree
        return abs(x)

    def size(self, x: Element):
        """Pivot-selection size: |x| over Z, deg x over F_p[t]."""
        return x.degree if self.is_poly else abs(x)

    def unit_normalize(self, x: Element) -> tuple[Element, Element]:
        """(u, u*x) with u a unit making x positive (Z) or monic (F_p[t])."""
        if self.is_poly:
            if x.is_zero or x.is_monic:
                return self.one(), x
            u = FpPoly.const(self.p, pow(x.lc, self.p - 2, self.p))
            return u, u * x
        return (1, x) if x >= 0 else (-1, -x)

    def content(self, vec: Sequence[Element]) -> Element:
        g = self.zero()
        for x in vec:
            g = self.gcd(g, x)
        return g

    def primitive(self, vec: Sequence[Element]) -> tuple[Element, ...]:
        """Divide out the gcd of the coordinates (no-op on the zero vector)."""
        g = self.content(vec)
        if self.is_zero(g) or g == self.one():
            return tuple(vec)
        return tuple(self.exact_div(x, g) for x in vec)

    def residues(self, modulus: Element):
        """Canonical residue system mod a nonzero modulus, in canonical order."""
        if self.is_poly:
            d = modulus.degree
            for i in range(self.p**d):
                yield nth_poly(self.p, i)
        else:
            m = abs(modulus)
            for i in range(m):
                yield i


INTEGERS = Domain(INTEGERS_KIND)


def poly_domain(p: int) -> Domain:
    return Domain(POLY_KIND, p)


def norm_element(x: Element, d: Domain) -> int:
    """Norm of an element of the ring described by d."""
    return d.norm(x)


def poly_degree(x: Element):
    """Degree of a polynomial element; NEG_INF for 0; rejects non-poly input."""
    if not isinstance(x, FpPoly):
        raise InvalidInput("poly_degree is defined for F_p[t] elements only")
    return x.degree


def sqrt_mod_prime_power(a: int, p: int, e: int) -> Optional[int]:
    """Smaller r with r^2 = a mod p^e, for odd prime p and gcd(a, p) = 1.

    Tonelli-Shanks at level 1, then Hensel lifting with doubling precision.
    Returns None when a is a non-residue mod p.
    """
    if p == 2 or not is_prime(p):
        raise InvalidInput("p must be an odd prime")
    if e < 1:
        raise InvalidInput("e must be positive")
    if a % p == 0:
        raise InvalidInput("a must be coprime to p")
    r = sqrt_mod_prime(a % p, p)
    if r is None:
        return None
    level = 1
    while level < e:
        level = min(2 * level, e)
        mod = p**level
        r = (r - (r * r - a) * pow(2 * r, -1, mod)) % mod
    mod = p**e
    return min(r, mod - r)


def _residue_field_sqrt(a: FpPoly, pi: FpPoly) -> Optional[FpPoly]:
    # Tonelli-Shanks in F_p[t]/(pi), a finite field of order p^deg(pi).
    p = a.p
    a = a % pi
    if a.is_zero:
        return FpPoly.zero(p)
    qsize = p**pi.degree
    one = FpPoly.one(p)

    def fpow(b: FpPoly, e: int) -> FpPoly:
        out = one
        b = b % pi
        while e:
            if e & 1:
                out = out * b % pi
            b = b * b % pi
            e >>= 1
        return out

    if fpow(a, (qsize - 1) // 2) != one:
        return None
    q, s = qsize - 1, 0
    while q % 2 == 0:
        q //= 2
        s += 1
    i = 2
    while True:
        z = nth_poly(p, i)
        if fpow(z, (qsize - 1) // 2) != one and not (z % pi).is_zero:
            break
        i += 1
    c = fpow(z, q)
    r = fpow(a, (q + 1) // 2)
    tval = fpow(a, q)
    m = s
    while tval != one:
        i, x = 0, tval
        while x != one:
            x = x * x % pi
            i += 1
        b = fpow(c, 1 << (m - i - 1))
        r = r * b % pi
        c = b * b % pi
        tval = tval * c % pi
        m = i
    other = (-r) % pi
    lo = min(r.coeffs[::-1], other.coeffs[::-1])
    return r if lo == r.coeffs[::-1] else other


def poly_sqrt_mod_prime_power(a: FpPoly, pi: FpPoly, e: int) -> Optional[FpPoly]:
    """r with r^2 = a mod pi^e over F_p[t], p odd, pi irreducible, gcd(a, pi) = 1."""
    p = a.p
    if p == 2:
        raise InvalidInput("characteristic 2 is not supported here")
    if (a % pi).is_zero:
        raise InvalidInput("a must be coprime to pi")
    r = _residue_field_sqrt(a, pi)
    if r is None:
        return None
    level = 1
    while level < e:
        level = min(2 * level, e)
        mod = pi**level
        g, inv, _ = poly_ext_gcd((r + r) % mod, mod)
        if not g.is_unit:
            raise ArithmeticError("2r not invertible during Hensel lift")
        inv = inv.scale(pow(g.coeffs[0], p - 2, p))
        r = (r - ((r * r - a) % mod) * inv) % mod
    return r % (pi**e)
