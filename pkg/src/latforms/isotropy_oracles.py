"""Fast exact isotropy decisions for binary and ternary forms.

These are independent of the bounded-search decision procedure and of
the descent machinery, so the test suites can screen large form corpora
cheaply and then cross-check the main algorithms against an unrelated
method.

Binary forms are decided by whether the discriminant is a square.
Ternary forms are decided locally: diagonalize, strip square factors,
and check the Hilbert symbol condition at every relevant place (odd
primes dividing the coefficients, 2 and the real place over Q; finite
irreducibles and the place at infinity over F_p(t)).  Forms of rank at
most 2 in three variables are isotropic through their radical.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, isqrt

from .errors import InvalidInput
from .polys import FpPoly, FpRat, poly_factor, poly_sqrt
from .quadforms import QuadForm, doubled_gram


def _legendre(a: int, p: int) -> int:
    a %= p
    if a == 0:
        return 0
    return 1 if pow(a, (p - 1) // 2, p) == 1 else -1


def _factor_int(n: int) -> dict[int, int]:
    # trial division; inputs here are small (products of form coefficients)
    n = abs(n)
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def _squarefree_int(n: int) -> int:
    s = -1 if n < 0 else 1
    for p, e in _factor_int(n).items():
        if e % 2:
            s *= p
    return s


def hilbert_symbol_q(u: int, v: int, p) -> int:
    """Hilbert symbol (u, v)_p over Q_p; p an odd prime, 2, or "inf"."""
    if u == 0 or v == 0:
        raise InvalidInput("Hilbert symbol needs nonzero arguments")
    if p == "inf":
        return -1 if u < 0 and v < 0 else 1
    alpha = 0
    while u % p == 0:
        u //= p
        alpha += 1
    beta = 0
    while v % p == 0:
        v //= p
        beta += 1
    if p == 2:
        eps = ((u - 1) // 2) * ((v - 1) // 2)
        omega = alpha * ((v * v - 1) // 8) + beta * ((u * u - 1) // 8)
        return -1 if (eps + omega) % 2 else 1
    out = 1
    if beta % 2:
        out *= _legendre(u, p)
    if alpha % 2:
        out *= _legendre(v, p)
    if alpha % 2 and beta % 2:
        out *= _legendre(-1, p)
    return out


def _sym_diagonalize(rows):
    """Congruent diagonalization of a symmetric matrix over a field.

    Entries must support +, -, *, / and truthiness; returns the list of
    diagonal values (zeros flag a radical).
    """
    n = len(rows)
    a = [list(r) for r in rows]
    for i in range(n):
        if not a[i][i]:
            piv = None
            for j in range(i + 1, n):
                if a[j][j]:
                    piv = j
                    break
            if piv is not None:
                a[i], a[piv] = a[piv], a[i]
                for r in a:
                    r[i], r[piv] = r[piv], r[i]
            else:
                off = None
                for j in range(i + 1, n):
                    if a[i][j]:
                        off = j
                        break
                if off is None:
                    continue
                for k in range(n):
                    a[i][k] = a[i][k] + a[off][k]
                for k in range(n):
                    a[k][i] = a[k][i] + a[k][off]
        if not a[i][i]:
            continue
        for j in range(i + 1, n):
            if a[i][j]:
                lam = a[i][j] / a[i][i]
                for k in range(n):
                    a[j][k] = a[j][k] - lam * a[i][k]
                for k in range(n):
                    a[k][j] = a[k][j] - lam * a[k][i]
    return [a[i][i] for i in range(n)]


def binary_isotropic_int(f: QuadForm) -> bool:
    """f = a x^2 + b xy + c y^2 over Z is isotropic iff b^2 - 4ac is a square."""
    if f.domain.is_poly or f.n != 2:
        raise InvalidInput("expects a binary form over Z")
    a, b, c = f.coeff(0, 0), f.coeff(0, 1), f.coeff(1, 1)
    d = b * b - 4 * a * c
    if d < 0:
        return False
    r = isqrt(d)
    return r * r == d


def ternary_isotropic_int(f: QuadForm) -> bool:
    """Exact isotropy of a ternary form over Z via local conditions."""
    if f.domain.is_poly or f.n != 3:
        raise InvalidInput("expects a ternary form over Z")
    if f.is_zero:
        raise InvalidInput("the zero form is excluded")
    gram = [[Fraction(x) for x in row] for row in doubled_gram(f)]
    diag = _sym_diagonalize(gram)
    if any(d == 0 for d in diag):
        return True  # nontrivial radical carries a rational zero
    sq = []
    for d in diag:
        sq.append(_squarefree_int(d.numerator * d.denominator))
    a, b, c = sq
    u, v = -a * c, -b * c
    primes: set = {2, "inf"}
    for n in (u, v):
        primes.update(p for p in _factor_int(n) if p != 2)
    symbols = {p: hilbert_symbol_q(u, v, p) for p in primes}
    prod = 1
    for s in symbols.values():
        prod *= s
    if prod != 1:
        raise ArithmeticError("Hilbert reciprocity check failed")
    return all(s == 1 for s in symbols.values())


# -- function field case -------------------------------------------------


def _squarefree_poly(g: FpPoly) -> FpPoly:
    out = FpPoly.const(g.p, g.lc)
    for pi, e in poly_factor(g):
        if e % 2:
            out = out * pi
    return out


def _residue_char(x: FpPoly, pi: FpPoly) -> int:
    # quadratic character of the residue of x in F_p[t]/(pi)
    q = x.p ** pi.degree
    r = x % pi
    if r.is_zero:
        return 0
    e = (q - 1) // 2
    acc = FpPoly.one(x.p)
    base = r
    while e:
        if e & 1:
            acc = acc * base % pi
        base = base * base % pi
        e >>= 1
    return 1 if acc == FpPoly.one(x.p) else -1


def hilbert_symbol_fpt(u: FpPoly, v: FpPoly, place) -> int:
    """Hilbert symbol over the completion of F_p(t) at a finite monic
    irreducible place, or at "inf" (the 1/t place); p odd."""
    p = u.p
    if u.is_zero or v.is_zero:
        raise InvalidInput("Hilbert symbol needs nonzero arguments")
    if place == "inf":
        alpha, beta = -u.degree, -v.degree
        u0, v0 = u.lc, v.lc
        chi_m1 = 1 if (p - 1) // 2 % 2 == 0 else -1
        chi = lambda c: 1 if pow(c, (p - 1) // 2, p) == 1 else -1
        out = 1
        if beta % 2:
            out *= chi(u0)
        if alpha % 2:
            out *= chi(v0)
        if alpha % 2 and beta % 2:
            out *= chi_m1
        return out
    pi = place
    alpha = 0
    while (u % pi).is_zero:
        u = u // pi
        alpha += 1
    beta = 0
    while (v % pi).is_zero:
        v = v // pi
        beta += 1
    out = 1
    if beta % 2:
        out *= _residue_char(u, pi)
    if alpha % 2:
        out *= _residue_char(v, pi)
    if alpha % 2 and beta % 2:
        out *= _residue_char(FpPoly.const(p, p - 1), pi)
    return out


def binary_isotropic_fpt(f: QuadForm) -> bool:
    """Binary form over F_p[t] (p odd): isotropic iff the discriminant is
    a square in F_p(t), equivalently a square polynomial."""
    if not f.domain.is_poly or f.n != 2:
        raise InvalidInput("expects a binary form over F_p[t]")
    a, b, c = f.coeff(0, 0), f.coeff(0, 1), f.coeff(1, 1)
    four_ac = (a * c).scale(4)
    d = b * b - four_ac
    if d.is_zero:
        return True
    return poly_sqrt(d) is not None


def ternary_isotropic_fpt(f: QuadForm) -> bool:
    """Exact isotropy of a ternary form over F_p[t] (p odd) via local
    conditions at all relevant places of F_p(t)."""
    if not f.domain.is_poly or f.n != 3:
        raise InvalidInput("expects a ternary form over F_p[t]")
    if f.is_zero:
        raise InvalidInput("the zero form is excluded")
    p = f.domain.p
    gram = [[FpRat(x) for x in row] for row in doubled_gram(f)]
    diag = _sym_diagonalize(gram)
    if any(not d for d in diag):
        return True
    sq = [_squarefree_poly(d.num * d.den) for d in diag]
    a, b, c = sq
    u = -(a * c)
    v = -(b * c)
    places: list = ["inf"]
    seen = set()
    for g in (u, v):
        for pi, _ in poly_factor(g):
            if pi.degree >= 1 and pi.coeffs not in seen:
                seen.add(pi.coeffs)
                places.append(pi)
    symbols = [hilbert_symbol_fpt(u, v, pl) for pl in places]
    prod = 1
    for s in symbols:
        prod *= s
    if prod != 1:
        raise ArithmeticError("Hilbert reciprocity check failed")
    return all(s == 1 for s in symbols)
