"""Quadratic forms over Z and F_p[t]: evaluation, polarization, form norms,
and small isotropic vectors.

A form f = sum_{i<=k} m_ik x_i x_k is stored by its upper-triangular
coefficients.  The central algorithm turns the classical minimal-vector
existence argument into an explicit descent: while an isotropic vector a
exceeds the target bound, approximate the ratios a_i / a_n, reflect
through the approximating vector b via a* = f(b) a - <a,b> b, and make
the result primitive.  Each step strictly decreases the size of a, so the
loop lands below max|a_i| <= (3|f|)^((n-1)/2) over Z and
deg a <= ((n-1)/2) deg f over F_p[t].

Characteristic 2 is rejected for polynomial forms: the bound machinery
renormalizes with |2| and the companion lattice constructions need odd
moduli.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from math import isqrt
from typing import Optional, Sequence

from .domains import Domain, Element
from .errors import InvalidInput, SearchCeilingExceeded
from .polys import NEG_INF, FpPoly, FpRat, nth_poly
from .solvers import dioph_approx_int, dioph_approx_poly

DEFAULT_SEARCH_CEILING = 10**8


@dataclass(frozen=True)
class QuadForm:
    """n-ary quadratic form f = sum_{i<=k} m_ik x_i x_k.

    coeffs[i] holds (m_ii, m_i,i+1, ..., m_i,n-1); strictly-lower entries
    do not exist.
    """

    domain: Domain
    n: int
    coeffs: tuple[tuple[Element, ...], ...]

    def __post_init__(self):
        if self.domain.is_poly and self.domain.p == 2:
            raise InvalidInput("quadratic forms over F_2[t] are not supported")
        if len(self.coeffs) != self.n or any(
            len(row) != self.n - i for i, row in enumerate(self.coeffs)
        ):
            raise InvalidInput("coefficient rows must form an upper triangle")
        for row in self.coeffs:
            for x in row:
                self.domain.check(x)

    @classmethod
    def from_entries(cls, dom: Domain, n: int, entries: dict) -> "QuadForm":
        """Build from a {(i, k): m_ik} mapping with 0-based i <= k."""
        rows = []
        for i in range(n):
            row = []
            for k in range(i, n):
                row.append(entries.get((i, k), dom.zero()))
            rows.append(tuple(row))
        return cls(dom, n, tuple(rows))

    def coeff(self, i: int, k: int) -> Element:
        if i > k:
            raise InvalidInput("coefficients live on the upper triangle")
        return self.coeffs[i][k - i]

    @property
    def is_zero(self) -> bool:
        return all(self.domain.is_zero(x) for row in self.coeffs for x in row)


def evaluate(f: QuadForm, v: Sequence[Element]) -> Element:
    """f(v) = sum_{i<=k} m_ik v_i v_k, exact."""
    dom = f.domain
    if len(v) != f.n:
        raise InvalidInput("dimension mismatch")
    acc = dom.zero()
    for i in range(f.n):
        vi = v[i]
        if dom.is_zero(vi):
            continue
        for k in range(i, f.n):
            m = f.coeff(i, k)
            if not dom.is_zero(m):
                acc = dom.add(acc, dom.mul(dom.mul(m, vi), v[k]))
    return acc


def bilinear(f: QuadForm, x: Sequence[Element], y: Sequence[Element]) -> Element:
    """<x, y> = f(x+y) - f(x) - f(y); no division by 2."""
    dom = f.domain
    if len(x) != f.n or len(y) != f.n:
        raise InvalidInput("dimension mismatch")
    s = tuple(dom.add(a, b) for a, b in zip(x, y))
    return dom.sub(dom.sub(evaluate(f, s), evaluate(f, x)), evaluate(f, y))


def form_norm(f: QuadForm):
    """|f|: sum of |m_ik| over Z; max deg m_ik over F_p[t]."""
    dom = f.domain
    if f.is_zero:
        raise InvalidInput("the zero form has no norm")
    if dom.is_poly:
        return max(x.degree for row in f.coeffs for x in row)
    return sum(abs(x) for row in f.coeffs for x in row)


def doubled_gram(f: QuadForm) -> tuple[tuple[Element, ...], ...]:
    """The integral Gram matrix of the polarization: G_ii = 2 m_ii,
    G_ik = G_ki = m_ik for i < k."""
    dom = f.domain
    n = f.n
    g = [[dom.zero()] * n for _ in range(n)]
    for i in range(n):
        g[i][i] = dom.add(f.coeff(i, i), f.coeff(i, i))
        for k in range(i + 1, n):
            g[i][k] = f.coeff(i, k)
            g[k][i] = f.coeff(i, k)
    return tuple(tuple(row) for row in g)


def _det(dom: Domain, mat: Sequence[Sequence[Element]]) -> Element:
    n = len(mat)
    if n == 1:
        return mat[0][0]
    acc = dom.zero()
    for j in range(n):
        if dom.is_zero(mat[0][j]):
            continue
        minor = [
            [mat[i][k] for k in range(n) if k != j] for i in range(1, n)
        ]
        term = dom.mul(mat[0][j], _det(dom, minor))
        acc = dom.add(acc, term) if j % 2 == 0 else dom.sub(acc, term)
    return acc


def disc(f: QuadForm) -> Element:
    """det of the doubled Gram matrix (integral in every characteristic != 2)."""
    return _det(f.domain, doubled_gram(f))


def descent_step(
    f: QuadForm, a: Sequence[Element], b: Sequence[Element]
) -> tuple[Element, ...]:
    """Reflection a* = f(b) a - <a, b> b; isotropic whenever f(a) = 0."""
    dom = f.domain
    fb = evaluate(f, b)
    if dom.is_zero(fb):
        raise InvalidInput("descent requires f(b) != 0")
    ab = bilinear(f, a, b)
    out = tuple(
        dom.sub(dom.mul(fb, ai), dom.mul(ab, bi)) for ai, bi in zip(a, b)
    )
    if not dom.is_zero(evaluate(f, out)):
        raise ArithmeticError("reflection failed to preserve isotropy")
    return out


@dataclass(frozen=True)
class IsotropyCertificate:
    """Either a witness vector meeting the size bound, or a certified
    anisotropy verdict after exhausting the bounded search."""

    isotropic: bool
    witness: Optional[tuple[Element, ...]] = None
    searched_bound: Optional[int] = None


def int_size_bound(f: QuadForm) -> int:
    """Smallest integer B with B >= (3|f|)^((n-1)/2)."""
    t = (3 * form_norm(f)) ** (f.n - 1)
    b = isqrt(t)
    return b if b * b == t else b + 1


def poly_degree_bound(f: QuadForm) -> int:
    """floor(((n-1)/2) deg f), the degree budget for witnesses."""
    return ((f.n - 1) * form_norm(f)) // 2


def within_cassels_bound(f: QuadForm, v: Sequence[Element]) -> bool:
    """Exact check of the size bound: (max|v_i|)^2 <= (3|f|)^(n-1) over Z,
    2 max deg v_i <= (n-1) deg f over F_p[t]."""
    if f.domain.is_poly:
        d = max(x.degree for x in v)
        if d is NEG_INF:
            return True
        return 2 * d <= (f.n - 1) * form_norm(f)
    m = max(abs(x) for x in v)
    return m * m <= (3 * form_norm(f)) ** (f.n - 1)


def _vec_size(dom: Domain, v: Sequence[Element]):
    if dom.is_poly:
        return max(x.degree for x in v)
    return max(abs(x) for x in v)


def _permute(v: Sequence, sigma: Sequence[int]) -> tuple:
    out = [None] * len(v)
    for i, x in enumerate(v):
        out[sigma[i]] = x
    return tuple(out)


def _permute_form(f: QuadForm, sigma: Sequence[int]) -> QuadForm:
    entries: dict = {}
    dom = f.domain
    for i in range(f.n):
        for k in range(i, f.n):
            a, b = sigma[i], sigma[k]
            key = (min(a, b), max(a, b))
            cur = entries.get(key, dom.zero())
            entries[key] = dom.add(cur, f.coeff(i, k))
    return QuadForm.from_entries(dom, f.n, entries)


def minimize_isotropic(
    f: QuadForm, seed: Sequence[Element], max_steps: int = 4096
) -> IsotropyCertificate:
    """Drive an isotropic vector below the size bound by reflective descent.

    The seed is made primitive; while the bound is violated, the largest
    coordinate is moved last, the remaining ratios are approximated with
    multiplier below |a_n|, and the reflection (or the approximating
    vector itself, when it happens to be isotropic) replaces a.  Sizes
    strictly decrease, which is asserted per step.
    """
    dom = f.domain
    if f.is_zero:
        raise InvalidInput("the zero form is excluded")
    a = dom.primitive(tuple(dom.check(x) for x in seed))
    if all(dom.is_zero(x) for x in a):
        raise InvalidInput("seed must be nonzero")
    if not dom.is_zero(evaluate(f, a)):
        raise InvalidInput("seed is not isotropic for the form")
    n = f.n
    for _ in range(max_steps):
        if within_cassels_bound(f, a):
            return IsotropyCertificate(True, tuple(a))
        size_before = _vec_size(dom, a)
        jmax = max(range(n), key=lambda i: (dom.size(a[i]) is not NEG_INF, dom.size(a[i])))
        sigma = list(range(n))
        sigma[jmax], sigma[n - 1] = sigma[n - 1], sigma[jmax]
        fp = _permute_form(f, sigma)
        ap = _permute(a, sigma)
        last = ap[n - 1]
        if dom.is_poly:
            thetas = [FpRat(ap[i], last) for i in range(n - 1)]
            b = dioph_approx_poly(thetas, last)
        else:
            thetas = [Fraction(ap[i], last) for i in range(n - 1)]
            b = dioph_approx_int(thetas, Fraction(abs(last)))
        if dom.is_zero(evaluate(fp, b)):
            new_ap = dom.primitive(b)
        else:
            new_ap = dom.primitive(descent_step(fp, ap, b))
        a = _permute(new_ap, sigma)  # the swap is its own inverse
        size_after = _vec_size(dom, a)
        if not size_after < size_before:
            raise ArithmeticError(
                f"descent failed to decrease: {size_before} -> {size_after}"
            )
    raise ArithmeticError("descent exceeded the step budget")


def _int_candidates(n: int, bound: int):
    # shells of increasing max-abs; each shell surface visited exactly once:
    # position j is the first coordinate with |v_j| = s
    for s in range(1, bound + 1):
        inner = [0]
        for m in range(1, s):
            inner.extend((m, -m))
        full = inner + [s, -s]
        for j in range(n):
            for head in product(inner, repeat=j):
                for vj in (s, -s):
                    for tail in product(full, repeat=n - j - 1):
                        yield head + (vj,) + tail


def _poly_candidates(p: int, n: int, bound: int):
    # shells of increasing max-degree; position j is the first coordinate
    # of degree exactly s
    for s in range(0, bound + 1):
        lo, hi = p**s, p ** (s + 1)
        inner = [nth_poly(p, i) for i in range(lo)]
        exact = [nth_poly(p, i) for i in range(lo, hi)]
        full = inner + exact
        for j in range(n):
            for head in product(inner, repeat=j):
                for vj in exact:
                    for tail in product(full, repeat=n - j - 1):
                        yield head + (vj,) + tail


def brute_min_isotropic(
    f: QuadForm, bound: int, ceiling: Optional[int] = None
) -> Optional[tuple[Element, ...]]:
    """The minimal-size isotropic vector within the bound, by enumeration.

    Independent of the descent path: plain shell-by-shell search, ties
    broken by the fixed odometer order.  None when the bounded search is
    exhausted.
    """
    dom = f.domain
    if f.is_zero:
        raise InvalidInput("the zero form is excluded")
    if dom.is_poly:
        total = (f.domain.p ** (bound + 1)) ** f.n
        gen = _poly_candidates(dom.p, f.n, bound)
    else:
        total = (2 * bound + 1) ** f.n
        gen = _int_candidates(f.n, bound)
    if ceiling is not None and total > ceiling:
        raise SearchCeilingExceeded(
            f"bound too large: {total} candidates exceed the ceiling {ceiling}"
        )
    if not dom.is_poly:
        triples = [
            (i, k, f.coeff(i, k))
            for i in range(f.n)
            for k in range(i, f.n)
            if f.coeff(i, k) != 0
        ]
        for v in gen:
            acc = 0
            for i, k, m in triples:
                acc += m * v[i] * v[k]
            if acc == 0:
                return v
        return None
    for v in gen:
        if dom.is_zero(evaluate(f, v)):
            return v
    return None


def decide_isotropy(
    f: QuadForm, ceiling: int = DEFAULT_SEARCH_CEILING
) -> IsotropyCertificate:
    """Sound isotropy decision: search up to the witness-size bound.

    A form with no isotropic vector inside the bound has none at all, so
    the exhausted search certifies anisotropy.  Aborts (rather than
    guessing) when the candidate count exceeds the ceiling.
    """
    dom = f.domain
    if f.is_zero:
        raise InvalidInput("the zero form is excluded")
    if dom.is_poly:
        bound = poly_degree_bound(f)
    else:
        bound = int_size_bound(f)
    witness = brute_min_isotropic(f, bound, ceiling=ceiling)
    if witness is None:
        return IsotropyCertificate(False, None, searched_bound=bound)
    return IsotropyCertificate(True, witness, searched_bound=bound)
