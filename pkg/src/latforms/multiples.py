"""Small multiples of anisotropic quadratic forms, and four squares.

Pipeline: check that the form becomes a sum of hyperbolic planes modulo
d (per prime-power factor, via quadratic-residue tests on the
discriminant), construct the sublattice on which the form vanishes mod d
(isotropic basis mod each prime, completed to hyperbolic pairs, Hensel
lifted to the prime power, intersected across factors), then solve a
tight box on that sublattice.  The found vector v gives f(v) = k d with
|k| < |f| over Z and deg k <= deg f over F_p[t].

The four-square routine reduces every prime to a multiplier k in
{1, 2, 3}, removes the factor with the classical parity (k = 2) and
mod-3 sign (k = 3) identities, and композes prime representations with
the four-square product identity.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt
from typing import Optional, Sequence

from .domains import Domain, Element, INTEGERS, sqrt_mod_prime_power
from .errors import InvalidInput, SearchCeilingExceeded
from .lattices import Lattice, intersect
from .polys import FpPoly, nth_poly, poly_ext_gcd, poly_factor, poly_sqrt, sqrt_mod_prime
from .quadforms import QuadForm, bilinear, disc, evaluate, form_norm
from .solvers import BoxConstraint, lattice_from_generators, solve_box_int, solve_degree_bounded

MOD_P_SCAN_CAP = 10**5

ROUTE_H1 = "H1"
ROUTE_H2 = "H2"
ROUTE_DIRECT = "DirectHyperbolicWitness"


@dataclass(frozen=True)
class PrimeWitness:
    prime: Element
    exponent: int
    target: Element
    root: Optional[Element]


@dataclass(frozen=True)
class HypothesisReport:
    holds: bool
    route: str
    details: tuple[PrimeWitness, ...]
    failure: Optional[str] = None


@dataclass(frozen=True)
class MultipleCertificate:
    v: tuple[Element, ...]
    k: Element
    d: Element
    bound_ok: bool
    witnesses: tuple[PrimeWitness, ...]


def _factor_modulus(dom: Domain, d: Element) -> list[tuple[Element, int]]:
    if dom.is_poly:
        return poly_factor(d)
    n = abs(d)
    out = []
    p = 3
    while p * p <= n:
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            out.append((p, e))
        p += 2
    if n > 1:
        out.append((n, 1))
    return out


def _is_square_in_ring(dom: Domain, x: Element) -> bool:
    if dom.is_poly:
        return poly_sqrt(x) is not None
    if x < 0:
        return False
    r = isqrt(x)
    return r * r == x


def check_hypothesis_H(f: QuadForm, d: Element) -> HypothesisReport:
    """Does f become a sum of hyperbolic planes modulo d?

    Requires n even, d odd and coprime to the discriminant.  Routes: the
    binary discriminant test (H1), a global square of (-1)^(n/2) disc f
    (H2), or per-prime-power residue tests with explicit square roots.
    """
    dom = f.domain
    dom.check(d)
    if f.n % 2:
        raise InvalidInput("hypothesis (H) needs an even number of variables")
    if dom.is_zero(d):
        raise InvalidInput("d must be nonzero")
    if not dom.is_poly and d % 2 == 0:
        raise InvalidInput("d must be odd")
    df = disc(f)
    if dom.is_zero(df):
        raise InvalidInput("the form is degenerate")
    if not dom.is_unit(dom.gcd(d, df)):
        raise InvalidInput("d must be coprime to the discriminant of f")
    target = df if (f.n // 2) % 2 == 0 else dom.neg(df)
    factors = _factor_modulus(dom, d)
    route = ROUTE_H1 if f.n == 2 else (
        ROUTE_H2 if _is_square_in_ring(dom, target) else ROUTE_DIRECT
    )
    details = []
    for prime, e in factors:
        root = _sqrt_mod_prime_power(dom, target, prime, e)
        details.append(PrimeWitness(prime, e, target, root))
        if root is None:
            return HypothesisReport(
                False,
                route,
                tuple(details),
                failure=f"{target!r} is not a square modulo {prime!r}",
            )
    return HypothesisReport(True, route, tuple(details))


def _sqrt_mod_prime_power(dom, target, prime, e):
    if dom.is_poly:
        from .domains import poly_sqrt_mod_prime_power

        return poly_sqrt_mod_prime_power(target % prime**e, prime, e)
    return sqrt_mod_prime_power(target % prime**e, prime, e)


# -- residue arithmetic ---------------------------------------------------


class _ResidueRing:
    """Arithmetic in R/(m) with canonical representatives."""

    def __init__(self, dom: Domain, modulus: Element):
        self.dom = dom
        self.m = modulus

    def red(self, x):
        return x % self.m

    def inv(self, x):
        if self.dom.is_poly:
            g, u, _ = poly_ext_gcd(x % self.m, self.m)
            if not g.is_unit:
                raise ArithmeticError("non-unit inverse requested")
            return (u.scale(pow(g.coeffs[0], x.p - 2, x.p))) % self.m
        return pow(x % self.m, -1, self.m)


class _ResidueField(_ResidueRing):
    """R/(pi) for a prime element pi: a finite field."""

    @property
    def size(self) -> int:
        if self.dom.is_poly:
            return self.dom.p ** self.m.degree
        return self.m

    def element(self, index: int):
        if self.dom.is_poly:
            return nth_poly(self.dom.p, index)
        return index

    def sqrt(self, a):
        a = self.red(a)
        if self.dom.is_zero(a):
            return self.dom.zero()
        if self.dom.is_poly:
            from .domains import poly_sqrt_mod_prime_power

            return poly_sqrt_mod_prime_power(a, self.m, 1)
        return sqrt_mod_prime(a, self.m)


def _form_coeffs_mod(f: QuadForm, fld: _ResidueField) -> dict:
    out = {}
    for i in range(f.n):
        for k in range(i, f.n):
            out[(i, k)] = fld.red(f.coeff(i, k))
    return out


def _eval_coeffs(dom, coeffs, v, fld: _ResidueField):
    acc = dom.zero()
    n = len(v)
    for (i, k), m in coeffs.items():
        if not dom.is_zero(m) and not dom.is_zero(v[i]) and not dom.is_zero(v[k]):
            acc = dom.add(acc, dom.mul(dom.mul(m, v[i]), v[k]))
    return fld.red(acc)


def _isotropic_mod_prime(dom, coeffs, n, fld: _ResidueField):
    """First isotropic vector mod a prime, in lexicographic residue order.

    The innermost coordinate is obtained by solving the univariate
    quadratic directly, which preserves the lex-first hit while skipping
    the inner scan.  n = 2 falls out of the same loop.
    """
    if fld.size > MOD_P_SCAN_CAP:
        raise SearchCeilingExceeded(
            f"residue field of size {fld.size} exceeds the scan cap"
        )
    zero = dom.zero()
    a_lead = fld.red(coeffs.get((n - 1, n - 1), zero))

    def prefix_candidates(depth: int, prefix: tuple):
        if depth == n - 1:
            yield prefix
            return
        for idx in range(fld.size):
            yield from prefix_candidates(depth + 1, prefix + (fld.element(idx),))

    for prefix in prefix_candidates(0, ()):
        b_lin = zero
        for i in range(n - 1):
            m = coeffs.get((i, n - 1), zero)
            if not dom.is_zero(m) and not dom.is_zero(prefix[i]):
                b_lin = dom.add(b_lin, dom.mul(m, prefix[i]))
        b_lin = fld.red(b_lin)
        c_const = _eval_coeffs(dom, coeffs, prefix + (zero,), fld)
        prefix_zero = all(dom.is_zero(x) for x in prefix)
        roots = []
        if dom.is_zero(a_lead):
            if not dom.is_zero(b_lin):
                roots = [fld.red(dom.mul(dom.neg(c_const), fld.inv(b_lin)))]
            elif dom.is_zero(c_const):
                roots = [zero, dom.one()]
        else:
            delta = fld.red(
                dom.sub(dom.mul(b_lin, b_lin), dom.mul(dom.mul(a_lead, c_const), _four(dom)))
            )
            r = fld.sqrt(delta)
            if r is not None:
                inv2a = fld.inv(fld.red(dom.add(a_lead, a_lead)))
                r1 = fld.red(dom.mul(dom.sub(r, b_lin), inv2a))
                r2 = fld.red(dom.mul(dom.sub(dom.neg(r), b_lin), inv2a))
                roots = sorted({_canon_key(dom, r1): r1, _canon_key(dom, r2): r2}.items())
                roots = [v for _, v in roots]
        for root in roots:
            if prefix_zero and dom.is_zero(root):
                continue
            return prefix + (fld.red(root),)
    raise ArithmeticError(
        "no isotropic vector modulo a prime where the hypothesis promised one"
    )


def _four(dom: Domain) -> Element:
    one = dom.one()
    two = dom.add(one, one)
    return dom.mul(two, two)


def _canon_key(dom: Domain, x):
    if dom.is_poly:
        val = 0
        for c in reversed(x.coeffs):
            val = val * dom.p + c
        return val
    return x


def _matvec(dom, mat, vec):
    n = len(mat)
    out = [dom.zero()] * n
    for j, c in enumerate(vec):
        if not dom.is_zero(c):
            for i in range(n):
                out[i] = dom.add(out[i], dom.mul(c, mat[i][j]))
    return out


def _bilinear_vec(f: QuadForm, x, y):
    return bilinear(f, tuple(x), tuple(y))


def _hyperbolic_basis_mod_prime(f: QuadForm, prime: Element) -> list:
    """Columns u_1, w_1, ..., u_{n/2}, w_{n/2} of a hyperbolic basis of f
    modulo the prime: f(u_i) = f(w_i) = 0, <u_i, w_j> = delta_ij, pairs
    mutually orthogonal."""
    dom = f.domain
    fld = _ResidueField(dom, prime)
    n = f.n
    # complement basis as a list of columns over R (interpreted mod prime)
    comp = [[dom.one() if i == j else dom.zero() for i in range(n)] for j in range(n)]
    pairs = []
    while comp:
        m = len(comp)
        # restricted form on the span of comp
        rcoe = {}
        for i in range(m):
            rcoe[(i, i)] = fld.red(evaluate(f, tuple(comp[i])))
            for k in range(i + 1, m):
                rcoe[(i, k)] = fld.red(_bilinear_vec(f, comp[i], comp[k]))
        y = _isotropic_mod_prime(dom, rcoe, m, fld)
        u = [fld.red(x) for x in _matvec(dom, [[comp[j][i] for j in range(m)] for i in range(n)], y)]
        if all(dom.is_zero(x) for x in u):
            raise ArithmeticError("isotropic combination degenerated to zero")
        # partner with <u, w> a unit, scanning the complement basis
        w = None
        for cand in comp:
            if not dom.is_zero(fld.red(_bilinear_vec(f, u, cand))):
                w = list(cand)
                break
        if w is None:
            raise ArithmeticError("form degenerate modulo the prime")
        s = fld.inv(fld.red(_bilinear_vec(f, u, w)))
        w = [fld.red(dom.mul(s, x)) for x in w]
        fw = fld.red(evaluate(f, tuple(w)))
        w = [fld.red(dom.sub(wx, dom.mul(fw, ux))) for wx, ux in zip(w, u)]
        pairs.append((u, w))
        # new complement: vectors of comp-span orthogonal to u and w
        rows = []
        for probe in (u, w):
            rows.append([fld.red(_bilinear_vec(f, probe, col)) for col in comp])
        kernel = _field_kernel(dom, fld, rows, m)
        comp = [
            [fld.red(x) for x in _matvec(dom, [[comp[j][i] for j in range(m)] for i in range(n)], kv)]
            for kv in kernel
        ]
    basis = []
    for u, w in pairs:
        basis.append(u)
        basis.append(w)
    return basis


def _field_kernel(dom, fld: _ResidueField, rows, ncols):
    """Basis of the kernel of a small matrix over the residue field."""
    mat = [list(r) for r in rows]
    pivots = {}
    r = 0
    for c in range(ncols):
        piv = None
        for i in range(r, len(mat)):
            if not dom.is_zero(fld.red(mat[i][c])):
                piv = i
                break
        if piv is None:
            continue
        mat[r], mat[piv] = mat[piv], mat[r]
        inv = fld.inv(mat[r][c])
        mat[r] = [fld.red(dom.mul(inv, v)) for v in mat[r]]
        for i in range(len(mat)):
            if i != r and not dom.is_zero(fld.red(mat[i][c])):
                fct = mat[i][c]
                mat[i] = [
                    fld.red(dom.sub(a, dom.mul(fct, b))) for a, b in zip(mat[i], mat[r])
                ]
        pivots[c] = r
        r += 1
    out = []
    for c in range(ncols):
        if c in pivots:
            continue
        vec = [dom.zero()] * ncols
        vec[c] = dom.one()
        for pc, pr in pivots.items():
            vec[pc] = fld.red(dom.neg(mat[pr][c]))
        out.append(vec)
    return out


def _hensel_lift_basis(f: QuadForm, basis, prime: Element, e: int):
    """Lift a hyperbolic basis mod prime to mod prime^e by Newton steps.

    Maintains G = B^T (doubled gram) B = H (the standard hyperbolic Gram)
    to doubling precision; the correction solves H C + C^T H = S with
    C = H S / 2 since H is symmetric and involutive."""
    dom = f.domain
    n = f.n
    if e == 1:
        return basis
    from .quadforms import doubled_gram

    gram = doubled_gram(f)
    hstd = [[dom.zero()] * n for _ in range(n)]
    for i in range(0, n, 2):
        hstd[i][i + 1] = dom.one()
        hstd[i + 1][i] = dom.one()
    cols = [list(c) for c in basis]
    level = 1
    while level < e:
        new_level = min(2 * level, e)
        mod = prime**new_level
        ring = _ResidueRing(dom, mod)
        # G = B^T gram B mod prime^new_level
        bt_gram = [
            [
                ring.red(
                    _dot(dom, [cols[a][i] for i in range(n)], [gram[i][j] for i in range(n)])
                )
                for j in range(n)
            ]
            for a in range(n)
        ]
        g = [
            [ring.red(_dot(dom, bt_gram[a], [cols[b][i] for i in range(n)])) for b in range(n)]
            for a in range(n)
        ]
        # invariant: G = H mod prime^level, so the division is exact
        pj = prime**level
        s = [
            [dom.exact_div(dom.sub(hstd[a][b], g[a][b]), pj) for b in range(n)]
            for a in range(n)
        ]
        inv2 = ring.inv(dom.add(dom.one(), dom.one()))
        hs = [
            [ring.red(dom.mul(inv2, _dot(dom, hstd[a], [s[i][b] for i in range(n)]))) for b in range(n)]
            for a in range(n)
        ]
        # B <- B (I + pj * C) with C = H S / 2
        newcols = []
        for b in range(n):
            col = [cols[b][i] for i in range(n)]
            for a in range(n):
                cab = hs[a][b]
                if not dom.is_zero(cab):
                    coef = dom.mul(pj, cab)
                    for i in range(n):
                        col[i] = dom.add(col[i], dom.mul(coef, cols[a][i]))
            newcols.append([ring.red(x) for x in col])
        cols = newcols
        level = new_level
    return cols


def _dot(dom, xs, ys):
    acc = dom.zero()
    for x, y in zip(xs, ys):
        if not dom.is_zero(x) and not dom.is_zero(y):
            acc = dom.add(acc, dom.mul(x, y))
    return acc


def hyperbolic_lattice_mod(f: QuadForm, d: Element) -> Lattice:
    """The sublattice on which f vanishes modulo d.

    Per prime power: hyperbolic basis mod the prime, Hensel lift, then
    the preimage of the span of the isotropic half; factors are combined
    by intersection in ascending prime order.  The quotient by the result
    is (R/d)^(n/2)."""
    dom = f.domain
    report = check_hypothesis_H(f, d)
    if not report.holds:
        raise InvalidInput(f"hypothesis (H) fails: {report.failure}")
    n = f.n
    if dom.is_unit(d):
        return Lattice.standard(dom, n)
    factors = _factor_modulus(dom, d)
    factors.sort(key=lambda pe: _canon_key(dom, pe[0]))
    result = None
    for prime, e in factors:
        basis = _hyperbolic_basis_mod_prime(f, prime)
        lifted = _hensel_lift_basis(f, basis, prime, e)
        mod = prime**e
        ring = _ResidueRing(dom, mod)
        iso_cols = [lifted[i] for i in range(0, n, 2)]
        for a in range(len(iso_cols)):
            if not dom.is_zero(ring.red(evaluate(f, tuple(iso_cols[a])))):
                raise ArithmeticError("lifted basis vector is not isotropic")
            for b in range(a + 1, len(iso_cols)):
                if not dom.is_zero(ring.red(_bilinear_vec(f, iso_cols[a], iso_cols[b]))):
                    raise ArithmeticError("lifted basis lost orthogonality")
        gens_rows = [
            [iso_cols[j][i] for j in range(len(iso_cols))]
            + [mod if i == j else dom.zero() for j in range(n)]
            for i in range(n)
        ]
        lat = lattice_from_generators(dom, gens_rows)
        result = lat if result is None else intersect(result, lat)
    expected = dom.norm(d) ** (n // 2)
    if result.covolume() != expected:
        raise ArithmeticError(
            f"lattice covolume {result.covolume()} differs from {expected}"
        )
    return result


def small_multiple_int(f: QuadForm, d: int) -> MultipleCertificate:
    """v and k with f(v) = k d and 0 < |k| < |f|, for odd nonunit d
    coprime to disc f with hypothesis (H); f must be anisotropic."""
    dom = f.domain
    if dom.is_poly:
        raise InvalidInput("small_multiple_int expects a form over Z")
    if abs(d) <= 1:
        raise InvalidInput("d must be a nonunit")
    report = check_hypothesis_H(f, d)
    if not report.holds:
        raise InvalidInput(f"hypothesis (H) fails: {report.failure}")
    lam = hyperbolic_lattice_mod(f, d)
    ad = abs(d)
    strict = isqrt(ad - 1) + 1  # |x| < strict  <=>  x^2 < d
    closed = isqrt(ad)  # |x| <= closed  <=>  x^2 <= d
    eps = [Fraction(strict)] * (f.n - 1) + [Fraction(closed)]
    v = solve_box_int(lam, BoxConstraint.ints(eps, istar=f.n - 1))
    if v is None:
        raise ArithmeticError("the guaranteed box vector was not found")
    fv = evaluate(f, v)
    if fv == 0:
        raise InvalidInput("form is isotropic: f vanished on the box vector")
    k, rem = divmod(fv, d)
    if rem:
        raise ArithmeticError("f(v) is not a multiple of d")
    if not 0 < abs(k) < form_norm(f):
        raise ArithmeticError(f"multiplier bound violated: k = {k}")
    if not lam.contains(v):
        raise ArithmeticError("solution left the congruence lattice")
    return MultipleCertificate(tuple(v), k, d, True, report.details)


def small_multiple_poly(f: QuadForm, d: FpPoly) -> MultipleCertificate:
    """v and k with f(v) = k d and deg k <= deg f, for a nonunit d
    coprime to disc f with hypothesis (H); p odd, f anisotropic."""
    dom = f.domain
    if not dom.is_poly:
        raise InvalidInput("small_multiple_poly expects a form over F_p[t]")
    if d.is_zero or d.is_unit:
        raise InvalidInput("d must be a nonunit")
    report = check_hypothesis_H(f, d)
    if not report.holds:
        raise InvalidInput(f"hypothesis (H) fails: {report.failure}")
    lam = hyperbolic_lattice_mod(f, d)
    n = f.n
    num = (n // 2) * d.degree - (n - 1)
    e = -((-num) // n)  # ceil(num / n)
    got = solve_degree_bounded(dom, lam.basis, [e] * n)
    if got is None:
        raise ArithmeticError("the guaranteed degree-bounded vector was not found")
    v = got[1]
    fv = evaluate(f, v)
    if fv.is_zero:
        raise InvalidInput("form is isotropic: f vanished on the box vector")
    k, rem = divmod(fv, d)
    if not rem.is_zero:
        raise ArithmeticError("f(v) is not a multiple of d")
    if k.degree > form_norm(f):
        raise ArithmeticError(f"multiplier degree bound violated: deg k = {k.degree}")
    return MultipleCertificate(tuple(v), k, d, True, report.details)


# -- four squares ---------------------------------------------------------


def _four_square_form() -> QuadForm:
    return QuadForm.from_entries(
        INTEGERS, 4, {(0, 0): 1, (1, 1): 1, (2, 2): 1, (3, 3): 1}
    )


def _euler_product(a: Sequence[int], b: Sequence[int]) -> tuple[int, int, int, int]:
    a1, a2, a3, a4 = a
    b1, b2, b3, b4 = b
    return (
        a1 * b1 + a2 * b2 + a3 * b3 + a4 * b4,
        a1 * b2 - a2 * b1 + a3 * b4 - a4 * b3,
        a1 * b3 - a2 * b4 - a3 * b1 + a4 * b2,
        a1 * b4 + a2 * b3 - a3 * b2 - a4 * b1,
    )


def _halve_even_multiple(v: Sequence[int]) -> tuple[int, int, int, int]:
    # f(v) = 2p: pair equal parities, then average and halve
    odds = [x for x in v if x % 2]
    evens = [x for x in v if x % 2 == 0]
    if len(odds) % 2:
        raise ArithmeticError("parity pattern inconsistent with an even value")
    groups = []
    for bucket in (odds, evens):
        for i in range(0, len(bucket), 2):
            groups.append((bucket[i], bucket[i + 1]))
    (x, y), (z, w) = groups
    return ((x + y) // 2, (x - y) // 2, (z + w) // 2, (z - w) // 2)


def _third_multiple(v: Sequence[int]) -> tuple[int, int, int, int]:
    # f(v) = 3p with p > 3: exactly one coordinate is divisible by 3;
    # place it first and flip signs so the rest agree mod 3
    vs = list(v)
    zero_idx = [i for i, x in enumerate(vs) if x % 3 == 0]
    if len(zero_idx) != 1:
        raise ArithmeticError("mod 3 pattern inconsistent with a triple value")
    vs.insert(0, vs.pop(zero_idx[0]))
    x = vs[0]
    rest = [y if y % 3 == 1 else -y for y in vs[1:]]
    y, z, w = rest
    parts = (y + z + w, x + z - w, x - y + w, x + y - z)
    if any(p % 3 for p in parts):
        raise ArithmeticError("sign adjustment failed to align residues mod 3")
    return tuple(p // 3 for p in parts)


def _prime_four_square(p: int, cache: dict) -> tuple[int, int, int, int]:
    if p in cache:
        return cache[p]
    if p == 2:
        rep = (1, 1, 0, 0)
    elif p == 3:
        rep = (1, 1, 1, 0)
    else:
        cert = small_multiple_int(_four_square_form(), p)
        k, v = cert.k, cert.v
        if k == 1:
            rep = v
        elif k == 2:
            rep = _halve_even_multiple(v)
        elif k == 3:
            rep = _third_multiple(v)
        else:
            raise ArithmeticError(f"multiplier {k} escaped the (0, 4) range")
    if sum(x * x for x in rep) != p:
        raise ArithmeticError(f"four-square reduction failed for {p}")
    cache[p] = rep
    return rep


def four_square(n: int, _cache: dict = {}) -> tuple[int, int, int, int]:
    """An exact representation n = a^2 + b^2 + c^2 + d^2, a >= b >= c >= d >= 0.

    Factors n, solves each prime through the small-multiple machinery,
    and combines with the four-square product identity."""
    if n < 1:
        raise InvalidInput("n must be a positive integer")
    rep = (1, 0, 0, 0)
    rem = n
    p = 2
    while p * p <= rem:
        while rem % p == 0:
            rep = _euler_product(rep, _prime_four_square(p, _cache))
            rem //= p
        p += 1 if p == 2 else 2
    if rem > 1:
        rep = _euler_product(rep, _prime_four_square(rem, _cache))
    out = tuple(sorted((abs(x) for x in rep), reverse=True))
    if sum(x * x for x in out) != n:
        raise ArithmeticError("four-square composition failed")
    return out
