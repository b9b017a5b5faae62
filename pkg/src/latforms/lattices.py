"""Full-rank lattices in R^n over R in {Z, F_p[t]}.

A lattice is the column span of a nonsingular n x n matrix over R, stored
in column Hermite Normal Form: upper triangular, diagonal positive (Z) or
monic (F_p[t]), and each entry right of the diagonal reduced modulo the
diagonal entry of its row.  Two lattices are equal iff their HNF matrices
are identical, so Lattice values compare by value.

Matrices are tuples of row tuples; columns are the generators.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .domains import Domain, Element
from .errors import InvalidInput

Matrix = tuple[tuple[Element, ...], ...]


def _to_cols(rows: Sequence[Sequence[Element]]) -> list[list[Element]]:
    m, k = len(rows), len(rows[0])
    return [[rows[i][j] for i in range(m)] for j in range(k)]


def _to_rows(cols: Sequence[Sequence[Element]]) -> Matrix:
    k, m = len(cols), len(cols[0])
    return tuple(tuple(cols[j][i] for j in range(k)) for i in range(m))


def _col_submul(dom: Domain, target: list, source: list, q: Element) -> None:
    for i in range(len(target)):
        target[i] = dom.sub(target[i], dom.mul(q, source[i]))


def column_echelon_with_transform(dom: Domain, rows: Sequence[Sequence[Element]]):
    """Column-reduce M by unimodular column operations: M*U = E.

    Rows are processed bottom-up; each row's pivot is parked in the
    rightmost free column, so a square nonsingular input ends upper
    triangular.  Returns (E rows, U rows, c) where columns 0..c of E are
    zero (the kernel part); pivot selection is by minimal norm/degree with
    ties broken by lowest column index.
    """
    m, k = len(rows), len(rows[0])
    a = _to_cols(rows)
    u = [[dom.one() if i == j else dom.zero() for i in range(k)] for j in range(k)]
    c = k - 1
    for i in range(m - 1, -1, -1):
        if c < 0:
            break
        while True:
            piv, best = None, None
            for j in range(c + 1):
                x = a[j][i]
                if not dom.is_zero(x):
                    s = dom.size(x)
                    if piv is None or s < best:
                        piv, best = j, s
            if piv is None:
                break
            done = True
            for j in range(c + 1):
                if j != piv and not dom.is_zero(a[j][i]):
                    q, _ = dom.divmod(a[j][i], a[piv][i])
                    if not dom.is_zero(q):
                        _col_submul(dom, a[j], a[piv], q)
                        _col_submul(dom, u[j], u[piv], q)
                    if not dom.is_zero(a[j][i]):
                        done = False
            if done:
                a[piv], a[c] = a[c], a[piv]
                u[piv], u[c] = u[c], u[piv]
                unit, _ = dom.unit_normalize(a[c][i])
                if unit != dom.one():
                    a[c] = [dom.mul(unit, x) for x in a[c]]
                    u[c] = [dom.mul(unit, x) for x in u[c]]
                for j in range(c + 1, k):
                    q, _ = dom.divmod(a[j][i], a[c][i])
                    if not dom.is_zero(q):
                        _col_submul(dom, a[j], a[c], q)
                        _col_submul(dom, u[j], u[c], q)
                c -= 1
                break
    return _to_rows(a), _to_rows(u), c


def hnf_matrix(dom: Domain, rows: Sequence[Sequence[Element]]) -> Matrix:
    h, _ = hnf_with_transform(dom, rows)
    return h


def hnf_with_transform(dom: Domain, rows: Sequence[Sequence[Element]]):
    """(H, U) with M*U = H in HNF, for square nonsingular M."""
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise InvalidInput("basis matrix must be square")
    for r in rows:
        for x in r:
            dom.check(x)
    e, u, c = column_echelon_with_transform(dom, rows)
    if c >= 0 or any(dom.is_zero(e[i][i]) for i in range(n)):
        raise InvalidInput("basis matrix is singular")
    return e, u


@dataclass(frozen=True)
class Lattice:
    """Full-rank sublattice of R^n as the column span of its HNF basis."""

    domain: Domain
    n: int
    basis: Matrix

    @classmethod
    def from_basis(cls, dom: Domain, rows: Sequence[Sequence[Element]]) -> "Lattice":
        h = hnf_matrix(dom, rows)
        return cls(dom, len(h), h)

    @classmethod
    def standard(cls, dom: Domain, n: int) -> "Lattice":
        one, zero = dom.one(), dom.zero()
        rows = tuple(tuple(one if i == j else zero for j in range(n)) for i in range(n))
        return cls(dom, n, rows)

    @property
    def diagonal(self) -> tuple[Element, ...]:
        return tuple(self.basis[i][i] for i in range(self.n))

    def covolume(self) -> int:
        """|det basis|: the index #(R^n / L) over Z, q^dim over F_p[t]."""
        cov = 1
        for d in self.diagonal:
            cov *= self.domain.norm(d)
        return cov

    def deg_covolume(self) -> int:
        """log_q of the covolume over F_p[t] (sum of diagonal degrees)."""
        if not self.domain.is_poly:
            raise InvalidInput("deg_covolume is defined over F_p[t] only")
        return sum(d.degree for d in self.diagonal)

    def member_coords(self, vec: Sequence[Element]):
        """Coordinates y with basis*y = vec, or None when vec is outside."""
        dom = self.domain
        if len(vec) != self.n:
            raise InvalidInput("dimension mismatch")
        v = [dom.check(x) for x in vec]
        y = [dom.zero()] * self.n
        for i in range(self.n - 1, -1, -1):
            q, r = dom.divmod(v[i], self.basis[i][i])
            if not dom.is_zero(r):
                return None
            y[i] = q
            for row in range(i + 1):
                v[row] = dom.sub(v[row], dom.mul(q, self.basis[row][i]))
        return tuple(y)

    def contains(self, vec: Sequence[Element]) -> bool:
        return self.member_coords(vec) is not None

    def reduce(self, vec: Sequence[Element]) -> tuple[Element, ...]:
        """Canonical coset representative of vec modulo the lattice."""
        dom = self.domain
        v = list(vec)
        for i in range(self.n - 1, -1, -1):
            q, r = dom.divmod(v[i], self.basis[i][i])
            v[i] = r
            if not dom.is_zero(q):
                for row in range(i):
                    v[row] = dom.sub(v[row], dom.mul(q, self.basis[row][i]))
        return tuple(v)

    def from_coords(self, y: Sequence[Element]) -> tuple[Element, ...]:
        dom = self.domain
        out = [dom.zero()] * self.n
        for j, c in enumerate(y):
            if not dom.is_zero(c):
                for i in range(j + 1):
                    out[i] = dom.add(out[i], dom.mul(c, self.basis[i][j]))
        return tuple(out)


def hnf(dom: Domain, rows: Sequence[Sequence[Element]]) -> Lattice:
    """Canonicalize a generator matrix into a Lattice (rejects singular input)."""
    return Lattice.from_basis(dom, rows)


def covolume(lat: Lattice) -> int:
    return lat.covolume()


@dataclass(frozen=True)
class QuotientInvariants:
    """Elementary divisors d_1 | d_2 | ... of R^n / L, units omitted."""

    elementary_divisors: tuple[Element, ...]


def quotient_invariants(lat: Lattice) -> QuotientInvariants:
    """Smith Normal Form divisors of the basis, units dropped."""
    dom = lat.domain
    n = lat.n
    a = [list(row) for row in lat.basis]

    def find_pivot(s: int):
        piv, best = None, None
        for i in range(s, n):
            for j in range(s, n):
                if not dom.is_zero(a[i][j]):
                    sz = dom.size(a[i][j])
                    if piv is None or sz < best:
                        piv, best = (i, j), sz
        return piv

    for s in range(n):
        while True:
            piv = find_pivot(s)
            if piv is None:
                break
            pi, pj = piv
            a[s], a[pi] = a[pi], a[s]
            for row in a:
                row[s], row[pj] = row[pj], row[s]
            clean = True
            for i in range(s + 1, n):
                if not dom.is_zero(a[i][s]):
                    q, _ = dom.divmod(a[i][s], a[s][s])
                    for j in range(s, n):
                        a[i][j] = dom.sub(a[i][j], dom.mul(q, a[s][j]))
                    if not dom.is_zero(a[i][s]):
                        clean = False
            for j in range(s + 1, n):
                if not dom.is_zero(a[s][j]):
                    q, _ = dom.divmod(a[s][j], a[s][s])
                    for i in range(s, n):
                        a[i][j] = dom.sub(a[i][j], dom.mul(q, a[i][s]))
                    if not dom.is_zero(a[s][j]):
                        clean = False
            if clean:
                break
    divisors = [a[i][i] for i in range(n)]
    # enforce the divisibility chain: diag(a, b) ~ diag(gcd, lcm)
    changed = True
    while changed:
        changed = False
        for i in range(n - 1):
            x, y = divisors[i], divisors[i + 1]
            if not dom.divides(x, y):
                g = dom.gcd(x, y)
                divisors[i + 1] = dom.exact_div(dom.mul(x, y), g)
                divisors[i] = g
                changed = True
    out = []
    for d in divisors:
        _, d = dom.unit_normalize(d)
        if not dom.is_unit(d):
            out.append(d)
    return QuotientInvariants(tuple(out))


@dataclass(frozen=True)
class CongruenceSystem:
    """Rows a_i and moduli d_i of the system sum_j a_ij x_j = 0 (mod d_i)."""

    domain: Domain
    rows: Matrix
    moduli: tuple[Element, ...]

    def __post_init__(self):
        for d in self.moduli:
            if self.domain.is_zero(d):
                raise InvalidInput("moduli must be nonzero")


def congruence_lattice(sys: CongruenceSystem) -> Lattice:
    """The sublattice of R^n solving every congruence of the system."""
    dom = sys.domain
    m = len(sys.rows)
    n = len(sys.rows[0])
    zero = dom.zero()
    stacked = [
        tuple(sys.rows[i]) + tuple(sys.moduli[i] if j == i else zero for j in range(m))
        for i in range(m)
    ]
    _, u, c = column_echelon_with_transform(dom, stacked)
    gens_cols = [[u[row][j] for row in range(n)] for j in range(c + 1)]
    if len(gens_cols) != n:
        raise InvalidInput("congruence system did not yield a full-rank kernel")
    rows = tuple(tuple(col[i] for col in gens_cols) for i in range(n))
    return Lattice.from_basis(dom, rows)


def intersect(lat1: Lattice, lat2: Lattice) -> Lattice:
    """Intersection of two lattices over the same ring."""
    if lat1.domain != lat2.domain or lat1.n != lat2.n:
        raise InvalidInput("lattices live in different spaces")
    dom = lat1.domain
    n = lat1.n
    stacked = [
        tuple(lat1.basis[i]) + tuple(dom.neg(x) for x in lat2.basis[i])
        for i in range(n)
    ]
    _, u, c = column_echelon_with_transform(dom, stacked)
    gens = []
    for j in range(c + 1):
        s = [u[row][j] for row in range(n)]
        v = [dom.zero()] * n
        for col in range(n):
            if not dom.is_zero(s[col]):
                for i in range(n):
                    v[i] = dom.add(v[i], dom.mul(s[col], lat1.basis[i][col]))
        gens.append(v)
    if len(gens) != n:
        raise InvalidInput("intersection is not full rank")
    rows = tuple(tuple(g[i] for g in gens) for i in range(n))
    return Lattice.from_basis(dom, rows)


def _ifloor(p: int, q: int) -> int:
    return p // q


def _iceil(p: int, q: int) -> int:
    return -((-p) // q)


def lattice_point_ratio(
    box_halfwidths: Sequence[Fraction], lat: Lattice, r: int
) -> tuple[int, Fraction]:
    """Count points of the lattice in r * prod [-w_i, w_i] by exact recursion.

    The recursion walks the upper-triangular HNF coordinates from the last
    row up; the innermost level is counted in closed form.
    """
    if lat.domain.is_poly:
        raise InvalidInput("the point enumerator is defined over Z")
    if len(box_halfwidths) != lat.n:
        raise InvalidInput("dimension mismatch")
    ws = [Fraction(w) for w in box_halfwidths]
    if any(w <= 0 for w in ws) or r <= 0:
        raise InvalidInput("halfwidths and r must be positive")
    n = lat.n
    basis = lat.basis
    bounds = [r * w for w in ws]

    def count_level(i: int, tails: list[Fraction]) -> int:
        # integer y_i with |basis[i][i]*y_i + tails[i]| <= bounds[i]
        b = basis[i][i]
        lo_f = (-bounds[i] - tails[i]) / b
        hi_f = (bounds[i] - tails[i]) / b
        lo = _iceil(lo_f.numerator, lo_f.denominator)
        hi = _ifloor(hi_f.numerator, hi_f.denominator)
        if hi < lo:
            return 0
        if i == 0:
            return hi - lo + 1
        total = 0
        for y in range(lo, hi + 1):
            if y:
                new_tails = [
                    tails[row] + y * basis[row][i] for row in range(i)
                ] + tails[i:]
            else:
                new_tails = tails
            total += count_level(i - 1, new_tails)
        return total

    count = count_level(n - 1, [Fraction(0)] * n)
    return count, Fraction(count, r**n)
