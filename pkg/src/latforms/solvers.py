"""Small-solution solvers for linear forms over Z and F_p[t].

Over Z the box solver enumerates lattice points in exact rational boxes;
the enumeration order is fixed (recursive descent over the HNF
coordinates, each level walking 0, 1, -1, 2, -2, ...) so results are
deterministic.  Over F_p[t] degree-bounded solving is exact linear
algebra over F_p: tuples with bounded coordinate degrees form a finite
dimensional vector space which is pushed through the quotient by the
lattice, and any nonzero kernel element is a solution.

Guarantees realized here: a nonzero lattice point exists in every box
with covolume <= product of bounds over Z (with strict bounds at all but
one distinguished index), and over F_p[t] whenever the covolume degree is
at most n - 1 + sum of degree bounds.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .domains import Domain, Element, poly_domain
from .errors import InvalidInput
from .lattices import (
    CongruenceSystem,
    Lattice,
    column_echelon_with_transform,
    congruence_lattice,
    hnf_with_transform,
)
from .polys import NEG_INF, FpPoly, FpRat, poly_lcm


@dataclass(frozen=True)
class BoxConstraint:
    """Per-coordinate bounds: rational eps over Z, degree bounds over F_p[t].

    Over Z the bound at the distinguished index istar is non-strict
    (|x| <= eps) while every other bound is strict; istar defaults to the
    last coordinate.
    """

    eps: Optional[tuple[Fraction, ...]] = None
    degrees: Optional[tuple[int, ...]] = None
    istar: Optional[int] = None

    @classmethod
    def ints(cls, eps: Sequence, istar: Optional[int] = None) -> "BoxConstraint":
        eps = tuple(Fraction(e) for e in eps)
        if any(e <= 0 for e in eps):
            raise InvalidInput("box bounds must be positive")
        if istar is not None and not 0 <= istar < len(eps):
            raise InvalidInput("distinguished index out of range")
        return cls(eps=eps, istar=istar)

    @classmethod
    def of_degrees(cls, e: Sequence[int]) -> "BoxConstraint":
        e = tuple(int(v) for v in e)
        if any(v < 0 for v in e):
            raise InvalidInput("degree bounds must be >= 0")
        return cls(degrees=e)


@dataclass(frozen=True)
class LinearConstantProfile:
    """Reference value of the best linear-forms constant for one ring."""

    domain: Domain
    n: int

    @property
    def constant(self):
        """C(Z, n) = 1, or the log_q constant c(F_p[t], n) = n - 1."""
        return self.n - 1 if self.domain.is_poly else Fraction(1)


def _level_range_strict(p_num: int, q_den: int, tail: int, diag: int):
    # integer y with |diag*y + tail| < p_num/q_den; diag > 0, q_den > 0
    b = q_den * diag
    lo = (-p_num - q_den * tail) // b + 1
    hi = (p_num - q_den * tail - 1) // b
    return lo, hi


def _level_range_closed(p_num: int, q_den: int, tail: int, diag: int):
    b = q_den * diag
    lo = -((p_num + q_den * tail) // b)
    hi = (p_num - q_den * tail) // b
    return lo, hi


def _canonical_order(lo: int, hi: int):
    # 0, 1, -1, 2, -2, ... clipped to [lo, hi]
    if lo > hi:
        return
    top = max(abs(lo), abs(hi))
    if lo <= 0 <= hi:
        yield 0
    for m in range(1, top + 1):
        if m <= hi and m >= lo:
            yield m
        if -m >= lo and -m <= hi:
            yield -m


def solve_box_int(lat: Lattice, box: BoxConstraint) -> Optional[tuple[int, ...]]:
    """First nonzero lattice vector in the box, in canonical order, or None.

    The enumeration is exhaustive, so None certifies the box holds no
    nonzero vector; when covolume <= prod(eps) a vector is guaranteed.
    """
    if lat.domain.is_poly:
        raise InvalidInput("solve_box_int expects a lattice over Z")
    if box.eps is None or len(box.eps) != lat.n:
        raise InvalidInput("box does not match the lattice dimension")
    n = lat.n
    istar = box.istar if box.istar is not None else n - 1
    basis = lat.basis
    nums = [e.numerator for e in box.eps]
    dens = [e.denominator for e in box.eps]

    def descend(i: int, tails: list[int], nonzero: bool):
        diag = basis[i][i]
        if i == istar:
            lo, hi = _level_range_closed(nums[i], dens[i], tails[i], diag)
        else:
            lo, hi = _level_range_strict(nums[i], dens[i], tails[i], diag)
        for y in _canonical_order(lo, hi):
            nz = nonzero or y != 0
            if i == 0:
                if nz:
                    return [y]
                continue
            if y:
                new_tails = [tails[r] + y * basis[r][i] for r in range(i)]
            else:
                new_tails = tails[:i]
            got = descend(i - 1, new_tails + tails[i:], nz)
            if got is not None:
                got.append(y)
                return got
        return None

    y = descend(n - 1, [0] * n, False)
    if y is None:
        return None
    return tuple(int(v) for v in lat.from_coords(tuple(y)))


def box_holds_int(x: Sequence[int], box: BoxConstraint) -> bool:
    """Exact re-check of the box inequalities for a candidate vector."""
    n = len(x)
    istar = box.istar if box.istar is not None else n - 1
    for i, v in enumerate(x):
        if i == istar:
            if abs(v) > box.eps[i]:
                return False
        elif abs(v) >= box.eps[i]:
            return False
    return True


# -- degree-bounded solving over F_p[t] --------------------------------


def _fp_kernel_vector(rows: list[list[int]], ncols: int, p: int) -> Optional[list[int]]:
    # first canonical kernel vector of the matrix over F_p, or None
    mat = [row[:] for row in rows]
    pivots: dict[int, int] = {}
    r = 0
    for c in range(ncols):
        piv = None
        for i in range(r, len(mat)):
            if mat[i][c] % p:
                piv = i
                break
        if piv is None:
            continue
        mat[r], mat[piv] = mat[piv], mat[r]
        inv = pow(mat[r][c], p - 2, p)
        mat[r] = [v * inv % p for v in mat[r]]
        for i in range(len(mat)):
            if i != r and mat[i][c] % p:
                f = mat[i][c]
                mat[i] = [(a - f * b) % p for a, b in zip(mat[i], mat[r])]
        pivots[c] = r
        r += 1
    free = [c for c in range(ncols) if c not in pivots]
    if not free:
        return None
    c0 = free[0]
    vec = [0] * ncols
    vec[c0] = 1
    for c, row in pivots.items():
        vec[c] = (-mat[row][c0]) % p
    return vec


def solve_degree_bounded(
    dom: Domain, rows: Sequence[Sequence[FpPoly]], bounds: Sequence[int]
) -> Optional[tuple[tuple[FpPoly, ...], tuple[FpPoly, ...]]]:
    """Nonzero x in R^n with deg (A x)_i <= bounds_i, by exact kernel solving.

    Returns (x, y) with y = A x the degree-bounded image, or None exactly
    when no solution exists.  bounds may be negative (forcing the
    corresponding form to vanish at that degree budget).
    """
    p = dom.p
    n = len(rows)
    h, u = hnf_with_transform(dom, rows)
    hlat = Lattice(dom, n, h)
    diag_degs = [h[i][i].degree for i in range(n)]
    dim_q = sum(diag_degs)
    monomials = [
        (i, k) for i in range(n) for k in range(bounds[i] + 1) if bounds[i] >= 0
    ]
    if not monomials:
        return None
    # matrix of the F_p-linear reduction map into the canonical residues
    cols = []
    for (i, k) in monomials:
        vec = [FpPoly.zero(p)] * n
        vec[i] = FpPoly.x(p) ** k if k else FpPoly.one(p)
        res = hlat.reduce(tuple(vec))
        flat: list[int] = []
        for row in range(n):
            cs = res[row].coeffs
            flat.extend(list(cs) + [0] * (diag_degs[row] - len(cs)))
        cols.append(flat)
    mat = [[cols[j][r] for j in range(len(monomials))] for r in range(dim_q)]
    coeffs = _fp_kernel_vector(mat, len(monomials), p)
    if coeffs is None:
        return None
    y = [FpPoly.zero(p)] * n
    for c, (i, k) in zip(coeffs, monomials):
        if c:
            y[i] = y[i] + FpPoly(p, [0] * k + [c])
    z = hlat.member_coords(tuple(y))
    if z is None:
        raise ArithmeticError("kernel vector fell outside the lattice")
    x = [FpPoly.zero(p)] * n
    for j, zj in enumerate(z):
        if not zj.is_zero:
            for i in range(n):
                x[i] = x[i] + zj * u[i][j]
    return tuple(x), tuple(y)


def solve_box_poly(lat: Lattice, box: BoxConstraint) -> Optional[tuple[FpPoly, ...]]:
    """Nonzero x in the lattice with deg x_i <= e_i, or None.

    Complete: None certifies no solution.  Existence is guaranteed when
    deg-covolume <= n - 1 + sum e_i, which is checked and enforced.
    """
    if not lat.domain.is_poly:
        raise InvalidInput("solve_box_poly expects a lattice over F_p[t]")
    if box.degrees is None or len(box.degrees) != lat.n:
        raise InvalidInput("box does not match the lattice dimension")
    got = solve_degree_bounded(lat.domain, lat.basis, list(box.degrees))
    if got is None:
        if lat.deg_covolume() <= lat.n - 1 + sum(box.degrees):
            raise ArithmeticError("guaranteed solution was not found")
        return None
    return got[1]


def solve_tornheim(
    p: int, c_matrix: Sequence[Sequence[FpRat]], box: BoxConstraint
) -> tuple[FpPoly, ...]:
    """Nonzero x over F_p[t] with deg sum_j c_ij x_j <= e_i for all i.

    Requires deg det C <= n - 1 + sum e_i; denominators are cleared with
    the monic lcm of all entry denominators before the kernel solve.
    """
    dom = poly_domain(p)
    n = len(c_matrix)
    if box.degrees is None or len(box.degrees) != n:
        raise InvalidInput("degree bounds do not match the matrix size")
    e = list(box.degrees)
    f0 = FpPoly.one(p)
    for row in c_matrix:
        for entry in row:
            f0 = poly_lcm(f0, entry.den)
    cleared = [
        [entry.num * (f0 // entry.den) for entry in row] for row in c_matrix
    ]
    h, _ = hnf_with_transform(dom, cleared)
    deg_det_cleared = sum(h[i][i].degree for i in range(n))
    deg_det_c = deg_det_cleared - n * f0.degree
    if deg_det_c > n - 1 + sum(e):
        raise InvalidInput(
            f"deg det C = {deg_det_c} exceeds n - 1 + sum(e) = {n - 1 + sum(e)}"
        )
    got = solve_degree_bounded(dom, cleared, [ei + f0.degree for ei in e])
    if got is None:
        raise ArithmeticError("guaranteed solution was not found")
    return got[0]


def solve_congruence_box(
    sys: CongruenceSystem, box: BoxConstraint
) -> Optional[tuple[int, ...]]:
    """Solve the congruences inside the box: congruence lattice + box solver."""
    return solve_box_int(congruence_lattice(sys), box)


# -- Diophantine approximation -----------------------------------------


def dioph_approx_int(thetas: Sequence[Fraction], big_m: Fraction):
    """Integers (x_1..x_n, x_{n+1}) with 0 < x_{n+1} < M and
    |x_{n+1} theta_i - x_i| <= M^(-1/n) for all i.

    The comparison is exact: err^n * M <= 1 cross-multiplied in Z.  Scans
    multipliers 1, 2, ... (a solution below M is guaranteed).
    """
    big_m = Fraction(big_m)
    if big_m <= 1:
        raise InvalidInput("M must exceed 1")
    thetas = [Fraction(t) for t in thetas]
    n = len(thetas)
    if n == 0:
        raise InvalidInput("need at least one target")
    mn, md = big_m.numerator, big_m.denominator
    s = 1
    while s * md < mn:
        xs = []
        ok = True
        for th in thetas:
            v = th * s
            xi = (2 * v.numerator + v.denominator) // (2 * v.denominator)
            err = abs(v - xi)
            if err.numerator**n * mn > err.denominator**n * md:
                ok = False
                break
            xs.append(xi)
        if ok:
            return tuple(xs) + (s,)
        s += 1
    raise ArithmeticError("guaranteed approximation was not found below M")


def dioph_approx_poly(thetas: Sequence[FpRat], big_m: FpPoly):
    """F_p[t] tuple (x_1..x_n, x_{n+1}) with x_{n+1} != 0,
    deg x_{n+1} <= deg M - 1 and deg(x_{n+1} theta_i - x_i) <= -deg M / n.

    Requires deg M >= 1.  Degree budgets follow the ceiling expression of
    the underlying linear-forms argument; the returned tuple satisfies the
    budget of every coordinate exactly.
    """
    n = len(thetas)
    if n == 0:
        raise InvalidInput("need at least one target")
    p = thetas[0].p
    deg_m = big_m.degree
    if deg_m is NEG_INF or deg_m < 1:
        raise InvalidInput("deg M >= 1 is required")
    e_head = -((n - 1 + deg_m) // n)  # ceil((1 - n - deg m)/n)
    bounds = [e_head] * n + [deg_m - 1]
    one = FpPoly.one(p)
    zero = FpPoly.zero(p)
    rows = []
    for i in range(n):
        row = [FpRat(zero)] * (n + 1)
        row[i] = FpRat(-one)
        row[n] = thetas[i]
        rows.append(row)
    rows.append([FpRat(zero)] * n + [FpRat(one)])
    f0 = one
    for th in thetas:
        f0 = poly_lcm(f0, th.den)
    dom = poly_domain(p)
    cleared = [[r.num * (f0 // r.den) for r in row] for row in rows]
    got = solve_degree_bounded(
        dom, cleared, [b + f0.degree for b in bounds]
    )
    if got is None:
        raise ArithmeticError("guaranteed approximation was not found")
    x = got[0]
    if x[n].is_zero:
        raise ArithmeticError("degenerate approximation with zero multiplier")
    return x


def approx_error_degree(theta: FpRat, x_mult: FpPoly, x_i: FpPoly):
    """deg(x_mult * theta - x_i) in the fraction field."""
    return (theta.mul_poly(x_mult) - FpRat(x_i)).degree


# -- group pigeonhole ----------------------------------------------------


def lattice_from_generators(
    dom: Domain, rows: Sequence[Sequence[Element]]
) -> Lattice:
    """HNF lattice spanned by the columns of a (possibly wide) matrix."""
    n = len(rows)
    k = len(rows[0])
    if k < n:
        raise InvalidInput("not enough generators for full rank")
    e, _, c = column_echelon_with_transform(dom, rows)
    if c != k - n - 1:
        raise InvalidInput("generators do not span a full-rank lattice")
    square = tuple(tuple(e[i][j] for j in range(k - n, k)) for i in range(n))
    for i in range(n):
        if dom.is_zero(square[i][i]):
            raise InvalidInput("generators do not span a full-rank lattice")
    return Lattice(dom, n, square)


def pigeonhole_collisions(
    group: Sequence[int],
    subgroup_gens: Sequence[Sequence[int]],
    elements: Sequence[Sequence[int]],
    kappa: int,
) -> list[tuple[int, ...]]:
    """At least kappa distinct nonzero differences s - s' landing in the
    subgroup, found by bucketing the elements by coset.

    The group is given by its cyclic factors Z/m_1 x ... x Z/m_r; the
    subgroup by generators.  Requires #S > kappa * [G : subgroup].
    """
    from .domains import INTEGERS

    mods = [int(m) for m in group]
    if any(m < 1 for m in mods):
        raise InvalidInput("group factor moduli must be >= 1")
    r = len(mods)
    if kappa < 1:
        raise InvalidInput("kappa must be >= 1")
    gens = [tuple(int(v) % mods[i] for i, v in enumerate(g)) for g in subgroup_gens]
    cols = list(gens) + [
        tuple(mods[i] if i == j else 0 for i in range(r)) for j in range(r)
    ]
    rows = [[col[i] for col in cols] for i in range(r)]
    sub = lattice_from_generators(INTEGERS, rows)
    index = sub.covolume()
    seen = set()
    s_list = []
    for s in elements:
        t = tuple(int(v) % mods[i] for i, v in enumerate(s))
        if t not in seen:
            seen.add(t)
            s_list.append(t)
    if len(s_list) <= kappa * index:
        raise InvalidInput(
            f"#S = {len(s_list)} does not exceed kappa * index = {kappa * index}"
        )
    buckets: dict[tuple, list[tuple]] = {}
    order: list[tuple] = []
    for s in s_list:
        key = sub.reduce(s)
        if key not in buckets:
            buckets[key] = []
            order.append(key)
        buckets[key].append(s)
    diffs: list[tuple[int, ...]] = []
    emitted = set()
    for key in order:
        bucket = buckets[key]
        base = bucket[0]
        for s in bucket[1:]:
            d = tuple((a - b) % mods[i] for i, (a, b) in enumerate(zip(s, base)))
            if d not in emitted:
                emitted.add(d)
                diffs.append(d)
    if len(diffs) < kappa:
        raise ArithmeticError("pigeonhole produced fewer differences than promised")
    return diffs
