import random
from fractions import Fraction

import pytest

from latforms.domains import INTEGERS, poly_domain
from latforms.errors import InvalidInput
from latforms.lattices import (
    CongruenceSystem,
    Lattice,
    congruence_lattice,
    covolume,
    intersect,
    lattice_point_ratio,
    quotient_invariants,
)
from latforms.polys import FpPoly, nth_poly


def rand_int_lattice(rng, n, lo=-9, hi=9):
    while True:
        rows = [[rng.randint(lo, hi) for _ in range(n)] for _ in range(n)]
        try:
            return Lattice.from_basis(INTEGERS, rows), rows
        except InvalidInput:
            continue


def rand_unimodular(rng, n, steps=6):
    u = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    for _ in range(steps):
        i, j = rng.randrange(n), rng.randrange(n)
        if i != j:
            c = rng.randint(-3, 3)
            for r in range(n):
                u[r][i] += c * u[r][j]
    return u


def matmul(a, b):
    n = len(a)
    return [[sum(a[i][k] * b[k][j] for k in range(n)) for j in range(n)] for i in range(n)]


def det(m):
    n = len(m)
    if n == 1:
        return m[0][0]
    return sum(
        (-1) ** j * m[0][j] * det([row[:j] + row[j + 1 :] for row in m[1:]])
        for j in range(n)
    )


def test_hnf_examples():
    lat = Lattice.from_basis(INTEGERS, ((2, 1), (0, 3)))
    assert covolume(lat) == 6
    assert lat.contains((2, 0)) and lat.contains((1, 3))
    assert not lat.contains((1, 0))
    ident = Lattice.from_basis(INTEGERS, ((1, 0), (0, 1)))
    assert ident == Lattice.standard(INTEGERS, 2)
    d3 = poly_domain(3)
    t, one, zero = FpPoly.x(3), FpPoly.one(3), FpPoly.zero(3)
    lp = Lattice.from_basis(d3, ((t, zero), (zero, t + one)))
    assert lp.basis == ((t, zero), (zero, t + one))
    assert covolume(lp) == 9


def test_hnf_rejects_singular():
    with pytest.raises(InvalidInput):
        Lattice.from_basis(INTEGERS, ((1, 2), (2, 4)))


def test_hnf_idempotent_and_unimodular_invariant(rng):
    for _ in range(60):
        n = rng.randint(1, 4)
        lat, rows = rand_int_lattice(rng, n)
        assert Lattice.from_basis(INTEGERS, lat.basis) == lat
        u = rand_unimodular(rng, n)
        assert Lattice.from_basis(INTEGERS, matmul(rows, u)) == lat


def test_covolume_multiplicative(rng):
    # Covol(M * L) = |det M| Covol L
    for _ in range(40):
        n = rng.randint(1, 3)
        lat, rows = rand_int_lattice(rng, n)
        while True:
            m = [[rng.randint(-4, 4) for _ in range(n)] for _ in range(n)]
            if det(m) != 0:
                break
        scaled = Lattice.from_basis(INTEGERS, matmul(m, rows))
        assert covolume(scaled) == abs(det(m)) * covolume(lat)


def test_quotient_invariants_examples():
    assert quotient_invariants(
        Lattice.from_basis(INTEGERS, ((2, 0), (0, 6)))
    ).elementary_divisors == (2, 6)
    assert quotient_invariants(
        Lattice.from_basis(INTEGERS, ((4, 0), (0, 6)))
    ).elementary_divisors == (2, 12)
    assert quotient_invariants(Lattice.standard(INTEGERS, 3)).elementary_divisors == ()


def test_divisor_chain_and_product(rng):
    for _ in range(40):
        n = rng.randint(1, 4)
        lat, _ = rand_int_lattice(rng, n)
        divisors = quotient_invariants(lat).elementary_divisors
        prod = 1
        for i, d in enumerate(divisors):
            prod *= abs(d)
            if i:
                assert d % divisors[i - 1] == 0
        assert prod == covolume(lat)


def test_congruence_lattice_examples():
    sys13 = CongruenceSystem(INTEGERS, ((1, -5),), (13,))
    lat = congruence_lattice(sys13)
    assert covolume(lat) == 13
    assert lat.contains((5, 1)) and lat.contains((13, 0))
    for x in range(-13, 14):
        for y in range(-13, 14):
            assert lat.contains((x, y)) == ((x - 5 * y) % 13 == 0)

    vacuous = congruence_lattice(CongruenceSystem(INTEGERS, ((0, 0),), (5,)))
    assert vacuous == Lattice.standard(INTEGERS, 2)

    d3 = poly_domain(3)
    t, one, zero = FpPoly.x(3), FpPoly.one(3), FpPoly.zero(3)
    latp = congruence_lattice(CongruenceSystem(d3, ((one, -one),), (t - one,)))
    assert covolume(latp) == 3
    assert latp.contains((one, one)) and latp.contains((t - one, zero))
    assert not latp.contains((one, zero))


def test_congruence_covolume_divides_product(rng):
    for _ in range(30):
        n = rng.randint(1, 3)
        m = rng.randint(1, 2)
        rows = tuple(tuple(rng.randint(-6, 6) for _ in range(n)) for _ in range(m))
        ds = tuple(rng.randint(1, 12) for _ in range(m))
        lat = congruence_lattice(CongruenceSystem(INTEGERS, rows, ds))
        prod = 1
        for d in ds:
            prod *= d
        assert prod % covolume(lat) == 0
        # spot check membership semantics
        for _ in range(20):
            v = tuple(rng.randint(-10, 10) for _ in range(n))
            solves = all(
                sum(a * x for a, x in zip(row, v)) % d == 0
                for row, d in zip(rows, ds)
            )
            assert lat.contains(v) == solves


def test_intersection(rng):
    la = Lattice.from_basis(INTEGERS, ((2, 0), (0, 1)))
    lb = Lattice.from_basis(INTEGERS, ((3, 0), (0, 1)))
    lab = intersect(la, lb)
    assert covolume(lab) == 6
    for _ in range(30):
        v = (rng.randint(-20, 20), rng.randint(-20, 20))
        assert lab.contains(v) == (la.contains(v) and lb.contains(v))


def test_poly_covolume_counts_residues():
    # Covol = q^dim(R^n/L), dimension counted by collecting distinct residues
    d3 = poly_domain(3)
    t, one, zero = FpPoly.x(3), FpPoly.one(3), FpPoly.zero(3)
    lat = Lattice.from_basis(d3, ((t, one), (zero, t + one)))
    seen = set()
    for i in range(3**3):
        for j in range(3**3):
            v = (nth_poly(3, i), nth_poly(3, j))
            seen.add(lat.reduce(v))
    assert len(seen) == covolume(lat) == 9


def test_lattice_point_ratio_examples():
    ident = Lattice.standard(INTEGERS, 2)
    count, ratio = lattice_point_ratio([Fraction(1), Fraction(1)], ident, 10)
    assert count == 441 and ratio == Fraction(441, 100)
    doubled = Lattice.from_basis(INTEGERS, ((2, 0), (0, 2)))
    count2, _ = lattice_point_ratio([Fraction(1), Fraction(1)], doubled, 10)
    assert count2 == 121
    _, ratio3 = lattice_point_ratio([Fraction(1), Fraction(1)], ident, 1000)
    assert abs(ratio3 - 4) <= Fraction(4, 100)


def test_lattice_point_ratio_rejects_mismatch():
    with pytest.raises(InvalidInput):
        lattice_point_ratio([Fraction(1)], Lattice.standard(INTEGERS, 2), 10)
