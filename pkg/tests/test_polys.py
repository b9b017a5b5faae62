import pytest
from hypothesis import given, settings, strategies as st

from latforms.polys import (
    NEG_INF,
    FpPoly,
    FpRat,
    is_irreducible,
    is_prime,
    nth_poly,
    poly_ext_gcd,
    poly_factor,
    poly_gcd,
    poly_lcm,
    poly_sqrt,
    sqrt_mod_prime,
)


def P(p, *coeffs):
    return FpPoly(p, coeffs)


def test_canonical_form_trims_leading_zeros():
    assert P(3, 1, 2, 0, 0).coeffs == (1, 2)
    assert P(3, 0, 0).coeffs == ()
    assert P(3, 3, 6).is_zero


def test_degree_axioms():
    assert FpPoly.zero(5).degree is NEG_INF
    assert P(3, 1, 0, 1).degree == 2
    a, b = P(3, 1, 1), P(3, 0, 0, 1)
    assert (a * b).degree == a.degree + b.degree == 3
    assert (FpPoly.zero(3) * a).degree is NEG_INF


def test_divmod_and_gcd():
    p = 5
    a = P(p, 1, 2, 3, 4)
    b = P(p, 2, 1)
    q, r = divmod(a, b)
    assert q * b + r == a
    assert r.degree < b.degree
    g = poly_gcd(a * b, b)
    assert g == b.monic()
    gg, u, v = poly_ext_gcd(a, b)
    assert u * a + v * b == gg


def test_lcm_divisibility():
    a, b = P(3, 1, 1), P(3, 2, 1)
    m = poly_lcm(a, b)
    assert (m % a).is_zero and (m % b).is_zero and m.is_monic


@settings(max_examples=150, deadline=None)
@given(
    st.integers(0, 3**5 - 1),
    st.integers(0, 3**5 - 1),
)
def test_multiplicative_degrees_random(i, j):
    a, b = nth_poly(3, i), nth_poly(3, j)
    prod = a * b
    if a.is_zero or b.is_zero:
        assert prod.is_zero
    else:
        assert prod.degree == a.degree + b.degree


def test_irreducibility():
    t = FpPoly.x(3)
    one = FpPoly.one(3)
    assert is_irreducible(t)
    assert is_irreducible(t * t + one)  # no root mod 3
    assert not is_irreducible(t * t)
    assert not is_irreducible(one)


def test_factorization_reconstructs():
    t = FpPoly.x(5)
    one = FpPoly.one(5)
    f = (t + one) ** 3 * (t * t + FpPoly.const(5, 2)) * FpPoly.const(5, 3)
    factors = poly_factor(f)
    prod = FpPoly.one(5)
    for irr, mult in factors:
        assert is_irreducible(irr) and irr.is_monic
        prod = prod * irr**mult
    assert prod == f.monic()


def test_factor_constant_is_empty():
    assert poly_factor(FpPoly.const(3, 2)) == []


def test_poly_sqrt():
    t = FpPoly.x(7)
    g = t * t + FpPoly.const(7, 3) * t + FpPoly.one(7)
    s = poly_sqrt(g * g)
    assert s is not None and s * s == g * g
    assert poly_sqrt(t) is None
    assert poly_sqrt(FpPoly.zero(7)).is_zero
    # characteristic 2: squares have only even-degree terms
    h = FpPoly(2, (1, 0, 1))
    assert poly_sqrt(h) == FpPoly(2, (1, 1))
    assert poly_sqrt(FpPoly(2, (1, 1))) is None


def test_sqrt_mod_prime_exhaustive_small():
    for p in (3, 5, 7, 11, 13):
        squares = {x * x % p for x in range(1, p)}
        for a in range(1, p):
            r = sqrt_mod_prime(a, p)
            if a in squares:
                assert r is not None and r * r % p == a and r <= p - r
            else:
                assert r is None


def test_fprat_normalization_and_arith():
    t = FpPoly.x(3)
    one = FpPoly.one(3)
    r = FpRat(t * t + t, t)  # (t^2 + t)/t = t + 1
    assert r == FpRat(t + one)
    assert r.degree == 1
    s = FpRat(one, t)
    assert (s - s).is_zero
    assert (s * FpRat(t)).num == one
    assert (FpRat(t) / FpRat(t)).num == one
    with pytest.raises(ZeroDivisionError):
        FpRat(one, FpPoly.zero(3))


def test_is_prime():
    assert is_prime(2) and is_prime(3) and is_prime(2**31 - 1)
    assert not is_prime(1) and not is_prime(561) and not is_prime(2**30)
