"""JSON encodings shared by the service, the CLI and the test suite.

Ring elements: integers travel as decimal strings (arbitrary precision
survives any JSON parser), polynomials as ascending coefficient arrays.
Rationals are "p/q" strings; rational functions are {"num": [...],
"den": [...]} objects.  Lattices are row-major basis matrices whose
columns generate; forms are sparse upper-triangular coefficient triples
with 1-based indices.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Any

from .domains import Domain, Element, INTEGERS, poly_domain
from .errors import InvalidInput
from .lattices import CongruenceSystem, Lattice
from .polys import FpPoly, FpRat
from .quadforms import QuadForm


def decode_domain(obj: Any) -> Domain:
    if not isinstance(obj, dict) or "kind" not in obj:
        raise InvalidInput("domain must be an object with a 'kind' field")
    kind = obj["kind"]
    if kind == "integers":
        return INTEGERS
    if kind == "poly_fp":
        if "p" not in obj:
            raise InvalidInput("poly_fp domain needs a prime p")
        return poly_domain(int(obj["p"]))
    raise InvalidInput(f"unknown domain kind {kind!r}")


def encode_domain(dom: Domain) -> dict:
    if dom.is_poly:
        return {"kind": "poly_fp", "p": dom.p}
    return {"kind": "integers"}


def decode_element(dom: Domain, obj: Any) -> Element:
    if dom.is_poly:
        if not isinstance(obj, (list, tuple)):
            raise InvalidInput("polynomial elements are coefficient arrays")
        return FpPoly(dom.p, [int(c) for c in obj])
    if isinstance(obj, bool):
        raise InvalidInput("integers must be numbers or decimal strings")
    if isinstance(obj, int):
        return obj
    if isinstance(obj, str):
        try:
            return int(obj, 10)
        except ValueError as exc:
            raise InvalidInput(f"bad integer literal {obj!r}") from exc
    raise InvalidInput(f"cannot decode ring element from {obj!r}")


def encode_element(dom: Domain, x: Element) -> Any:
    if dom.is_poly:
        return list(x.coeffs)
    return str(x)


def decode_fraction(obj: Any) -> Fraction:
    if isinstance(obj, bool):
        raise InvalidInput("rationals must be numbers or 'p/q' strings")
    if isinstance(obj, int):
        return Fraction(obj)
    if isinstance(obj, str):
        try:
            if "/" in obj:
                num, den = obj.split("/", 1)
                return Fraction(int(num), int(den))
            return Fraction(int(obj))
        except (ValueError, ZeroDivisionError) as exc:
            raise InvalidInput(f"bad rational literal {obj!r}") from exc
    raise InvalidInput(f"cannot decode rational from {obj!r}")


def encode_fraction(x: Fraction) -> str:
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def decode_ratfun(p: int, obj: Any) -> FpRat:
    if isinstance(obj, dict):
        num = FpPoly(p, [int(c) for c in obj.get("num", [])])
        den_raw = obj.get("den", [1])
        den = FpPoly(p, [int(c) for c in den_raw])
        if den.is_zero:
            raise InvalidInput("rational function with zero denominator")
        return FpRat(num, den)
    if isinstance(obj, (list, tuple)):
        return FpRat(FpPoly(p, [int(c) for c in obj]))
    raise InvalidInput(f"cannot decode rational function from {obj!r}")


def encode_ratfun(x: FpRat) -> dict:
    return {"num": list(x.num.coeffs), "den": list(x.den.coeffs)}


def decode_lattice(obj: Any) -> Lattice:
    dom = decode_domain(obj.get("domain"))
    n = int(obj.get("n", 0))
    basis = obj.get("basis")
    if not isinstance(basis, list) or len(basis) != n:
        raise InvalidInput("basis must be an n x n row-major matrix")
    rows = []
    for row in basis:
        if not isinstance(row, list) or len(row) != n:
            raise InvalidInput("basis must be an n x n row-major matrix")
        rows.append([decode_element(dom, x) for x in row])
    return Lattice.from_basis(dom, rows)


def encode_lattice(lat: Lattice) -> dict:
    return {
        "domain": encode_domain(lat.domain),
        "n": lat.n,
        "basis": [[encode_element(lat.domain, x) for x in row] for row in lat.basis],
    }


def decode_quadform(obj: Any) -> QuadForm:
    dom = decode_domain(obj.get("domain"))
    n = int(obj.get("n", 0))
    if n < 1:
        raise InvalidInput("form arity must be positive")
    entries = {}
    for triple in obj.get("coeffs", []):
        if not isinstance(triple, list) or len(triple) != 3:
            raise InvalidInput("coeffs entries are [i, k, m] triples")
        i, k, m = triple
        i, k = int(i), int(k)
        if not 1 <= i <= k <= n:
            raise InvalidInput(f"coefficient index ({i}, {k}) out of range")
        entries[(i - 1, k - 1)] = decode_element(dom, m)
    return QuadForm.from_entries(dom, n, entries)


def encode_quadform(f: QuadForm) -> dict:
    coeffs = []
    for i in range(f.n):
        for k in range(i, f.n):
            m = f.coeff(i, k)
            if not f.domain.is_zero(m):
                coeffs.append([i + 1, k + 1, encode_element(f.domain, m)])
    return {"domain": encode_domain(f.domain), "n": f.n, "coeffs": coeffs}


def decode_congruence(obj: Any) -> CongruenceSystem:
    dom = decode_domain(obj.get("domain"))
    rows = obj.get("rows")
    moduli = obj.get("moduli")
    if not isinstance(rows, list) or not rows or not isinstance(moduli, list):
        raise InvalidInput("congruence systems need rows and moduli")
    if len(rows) != len(moduli):
        raise InvalidInput("one modulus per congruence row")
    width = len(rows[0])
    decoded = []
    for row in rows:
        if not isinstance(row, list) or len(row) != width:
            raise InvalidInput("congruence rows must have equal length")
        decoded.append(tuple(decode_element(dom, x) for x in row))
    ds = tuple(decode_element(dom, d) for d in moduli)
    return CongruenceSystem(dom, tuple(decoded), ds)


def decode_vector(dom: Domain, obj: Any, n: int) -> tuple[Element, ...]:
    if not isinstance(obj, list) or len(obj) != n:
        raise InvalidInput(f"expected a vector of length {n}")
    return tuple(decode_element(dom, x) for x in obj)


def encode_vector(dom: Domain, v) -> list:
    return [encode_element(dom, x) for x in v]
