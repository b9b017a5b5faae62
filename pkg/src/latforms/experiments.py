"""Seeded experiment runners: linear-constant sweeps and the lattice
point enumerator check.

The generators here are also the instance factories for the acceptance
suite, so every randomized claim in the tests is reproducible from a
single integer seed.
"""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Optional

from .domains import Domain, INTEGERS
from .errors import InvalidInput
from .lattices import Lattice, lattice_point_ratio
from .polys import FpPoly
from .solvers import BoxConstraint, box_holds_int, solve_box_int, solve_box_poly


def random_hnf_lattice_int(rng: random.Random, n: int, max_covol: int) -> Lattice:
    """A random lattice over Z in HNF with covolume at most max_covol."""
    budget = rng.randint(1, max_covol)
    diag = []
    for _ in range(n - 1):
        d = rng.randint(1, budget)
        diag.append(d)
        budget //= d
    diag.append(budget if rng.random() < 0.7 else rng.randint(1, budget))
    rng.shuffle(diag)
    rows = [[0] * n for _ in range(n)]
    for i in range(n):
        rows[i][i] = diag[i]
        for j in range(i + 1, n):
            rows[i][j] = rng.randrange(diag[i])
    return Lattice.from_basis(INTEGERS, rows)


def random_eps_at_least(rng: random.Random, n: int, target: int) -> list[Fraction]:
    """Random positive rationals with product in [target, ~1.5 target]."""
    eps = [Fraction(rng.randint(2, 12), rng.randint(1, 6)) for _ in range(n)]
    prod = Fraction(1)
    for e in eps:
        prod *= e
    scale = Fraction(target, 1) * Fraction(rng.randint(101, 149), 100) / prod
    eps[rng.randrange(n)] *= scale
    return eps


def random_monic(rng: random.Random, p: int, deg: int) -> FpPoly:
    return FpPoly(p, [rng.randrange(p) for _ in range(deg)] + [1])


def random_hnf_lattice_poly(
    rng: random.Random, dom: Domain, n: int, diag_degrees: list[int]
) -> Lattice:
    """A random polynomial lattice in HNF with the given diagonal degrees."""
    p = dom.p
    rows = [[FpPoly.zero(p)] * n for _ in range(n)]
    for i in range(n):
        rows[i][i] = random_monic(rng, p, diag_degrees[i])
        for j in range(i + 1, n):
            cap = diag_degrees[i]
            rows[i][j] = FpPoly(p, [rng.randrange(p) for _ in range(cap)])
    return Lattice.from_basis(dom, rows)


def random_composition(rng: random.Random, total: int, parts: int) -> list[int]:
    cuts = sorted(rng.randint(0, total) for _ in range(parts - 1))
    prev = 0
    out = []
    for c in cuts + [total]:
        out.append(c - prev)
        prev = c
    return out


def run_constants_experiment(
    dom: Domain, n_max: int, trials: int, seed: int
) -> list[dict]:
    """Guarantee and sharpness sweeps for the linear-forms constants.

    Over Z: random lattices of covolume <= 500 with random rational
    bounds at or above the covolume must always be solvable; shrinking
    every bound below 1 over the standard lattice must always fail.
    Over F_p[t]: lattices at the exact threshold deg-covol = n-1+sum(e)
    must be solvable; the t-scaled standard lattice with zero bounds must
    not be.
    """
    if dom.is_poly:
        if n_max > 3:
            raise InvalidInput("polynomial sweeps support n_max <= 3")
    elif n_max > 4:
        raise InvalidInput("integer sweeps support n_max <= 4")
    if trials == 0:
        return []
    rng = random.Random(seed)
    rows = []
    for n in range(1, n_max + 1):
        guarantee_failures = 0
        sharpness_false_positives = 0
        if dom.is_poly:
            for _ in range(trials):
                e = [rng.randint(0, 2) for _ in range(n)]
                degs = random_composition(rng, n - 1 + sum(e), n)
                lat = random_hnf_lattice_poly(rng, dom, n, degs)
                x = solve_box_poly(lat, BoxConstraint.of_degrees(e))
                ok = (
                    x is not None
                    and lat.contains(x)
                    and all(
                        xi.degree <= ei or xi.is_zero for xi, ei in zip(x, e)
                    )
                    and any(not xi.is_zero for xi in x)
                )
                if not ok:
                    guarantee_failures += 1
            t = FpPoly.x(dom.p)
            zero = FpPoly.zero(dom.p)
            sharp = Lattice.from_basis(
                dom,
                [[t if i == j else zero for j in range(n)] for i in range(n)],
            )
            if solve_box_poly(sharp, BoxConstraint.of_degrees([0] * n)) is not None:
                sharpness_false_positives += 1
        else:
            for _ in range(trials):
                lat = random_hnf_lattice_int(rng, n, 500)
                eps = random_eps_at_least(rng, n, lat.covolume())
                box = BoxConstraint.ints(eps)
                x = solve_box_int(lat, box)
                ok = (
                    x is not None
                    and lat.contains(x)
                    and any(x)
                    and box_holds_int(x, box)
                )
                if not ok:
                    guarantee_failures += 1
            for k in range(2, 11):
                eps = [Fraction(k - 1, k)] * n
                if solve_box_int(
                    Lattice.standard(INTEGERS, n), BoxConstraint.ints(eps)
                ) is not None:
                    sharpness_false_positives += 1
        rows.append(
            {
                "n": n,
                "trials": trials,
                "guarantee_failures": guarantee_failures,
                "sharpness_false_positives": sharpness_false_positives,
            }
        )
    return rows


def run_enumerator(
    widths: list[Fraction], lat: Lattice, r: int
) -> dict:
    """Lattice point count in the scaled box and its r^n-normalized ratio,
    next to the volume/covolume limit."""
    count, ratio = lattice_point_ratio(widths, lat, r)
    vol = Fraction(1)
    for w in widths:
        vol *= 2 * Fraction(w)
    expected = vol / lat.covolume()
    return {
        "count": count,
        "ratio": ratio,
        "expected": expected,
        "within_1_percent": abs(ratio - expected) <= expected / 100,
    }
