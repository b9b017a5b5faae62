"""latforms: exact geometry of numbers over Z and F_p[t].

Lattices with Hermite/Smith normal forms and covolumes, small-solution
solvers for linear forms in exact boxes, Diophantine approximation,
small isotropic vectors of quadratic forms with explicit size bounds,
and small multiples of anisotropic forms with a constructive four-square
application.
"""

from .domains import Domain, INTEGERS, poly_domain, norm_element, poly_degree, sqrt_mod_prime_power
from .errors import InvalidInput, SearchCeilingExceeded
from .lattices import (
    CongruenceSystem,
    Lattice,
    QuotientInvariants,
    congruence_lattice,
    covolume,
    hnf,
    intersect,
    lattice_point_ratio,
    quotient_invariants,
)
from .polys import FpPoly, FpRat
from .quadforms import (
    IsotropyCertificate,
    QuadForm,
    bilinear,
    brute_min_isotropic,
    decide_isotropy,
    descent_step,
    evaluate,
    form_norm,
    minimize_isotropic,
)
from .solvers import (
    BoxConstraint,
    LinearConstantProfile,
    dioph_approx_int,
    dioph_approx_poly,
    pigeonhole_collisions,
    solve_box_int,
    solve_box_poly,
    solve_congruence_box,
    solve_tornheim,
)
from .multiples import (
    HypothesisReport,
    MultipleCertificate,
    check_hypothesis_H,
    four_square,
    hyperbolic_lattice_mod,
    small_multiple_int,
    small_multiple_poly,
)

__all__ = [
    "BoxConstraint",
    "CongruenceSystem",
    "Domain",
    "FpPoly",
    "FpRat",
    "HypothesisReport",
    "INTEGERS",
    "InvalidInput",
    "IsotropyCertificate",
    "Lattice",
    "LinearConstantProfile",
    "MultipleCertificate",
    "QuadForm",
    "QuotientInvariants",
    "SearchCeilingExceeded",
    "bilinear",
    "brute_min_isotropic",
    "check_hypothesis_H",
    "congruence_lattice",
    "covolume",
    "decide_isotropy",
    "descent_step",
    "dioph_approx_int",
    "dioph_approx_poly",
    "evaluate",
    "form_norm",
    "four_square",
    "hnf",
    "hyperbolic_lattice_mod",
    "intersect",
    "lattice_point_ratio",
    "minimize_isotropic",
    "norm_element",
    "pigeonhole_collisions",
    "poly_degree",
    "poly_domain",
    "quotient_invariants",
    "small_multiple_int",
    "small_multiple_poly",
    "solve_box_int",
    "solve_box_poly",
    "solve_congruence_box",
    "solve_tornheim",
    "sqrt_mod_prime_power",
]
