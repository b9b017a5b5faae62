"""Request dispatch: decode, solve, and emit a verified report.

Every "ok" report carries a transcript in which each claimed inequality
is re-derived with exact arithmetic; a report cannot leave this module
with status "ok" unless every transcript line re-verified.  Precondition
violations map to "rejected", exhausted searches without a verdict to
"aborted", absent solutions to "none".
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable

from pydantic import ValidationError

from . import codecs
from .domains import poly_domain
from .errors import InvalidInput, SearchCeilingExceeded
from .lattices import congruence_lattice
from .polys import NEG_INF, FpRat
from .quadforms import (
    QuadForm,
    brute_min_isotropic,
    decide_isotropy,
    evaluate,
    form_norm,
    minimize_isotropic,
    within_cassels_bound,
)
from .schemas import PAYLOAD_MODELS, Report, Request, TranscriptEntry
from .solvers import (
    BoxConstraint,
    approx_error_degree,
    dioph_approx_int,
    dioph_approx_poly,
    solve_box_int,
    solve_box_poly,
    solve_tornheim,
)
from .multiples import hyperbolic_lattice_mod, small_multiple_int, small_multiple_poly, four_square
from .experiments import run_constants_experiment, run_enumerator


def _entry(check: str, lhs, rel: str, rhs, holds: bool) -> TranscriptEntry:
    return TranscriptEntry(check=check, lhs=str(lhs), rel=rel, rhs=str(rhs), holds=holds)


def _gate(status: str, transcript: list[TranscriptEntry]) -> None:
    if status == "ok" and not all(t.holds for t in transcript):
        raise ArithmeticError("transcript verification failed on an ok report")


def _istar_index(istar, n: int) -> int:
    # JSON carries the 1-based distinguished index; default is n
    if istar is None:
        return n - 1
    idx = int(istar) - 1
    if not 0 <= idx < n:
        raise InvalidInput("istar out of range")
    return idx


def _box_from_payload(dom, payload, n: int) -> BoxConstraint:
    if dom.is_poly:
        if payload.e is None:
            raise InvalidInput("polynomial boxes need degree bounds 'e'")
        return BoxConstraint.of_degrees(payload.e)
    if payload.eps is None:
        raise InvalidInput("integer boxes need rational bounds 'eps'")
    eps = [codecs.decode_fraction(x) for x in payload.eps]
    return BoxConstraint(eps=tuple(eps), istar=_istar_index(payload.istar, n))


def _box_transcript(dom, x, box: BoxConstraint) -> list[TranscriptEntry]:
    out = []
    n = len(x)
    if dom.is_poly:
        for i, xi in enumerate(x):
            d = xi.degree
            out.append(
                _entry(f"deg x_{i+1} <= e_{i+1}", d, "<=", box.degrees[i], d <= box.degrees[i])
            )
    else:
        istar = box.istar if box.istar is not None else n - 1
        for i, xi in enumerate(x):
            if i == istar:
                out.append(
                    _entry(
                        f"|x_{i+1}| <= eps_{i+1}",
                        abs(xi),
                        "<=",
                        codecs.encode_fraction(box.eps[i]),
                        abs(xi) <= box.eps[i],
                    )
                )
            else:
                out.append(
                    _entry(
                        f"|x_{i+1}| < eps_{i+1}",
                        abs(xi),
                        "<",
                        codecs.encode_fraction(box.eps[i]),
                        abs(xi) < box.eps[i],
                    )
                )
    return out


def _handle_solve_box(payload) -> Report:
    lat = codecs.decode_lattice(payload.lattice.model_dump())
    dom = lat.domain
    box = _box_from_payload(dom, payload, lat.n)
    x = solve_box_poly(lat, box) if dom.is_poly else solve_box_int(lat, box)
    if x is None:
        if dom.is_poly:
            lhs, rhs = lat.deg_covolume(), lat.n - 1 + sum(box.degrees)
            tr = [_entry("deg-covol <= n-1+sum(e)", lhs, "<=", rhs, lhs <= rhs)]
        else:
            prod = Fraction(1)
            for e in box.eps:
                prod *= e
            tr = [
                _entry(
                    "covol <= prod(eps)",
                    lat.covolume(),
                    "<=",
                    codecs.encode_fraction(prod),
                    Fraction(lat.covolume()) <= prod,
                )
            ]
        return Report(status="none", transcript=tr)
    tr = [_entry("x in lattice", codecs.encode_vector(dom, x), "in", "lattice", lat.contains(x))]
    tr += _box_transcript(dom, x, box)
    _gate("ok", tr)
    return Report(status="ok", solution={"x": codecs.encode_vector(dom, x)}, transcript=tr)


def _handle_tornheim(payload) -> Report:
    p = int(payload.p)
    dom = poly_domain(p)
    mat = [[codecs.decode_ratfun(p, x) for x in row] for row in payload.matrix]
    n = len(mat)
    if any(len(row) != n for row in mat) or n == 0:
        raise InvalidInput("matrix must be square and nonempty")
    if len(payload.e) != n:
        raise InvalidInput("one degree bound per row")
    box = BoxConstraint.of_degrees(payload.e)
    x = solve_tornheim(p, mat, box)
    tr = []
    nonzero = any(not xi.is_zero for xi in x)
    tr.append(_entry("x != 0", codecs.encode_vector(dom, x), "!=", "0", nonzero))
    for i in range(n):
        form_val = FpRat(dom.zero())
        for j in range(n):
            form_val = form_val + mat[i][j].mul_poly(x[j])
        d = form_val.degree
        tr.append(
            _entry(f"deg L_{i+1}(x) <= e_{i+1}", d, "<=", box.degrees[i], d <= box.degrees[i])
        )
    _gate("ok", tr)
    return Report(status="ok", solution={"x": codecs.encode_vector(dom, x)}, transcript=tr)


def _handle_approx(payload) -> Report:
    dom = codecs.decode_domain(payload.domain.model_dump())
    if dom.is_poly:
        thetas = [codecs.decode_ratfun(dom.p, th) for th in payload.theta]
        big_m = codecs.decode_element(dom, payload.m)
        x = dioph_approx_poly(thetas, big_m)
        n = len(thetas)
        deg_m = big_m.degree
        tr = [
            _entry("x_{n+1} != 0", codecs.encode_element(dom, x[n]), "!=", "0", not x[n].is_zero),
            _entry(
                "deg x_{n+1} <= deg M - 1",
                x[n].degree,
                "<=",
                deg_m - 1,
                x[n].degree <= deg_m - 1,
            ),
        ]
        for i, th in enumerate(thetas):
            d = approx_error_degree(th, x[n], x[i])
            bound_num = -deg_m
            holds = d is NEG_INF or n * d <= bound_num
            tr.append(
                _entry(
                    f"n*deg(x_{{n+1}} th_{i+1} - x_{i+1}) <= -deg M",
                    "-inf" if d is NEG_INF else n * d,
                    "<=",
                    bound_num,
                    holds,
                )
            )
        _gate("ok", tr)
        return Report(
            status="ok",
            solution={"x": codecs.encode_vector(dom, x[:-1]), "multiplier": codecs.encode_element(dom, x[-1])},
            transcript=tr,
        )
    thetas = [codecs.decode_fraction(th) for th in payload.theta]
    big_m = codecs.decode_fraction(payload.m)
    x = dioph_approx_int(thetas, big_m)
    n = len(thetas)
    s = x[-1]
    tr = [
        _entry("0 < |x_{n+1}|", 0, "<", abs(s), 0 < abs(s)),
        _entry("|x_{n+1}| < M", abs(s), "<", codecs.encode_fraction(big_m), abs(s) < big_m),
    ]
    for i, th in enumerate(thetas):
        err = abs(s * th - x[i])
        lhs = err**n * big_m
        tr.append(
            _entry(
                f"|x_{{n+1}} th_{i+1} - x_{i+1}|^n * M <= 1",
                codecs.encode_fraction(lhs),
                "<=",
                "1",
                lhs <= 1,
            )
        )
    _gate("ok", tr)
    return Report(
        status="ok",
        solution={"x": [str(v) for v in x[:-1]], "multiplier": str(s)},
        transcript=tr,
    )


def _handle_congruence(payload) -> Report:
    sys = codecs.decode_congruence(payload.model_dump())
    dom = sys.domain
    lat = congruence_lattice(sys)
    n = len(sys.rows[0])
    box = _box_from_payload(dom, payload, n)
    x = solve_box_poly(lat, box) if dom.is_poly else solve_box_int(lat, box)
    if x is None:
        return Report(status="none")
    tr = []
    for i, (row, d) in enumerate(zip(sys.rows, sys.moduli)):
        acc = dom.zero()
        for a, xi in zip(row, x):
            acc = dom.add(acc, dom.mul(a, xi))
        _, rem = dom.divmod(acc, d)
        tr.append(
            _entry(
                f"sum a_{i+1}j x_j = 0 mod d_{i+1}",
                codecs.encode_element(dom, acc),
                "=0 mod",
                codecs.encode_element(dom, d),
                dom.is_zero(rem),
            )
        )
    tr += _box_transcript(dom, x, box)
    _gate("ok", tr)
    return Report(status="ok", solution={"x": codecs.encode_vector(dom, x)}, transcript=tr)


def _cassels_bound_transcript(f: QuadForm, w) -> TranscriptEntry:
    if f.domain.is_poly:
        d = max(x.degree for x in w)
        lhs = "-inf" if d is NEG_INF else 2 * d
        rhs = (f.n - 1) * form_norm(f)
        return _entry("2 max deg w <= (n-1) deg f", lhs, "<=", rhs, within_cassels_bound(f, w))
    m = max(abs(x) for x in w)
    rhs = (3 * form_norm(f)) ** (f.n - 1)
    return _entry("(max|w|)^2 <= (3|f|)^(n-1)", m * m, "<=", rhs, within_cassels_bound(f, w))


def _handle_isotropy(payload) -> Report:
    f = codecs.decode_quadform(payload.form.model_dump())
    kwargs = {}
    if payload.ceiling is not None:
        kwargs["ceiling"] = int(payload.ceiling)
    cert = decide_isotropy(f, **kwargs)
    if not cert.isotropic:
        tr = [
            _entry(
                "exhaustive search within the witness bound found no zero",
                "searched bound",
                "=",
                cert.searched_bound,
                True,
            )
        ]
        return Report(
            status="ok",
            solution={"verdict": "anisotropic", "searched_bound": cert.searched_bound},
            transcript=tr,
        )
    w = cert.witness
    dom = f.domain
    tr = [
        _entry("f(w) = 0", codecs.encode_element(dom, evaluate(f, w)), "=", "0", dom.is_zero(evaluate(f, w))),
        _cassels_bound_transcript(f, w),
    ]
    _gate("ok", tr)
    return Report(
        status="ok",
        solution={"verdict": "isotropic", "witness": codecs.encode_vector(dom, w)},
        transcript=tr,
    )


def _handle_minimize(payload) -> Report:
    f = codecs.decode_quadform(payload.form.model_dump())
    dom = f.domain
    seed = codecs.decode_vector(dom, payload.seed, f.n)
    cert = minimize_isotropic(f, seed)
    w = cert.witness
    tr = [
        _entry("f(w) = 0", codecs.encode_element(dom, evaluate(f, w)), "=", "0", dom.is_zero(evaluate(f, w))),
        _cassels_bound_transcript(f, w),
    ]
    _gate("ok", tr)
    return Report(
        status="ok",
        solution={"witness": codecs.encode_vector(dom, w)},
        transcript=tr,
    )


def _handle_small_multiple(payload) -> Report:
    f = codecs.decode_quadform(payload.form.model_dump())
    dom = f.domain
    d = codecs.decode_element(dom, payload.d)
    cert = small_multiple_poly(f, d) if dom.is_poly else small_multiple_int(f, d)
    lam = hyperbolic_lattice_mod(f, d)
    fv = evaluate(f, cert.v)
    kd = dom.mul(cert.k, cert.d)
    tr = [
        _entry(
            "f(v) = k d",
            codecs.encode_element(dom, fv),
            "=",
            codecs.encode_element(dom, kd),
            fv == kd,
        ),
        _entry("v in Lambda_d", codecs.encode_vector(dom, cert.v), "in", "lattice", lam.contains(cert.v)),
        _entry("k != 0", codecs.encode_element(dom, cert.k), "!=", "0", not dom.is_zero(cert.k)),
    ]
    if dom.is_poly:
        tr.append(
            _entry(
                "deg k <= deg f",
                cert.k.degree,
                "<=",
                form_norm(f),
                cert.k.degree <= form_norm(f),
            )
        )
    else:
        tr.append(
            _entry("|k| < |f|", abs(cert.k), "<", form_norm(f), abs(cert.k) < form_norm(f))
        )
    _gate("ok", tr)
    witnesses = [
        {
            "prime": codecs.encode_element(dom, wit.prime),
            "exponent": wit.exponent,
            "target": codecs.encode_element(dom, wit.target),
            "root": None if wit.root is None else codecs.encode_element(dom, wit.root),
        }
        for wit in cert.witnesses
    ]
    return Report(
        status="ok",
        solution={
            "v": codecs.encode_vector(dom, cert.v),
            "k": codecs.encode_element(dom, cert.k),
            "d": codecs.encode_element(dom, cert.d),
            "bound_ok": cert.bound_ok,
            "witnesses": witnesses,
        },
        transcript=tr,
    )


def _handle_four_square(payload) -> Report:
    n = int(payload.n)
    rep = four_square(n)
    total = sum(x * x for x in rep)
    tr = [_entry("a^2+b^2+c^2+d^2 = n", total, "=", n, total == n)]
    _gate("ok", tr)
    return Report(status="ok", solution=list(rep), transcript=tr)


def _handle_enumerator(payload) -> Report:
    lat = codecs.decode_lattice(payload.lattice.model_dump())
    widths = [codecs.decode_fraction(w) for w in payload.widths]
    result = run_enumerator(widths, lat, int(payload.r))
    ratio = result["ratio"]
    tr = [
        _entry(
            "ratio = count / r^n",
            codecs.encode_fraction(ratio),
            "=",
            f"{result['count']}/{int(payload.r)**lat.n}",
            ratio == Fraction(result["count"], int(payload.r) ** lat.n),
        )
    ]
    _gate("ok", tr)
    return Report(
        status="ok",
        solution={
            "count": result["count"],
            "ratio": codecs.encode_fraction(ratio),
            "expected": codecs.encode_fraction(result["expected"]),
            "within_1_percent": result["within_1_percent"],
        },
        transcript=tr,
    )


def _handle_constants(payload) -> Report:
    dom = codecs.decode_domain(payload.domain.model_dump())
    rows = run_constants_experiment(dom, int(payload.n_max), int(payload.trials), int(payload.seed))
    tr = []
    for row in rows:
        tr.append(
            _entry(
                f"n={row['n']}: guarantee failures",
                row["guarantee_failures"],
                "=",
                0,
                row["guarantee_failures"] == 0,
            )
        )
        tr.append(
            _entry(
                f"n={row['n']}: sharpness false positives",
                row["sharpness_false_positives"],
                "=",
                0,
                row["sharpness_false_positives"] == 0,
            )
        )
    _gate("ok", tr)
    return Report(status="ok", solution={"table": rows}, transcript=tr, seed=int(payload.seed))


_HANDLERS: dict[str, Callable] = {
    "solve-box": _handle_solve_box,
    "tornheim": _handle_tornheim,
    "approx": _handle_approx,
    "congruence": _handle_congruence,
    "isotropy": _handle_isotropy,
    "minimize": _handle_minimize,
    "small-multiple": _handle_small_multiple,
    "four-square": _handle_four_square,
    "enumerator": _handle_enumerator,
    "constants": _handle_constants,
}


def run(request: Request) -> Report:
    """Validate, dispatch, and verify one request."""
    try:
        model = PAYLOAD_MODELS[request.command].model_validate(request.payload)
    except ValidationError as exc:
        return Report(status="rejected", error=str(exc))
    try:
        report = _HANDLERS[request.command](model)
    except InvalidInput as exc:
        return Report(status="rejected", error=str(exc))
    except SearchCeilingExceeded as exc:
        return Report(status="aborted", error=str(exc))
    except ValidationError as exc:
        return Report(status="rejected", error=str(exc))
    if request.seed is not None and report.seed is None:
        report.seed = request.seed
    return report


def run_json(obj: dict) -> Report:
    """Entry point for raw JSON request objects."""
    try:
        request = Request.model_validate(obj)
    except ValidationError as exc:
        return Report(status="rejected", error=str(exc))
    return run(request)
