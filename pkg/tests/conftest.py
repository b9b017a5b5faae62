import random

import pytest

from latforms.domains import INTEGERS, poly_domain
from latforms.quadforms import QuadForm, bilinear, evaluate


@pytest.fixture
def rng():
    return random.Random(0xA11CE)


def make_form(entries, n=3, dom=INTEGERS):
    return QuadForm.from_entries(dom, n, entries)


def inflate_seed(form, witness, rng, cap):
    """Grow an isotropic vector by reverse reflections until it exceeds cap."""
    seed = tuple(witness)
    for _ in range(16):
        if max(abs(c) for c in seed) > cap:
            break
        u = tuple(rng.randint(-3, 3) for _ in range(form.n))
        fu = evaluate(form, u)
        if fu == 0:
            continue
        ab = bilinear(form, seed, u)
        cand = tuple(fu * s - ab * x for s, x in zip(seed, u))
        if any(cand) and max(abs(c) for c in cand) > max(abs(c) for c in seed):
            seed = cand
    return seed
