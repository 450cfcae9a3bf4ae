import random
from fractions import Fraction

import pytest

import pseudogb as pg


@pytest.fixture(scope="session")
def QQ():
    return pg.NumberField.rationals()


@pytest.fixture(scope="session")
def Q10():
    return pg.NumberField((-10, 0, 1))


@pytest.fixture(scope="session")
def Qm5():
    return pg.NumberField((5, 0, 1))


def random_elem(rng: random.Random, field, height=10, nonzero=False):
    while True:
        e = field.elem([rng.randint(-height, height) for _ in range(field.degree)])
        if not (nonzero and e.is_zero()):
            return e


def random_integral_ideal(rng: random.Random, field, height=10):
    kind = rng.randrange(3)
    if kind == 0:
        return field.unit_ideal()
    if kind == 1:
        return pg.ideal_from_generators(field, [random_elem(rng, field, height, nonzero=True)])
    n = rng.randint(1, height)
    return pg.ideal_from_generators(
        field, [field.from_rational(n), random_elem(rng, field, height, nonzero=True)]
    )


def random_poly(rng: random.Random, ring, max_deg=3, max_terms=3, height=10):
    n = ring.nvars
    while True:
        pairs = []
        for _ in range(rng.randint(1, max_terms)):
            exp = [0] * n
            budget = rng.randint(0, max_deg)
            for _ in range(budget):
                exp[rng.randrange(n)] += 1
            coeff = random_elem(rng, ring.field, height)
            pairs.append((coeff, tuple(exp)))
        p = ring.from_terms(pairs)
        if not p.is_zero():
            return p


def random_pseudo_basis(rng: random.Random, ring, max_gens=4, **kw):
    gens = []
    for _ in range(rng.randint(2, max_gens)):
        gens.append(
            pg.PseudoPoly(random_poly(rng, ring, **kw), random_integral_ideal(rng, ring.field))
        )
    return pg.PseudoBasis(tuple(gens))
