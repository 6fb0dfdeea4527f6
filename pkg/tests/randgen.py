"""Seeded random instances shared by the property and acceptance tests."""

from __future__ import annotations

import random
from fractions import Fraction

from ncmember.exactla import RatMatrix
from ncmember.freealg import MatTuple, NcPoly

COEFFS = (-3, -2, -1, 1, 2, 3)


def rand_word(rng: random.Random, nletters: int, length: int) -> tuple:
    return tuple(rng.randint(1, nletters) for _ in range(length))


def rand_coeff(rng: random.Random) -> Fraction:
    if rng.random() < 0.2:
        return Fraction(rng.choice(COEFFS), rng.choice((2, 3)))
    return Fraction(rng.choice(COEFFS))


def rand_poly(rng, nvars, maxdeg, maxterms=4) -> NcPoly:
    terms = {}
    for _ in range(rng.randint(0, maxterms)):
        terms[rand_word(rng, nvars, rng.randint(0, maxdeg))] = rand_coeff(rng)
    return NcPoly(nvars, terms)


def rand_homogeneous(rng, nvars, deg, maxterms=2) -> NcPoly:
    while True:
        terms = {rand_word(rng, nvars, deg): rand_coeff(rng) for _ in range(rng.randint(1, maxterms))}
        p = NcPoly(nvars, terms)
        if not p.is_zero():
            return p


def rand_homogeneous_generators(rng, d, l, maxdeg=3, maxterms=2, trivial_rate=0.05) -> list:
    """Homogeneous generators; now and then a constant or zero one."""
    out = []
    for _ in range(l):
        roll = rng.random()
        if roll < trivial_rate:
            out.append(NcPoly.const(rng.choice((0, 2)), d))
        else:
            out.append(rand_homogeneous(rng, d, rng.randint(1, maxdeg), maxterms))
    return out


def rand_h(rng, l, maxdeg=3, maxterms=5) -> NcPoly:
    terms = {}
    for _ in range(rng.randint(1, maxterms)):
        terms[rand_word(rng, l, rng.randint(0, maxdeg))] = rand_coeff(rng)
    return NcPoly(l, terms)


def rand_matrix(rng, n, pool=(-2, -1, 0, 0, 1, 2)) -> RatMatrix:
    return RatMatrix(n, n, tuple(rng.choice(pool) for _ in range(n * n)))


def rand_mattuple(rng, d, n, pool=(-2, -1, 0, 0, 1, 2)) -> MatTuple:
    return MatTuple(n, tuple(rand_matrix(rng, n, pool) for _ in range(d)))


def rand_vector(rng, n, pool=(-2, -1, 0, 1, 2)) -> tuple:
    while True:
        v = tuple(Fraction(rng.choice(pool)) for _ in range(n))
        if any(v):
            return v
