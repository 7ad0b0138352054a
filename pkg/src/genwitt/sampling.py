"""Seeded random instances for property suites."""

from __future__ import annotations

import random

from .algebra import AlgebraConfig, BasisElement, Element, FunctionElement, FunctionTerm
from .scalars import Rational
from .structure import Box

SLOPE_POOL = (Rational(1), Rational(2, 3), Rational(-5))


def random_rational(rng: random.Random, bound: int = 5, nonzero: bool = True) -> Rational:
    while True:
        q = Rational(rng.randint(-bound, bound), rng.randint(1, 3))
        if q or not nonzero:
            return q


def random_config(rng: random.Random, n: int, pool=SLOPE_POOL) -> AlgebraConfig:
    return AlgebraConfig(n, [rng.choice(pool) for _ in range(n)])


def random_basis(rng: random.Random, n: int, box: Box, *, nonnegative_lower: bool = False) -> BasisElement:
    lo = 0 if nonnegative_lower else -box.lower
    return BasisElement(
        tuple(rng.randint(-box.upper, box.upper) for _ in range(n)),
        tuple(rng.randint(lo, box.lower) for _ in range(n)),
        rng.randint(1, n),
    )


def random_element(
    rng: random.Random,
    n: int,
    box: Box,
    max_terms: int = 4,
    *,
    nonzero: bool = True,
    nonnegative_lower: bool = False,
    degree: tuple[int, ...] | None = None,
) -> Element:
    """Random element with support in ``box``; ``degree`` forces homogeneity."""
    while True:
        terms = {}
        for _ in range(rng.randint(1, max_terms)):
            b = random_basis(rng, n, box, nonnegative_lower=nonnegative_lower)
            if degree is not None:
                b = BasisElement(tuple(degree), b.lower, b.dir)
            terms[b] = random_rational(rng)
        x = Element(terms)
        if x or not nonzero:
            return x


def random_function(
    rng: random.Random, n: int, box: Box, max_terms: int = 4, *, nonnegative_lower: bool = False
) -> FunctionElement:
    while True:
        terms = {}
        for _ in range(rng.randint(1, max_terms)):
            b = random_basis(rng, n, box, nonnegative_lower=nonnegative_lower)
            terms[FunctionTerm(b.upper, b.lower)] = random_rational(rng)
        f = FunctionElement(terms)
        if f:
            return f
