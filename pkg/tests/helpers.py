"""Shared helpers for the test suite."""

from __future__ import annotations

import random
from fractions import Fraction

from locsing.parser import parse_polynomial
from locsing.poly import Polynomial


def P(src: str, names=("x", "y")) -> Polynomial:
    return parse_polynomial(src, names)


def rand_poly(rng: random.Random, n: int = 2, max_deg: int = 4, terms: int = 4) -> Polynomial:
    t = {}
    for _ in range(rng.randint(0, terms)):
        mono = tuple(rng.randint(0, max_deg) for _ in range(n))
        t[mono] = Fraction(rng.randint(-6, 6), rng.randint(1, 4))
    return Polynomial(n, t)


def rand_mono(rng: random.Random, n: int = 2, max_deg: int = 5):
    return tuple(rng.randint(0, max_deg) for _ in range(n))
