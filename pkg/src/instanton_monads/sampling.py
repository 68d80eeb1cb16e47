"""Seeded pseudorandom rational data.

All randomness goes through :class:`random.Random` (Mersenne Twister),
whose integer stream is specified by CPython and identical on every
platform, so a seed pins every report.  Rationals are ``p/q`` with
``|p| <= bound`` and ``1 <= q <= bound``.
"""

from __future__ import annotations

import random
from fractions import Fraction

from .forms import DualBinaryForm, GroupPair
from .linalg import RationalMatrix, det

DEFAULT_BOUND = 100


def make_rng(seed: int | None = 0) -> random.Random:
    return random.Random(seed)


def random_rational(rng: random.Random, bound: int = DEFAULT_BOUND) -> Fraction:
    return Fraction(rng.randint(-bound, bound), rng.randint(1, bound))


def random_point(rng: random.Random, nvars: int, bound: int = DEFAULT_BOUND) -> list[Fraction]:
    while True:
        z = [random_rational(rng, bound) for _ in range(nvars)]
        if any(z):
            return z


def random_matrix(rng: random.Random, rows: int, cols: int, bound: int = DEFAULT_BOUND) -> RationalMatrix:
    return RationalMatrix(([random_rational(rng, bound) for _ in range(cols)] for _ in range(rows)), cols)


def random_integer_matrix(rng: random.Random, rows: int, cols: int, bound: int = 3) -> RationalMatrix:
    return RationalMatrix(([rng.randint(-bound, bound) for _ in range(cols)] for _ in range(rows)), cols)


def random_invertible(rng: random.Random, size: int, bound: int = 3, integral: bool = True) -> RationalMatrix:
    """Rejection-sampled invertible matrix (small integer entries by default)."""
    while True:
        if integral:
            g = random_integer_matrix(rng, size, size, bound)
        else:
            g = random_matrix(rng, size, size, bound)
        if det(g) != 0:
            return g


def random_group_pair(rng: random.Random, bound: int = 5) -> GroupPair:
    return GroupPair(
        random_invertible(rng, 2, bound, integral=False),
        random_invertible(rng, 2, bound, integral=False),
    )


def random_dual_form(rng: random.Random, degree: int, bound: int = 10) -> DualBinaryForm:
    return DualBinaryForm(degree, tuple(rng.randint(-bound, bound) for _ in range(degree + 1)))
