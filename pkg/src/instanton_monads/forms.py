"""Binary forms, symmetric powers of a 2-dimensional space and their duals.

Conventions used throughout the package:

* ``S^d V`` has the monomial basis ``x^(d-i) y^i``, ``i = 0..d``.
* ``(S^d V)^dual`` uses the plain dual basis, so a dual form is stored as
  its values on the monomials.  No binomial weights anywhere; with this
  choice the catalecticant is a plain Hankel matrix.
* A 2x2 matrix ``alpha`` acts on ``V`` through its columns:
  ``alpha(x) = a00 x + a10 y`` and ``alpha(y) = a01 x + a11 y``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .linalg import RationalMatrix, det, kron, to_fraction

__all__ = [
    "BinaryForm",
    "DualBinaryForm",
    "GroupPair",
    "sym_mult_matrix",
    "catalecticant",
    "gl_action_sym",
    "sym_derivation",
    "precompose",
    "pi_n",
    "iota_n",
    "vn_rep",
    "binary_gcd",
]


@dataclass(frozen=True)
class BinaryForm:
    """Element of ``S^d V``; ``coeffs[i]`` multiplies ``x^(d-i) y^i``."""

    degree: int
    coeffs: tuple[Fraction, ...]

    def __post_init__(self):
        if self.degree < 0:
            raise ValueError("negative degree")
        coeffs = tuple(to_fraction(c) for c in self.coeffs)
        if len(coeffs) != self.degree + 1:
            raise ValueError(f"degree {self.degree} form needs {self.degree + 1} coefficients")
        object.__setattr__(self, "coeffs", coeffs)

    @classmethod
    def of(cls, *coeffs) -> "BinaryForm":
        return cls(len(coeffs) - 1, tuple(coeffs))

    @classmethod
    def monomial(cls, d: int, i: int) -> "BinaryForm":
        return cls(d, tuple(int(j == i) for j in range(d + 1)))

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def is_constant(self) -> bool:
        return self.degree == 0 and not self.is_zero()

    def __call__(self, x, y) -> Fraction:
        x, y = to_fraction(x), to_fraction(y)
        d = self.degree
        return sum((c * x ** (d - i) * y ** i for i, c in enumerate(self.coeffs)), Fraction(0))

    def __mul__(self, other: "BinaryForm") -> "BinaryForm":
        if not isinstance(other, BinaryForm):
            return NotImplemented
        out = [Fraction(0)] * (self.degree + other.degree + 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return BinaryForm(self.degree + other.degree, tuple(out))

    def __str__(self) -> str:
        d = self.degree
        terms = []
        for i, c in enumerate(self.coeffs):
            if c:
                mono = "".join(
                    v if e == 1 else f"{v}^{e}" for v, e in (("x", d - i), ("y", i)) if e
                )
                terms.append(f"{c}*{mono}" if mono else str(c))
        return " + ".join(terms) if terms else "0"


@dataclass(frozen=True)
class DualBinaryForm:
    """Element of ``(S^d V)^dual``; ``values[j] = f(x^(d-j) y^j)``."""

    degree: int
    values: tuple[Fraction, ...]

    def __post_init__(self):
        if self.degree < 0:
            raise ValueError("negative degree")
        values = tuple(to_fraction(v) for v in self.values)
        if len(values) != self.degree + 1:
            raise ValueError(f"degree {self.degree} dual form needs {self.degree + 1} values")
        object.__setattr__(self, "values", values)

    @classmethod
    def of(cls, *values) -> "DualBinaryForm":
        return cls(len(values) - 1, tuple(values))

    def is_zero(self) -> bool:
        return not any(self.values)

    def pair(self, p: BinaryForm) -> Fraction:
        if p.degree != self.degree:
            raise ValueError("degree mismatch in pairing")
        return sum((a * b for a, b in zip(self.values, p.coeffs)), Fraction(0))

    def __add__(self, other: "DualBinaryForm") -> "DualBinaryForm":
        if self.degree != other.degree:
            raise ValueError("degree mismatch")
        return DualBinaryForm(self.degree, tuple(a + b for a, b in zip(self.values, other.values)))

    def __mul__(self, scalar) -> "DualBinaryForm":
        s = to_fraction(scalar)
        return DualBinaryForm(self.degree, tuple(s * v for v in self.values))

    __rmul__ = __mul__


@dataclass(frozen=True)
class GroupPair:
    """An element ``(alpha, beta)`` of ``GL(V) x GL(W)``."""

    alpha: RationalMatrix
    beta: RationalMatrix

    def __post_init__(self):
        for name in ("alpha", "beta"):
            m = getattr(self, name)
            if not isinstance(m, RationalMatrix):
                m = RationalMatrix(m)
                object.__setattr__(self, name, m)
            if m.shape != (2, 2):
                raise ValueError(f"{name} must be 2x2")
            if det(m) == 0:
                raise ValueError(f"{name} is not invertible")

    @classmethod
    def identity(cls) -> "GroupPair":
        return cls(RationalMatrix.identity(2), RationalMatrix.identity(2))

    def __matmul__(self, other: "GroupPair") -> "GroupPair":
        return GroupPair(self.alpha @ other.alpha, self.beta @ other.beta)


def sym_mult_matrix(r: int, n: int) -> RationalMatrix:
    """Matrix of multiplication ``S^r V (x) S^n V -> S^(n+r) V``.

    Column ``i * (n + 1) + m`` is the product of monomials ``i`` and ``m``,
    which lands on monomial ``i + m``.
    """
    if r < 0 or n < 0:
        raise ValueError("degrees must be nonnegative")
    rows = [[0] * ((r + 1) * (n + 1)) for _ in range(n + r + 1)]
    for i in range(r + 1):
        for m in range(n + 1):
            rows[i + m][i * (n + 1) + m] = 1
    return RationalMatrix(rows, (r + 1) * (n + 1))


def catalecticant(f: DualBinaryForm, n: int, k: int) -> RationalMatrix:
    """Hankel matrix of ``S^n V -> (S^(n+k) V)^dual``, ``s -> f(. * s)``."""
    if f.degree != 2 * n + k:
        raise ValueError(f"dual form has degree {f.degree}, expected 2n+k = {2 * n + k}")
    v = f.values
    return RationalMatrix(([v[a + m] for m in range(n + 1)] for a in range(n + k + 1)), n + 1)


def _linear_power_product(a: Sequence, b: Sequence, p: int, q: int) -> list[Fraction]:
    # coefficients of (a0 x + a1 y)^p (b0 x + b1 y)^q
    out = [Fraction(1)]
    for lin in [a] * p + [b] * q:
        nxt = [Fraction(0)] * (len(out) + 1)
        for i, c in enumerate(out):
            nxt[i] += c * lin[0]
            nxt[i + 1] += c * lin[1]
        out = nxt
    return out


def gl_action_sym(alpha: RationalMatrix, d: int) -> RationalMatrix:
    """Matrix of ``S^d alpha`` on the monomial basis of ``S^d V``."""
    if d < 0:
        raise ValueError("degree must be nonnegative")
    ax = (alpha[0, 0], alpha[1, 0])
    ay = (alpha[0, 1], alpha[1, 1])
    cols = [_linear_power_product(ax, ay, d - j, j) for j in range(d + 1)]
    return RationalMatrix(zip(*cols), d + 1)


def sym_derivation(xi: RationalMatrix, d: int) -> RationalMatrix:
    """Lie-algebra action of a 2x2 matrix ``xi`` on ``S^d V`` (Leibniz rule)."""
    rows = [[Fraction(0)] * (d + 1) for _ in range(d + 1)]
    for i in range(d + 1):
        # d/dt of (x + t xi x)^(d-i) (y + t xi y)^i at t = 0
        rows[i][i] += (d - i) * xi[0, 0] + i * xi[1, 1]
        if i + 1 <= d:
            rows[i + 1][i] += (d - i) * xi[1, 0]
        if i >= 1:
            rows[i - 1][i] += i * xi[0, 1]
    return RationalMatrix(rows, d + 1)


def precompose(f: DualBinaryForm, alpha: RationalMatrix) -> DualBinaryForm:
    """The dual form ``f o S^d alpha``."""
    S = gl_action_sym(alpha, f.degree)
    return DualBinaryForm(
        f.degree, tuple(sum((S[i, j] * f.values[i] for i in range(f.degree + 1)), Fraction(0))
                        for j in range(f.degree + 1))
    )


def pi_n(g: GroupPair, n: int) -> RationalMatrix:
    """``S^n alpha (x) beta`` on ``S^n V (x) W``, basis index ``2 m + eps``."""
    if n < 1:
        raise ValueError("n must be at least 1")
    return kron(gl_action_sym(g.alpha, n), g.beta)


def iota_n(lam, n: int) -> GroupPair:
    lam = to_fraction(lam)
    if lam == 0:
        raise ValueError("lambda must be nonzero")
    return GroupPair(RationalMatrix.diag([lam, lam]), RationalMatrix.diag([lam ** -n, lam ** -n]))


def vn_rep(alpha: RationalMatrix, n: int) -> RationalMatrix:
    """Action of ``alpha`` on the 2-dimensional space on which the center has weight ``n``.

    Even ``n``: ``det(alpha)^(n/2)`` times the identity.  Odd ``n``:
    ``det(alpha)^((n-1)/2) * alpha``.
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    dt = det(alpha)
    if n % 2 == 0:
        return dt ** (n // 2) * RationalMatrix.identity(2)
    return dt ** ((n - 1) // 2) * alpha


# -- gcd of binary forms ------------------------------------------------------


def _strip(p: list) -> list:
    i = 0
    while i < len(p) and p[i] == 0:
        i += 1
    return p[i:]


def _urem(a: list, b: list) -> list:
    # a, b: highest-degree-first, b[0] != 0
    a = list(a)
    while len(a) >= len(b):
        q = a[0] / b[0]
        for j in range(len(b)):
            a[j] -= q * b[j]
        a = _strip(a)
    return a


def _ugcd(a: list, b: list) -> list:
    a, b = _strip(a), _strip(b)
    while b:
        a, b = b, _urem(a, b)
    return [c / a[0] for c in a]


def _y_split(p: BinaryForm) -> tuple[int, list]:
    # p = y^e * q with q(x, 1) of degree exactly deg(p) - e
    e = 0
    while p.coeffs[e] == 0:
        e += 1
    return e, list(p.coeffs[e:])


def binary_gcd(p: BinaryForm, q: BinaryForm) -> BinaryForm:
    """Greatest common divisor of two binary forms over the rationals.

    The result has its first nonzero coefficient (the one of highest
    ``x``-degree) equal to 1.  Factors of ``y``, i.e. roots at infinity of
    the dehomogenisation ``y = 1``, are tracked separately through the
    vanishing leading coefficients.
    """
    if p.is_zero() and q.is_zero():
        raise ValueError("gcd of two zero forms is undefined")
    if p.is_zero():
        p, q = q, p
    ep, up = _y_split(p)
    if q.is_zero():
        g, e = [c / up[0] for c in up], ep
    else:
        eq, uq = _y_split(q)
        g, e = _ugcd(up, uq), min(ep, eq)
    return BinaryForm(len(g) - 1 + e, tuple([Fraction(0)] * e + g))
