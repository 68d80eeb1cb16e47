"""Moduli-space membership, the group action on subspaces, stabilizers and invariants."""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from typing import Sequence, Union

from .forms import (
    BinaryForm,
    DualBinaryForm,
    GroupPair,
    binary_gcd,
    catalecticant,
    gl_action_sym,
    precompose,
    sym_derivation,
)
from .linalg import RationalMatrix, det, inverse, kernel_basis, kron, maximal_minors, rank
from .monad import SubspaceU
from .sampling import make_rng, random_dual_form, random_rational

__all__ = [
    "Member",
    "NotMember",
    "MembershipVerdict",
    "pencil_test",
    "membership",
    "random_member_subspace",
    "ModuliDimension",
    "moduli_dimension",
    "g_n_transport",
    "transport_intertwiner",
    "GrassPoint2",
    "stabilizer_dim",
    "UnipotentKernel",
    "unipotent_kernel_check",
    "trace_invariants_pair",
    "g1_action",
    "x1_invariants",
    "x1_invariants_of_matrix",
]


@dataclass(frozen=True)
class Member:
    mode: str  # "exact" or "probabilistic"
    trials: int | None = None

    is_member = True

    def describe(self) -> str:
        if self.mode == "exact":
            return "Member (exact)"
        return f"Member (probabilistic, {self.trials} trials)"


@dataclass(frozen=True)
class NotMember:
    """Failure of membership.

    ``witness`` is a nonzero dual form in ``U`` whose catalecticant is not
    injective.  When the bad pencil parameters are irrational there is no
    rational witness; ``certificate`` then holds the gcd of the maximal
    minors, whose roots are the bad parameters.
    """

    witness: DualBinaryForm | None
    certificate: BinaryForm | None = None

    is_member = False

    def describe(self) -> str:
        if self.witness is not None:
            return "NotMember (witness " + " ".join(str(v) for v in self.witness.values) + ")"
        return f"NotMember (certificate {self.certificate})"


MembershipVerdict = Union[Member, NotMember]


def _projective_rational_roots(p: BinaryForm) -> list[tuple[Fraction, Fraction]]:
    """Rational zeros ``(lam : mu)`` of a nonzero binary form."""
    import sympy

    roots = []
    if p.coeffs[0] == 0:
        roots.append((Fraction(1), Fraction(0)))
    affine = list(p.coeffs)
    while affine and affine[0] == 0:
        affine.pop(0)
    if len(affine) > 1:
        t = sympy.Symbol("t")
        poly = sympy.Poly([sympy.Rational(c.numerator, c.denominator) for c in affine], t,
                          domain=sympy.QQ)
        for r in sorted(poly.ground_roots()):
            roots.append((Fraction(int(r.p), int(r.q)), Fraction(1)))
    return roots


def _full_rank(f: DualBinaryForm, n: int, k: int) -> bool:
    return rank(catalecticant(f, n, k)) == n + 1


def pencil_test(f: DualBinaryForm, g: DualBinaryForm, n: int, k: int) -> MembershipVerdict:
    """Exact test that every nonzero ``lam f + mu g`` has an injective catalecticant.

    ``f`` and ``g`` must be linearly independent.  The pencil is bad exactly
    at the common zeros of its maximal minors, i.e. at the zeros of their
    gcd; the Euclidean gcd over Q has the same degree as over C.
    """
    minors = [m for m in maximal_minors(catalecticant(f, n, k), catalecticant(g, n, k))
              if not m.is_zero()]
    if not minors:
        return NotMember(f, BinaryForm(0, (0,)))
    gcd = reduce(binary_gcd, minors)
    if gcd.degree == 0:
        return Member("exact")
    roots = _projective_rational_roots(gcd)
    if not roots:
        return NotMember(None, gcd)
    lam, mu = roots[0]
    w = lam * f + mu * g
    if _full_rank(w, n, k):
        raise ArithmeticError("root of the minor gcd does not drop the rank")
    return NotMember(w, gcd)


def _random_combination(U: SubspaceU, rng: random.Random) -> DualBinaryForm:
    while True:
        f = U.combination([random_rational(rng) for _ in U.basis])
        if not f.is_zero():
            return f


def membership(U: SubspaceU, trials: int = 16, seed: int = 0) -> MembershipVerdict:
    """Is ``U`` a point of the moduli space?

    Exact for ``k = 1``.  For ``k >= 2`` a seeded probabilistic test: random
    elements of ``U`` are checked for an injective catalecticant and random
    2-dimensional subspaces of ``U`` get the exact pencil test.  Negative
    answers are always exact.
    """
    if trials < 1:
        raise ValueError("trials must be at least 1")
    n, k = U.n, U.k
    if k == 1:
        return pencil_test(U.basis[0], U.basis[1], n, k)
    for f in U.basis:
        if not _full_rank(f, n, k):
            return NotMember(f)
    rng = make_rng(seed)
    for _ in range(trials):
        f = _random_combination(U, rng)
        if not _full_rank(f, n, k):
            return NotMember(f)
        while True:
            g = _random_combination(U, rng)
            if rank(RationalMatrix([f.values, g.values])) == 2:
                break
        verdict = pencil_test(f, g, n, k)
        if not verdict.is_member:
            return verdict
    return Member("probabilistic", trials)


def random_member_subspace(n: int, k: int, rng: random.Random, trials: int = 8,
                           bound: int = 10, max_attempts: int = 1000) -> SubspaceU:
    """Rejection-sample a member subspace with small integer basis values."""
    d = 2 * n + k
    for _ in range(max_attempts):
        basis = tuple(random_dual_form(rng, d, bound) for _ in range(k + 1))
        try:
            U = SubspaceU(n, k, basis)
        except ValueError:
            continue
        if membership(U, trials=trials, seed=rng.getrandbits(32)).is_member:
            return U
    raise RuntimeError(f"no member subspace found in {max_attempts} attempts")


@dataclass(frozen=True)
class ModuliDimension:
    total: int
    fiber: int  # Grassmannian of (k+1)-planes in (S^(2n+k) V)^dual
    base: int  # identifications of linear forms up to the group: (2n+2)^2 - 7


def moduli_dimension(n: int, k: int) -> ModuliDimension:
    if n < 1 or k < 1:
        raise ValueError("n and k must be at least 1")
    fiber = (k + 1) * ((2 * n + k + 1) - (k + 1))
    base = (2 * n + 2) ** 2 - 7
    return ModuliDimension(fiber + base, fiber, base)


def g_n_transport(g: GroupPair, U: SubspaceU) -> SubspaceU:
    """``U o S^(2n+k) alpha``; the ``beta`` and determinant factors only rescale."""
    return SubspaceU(U.n, U.k, tuple(precompose(f, g.alpha) for f in U.basis))


def transport_intertwiner(g: GroupPair, n: int, k: int):
    """Isomorphism of complexes between two equivalent monads.

    With ``U' = g_n_transport(g, U)`` this returns ``(M_-1, M_0, M_1)`` mapping
    ``build_monad(U', h)`` to ``build_monad(U, pi_n(g) h)`` for any ``h``.
    """
    gamma = kron(gl_action_sym(g.alpha, n + k), g.beta)
    m0 = inverse(gamma.T)
    m1 = gl_action_sym(inverse(g.alpha), k).T
    m_1 = (1 / det(g.beta)) * RationalMatrix.identity(k + 1)
    return m_1, m0, m1


# -- stabilizers on Grass_2(S^n V + S^n V) ---------------------------------------


@dataclass(frozen=True)
class GrassPoint2:
    """The plane in ``S^n V + S^n V`` spanned by two vectors, each a pair of forms."""

    n: int
    u1: tuple[BinaryForm, BinaryForm]
    u2: tuple[BinaryForm, BinaryForm]

    def __post_init__(self):
        for u in (self.u1, self.u2):
            if len(u) != 2 or any(p.degree != self.n for p in u):
                raise ValueError(f"each vector must be a pair of degree-{self.n} forms")
        if rank(RationalMatrix([self.vector(self.u1), self.vector(self.u2)])) != 2:
            raise ValueError("spanning vectors are linearly dependent")

    @staticmethod
    def vector(u) -> tuple[Fraction, ...]:
        return u[0].coeffs + u[1].coeffs


_SL2 = (
    RationalMatrix([[1, 0], [0, -1]]),
    RationalMatrix([[0, 1], [0, 0]]),
    RationalMatrix([[0, 0], [1, 0]]),
)


def stabilizer_dim(P: GrassPoint2) -> int:
    """Dimension of the trace-zero ``xi`` whose derivation action preserves ``P``.

    Unknowns are the coordinates of ``xi`` in the basis ``h, e, f`` together
    with the 2x2 matrix ``c`` in ``rho(xi) u_i = c_i1 u_1 + c_i2 u_2``.
    Since ``u_1, u_2`` are independent, ``c`` is determined by ``xi``.
    """
    n = P.n
    dim = n + 1
    rhos = [sym_derivation(xi, n) for xi in _SL2]
    us = [P.vector(P.u1), P.vector(P.u2)]
    eqs = []
    for i, u in enumerate(us):
        images = []
        for rho in rhos:
            img = []
            for half in (0, 1):
                part = u[half * dim:(half + 1) * dim]
                img.extend(sum((rho[r, s] * part[s] for s in range(dim)), Fraction(0))
                           for r in range(dim))
            images.append(img)
        for pos in range(2 * dim):
            row = [images[t][pos] for t in range(3)] + [Fraction(0)] * 4
            row[3 + 2 * i] = -us[0][pos]
            row[3 + 2 * i + 1] = -us[1][pos]
            eqs.append(row)
    system = RationalMatrix(eqs, 7)
    return system.cols - rank(system)


@dataclass(frozen=True)
class UnipotentKernel:
    n: int
    r: int
    dim: int
    dim_double: int
    matches: bool

    @property
    def ok(self) -> bool:
        return self.matches and self.dim == self.r and self.dim_double == 2 * self.r


def unipotent_kernel_check(n: int, r: int) -> UnipotentKernel:
    """Kernel of ``(S^n alpha - 1)^r`` for ``alpha = [[1, 1], [0, 1]]``.

    Compared against ``x^(n-r+1) S^(r-1) V``, which is spanned by the first
    ``r`` monomials ``x^n, x^(n-1) y, ...``.
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    if not 1 <= r <= n + 1:
        raise ValueError(f"r must lie in [1, {n + 1}]")
    S = gl_action_sym(RationalMatrix([[1, 1], [0, 1]]), n)
    D = S - RationalMatrix.identity(n + 1)
    P = RationalMatrix.identity(n + 1)
    for _ in range(r):
        P = P @ D
    K = kernel_basis(P)
    expected = RationalMatrix(([int(i == j) for j in range(r)] for i in range(n + 1)), r)
    joint = RationalMatrix([list(a) + list(b) for a, b in zip(K.tolist(), expected.tolist())],
                           K.cols + r)
    matches = K.cols == r and rank(joint) == r
    zero = RationalMatrix.zeros(n + 1, n + 1)
    double = RationalMatrix(
        [list(a) + list(b) for a, b in zip(P.tolist(), zero.tolist())]
        + [list(a) + list(b) for a, b in zip(zero.tolist(), P.tolist())],
        2 * (n + 1),
    )
    return UnipotentKernel(n, r, K.cols, kernel_basis(double).cols, matches)


# -- trace invariants -----------------------------------------------------------


def _as_matrix(m) -> RationalMatrix:
    m = m if isinstance(m, RationalMatrix) else RationalMatrix(m)
    if m.shape != (2, 2):
        raise ValueError("expected a 2x2 matrix")
    return m


def _tr(m: RationalMatrix) -> Fraction:
    return m[0, 0] + m[1, 1]


def trace_invariants_pair(a1, a2) -> tuple[Fraction, ...]:
    """``(tr a1, tr a2, tr a1^2, tr a1 a2, tr a2^2)``."""
    a1, a2 = _as_matrix(a1), _as_matrix(a2)
    return (_tr(a1), _tr(a2), _tr(a1 @ a1), _tr(a1 @ a2), _tr(a2 @ a2))


def g1_action(g: GroupPair, b: Sequence) -> list[RationalMatrix]:
    """``b_i -> alpha b_i beta^T`` (the action of ``pi_1(alpha, beta)`` on columns)."""
    return [g.alpha @ _as_matrix(m) @ g.beta.T for m in b]


def x1_invariants(b: Sequence) -> tuple[Fraction, ...]:
    """Ten trace words of ``a_i = b_i b_1^-1`` for ``i = 2, 3, 4``."""
    if len(b) != 4:
        raise ValueError("expected four 2x2 matrices")
    b = [_as_matrix(m) for m in b]
    if det(b[0]) == 0:
        raise ValueError("first matrix is singular")
    inv = inverse(b[0])
    a2, a3, a4 = (m @ inv for m in b[1:])
    return (
        _tr(a2), _tr(a3), _tr(a4),
        _tr(a2 @ a2), _tr(a3 @ a3), _tr(a4 @ a4),
        _tr(a2 @ a3), _tr(a2 @ a4), _tr(a3 @ a4),
        _tr(a2 @ a3 @ a4),
    )


def x1_invariants_of_matrix(g: RationalMatrix) -> tuple[Fraction, ...]:
    """:func:`x1_invariants` of the four columns of ``g`` in ``GL(V (x) W)``."""
    if g.shape != (4, 4):
        raise ValueError("expected a 4x4 matrix")
    cols = [RationalMatrix([[g[0, j], g[1, j]], [g[2, j], g[3, j]]]) for j in range(4)]
    return x1_invariants(cols)
