import random
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from instanton_monads.forms import (
    BinaryForm,
    DualBinaryForm,
    GroupPair,
    binary_gcd,
    catalecticant,
    gl_action_sym,
    iota_n,
    pi_n,
    precompose,
    sym_derivation,
    sym_mult_matrix,
    vn_rep,
)
from instanton_monads.linalg import RationalMatrix, det, inverse, kron, rank
from instanton_monads.sampling import make_rng, random_dual_form, random_invertible

x, y = sympy.symbols("x y")


def to_sympy(p: BinaryForm):
    d = p.degree
    return sympy.expand(sum(sympy.Rational(c.numerator, c.denominator) * x ** (d - i) * y ** i
                            for i, c in enumerate(p.coeffs)))


def coeffs_of(expr, d):
    poly = sympy.Poly(sympy.expand(expr), x, y)
    return [Fraction(str(poly.coeff_monomial(x ** (d - i) * y ** i))) for i in range(d + 1)]


def random_gl2(rnd, bound=4):
    while True:
        m = RationalMatrix([[Fraction(rnd.randint(-bound, bound), rnd.randint(1, 3)) for _ in range(2)]
                            for _ in range(2)])
        if det(m) != 0:
            return m


# -- multiplication ------------------------------------------------------------


def test_sym_mult_small():
    assert sym_mult_matrix(1, 1) == RationalMatrix([[1, 0, 0, 0], [0, 1, 1, 0], [0, 0, 0, 1]])
    for d in range(5):
        assert sym_mult_matrix(0, d) == RationalMatrix.identity(d + 1)


@pytest.mark.parametrize("r,n", [(1, 2), (2, 3), (3, 1)])
def test_sym_mult_matches_polynomial_product(r, n):
    a = sympy.symbols(f"a0:{r + 1}")
    b = sympy.symbols(f"b0:{n + 1}")
    p = sum(a[i] * x ** (r - i) * y ** i for i in range(r + 1))
    q = sum(b[m] * x ** (n - m) * y ** m for m in range(n + 1))
    prod = sympy.Poly(sympy.expand(p * q), x, y)
    M = sym_mult_matrix(r, n)
    assert M.shape == (n + r + 1, (r + 1) * (n + 1))
    for row in range(n + r + 1):
        coeff = sympy.expand(prod.coeff_monomial(x ** (n + r - row) * y ** row))
        expected = {(i, m): 1 for i in range(r + 1) for m in range(n + 1)
                    if coeff.coeff(a[i] * b[m]) == 1}
        for i in range(r + 1):
            for m in range(n + 1):
                assert M[row, i * (n + 1) + m] == expected.get((i, m), 0)
    assert rank(M) == n + r + 1


# -- catalecticant -------------------------------------------------------------


def test_catalecticant_examples():
    H = catalecticant(DualBinaryForm.of(1, 0, 0, 1), 1, 1)
    assert H == RationalMatrix([[1, 0], [0, 0], [0, 1]]) and rank(H) == 2
    H0 = catalecticant(DualBinaryForm.of(0, 0, 0, 0), 1, 1)
    assert H0.is_zero() and H0.shape == (3, 2) and rank(H0) == 0
    H1 = catalecticant(DualBinaryForm.of(1, 0, 0, 0), 1, 1)
    assert H1 == RationalMatrix([[1, 0], [0, 0], [0, 0]]) and rank(H1) == 1


def test_catalecticant_degree_mismatch():
    with pytest.raises(ValueError):
        catalecticant(DualBinaryForm.of(1, 2, 3), 1, 1)


def catalecticant_via_multiplication(f, n, k):
    # H[a, m] = f(monomial_a * monomial_m), the product taken with sym_mult_matrix
    mult = sym_mult_matrix(n + k, n)
    paired = [sum(f.values[r] * mult[r, c] for r in range(mult.rows)) for c in range(mult.cols)]
    return RationalMatrix([[paired[a * (n + 1) + m] for m in range(n + 1)] for a in range(n + k + 1)])


@pytest.mark.parametrize("n,k", [(1, 1), (1, 2), (2, 1), (2, 3), (3, 2)])
def test_catalecticant_equals_multiplication_pairing(n, k):
    rng = make_rng(n * 10 + k)
    for _ in range(10):
        f = random_dual_form(rng, 2 * n + k)
        assert catalecticant(f, n, k) == catalecticant_via_multiplication(f, n, k)


def test_catalecticant_equivariance():
    rnd = random.Random(7)
    for _ in range(60):
        n, k = rnd.randint(1, 3), rnd.randint(1, 3)
        f = random_dual_form(rnd, 2 * n + k)
        alpha = random_gl2(rnd)
        fa = precompose(f, alpha)
        assert fa.values == tuple((gl_action_sym(alpha, 2 * n + k).T
                                   @ RationalMatrix([[v] for v in f.values])).column(0))
        lhs = catalecticant(fa, n, k)
        rhs = gl_action_sym(alpha, n + k).T @ catalecticant(f, n, k) @ gl_action_sym(alpha, n)
        assert lhs == rhs
        assert rank(lhs) == rank(catalecticant(f, n, k))


def test_catalecticant_rank_invariance_on_low_rank_forms():
    # evaluation functionals f(p) = p(s, t) have rank-1 catalecticants
    rnd = random.Random(11)
    for _ in range(30):
        n, k = rnd.randint(1, 3), rnd.randint(1, 3)
        d = 2 * n + k
        s, t = rnd.randint(-3, 3), rnd.randint(1, 3)
        f = DualBinaryForm(d, tuple(Fraction(s) ** (d - j) * t ** j for j in range(d + 1)))
        assert rank(catalecticant(f, n, k)) == (1 if any(f.values) else 0)
        assert rank(catalecticant(precompose(f, random_gl2(rnd)), n, k)) == rank(catalecticant(f, n, k))


# -- GL(V) representations -----------------------------------------------------


def test_gl_action_examples():
    lam = Fraction(3, 2)
    assert gl_action_sym(RationalMatrix.diag([1, lam]), 2) == RationalMatrix.diag([1, lam, lam ** 2])
    for d in range(5):
        assert gl_action_sym(RationalMatrix.identity(2), d) == RationalMatrix.identity(d + 1)
    # x^2 -> x^2, xy -> x^2 + xy, y^2 -> x^2 + 2xy + y^2 (columns)
    assert gl_action_sym(RationalMatrix([[1, 1], [0, 1]]), 2) == RationalMatrix(
        [[1, 1, 1], [0, 1, 2], [0, 0, 1]])


@pytest.mark.parametrize("d", [1, 2, 3, 5])
def test_gl_action_matches_substitution(d):
    rnd = random.Random(d)
    alpha = random_gl2(rnd)
    S = gl_action_sym(alpha, d)
    ax = alpha[0, 0] * x + alpha[1, 0] * y
    ay = alpha[0, 1] * x + alpha[1, 1] * y
    for j in range(d + 1):
        image = sympy.nsimplify(ax) ** (d - j) * sympy.nsimplify(ay) ** j
        assert list(S.column(j)) == coeffs_of(image, d)


def test_gl_action_group_properties():
    rnd = random.Random(3)
    for _ in range(40):
        d = rnd.randint(0, 6)
        a, b = random_gl2(rnd), random_gl2(rnd)
        Sa, Sb = gl_action_sym(a, d), gl_action_sym(b, d)
        assert gl_action_sym(a @ b, d) == Sa @ Sb
        assert gl_action_sym(inverse(a), d) == inverse(Sa)
        assert det(Sa) == det(a) ** (d * (d + 1) // 2)


def test_sym_derivation_is_derivative_of_action():
    # S^d(1 + t xi) = 1 + t rho(xi) + O(t^2): compare the t-linear coefficient exactly
    rnd = random.Random(5)
    for d in range(1, 6):
        xi = RationalMatrix([[rnd.randint(-3, 3) for _ in range(2)] for _ in range(2)])
        t = sympy.Symbol("t")
        ax = x + t * (xi[0, 0] * x + xi[1, 0] * y)
        ay = y + t * (xi[0, 1] * x + xi[1, 1] * y)
        rho = sym_derivation(xi, d)
        for j in range(d + 1):
            lin = sympy.expand(ax ** (d - j) * ay ** j).coeff(t, 1)
            assert list(rho.column(j)) == coeffs_of(lin, d)


def test_pi_n_examples():
    assert pi_n(GroupPair.identity(), 2) == RationalMatrix.identity(6)
    for n in (1, 2, 3):
        assert pi_n(iota_n(2, n), n) == RationalMatrix.identity(2 * n + 2)
    g = GroupPair(RationalMatrix.diag([1, 2]), RationalMatrix([[0, 1], [1, 0]]))
    P = pi_n(g, 1)
    for i in range(4):
        for j in range(4):
            assert P[i, j] == g.alpha[i // 2, j // 2] * g.beta[i % 2, j % 2]


def test_pi_n_is_homomorphism():
    rnd = random.Random(9)
    for _ in range(10):
        g = GroupPair(random_gl2(rnd), random_gl2(rnd))
        h = GroupPair(random_gl2(rnd), random_gl2(rnd))
        for n in (1, 2):
            assert pi_n(g @ h, n) == pi_n(g, n) @ pi_n(h, n)


def test_group_pair_rejects_singular():
    with pytest.raises(ValueError):
        GroupPair(RationalMatrix([[1, 2], [2, 4]]), RationalMatrix.identity(2))


def test_vn_rep():
    lam = Fraction(-5, 3)
    for n in range(1, 7):
        assert vn_rep(lam * RationalMatrix.identity(2), n) == lam ** n * RationalMatrix.identity(2)
    assert vn_rep(RationalMatrix.diag([1, 2]), 3) == RationalMatrix.diag([2, 4])
    assert vn_rep(RationalMatrix.diag([1, 2]), 2) == RationalMatrix.diag([2, 2])
    rnd = random.Random(1)
    for n in range(1, 6):
        a, b = random_gl2(rnd), random_gl2(rnd)
        assert vn_rep(a @ b, n) == vn_rep(a, n) @ vn_rep(b, n)


# -- gcd -------------------------------------------------------------------------


def test_gcd_examples():
    assert binary_gcd(BinaryForm.of(1, 0, -1), BinaryForm.of(1, -1)) == BinaryForm.of(1, -1)
    assert binary_gcd(BinaryForm.of(1, 0, 0), BinaryForm.of(0, 0, 1)) == BinaryForm.of(1)
    # x^2 y and x y^2 -> x y
    assert binary_gcd(BinaryForm.of(0, 1, 0, 0), BinaryForm.of(0, 0, 1, 0)) == BinaryForm.of(0, 1, 0)


def test_gcd_of_zero_forms():
    with pytest.raises(ValueError):
        binary_gcd(BinaryForm.of(0, 0), BinaryForm.of(0, 0, 0))
    assert binary_gcd(BinaryForm.of(0, 0), BinaryForm.of(0, 2, 4)) == BinaryForm.of(0, 1, 2)


small = st.integers(-6, 6)


@st.composite
def linear_products(draw):
    """Products of linear factors, to make common factors likely."""
    factors = draw(st.lists(st.tuples(small, small).filter(lambda p: p != (0, 0)), min_size=0, max_size=4))
    scale = draw(st.integers(1, 5))
    p = BinaryForm.of(scale)
    for a, b in factors:
        p = p * BinaryForm.of(a, b)
    return p


@settings(max_examples=120, deadline=None)
@given(linear_products(), linear_products(), linear_products())
def test_gcd_against_sympy(p, q, common):
    p, q = p * common, q * common
    g = binary_gcd(p, q)
    first = next(c for c in g.coeffs if c != 0)
    assert first == 1
    for target in (p, q):
        _, rem = sympy.div(to_sympy(target), to_sympy(g), x, y)
        assert sympy.expand(rem) == 0
    expected = sympy.gcd(to_sympy(p), to_sympy(q))
    assert sympy.simplify(to_sympy(g) / expected).is_number
