"""Exact polynomial / series core: golden examples, brute-force oracles,
and ring-law properties."""

import random
from fractions import Fraction
from itertools import permutations, product

import pytest

from flaggroth.algebra import Poly, Ring, SeriesWindow, determinant, \
    gen_binomial
from flaggroth.errors import InternalError, UsageError, WindowError

R = Ring(2, 4, 8)
X1, X2, B = R.x(1), R.x(2), R.beta()


def random_poly(rng, ring, max_terms=4):
    p = ring.zero()
    for _ in range(rng.randrange(max_terms + 1)):
        bdeg = rng.randrange(ring.beta_cap + 1)
        degs = [rng.randrange(3) for _ in range(ring.n_vars)]
        p = p + ring.monomial(bdeg, degs, rng.randrange(-5, 6) or 2)
    return p


# ---------------------------------------------------------------------------
# ring operations

def test_difference_of_squares():
    assert (X1 + B) * (X1 - B) == X1 * X1 - B * B


def test_multiply_by_zero():
    assert ((R.one() + B * X1) * R.zero()).is_zero()


def test_beta_cap_truncates_product():
    ring = Ring(2, 1, None)
    x1, x2, b = ring.x(1), ring.x(2), ring.beta()
    lhs = (ring.one() + b * x1) * (ring.one() + b * x2)
    assert lhs == ring.one() + b * x1 + b * x2


def test_result_caps_are_componentwise_min():
    a = Ring(2, 4, 8).one()
    b = Ring(2, 2, 10).one()
    assert (a * b).ring == Ring(2, 2, 8)
    assert (a + b).ring == Ring(2, 2, 8)


def test_addition_truncates_into_met_ring():
    wide = Ring(1, 4, 8)
    narrow = Ring(1, 1, 8)
    p = wide.beta() ** 3
    assert (p + narrow.zero()).is_zero()


def test_mismatched_n_vars_rejected():
    with pytest.raises(UsageError):
        Ring(2, 2, 2).x(1) * Ring(3, 2, 2).x(1)


def test_ring_laws_random():
    rng = random.Random(11)
    for _ in range(60):
        a, b, c = (random_poly(rng, R) for _ in range(3))
        assert (a + b) + c == a + (b + c)
        assert a * b == b * a
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c


def test_truncation_is_ring_homomorphism():
    rng = random.Random(23)
    small = Ring(2, 2, 4)
    for _ in range(60):
        a, b = random_poly(rng, R), random_poly(rng, R)
        assert (a * b).truncate(small) == \
            a.truncate(small) * b.truncate(small)
        assert (a + b).truncate(small) == \
            a.truncate(small) + b.truncate(small)


def test_scalar_and_power():
    assert 3 * X1 == X1 + X1 + X1
    assert (X1 + X2) ** 2 == X1 * X1 + 2 * X1 * X2 + X2 * X2
    assert X1 ** 0 == R.one()


def test_fraction_coefficients_normalize_to_int():
    p = X1.scale(Fraction(1, 3))
    assert not p.has_integer_coefficients()
    q = p.scale(3)
    assert q.has_integer_coefficients()
    assert q == X1
    with pytest.raises(InternalError):
        p.require_integer_coefficients()


# ---------------------------------------------------------------------------
# generalized binomial

def test_gen_binomial_examples():
    assert gen_binomial(2, 1) == 2
    for s in range(8):
        assert gen_binomial(-1, s) == (-1) ** s
    assert gen_binomial(-2, 3) == -4
    assert gen_binomial(5, 0) == 1
    assert gen_binomial(-3, 0) == 1


def invert_unit_series(denom, order):
    """Coefficients of 1/denom(t) for a unit lower-triangular series."""
    inv = [Fraction(1)]
    for n in range(1, order):
        acc = Fraction(0)
        for i in range(1, n + 1):
            acc += Fraction(denom[i] if i < len(denom) else 0) * inv[n - i]
        inv.append(-acc)
    return inv


def test_gen_binomial_matches_series_expansion():
    import math
    for a in range(-5, 6):
        if a >= 0:
            coeffs = [Fraction(math.comb(a, s)) if s <= a else Fraction(0)
                      for s in range(9)]
        else:
            base = [math.comb(-a, s) for s in range(-a + 1)]
            coeffs = invert_unit_series(base, 9)
        for s in range(9):
            assert coeffs[s].denominator == 1
            assert gen_binomial(a, s) == coeffs[s]


# ---------------------------------------------------------------------------
# determinants

def test_determinant_1x1():
    assert determinant([[X1]]) == X1


def test_determinant_identity_2x2():
    one, zero = R.one(), R.zero()
    assert determinant([[one, zero], [zero, one]]) == one


def test_determinant_2x2_cofactor():
    m = [[X1, -B], [X1 * X1, X1]]
    assert determinant(m) == X1 * X1 + B * X1 * X1


def test_determinant_rejects_non_square():
    with pytest.raises(UsageError):
        determinant([[X1, X2]])
    with pytest.raises(UsageError):
        determinant([])


def brute_det(rows, ring):
    n = len(rows)
    acc = ring.zero()
    for perm in permutations(range(n)):
        sgn = 1
        for i in range(n):
            for j in range(i + 1, n):
                if perm[i] > perm[j]:
                    sgn = -sgn
        term = ring.one()
        for i in range(n):
            term = term * rows[i][perm[i]]
        acc = acc + term.scale(sgn)
    return acc


def test_determinant_exhaustive_3x3_monomial_pool():
    ring = Ring(1, 3, 9)
    pool = [ring.one(), ring.x(1), ring.beta()]
    for entries in product(range(3), repeat=9):
        rows = [[pool[entries[3 * i + j]] for j in range(3)]
                for i in range(3)]
        assert determinant(rows) == brute_det(rows, ring)


def test_determinant_over_plain_ints():
    assert determinant([[1, 2], [3, 4]]) == -2
    assert determinant([[2]]) == 2


# ---------------------------------------------------------------------------
# term ordering / rendering

def test_sorted_terms_graded_lex():
    p = X2 + X1 + B * X1 * X2 + R.one()
    keys = [key for key, _ in p.sorted_terms()]
    assert keys == [(0, (0, 0)), (0, (1, 0)), (0, (0, 1)), (1, (1, 1))]


def test_to_text_goldens():
    assert R.zero().to_text() == "0"
    assert (X1 + X2 + B * X1 * X2).to_text() == "x1 + x2 + b*x1*x2"
    assert (R.one() - B.scale(3)).to_text() == "1 - 3*b"
    assert (-X1 + B * B).to_text() == "-x1 + b^2"
    assert (X1 ** 2).to_text() == "x1^2"


# ---------------------------------------------------------------------------
# series windows

def naive_series_product(a, b):
    out = {}
    for ka, pa in a.items():
        for kb, pb in b.items():
            cur = out.get(ka + kb)
            prod = pa * pb
            out[ka + kb] = prod if cur is None else cur + prod
    return {k: p for k, p in out.items() if not p.is_zero()}


def test_window_product_polynomials():
    w1 = SeriesWindow(R, 0, 1, {0: R.one(), 1: X1})
    w2 = SeriesWindow(R, 0, 1, {0: R.one(), 1: X2})
    prod = w1.multiply(w2)
    assert (prod.lo, prod.hi) == (0, 2)
    assert prod.coefficient(0) == R.one()
    assert prod.coefficient(1) == X1 + X2
    assert prod.coefficient(2) == X1 * X2
    assert prod.coefficient(5).is_zero()
    assert prod.coefficient(-3).is_zero()


def test_window_product_matches_naive_convolution():
    rng = random.Random(5)
    for _ in range(40):
        a = {n: random_poly(rng, R, 2) for n in range(-2, 3)}
        b = {n: random_poly(rng, R, 2) for n in range(-1, 2)}
        wa = SeriesWindow(R, -2, 2, a)
        wb = SeriesWindow(R, -1, 1, b)
        expected = naive_series_product(
            {k: p for k, p in a.items() if not p.is_zero()},
            {k: p for k, p in b.items() if not p.is_zero()})
        prod = wa.multiply(wb)
        for n in range(-6, 7):
            assert prod.coefficient(n) == expected.get(n, R.zero())


def test_incomplete_window_shrinks_validity():
    # a is only known on [0, 3] with unknown tail above; b is a polynomial
    # supported on [0, 1]; the product is complete only up to 0 + 3... the
    # coefficient at n needs a-values above 3 once n - 1 > 3.
    a = SeriesWindow(R, 0, 3, {n: R.one() for n in range(4)},
                     exact_below=True, exact_above=False)
    b = SeriesWindow(R, 0, 1, {0: R.one(), 1: X1})
    prod = a.multiply(b)
    assert prod.hi == 3  # a.hi + b.lo
    assert prod.coefficient(3) == R.one() + X1
    with pytest.raises(WindowError):
        prod.coefficient(4)


def test_doubly_unknown_product_rejected():
    a = SeriesWindow(R, 0, 1, {0: R.one()}, exact_above=False)
    b = SeriesWindow(R, 0, 1, {0: R.one()}, exact_below=False)
    with pytest.raises(WindowError):
        a.multiply(b)


def test_window_trim_drops_zero_edges():
    w = SeriesWindow(R, -2, 2, {0: X1})
    t = w.trimmed()
    assert (t.lo, t.hi) == (0, 0)
    assert t.coefficient(2).is_zero() and t.coefficient(-2).is_zero()


def test_window_rejects_posting_outside():
    with pytest.raises(UsageError):
        SeriesWindow(R, 0, 1, {5: X1})
