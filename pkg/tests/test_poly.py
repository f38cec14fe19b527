import random
from itertools import combinations

import pytest
import sympy
from sympy.polys.subresultants_qq_zz import sylvester
from hypothesis import given
from hypothesis import strategies as st

from dioforge.poly import (
    IntPolynomial,
    bareiss_determinant,
    discriminant,
    poly_derivative,
    poly_eval,
    poly_gcd,
    resultant,
    resultant_euclidean,
    sylvester_matrix,
)

X = sympy.Symbol("X")


def P(*coeffs):
    return IntPolynomial(coeffs)


def _random_poly(rng, max_deg, bound=20, monic=False):
    deg = rng.randint(1, max_deg)
    cs = [rng.randint(-bound, bound) for _ in range(deg)]
    lead = 1 if monic else rng.choice([c for c in range(-bound, bound + 1) if c])
    return IntPolynomial(cs + [lead])


def _to_sympy(f):
    return sum(c * X**k for k, c in enumerate(f.coeffs))


def test_normalisation_and_degree():
    assert P(1, 2, 0, 0).coeffs == (1, 2)
    assert P(0, 0).is_zero and P().degree == -1
    assert P(-9, 0, 1, 1).degree == 3


def test_to_str():
    assert str(P(-9, 0, 1, 1)) == "X^3 + X^2 - 9"
    assert str(P(-384, 0, 1, 1)) == "X^3 + X^2 - 384"
    assert str(P(0, -1, 0, 1)) == "X^3 - X"
    assert str(P(-133693440, 0, 4096, 0, 0, 0, 0, 0, 0, 1)) == "X^9 + 4096*X^2 - 133693440"
    assert str(P(3, -2)) == "-2*X + 3"


def test_support_examples():
    f = P(-9, 0, 1, 1)
    assert poly_derivative(f) == P(0, 2, 3)
    assert poly_gcd(P(-1, 0, 1), P(-1, 1)) == P(-1, 1)
    assert poly_eval(f, 2) == 3
    assert f(2) == 3


def test_gcd_is_primitive_with_positive_lead():
    f = P(-2, 0, 2)  # 2(X-1)(X+1)
    g = P(3, -3)  # -3(X-1)
    assert poly_gcd(f, g) == P(-1, 1)
    assert poly_gcd(P(1, 0, 1), P(0, 1)) == P(1)


@given(st.lists(st.integers(-5, 5), min_size=1, max_size=4), st.lists(st.integers(-5, 5), min_size=1, max_size=3),
       st.lists(st.integers(-5, 5), min_size=1, max_size=3))
def test_gcd_recovers_common_root_factor(common, ra, rb):
    f = IntPolynomial.from_roots(common + ra)
    g = IntPolynomial.from_roots(common + rb)
    expected = sympy.Poly(sympy.gcd(_to_sympy(f), _to_sympy(g)), X)
    assert poly_gcd(f, g) == IntPolynomial([int(c) for c in reversed(expected.all_coeffs())])


def test_resultant_examples():
    # Convention: Res(f, g) = lc(f)^deg g * prod g(root of f).
    assert resultant(P(-1, 1), P(-2, 1)) == -1
    assert resultant(P(-2, 1), P(-1, 1)) == 1
    assert resultant(P(1, 0, 1), P(0, 1)) == 1
    assert int(sympy.resultant(X - 1, X - 2)) == -1


def test_resultant_of_constants_and_zero():
    assert resultant(P(5), P(-1, 0, 1)) == 25
    assert resultant(P(-1, 0, 1), P(5)) == 25
    assert resultant(P(3), P(7)) == 1
    with pytest.raises(ValueError):
        resultant(P(), P(1, 1))


def test_resultant_vanishes_on_common_root():
    assert resultant(IntPolynomial.from_roots([2, 5]), IntPolynomial.from_roots([5, -1, 3])) == 0
    assert resultant_euclidean(IntPolynomial.from_roots([2, 5]), IntPolynomial.from_roots([5, -1, 3])) == 0


def test_sylvester_shape():
    m = sylvester_matrix(P(1, 2, 3), P(4, 5))
    assert m == [[3, 2, 1], [5, 4, 0], [0, 5, 4]]


def test_bareiss_against_sympy():
    rng = random.Random(11)
    for n in range(1, 8):
        for _ in range(10):
            mat = [[rng.randint(-9, 9) for _ in range(n)] for _ in range(n)]
            if rng.random() < 0.3:
                mat[rng.randrange(n)] = [0] * n
            assert bareiss_determinant(mat) == sympy.Matrix(mat).det()


def test_resultant_two_routes_and_sympy():
    rng = random.Random(2024)
    for _ in range(100):
        f, g = _random_poly(rng, 9), _random_poly(rng, 9)
        r = resultant(f, g)
        assert r == resultant_euclidean(f, g)
        # sympy.resultant can disagree in sign for non-monic inputs; its
        # Sylvester matrix determinant follows the root-product definition.
        assert r == int(sylvester(_to_sympy(f), _to_sympy(g), X).det())


def test_resultant_product_formula_on_integer_roots():
    rng = random.Random(3)
    for _ in range(50):
        ra = [rng.randint(-6, 6) for _ in range(rng.randint(1, 4))]
        rb = [rng.randint(-6, 6) for _ in range(rng.randint(1, 4))]
        expected = 1
        for x in ra:
            for y in rb:
                expected *= x - y
        assert resultant(IntPolynomial.from_roots(ra), IntPolynomial.from_roots(rb)) == expected


def test_discriminant_examples():
    assert discriminant(P(-9, 0, 1, 1)) == -2151
    assert discriminant(P(0, -1, 0, 1)) == 4
    for p in range(-6, 7):
        for q in range(-6, 7):
            assert discriminant(P(q, p, 0, 1)) == -4 * p**3 - 27 * q**2


def test_discriminant_product_of_squared_differences():
    rng = random.Random(8)
    for _ in range(40):
        roots = [rng.randint(-9, 9) for _ in range(rng.randint(2, 7))]
        prod = 1
        for a, b in combinations(roots, 2):
            prod *= (a - b) ** 2
        assert discriminant(IntPolynomial.from_roots(roots)) == prod


def test_discriminant_matches_sympy_on_random_monic():
    rng = random.Random(99)
    for _ in range(60):
        f = _random_poly(rng, 9, bound=50, monic=True)
        if f.degree < 2:
            continue
        assert discriminant(f) == int(sympy.discriminant(_to_sympy(f), X))


def test_discriminant_preconditions():
    with pytest.raises(ValueError):
        discriminant(P(1, 1))
    with pytest.raises(ValueError):
        discriminant(P(1, 0, 2))
