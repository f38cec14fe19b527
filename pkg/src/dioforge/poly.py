"""Dense univariate polynomials over Z, constant term first."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Sequence

__all__ = [
    "IntPolynomial",
    "poly_derivative",
    "poly_gcd",
    "poly_eval",
    "sylvester_matrix",
    "resultant",
    "resultant_euclidean",
    "discriminant",
    "bareiss_determinant",
]


def _strip(coeffs: Sequence[int]) -> tuple[int, ...]:
    out = list(coeffs)
    while out and out[-1] == 0:
        out.pop()
    return tuple(out)


@dataclass(frozen=True)
class IntPolynomial:
    """Coefficients constant-first; the zero polynomial has ``coeffs == ()``."""

    coeffs: tuple[int, ...]

    def __init__(self, coeffs: Sequence[int]):
        object.__setattr__(self, "coeffs", _strip(int(c) for c in coeffs))

    @classmethod
    def from_roots(cls, roots: Sequence[int]) -> "IntPolynomial":
        p = cls([1])
        for r in roots:
            p = p * cls([-r, 1])
        return p

    @property
    def degree(self) -> int:
        """-1 for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def leading(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    @property
    def monic(self) -> bool:
        return self.leading == 1

    def __call__(self, x):
        return poly_eval(self, x)

    def __add__(self, other: "IntPolynomial") -> "IntPolynomial":
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (0,) * (n - len(self.coeffs))
        b = other.coeffs + (0,) * (n - len(other.coeffs))
        return IntPolynomial([x + y for x, y in zip(a, b)])

    def __neg__(self) -> "IntPolynomial":
        return IntPolynomial([-c for c in self.coeffs])

    def __sub__(self, other: "IntPolynomial") -> "IntPolynomial":
        return self + (-other)

    def __mul__(self, other: "IntPolynomial") -> "IntPolynomial":
        if self.is_zero or other.is_zero:
            return IntPolynomial([])
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return IntPolynomial(out)

    def content(self) -> int:
        g = 0
        for c in self.coeffs:
            g = gcd(g, c)
        return g

    def primitive(self) -> "IntPolynomial":
        """Divide out the content and make the leading coefficient positive."""
        if self.is_zero:
            return self
        g = self.content()
        if self.leading < 0:
            g = -g
        return IntPolynomial([c // g for c in self.coeffs])

    def to_str(self, var: str = "X") -> str:
        if self.is_zero:
            return "0"
        terms = []
        for k in range(self.degree, -1, -1):
            c = self.coeffs[k]
            if c == 0:
                continue
            mag = abs(c)
            if k == 0:
                body = str(mag)
            else:
                power = var if k == 1 else f"{var}^{k}"
                body = power if mag == 1 else f"{mag}*{power}"
            sign = "-" if c < 0 else "+"
            terms.append((sign, body))
        first_sign, first = terms[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in terms[1:]:
            out += f" {sign} {body}"
        return out

    def __str__(self) -> str:
        return self.to_str()


def poly_eval(f: IntPolynomial, x):
    """Horner evaluation; works for ints and Fractions alike."""
    acc = 0
    for c in reversed(f.coeffs):
        acc = acc * x + c
    return acc


def poly_derivative(f: IntPolynomial) -> IntPolynomial:
    return IntPolynomial([k * c for k, c in enumerate(f.coeffs)][1:])


def _divmod_q(f: list[Fraction], g: list[Fraction]) -> list[Fraction]:
    """Remainder of f by g over Q (constant-first lists, g nonzero and stripped)."""
    r = list(f)
    dg, lg = len(g) - 1, g[-1]
    while len(r) - 1 >= dg and any(r):
        if r[-1] == 0:
            r.pop()
            continue
        q = r[-1] / lg
        shift = len(r) - 1 - dg
        for i, c in enumerate(g):
            r[shift + i] -= q * c
        r.pop()
    while r and r[-1] == 0:
        r.pop()
    return r


def _to_primitive(coeffs: list[Fraction]) -> IntPolynomial:
    from math import lcm

    den = 1
    for c in coeffs:
        den = lcm(den, c.denominator)
    return IntPolynomial([int(c * den) for c in coeffs]).primitive()


def poly_gcd(f: IntPolynomial, g: IntPolynomial) -> IntPolynomial:
    """GCD over Q, returned as a primitive integer polynomial with positive leading coefficient."""
    if f.is_zero:
        return g.primitive()
    if g.is_zero:
        return f.primitive()
    a = [Fraction(c) for c in f.coeffs]
    b = [Fraction(c) for c in g.coeffs]
    while b:
        a, b = b, _divmod_q(a, b)
        if b:
            b = [c / b[-1] for c in b]  # keep numbers small
    return _to_primitive(a)


def sylvester_matrix(f: IntPolynomial, g: IntPolynomial) -> list[list[int]]:
    """(m+n) x (m+n) Sylvester matrix, rows holding coefficients highest degree first."""
    n, m = f.degree, g.degree
    size = n + m
    fh = list(reversed(f.coeffs))
    gh = list(reversed(g.coeffs))
    rows = []
    for i in range(m):
        rows.append([0] * i + fh + [0] * (size - n - 1 - i))
    for i in range(n):
        rows.append([0] * i + gh + [0] * (size - m - 1 - i))
    return rows


def bareiss_determinant(mat: list[list[int]]) -> int:
    """Fraction-free Gaussian elimination; exact for integer matrices."""
    a = [list(row) for row in mat]
    n = len(a)
    if n == 0:
        return 1
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        pivot = a[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * pivot - a[i][k] * a[k][j]) // prev
        prev = pivot
    return sign * a[n - 1][n - 1]


def resultant(f: IntPolynomial, g: IntPolynomial) -> int:
    """Res(f, g) as the determinant of the Sylvester matrix."""
    if f.is_zero or g.is_zero:
        raise ValueError("resultant of the zero polynomial is undefined here")
    if f.degree == 0 and g.degree == 0:
        return 1
    return bareiss_determinant(sylvester_matrix(f, g))


def resultant_euclidean(f: IntPolynomial, g: IntPolynomial) -> int:
    """Res(f, g) through the Euclidean remainder sequence over Q.

    Uses Res(f, g) = (-1)^(deg f * deg g) * lc(g)^(deg f - deg r) * Res(g, r)
    with r = f mod g. Independent of the Sylvester route.
    """
    if f.is_zero or g.is_zero:
        raise ValueError("resultant of the zero polynomial is undefined here")
    a = [Fraction(c) for c in f.coeffs]
    b = [Fraction(c) for c in g.coeffs]
    acc = Fraction(1)
    while True:
        da, db = len(a) - 1, len(b) - 1
        if db == 0:
            acc *= b[0] ** da
            break
        if da == 0:
            acc *= a[0] ** db
            break
        r = _divmod_q(a, b)
        if not r:
            return 0
        acc *= (-1) ** (da * db) * b[-1] ** (da - (len(r) - 1))
        a, b = b, r
    assert acc.denominator == 1
    return int(acc)


def discriminant(f: IntPolynomial) -> int:
    """(-1)^(n(n-1)/2) * Res(f, f') for monic f of degree n >= 2."""
    n = f.degree
    if n < 2:
        raise ValueError("discriminant needs degree >= 2")
    if not f.monic:
        raise ValueError("discriminant is defined here for monic polynomials")
    sign = -1 if (n * (n - 1) // 2) % 2 else 1
    return sign * resultant(f, poly_derivative(f))
