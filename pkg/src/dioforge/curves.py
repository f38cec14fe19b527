"""Hyperelliptic models Y^2 = f(X) attached to the equation family, and a torsion check.

Setting z = m turns the equation into y^2 - m*x*y = a*x^d - m^2 - b. After
completing the square and rescaling:

    m even:  X = a*x,    Y = (y - m*x/2) * a^((d-1)/2)
             f(X) = X^d + a^(d-3)*(m^2/4)*X^2 - (m^2 + b)*a^(d-1)
    m odd:   X = 4*a*x,  Y = (y - m*x/2) * a^((d-1)/2) * 2^d
             f(X) = X^d + (4a)^(d-3)*m^2*X^2 - (m^2 + b)*a^(d-1)*4^d

Grant's analogue of Nagell-Lutz says a rational point whose class is torsion
in the Jacobian is integral with Y = 0 or Y^2 | disc(f). Those candidates are
enumerated exhaustively and pulled back to the original equation.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from math import lcm

from .diophantine import EquationParams, HypothesisError, eval_residual
from .intmath import FactorBudget, Factorization, factorize
from .poly import (
    IntPolynomial,
    _divmod_q,
    discriminant,
    poly_derivative,
    poly_eval,
    poly_gcd,
)

__all__ = [
    "Branch",
    "Verdict",
    "CurveModel",
    "SingularModelError",
    "Candidates",
    "TorsionReport",
    "build_curve",
    "curve_from_polynomial",
    "integral_points_at_height",
    "cauchy_bound",
    "torsion_candidates",
    "map_point_to_triple",
    "check_torsion_free",
]


class Branch(str, Enum):
    EVEN = "even"
    ODD = "odd"


class Verdict(str, Enum):
    TORSION_FREE = "torsion_free"
    INCONCLUSIVE = "inconclusive"
    CANDIDATE_FOUND = "candidate_found"


class SingularModelError(ValueError):
    """f has a repeated root, so Y^2 = f(X) is not a nonsingular model."""


@dataclass(frozen=True)
class CurveModel:
    f: IntPolynomial
    discriminant: int
    squarefree: bool
    m: int | None = None
    parity_branch: Branch | None = None
    params: EquationParams | None = None

    @property
    def genus(self) -> int:
        return (self.f.degree - 1) // 2

    def describe(self) -> str:
        return f"Y^2 = {self.f}, genus {self.genus}, disc {self.discriminant}"

    def to_record(self) -> dict:
        rec = {
            "f": list(self.f.coeffs),
            "m": self.m,
            "parity_branch": self.parity_branch.value if self.parity_branch else None,
            "genus": self.genus,
            "discriminant": self.discriminant,
            "squarefree": self.squarefree,
        }
        if self.params is not None:
            rec["params"] = {"a": self.params.a, "d": self.params.d, "r": self.params.r, "b": self.params.b}
        return rec


def curve_from_polynomial(f: IntPolynomial, **provenance) -> CurveModel:
    """Wrap a monic polynomial as a curve (discriminant and square-freeness computed)."""
    if not f.monic or f.degree < 3:
        raise ValueError("expected a monic polynomial of degree >= 3")
    sqf = poly_gcd(f, poly_derivative(f)).degree == 0
    return CurveModel(f=f, discriminant=discriminant(f), squarefree=sqf, **provenance)


def build_curve(m: int, params: EquationParams) -> CurveModel:
    if not params.strict:
        raise HypothesisError("strict-required", "curve construction needs strict params")
    if m < 1:
        raise ValueError(f"m must be a positive integer, got {m}")
    a, d, b = params.a, params.d, params.b
    coeffs = [0] * (d + 1)
    coeffs[d] = 1
    if m % 2 == 0:
        branch = Branch.EVEN
        coeffs[2] = a ** (d - 3) * (m * m // 4)
        coeffs[0] = -(m * m + b) * a ** (d - 1)
    else:
        branch = Branch.ODD
        coeffs[2] = (4 * a) ** (d - 3) * m * m
        coeffs[0] = -(m * m + b) * a ** (d - 1) * 4**d
    curve = curve_from_polynomial(IntPolynomial(coeffs), m=m, parity_branch=branch, params=params)
    if not curve.squarefree:
        raise SingularModelError(f"f = {curve.f} is not square-free")
    return curve


def cauchy_bound(g: IntPolynomial) -> int:
    """1 + max |g_i / lc(g)| over the lower coefficients, rounded up."""
    lc = abs(g.leading)
    return 1 + max((-(-abs(c) // lc) for c in g.coeffs[:-1]), default=0)


def _exact_quotient(f: IntPolynomial, g: IntPolynomial) -> list[Fraction]:
    """f / g over Q, assuming g divides f."""
    r = [Fraction(c) for c in f.coeffs]
    q = [Fraction(0)] * (f.degree - g.degree + 1)
    lg = g.coeffs[-1]
    for shift in range(len(q) - 1, -1, -1):
        c = r[shift + g.degree] / lg
        q[shift] = c
        for i, gc in enumerate(g.coeffs):
            r[shift + i] -= c * gc
    return q


def _positive_rescale(coeffs: list[Fraction]) -> list[int]:
    den = 1
    for c in coeffs:
        den = lcm(den, c.denominator)
    return [int(c * den) for c in coeffs]


def _sturm_chain(g: IntPolynomial) -> list[list[int]]:
    """Sturm chain of the square-free part of g, each member scaled by a positive constant."""
    sqf = _exact_quotient(g, poly_gcd(g, poly_derivative(g)))
    p0 = _positive_rescale(sqf)
    p1 = [k * c for k, c in enumerate(p0)][1:]
    chain = [p0, p1]
    while len(chain[-1]) > 1:
        rem = _divmod_q([Fraction(c) for c in chain[-2]], [Fraction(c) for c in chain[-1]])
        if not rem:
            break
        chain.append([-c for c in _positive_rescale(rem)])
    return chain


def _sign_changes_at_half(chain: list[list[int]], k: int) -> int:
    """Sign changes of the chain at x = k + 1/2 (evaluated as 2^deg * p(x))."""
    num = 2 * k + 1
    changes, prev = 0, 0
    for p in chain:
        deg = len(p) - 1
        acc = p[deg]
        for i in range(deg - 1, -1, -1):
            acc = acc * num + (p[i] << (deg - i))
        s = (acc > 0) - (acc < 0)
        if s:
            if prev and s != prev:
                changes += 1
            prev = s
    return changes


def integral_points_at_height(f: IntPolynomial, y_abs: int) -> list[int]:
    """All integers X with f(X) = y_abs^2, ascending.

    Real roots of g = f - y_abs^2 lie in [-B, B] for the Cauchy bound B.
    Sturm counts over cells (k - 1/2, k + 1/2) bisect that window down to
    unit cells holding a real root, and only the integer at the centre of
    such a cell is tested exactly. No factoring of the constant term.
    """
    if f.degree < 3 or not f.monic:
        raise ValueError("expected a monic polynomial of degree >= 3")
    g = f - IntPolynomial([y_abs * y_abs])
    bound = cauchy_bound(g)
    chain = _sturm_chain(g)
    # Number of real roots with integer-centred cells between lo and hi.
    found = []
    stack = [(-bound, bound, _sign_changes_at_half(chain, -bound - 1), _sign_changes_at_half(chain, bound))]
    while stack:
        lo, hi, v_lo, v_hi = stack.pop()
        if v_lo - v_hi <= 0:
            continue
        if lo == hi:
            if poly_eval(g, lo) == 0:
                found.append(lo)
            continue
        mid = (lo + hi) // 2
        v_mid = _sign_changes_at_half(chain, mid)
        stack.append((lo, mid, v_lo, v_mid))
        stack.append((mid + 1, hi, v_mid, v_hi))
    return sorted(found)


class Candidates(list):
    """(X, Y) points satisfying Grant's conditions, with enumeration metadata."""

    def __init__(self, points, y_values, factorization: Factorization):
        super().__init__(points)
        self.y_values = y_values
        self.factorization = factorization

    @property
    def complete(self) -> bool:
        return self.factorization.complete


def _square_divisor_roots(fact: Factorization) -> list[int]:
    """All s >= 1 with s^2 dividing the factored part."""
    roots = [1]
    for p, e in fact.factors:
        roots = [s * p**k for s in roots for k in range(e // 2 + 1)]
    return sorted(roots)


def torsion_candidates(curve: CurveModel, budget: FactorBudget | None = None) -> Candidates:
    """Integral (X, Y) on the curve with Y = 0 or Y^2 | disc(f).

    If the discriminant does not factor within budget, only square divisors
    of the factored part are tried and ``complete`` is False.
    """
    if not curve.squarefree:
        raise SingularModelError("torsion candidates need a square-free model")
    fact = factorize(curve.discriminant, budget)
    heights = [0] + _square_divisor_roots(fact)
    points = []
    for s in heights:
        for x in integral_points_at_height(curve.f, s):
            points.append((x, s))
            if s:
                points.append((x, -s))
    points.sort(key=lambda p: (abs(p[1]), p[0], p[1]))
    y_values = sorted({0} | {s for s in heights} | {-s for s in heights})
    return Candidates(points, y_values, fact)


def map_point_to_triple(curve: CurveModel, X, Y) -> tuple[Fraction, Fraction, Fraction]:
    """Pull (X, Y) back to (x, y, z) with z = m by inverting the construction."""
    if curve.params is None or curve.m is None:
        raise ValueError("curve has no family provenance to map back through")
    a, d, m = curve.params.a, curve.params.d, curve.m
    X, Y = Fraction(X), Fraction(Y)
    half = a ** ((d - 1) // 2)
    if curve.parity_branch is Branch.EVEN:
        x = X / a
        y = Y / half + m * X / (2 * a)
    else:
        x = X / (4 * a)
        y = Y / (half * 2**d) + m * X / (8 * a)
    return x, y, Fraction(m)


@dataclass
class TorsionReport:
    curve: CurveModel
    verdict: Verdict
    candidates_checked: list[tuple[int, int, str]] = field(default_factory=list)
    y_values_checked: list[int] = field(default_factory=list)
    disc_factorization: Factorization | None = None
    notes: str = ""

    def to_record(self) -> dict:
        fact = self.disc_factorization
        return {
            "curve": self.curve.to_record(),
            "verdict": self.verdict.value,
            "candidates_checked": [{"X": x, "Y": y, "reason": why} for x, y, why in self.candidates_checked],
            "y_values_checked": self.y_values_checked,
            "disc_factorization": None
            if fact is None
            else {"factors": [[p, e] for p, e in fact.factors], "cofactor": fact.cofactor, "complete": fact.complete},
            "notes": self.notes,
        }


def _rejection(curve: CurveModel, X: int, Y: int) -> str | None:
    """Why (X, Y) does not give an integral solution, or None if it does."""
    if curve.params is None:
        return None
    x, y, z = map_point_to_triple(curve, X, Y)
    if any(c.denominator != 1 for c in (x, y, z)):
        return f"non-integral coordinates (x, y, z) = ({x}, {y}, {z})"
    res = eval_residual(curve.params, int(x), int(y), int(z))
    if res != 0:
        return f"nonzero residual {res}"
    return None


def check_torsion_free(curve: CurveModel, budget: FactorBudget | None = None) -> TorsionReport:
    cands = torsion_candidates(curve, budget)
    checked, hits = [], []
    for X, Y in cands:
        why = _rejection(curve, X, Y)
        if why is None:
            hits.append((X, Y))
            why = "integral solution of the equation" if curve.params is not None else "no family map; Grant candidate stands"
        checked.append((X, Y, why))

    if hits:
        verdict = Verdict.CANDIDATE_FOUND
        notes = f"{len(hits)} candidate point(s) survive: {hits}"
    elif not cands.complete:
        verdict = Verdict.INCONCLUSIVE
        notes = f"discriminant cofactor {cands.factorization.cofactor} not factored within budget"
    else:
        verdict = Verdict.TORSION_FREE
        notes = f"{len(cands.y_values)} candidate Y-values checked, {len(cands)} integral point(s), all rejected"
    return TorsionReport(
        curve=curve,
        verdict=verdict,
        candidates_checked=checked,
        y_values_checked=cands.y_values,
        disc_factorization=cands.factorization,
        notes=notes,
    )
