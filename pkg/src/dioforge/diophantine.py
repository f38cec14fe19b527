"""The equation family a*x^d - y^2 - z^2 + x*y*z - b = 0 with b = 2^d*a - 3^r.

Fixing (x, z) leaves a monic quadratic in y,

    y^2 - (x*z)*y + (z^2 + b - a*x^d) = 0,

so the search runs over (x, z) and recovers y from a perfect-square
discriminant. Residue filters run vectorized over a whole z-row; the few
survivors are confirmed with exact integer arithmetic.
"""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, NamedTuple

import numpy as np

from .intmath import is_perfect_square

__all__ = [
    "Validation",
    "HypothesisError",
    "EquationParams",
    "SolutionTriple",
    "SearchConfig",
    "make_params",
    "eval_residual",
    "y_discriminant",
    "solve_y",
    "sieve_admits",
    "search",
]


class Validation(str, Enum):
    STRICT = "strict"
    EXPLORATORY = "exploratory"


class HypothesisError(ValueError):
    """Parameters violate a hypothesis of the insolvability results.

    ``hypothesis`` is one of "a-class", "d-parity", "d-divisibility",
    "r-parity", "d-positive", "r-positive", "sieve-requires-strict".
    """

    def __init__(self, hypothesis: str, message: str):
        super().__init__(message)
        self.hypothesis = hypothesis


@dataclass(frozen=True)
class EquationParams:
    a: int
    d: int
    r: int
    b: int
    validation: Validation = Validation.STRICT

    @property
    def strict(self) -> bool:
        return self.validation is Validation.STRICT

    def equation(self) -> str:
        """Human form matching the usual table layout, e.g. ``x^3-y^2-z^2+xyz+19=0``."""
        lead = "" if self.a == 1 else str(self.a)
        const = -self.b
        tail = f"+{const}" if const >= 0 else str(const)
        return f"{lead}x^{self.d}-y^2-z^2+xyz{tail}=0"


def make_params(a: int, d: int, r: int, validation: Validation | str = Validation.STRICT) -> EquationParams:
    """Build params with b = 2^d*a - 3^r.

    Strict mode enforces a = 1 (mod 12), d odd, 3 | d, r odd and raises
    :class:`HypothesisError` naming the first failed hypothesis.
    """
    validation = Validation(validation)
    if d < 1:
        raise HypothesisError("d-positive", f"exponent d must be >= 1, got {d}")
    if r < 1:
        raise HypothesisError("r-positive", f"r must be >= 1, got {r}")
    if validation is Validation.STRICT:
        if a % 12 != 1:
            raise HypothesisError("a-class", f"a must be 1 mod 12, got a={a} ({a % 12} mod 12)")
        if d % 2 == 0:
            raise HypothesisError("d-parity", f"d must be odd, got d={d}")
        if d % 3 != 0:
            raise HypothesisError("d-divisibility", f"d must be divisible by 3, got d={d}")
        if r % 2 == 0:
            raise HypothesisError("r-parity", f"r must be odd, got r={r}")
    return EquationParams(a=a, d=d, r=r, b=(1 << d) * a - 3**r, validation=validation)


class SolutionTriple(NamedTuple):
    x: int
    y: int
    z: int


@dataclass(frozen=True)
class SearchConfig:
    x_range: tuple[int, int]
    z_range: tuple[int, int]
    sieve_enabled: bool = True
    worker_count: int = 1

    def __post_init__(self):
        for name in ("x_range", "z_range"):
            lo, hi = getattr(self, name)
            if lo > hi:
                raise ValueError(f"{name} is empty: [{lo}, {hi}]")
        if self.worker_count < 1:
            raise ValueError("worker_count must be >= 1")

    @classmethod
    def symmetric(cls, x_bound: int, z_bound: int, **kw) -> "SearchConfig":
        return cls((-x_bound, x_bound), (-z_bound, z_bound), **kw)


def eval_residual(params: EquationParams, x: int, y: int, z: int) -> int:
    return params.a * x**params.d - y * y - z * z + x * y * z - params.b


def y_discriminant(params: EquationParams, x: int, z: int) -> int:
    return (x * x - 4) * z * z + 4 * (params.a * x**params.d - params.b)


def solve_y(params: EquationParams, x: int, z: int) -> set[int]:
    """All integer y solving the equation at (x, z)."""
    s = is_perfect_square(y_discriminant(params, x, z))
    if s is None:
        return set()
    out = set()
    for num in (x * z + s, x * z - s):
        if num % 2 == 0 and eval_residual(params, x, num // 2, z) == 0:
            out.add(num // 2)
    return out


def sieve_admits(params: EquationParams, x: int) -> bool:
    """Whether x survives the congruence sieve (x = 5 mod 12).

    Even x and x = 1, 9 (mod 12) carry no solutions under the strict
    hypotheses; x = 3 (mod 4) is excluded by the same mod-4 parity argument.
    """
    if not params.strict:
        raise HypothesisError("sieve-requires-strict", "the congruence sieve only holds for strict params")
    return x % 12 == 5


# Residue filters for the vectorized path, as lookup tables.
_FILTER_MODULI = (64, 63, 65, 11)
_FILTER_TABLES = {}
for _m in _FILTER_MODULI:
    _t = np.zeros(_m, dtype=bool)
    _t[[k * k % _m for k in range(_m)]] = True
    _FILTER_TABLES[_m] = _t
del _m, _t

# Beyond this |z| the int64 row arithmetic could overflow; fall back to scalars.
_VECTOR_Z_LIMIT = 1 << 24


def _row_solutions(params: EquationParams, x: int, z_lo: int, z_hi: int) -> list[SolutionTriple]:
    """Solutions with this x and z in [z_lo, z_hi]."""
    coef = x * x - 4
    const = 4 * (params.a * x**params.d - params.b)
    if max(abs(z_lo), abs(z_hi)) > _VECTOR_Z_LIMIT:
        return _row_solutions_scalar(params, x, range(z_lo, z_hi + 1))

    zs = np.arange(z_lo, z_hi + 1, dtype=np.int64)
    zsq = zs * zs
    # D = coef*z^2 + const >= 0, decided without forming D in int64.
    if coef == 0:
        if const < 0:
            return []
        mask = np.ones(zs.shape, dtype=bool)
    elif coef > 0:
        need = -const  # coef*z^2 >= need
        if need <= 0:
            mask = np.ones(zs.shape, dtype=bool)
        else:
            thresh = -(-need // coef)  # ceil
            if thresh > int(zsq.max()):
                return []
            mask = zsq >= thresh
    else:
        if const < 0:
            return []
        cap = const // (-coef)  # z^2 <= cap
        mask = zsq <= min(cap, int(zsq.max()))
    for m in _FILTER_MODULI:
        if not mask.any():
            return []
        dm = ((coef % m) * (zsq % m) + const % m) % m
        mask &= _FILTER_TABLES[m][dm]
    return _row_solutions_scalar(params, x, (int(z) for z in zs[mask]))


def _row_solutions_scalar(params: EquationParams, x: int, zs: Iterable[int]) -> list[SolutionTriple]:
    out = []
    for z in zs:
        for y in solve_y(params, x, z):
            out.append(SolutionTriple(x, y, z))
    return out


def _search_chunk(args) -> list[SolutionTriple]:
    params, xs, z_lo, z_hi = args
    out: list[SolutionTriple] = []
    for x in xs:
        out.extend(_row_solutions(params, x, z_lo, z_hi))
    return out


def admitted_xs(params: EquationParams, config: SearchConfig) -> list[int]:
    lo, hi = config.x_range
    if config.sieve_enabled and params.strict:
        first = lo + (5 - lo) % 12
        return list(range(first, hi + 1, 12))
    return list(range(lo, hi + 1))


def search(params: EquationParams, config: SearchConfig) -> list[SolutionTriple]:
    """Exhaustive search over the configured (x, z) rectangle.

    Sorted by (x, z, y); the result does not depend on ``worker_count``.
    """
    xs = admitted_xs(params, config)
    z_lo, z_hi = config.z_range
    workers = min(config.worker_count, max(1, len(xs)))
    if workers == 1:
        found = _search_chunk((params, xs, z_lo, z_hi))
    else:
        # Interleave x across workers so expensive rows spread evenly.
        chunks = [(params, xs[i::workers], z_lo, z_hi) for i in range(workers)]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            found = [t for part in pool.map(_search_chunk, chunks) for t in part]
    return sorted(found, key=lambda t: (t.x, t.z, t.y))


def default_workers() -> int:
    return os.cpu_count() or 1
