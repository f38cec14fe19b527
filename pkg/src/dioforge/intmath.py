"""Exact integer utilities: Jacobi symbol, square detection, primality, factorization."""

from __future__ import annotations

import random
from bisect import bisect_right
from dataclasses import dataclass, field
from math import gcd, isqrt

__all__ = [
    "Factorization",
    "FactorBudget",
    "jacobi_symbol",
    "is_perfect_square",
    "is_probable_prime",
    "factorize",
    "prime_factor_in_classes",
    "small_primes",
]

# Quadratic residues for the cheap pre-filters used before isqrt.
_SQUARE_FILTERS = {m: frozenset(k * k % m for k in range(m)) for m in (64, 63, 65, 11)}

# Deterministic Miller-Rabin for n < 3.3e24 (covers all 64-bit inputs).
_DETERMINISTIC_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
_DETERMINISTIC_LIMIT = 1 << 64


def jacobi_symbol(a: int, n: int) -> int:
    """Jacobi symbol (a | n) for odd positive n."""
    if n <= 0 or n % 2 == 0:
        raise ValueError(f"Jacobi symbol needs odd positive modulus, got {n}")
    a %= n
    result = 1
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def is_perfect_square(n: int) -> int | None:
    """Return the square root of ``n`` if it is a perfect square, else None."""
    if n < 0:
        return None
    for m, residues in _SQUARE_FILTERS.items():
        if n % m not in residues:
            return None
    s = isqrt(n)
    return s if s * s == n else None


def _strong_probable_prime(n: int, base: int) -> bool:
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    x = pow(base, d, n)
    if x in (1, n - 1):
        return True
    for _ in range(s - 1):
        x = x * x % n
        if x == n - 1:
            return True
    return False


def is_probable_prime(n: int, rounds: int = 40) -> bool:
    """Miller-Rabin test.

    Deterministic below 2**64 (fixed witness set); above that, ``rounds``
    random bases drawn from a generator seeded by ``n`` itself so the answer
    is reproducible.
    """
    if n < 2:
        return False
    for p in _DETERMINISTIC_BASES:
        if n % p == 0:
            return n == p
    if n < _DETERMINISTIC_LIMIT:
        return all(_strong_probable_prime(n, b) for b in _DETERMINISTIC_BASES)
    if not all(_strong_probable_prime(n, b) for b in _DETERMINISTIC_BASES[:3]):
        return False
    rng = random.Random(n)
    return all(_strong_probable_prime(n, rng.randrange(2, n - 1)) for _ in range(rounds))


_sieve: list[int] = []
_sieve_limit = 0


def small_primes(limit: int) -> list[int]:
    """Primes <= limit (Eratosthenes, cached)."""
    global _sieve, _sieve_limit
    if limit > _sieve_limit:
        flags = bytearray(b"\x01") * (limit + 1)
        flags[0:2] = b"\x00\x00"
        for p in range(2, isqrt(limit) + 1):
            if flags[p]:
                flags[p * p :: p] = bytes(len(range(p * p, limit + 1, p)))
        _sieve = [i for i, v in enumerate(flags) if v]
        _sieve_limit = limit
    return _sieve[: bisect_right(_sieve, limit)]


@dataclass(frozen=True)
class FactorBudget:
    """Work limits for :func:`factorize`."""

    trial_bound: int = 10**6
    rho_iterations: int = 10**6
    prime_rounds: int = 40


@dataclass
class Factorization:
    """Prime factorization of |n|, possibly partial.

    ``factors`` is sorted by prime; ``cofactor`` is the part that could not be
    split within budget (1 when the factorization is complete).
    """

    n: int
    factors: list[tuple[int, int]] = field(default_factory=list)
    cofactor: int = 1

    @property
    def complete(self) -> bool:
        return self.cofactor == 1

    def value(self) -> int:
        out = self.cofactor
        for p, e in self.factors:
            out *= p**e
        return out

    def as_dict(self) -> dict[int, int]:
        return dict(self.factors)


def _brent_split(n: int, budget: int, rng: random.Random) -> tuple[int | None, int]:
    """One Pollard-Brent attempt. Returns (nontrivial factor or None, iterations used)."""
    y, c, m = rng.randrange(1, n), rng.randrange(1, n), 128
    g = r = q = 1
    used = 0
    x = ys = y
    while g == 1:
        x = y
        for _ in range(r):
            y = (y * y + c) % n
        used += r
        k = 0
        while k < r and g == 1:
            ys = y
            for _ in range(min(m, r - k)):
                y = (y * y + c) % n
                q = q * abs(x - y) % n
            g = gcd(q, n)
            k += m
        used += min(r, k)
        r *= 2
        if used > budget and g == 1:
            return None, used
    if g == n:
        # Backtrack one step at a time from the last saved position.
        while True:
            ys = (ys * ys + c) % n
            g = gcd(abs(x - ys), n)
            if g > 1:
                break
    return (g if g != n else None), used


def factorize(n: int, budget: FactorBudget | None = None) -> Factorization:
    """Factor |n| by trial division, then Pollard-Brent rho.

    Incompleteness is reported in-band: when the rho iteration cap is spent
    the unsplit composite part is left in ``cofactor``. The random stream is
    seeded from ``n`` so results are reproducible.
    """
    if n == 0:
        raise ValueError("cannot factor zero")
    budget = budget or FactorBudget()
    m = abs(n)
    found: dict[int, int] = {}

    bound = budget.trial_bound
    for p in small_primes(bound):
        if p * p > m:
            bound = p  # everything left is 1 or a single prime
            break
        if m % p == 0:
            e = 0
            while m % p == 0:
                m //= p
                e += 1
            found[p] = e
    if 1 < m < bound * bound:
        found[m] = found.get(m, 0) + 1
        m = 1

    rng = random.Random(abs(n))
    pending = [m] if m > 1 else []
    leftover = 1
    remaining = budget.rho_iterations
    while pending:
        k = pending.pop()
        if is_probable_prime(k, budget.prime_rounds):
            found[k] = found.get(k, 0) + 1
            continue
        r = is_perfect_square(k)
        if r is not None:
            pending.extend((r, r))
            continue
        split = None
        while split is None and remaining > 0:
            split, used = _brent_split(k, remaining, rng)
            remaining -= used
        if split is None:
            leftover *= k
            continue
        pending.extend((split, k // split))

    return Factorization(n=abs(n), factors=sorted(found.items()), cofactor=leftover)


def prime_factor_in_classes(n: int, classes, budget: FactorBudget | None = None) -> int | None:
    """Smallest prime factor p of |n| with p mod 12 in ``classes``, or None.

    Only primes recovered by :func:`factorize` are considered; below the trial
    bound this is exact.
    """
    classes = frozenset(classes)
    if not classes:
        raise ValueError("classes must be nonempty")
    if any(gcd(c, 12) != 1 for c in classes):
        raise ValueError(f"residue classes must be coprime to 12: {sorted(classes)}")
    if abs(n) <= 1:
        raise ValueError(f"need |n| > 1, got {n}")
    for p, _ in factorize(n, budget).factors:
        if p % 12 in classes:
            return p
    return None
