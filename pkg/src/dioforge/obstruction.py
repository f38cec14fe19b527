"""Congruence certificates ruling out each fixed x = alpha.

With x fixed the equation becomes the binary form

    F(y, z) = y^2 + z^2 - alpha*y*z + (b - a*alpha^d),

and a certificate is a modulus M for which F has no zero on (Z/M)^2. The
generator mirrors the case split of the insolvability argument (parity and
mod 4, mod 3, the mod 36 refinement, and a prime p = 5, 7 (mod 12) dividing
alpha - 2 for which 3 is a non-residue). The verifier ignores all of that
and simply enumerates residues.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from .diophantine import EquationParams, HypothesisError
from .intmath import jacobi_symbol, prime_factor_in_classes

__all__ = [
    "CaseTag",
    "ObstructionCertificate",
    "CertificateGenerationError",
    "SweepSummary",
    "LADDER",
    "reduced_form_coefficients",
    "form_has_zero_mod",
    "verify_certificate",
    "generate_certificate",
    "sweep",
    "local_solvability",
]

LADDER = (4, 3, 8, 9, 12, 36)
LOCAL_SOLVABILITY_CAP = 210
PRIME_CLASSES = frozenset({5, 7})


class CaseTag(str, Enum):
    EVEN_MOD4 = "EvenMod4"
    MOD3 = "Mod3"
    MOD36_LADDER = "Mod36Ladder"
    PRIME_ALPHA_MINUS_2 = "PrimeFactorOfAlphaMinus2"
    PRIME_ALPHA_MINUS_2_OVER_3 = "PrimeFactorOfAlphaMinus2Over3"


@dataclass(frozen=True)
class ObstructionCertificate:
    alpha: int
    modulus: int
    case_tag: CaseTag
    prime_witness: int | None = None
    nonresidue_witness: int | None = None

    def to_record(self) -> dict:
        return {
            "alpha": self.alpha,
            "modulus": self.modulus,
            "case_tag": self.case_tag.value,
            "prime_witness": self.prime_witness,
            "nonresidue_witness": self.nonresidue_witness,
        }

    @classmethod
    def from_record(cls, rec: dict) -> "ObstructionCertificate":
        return cls(
            alpha=int(rec["alpha"]),
            modulus=int(rec["modulus"]),
            case_tag=CaseTag(rec["case_tag"]),
            prime_witness=rec.get("prime_witness"),
            nonresidue_witness=rec.get("nonresidue_witness"),
        )


class CertificateGenerationError(RuntimeError):
    """No strategy produced a certificate for ``alpha``."""

    def __init__(self, alpha: int, attempted: list[str]):
        super().__init__(f"no obstruction found for alpha={alpha}; tried: {', '.join(attempted)}")
        self.alpha = alpha
        self.attempted = attempted


class CertificateNotAttempted(ValueError):
    """alpha = 5 (mod 12) with r > 1: solutions can exist there, so no certificate is sought."""


def reduced_form_coefficients(params: EquationParams, alpha: int) -> tuple[int, int]:
    """(c1, c0) with F(y, z) = y^2 + z^2 + c1*y*z + c0."""
    return -alpha, params.b - params.a * alpha**params.d


# Above this the full M x M grid is too large to build at once; go row by row.
_GRID_LIMIT = 2048


def form_has_zero_mod(c1: int, c0: int, modulus: int) -> bool:
    """Whether y^2 + z^2 + c1*y*z + c0 = 0 has a solution in (Z/M)^2, by enumeration."""
    m = modulus
    c1, c0 = c1 % m, c0 % m
    r = np.arange(m, dtype=np.int64)
    if m <= _GRID_LIMIT:
        y = r[:, None]
        vals = (y * y % m + r * r % m + (c1 * y % m) * r % m + c0) % m
        return bool((vals == 0).any())
    zsq = r * r % m
    for y in range(m):
        vals = (y * y % m + zsq + (c1 * y % m) * r % m + c0) % m
        if (vals == 0).any():
            return True
    return False


def verify_certificate(params: EquationParams, cert: ObstructionCertificate) -> bool:
    """True iff F has no zero modulo ``cert.modulus``.

    Only (alpha, modulus) matter here; tags and witnesses are not consulted.
    """
    if cert.modulus < 2:
        raise ValueError("certificate modulus must be >= 2")
    c1, c0 = reduced_form_coefficients(params, cert.alpha)
    return not form_has_zero_mod(c1, c0, cert.modulus)


def _ladder_tag(alpha: int, modulus: int) -> CaseTag:
    if modulus == 3:
        return CaseTag.MOD3
    if modulus == 4 and alpha % 2 == 0:
        return CaseTag.EVEN_MOD4
    return CaseTag.MOD36_LADDER


def _require_strict(params: EquationParams) -> None:
    if not params.strict:
        raise HypothesisError("strict-required", "obstruction certificates need strict params")


def generate_certificate(params: EquationParams, alpha: int) -> ObstructionCertificate:
    """Smallest ladder modulus that works, else a prime-factor certificate.

    Odd r > 1 is accepted except for alpha = 5 (mod 12), where the
    generalized equation can have solutions (raises
    :class:`CertificateNotAttempted`).
    """
    _require_strict(params)
    if params.r != 1 and alpha % 12 == 5:
        raise CertificateNotAttempted(f"alpha={alpha} is 5 mod 12 and r={params.r} > 1")

    c1, c0 = reduced_form_coefficients(params, alpha)
    for m in LADDER:
        if not form_has_zero_mod(c1, c0, m):
            return ObstructionCertificate(alpha, m, _ladder_tag(alpha, m))
    attempted = [f"ladder {list(LADDER)}"]

    if alpha % 12 == 9:
        n, tag = alpha - 2, CaseTag.PRIME_ALPHA_MINUS_2
    elif alpha % 36 == 17:
        n, tag = (alpha - 2) // 3, CaseTag.PRIME_ALPHA_MINUS_2_OVER_3
    else:
        raise CertificateGenerationError(alpha, attempted)

    p = prime_factor_in_classes(n, PRIME_CLASSES) if abs(n) > 1 else None
    attempted.append(f"prime factor 5,7 mod 12 of {n}")
    if p is None:
        raise CertificateGenerationError(alpha, attempted)
    cert = ObstructionCertificate(alpha, p, tag, prime_witness=p, nonresidue_witness=(-c0) % p)
    if not verify_certificate(params, cert):
        raise CertificateGenerationError(alpha, attempted + [f"p={p} did not verify"])
    return cert


@dataclass
class SweepSummary:
    certified: int = 0
    failures: list[int] = field(default_factory=list)
    certificates: list[ObstructionCertificate] = field(default_factory=list)


def _sweep_chunk(args) -> tuple[list[ObstructionCertificate], list[int]]:
    params, alphas = args
    certs, failures = [], []
    for alpha in alphas:
        try:
            cert = generate_certificate(params, alpha)
        except CertificateGenerationError:
            failures.append(alpha)
            continue
        if verify_certificate(params, cert):
            certs.append(cert)
        else:
            failures.append(alpha)
    return certs, failures


def sweep(params: EquationParams, alpha_range: tuple[int, int], workers: int = 1) -> SweepSummary:
    """Generate and verify a certificate for every alpha in the inclusive range."""
    _require_strict(params)
    if params.r != 1:
        raise HypothesisError("r-one", f"sweep covers the r = 1 theorem only, got r={params.r}")
    lo, hi = alpha_range
    alphas = list(range(lo, hi + 1))
    workers = max(1, min(workers, len(alphas)))
    if workers == 1:
        parts = [_sweep_chunk((params, alphas))]
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(_sweep_chunk, [(params, alphas[i::workers]) for i in range(workers)]))
    certs = sorted((c for part, _ in parts for c in part), key=lambda c: c.alpha)
    failures = sorted(a for _, part in parts for a in part)
    return SweepSummary(certified=len(certs), failures=failures, certificates=certs)


def local_solvability(params: EquationParams, modulus: int, cap: int = LOCAL_SOLVABILITY_CAP) -> bool:
    """Whether the full three-variable equation has a zero modulo M."""
    if modulus < 2:
        raise ValueError("modulus must be >= 2")
    if modulus > cap:
        raise ValueError(f"modulus {modulus} exceeds cap {cap}")
    return any(
        form_has_zero_mod(*reduced_form_coefficients(params, x), modulus) for x in range(modulus)
    )


def prime_case_consistent(cert: ObstructionCertificate) -> bool:
    """Check the witness bookkeeping of a prime-case certificate."""
    p = cert.prime_witness
    if p is None:
        return False
    n = cert.alpha - 2
    if cert.case_tag is CaseTag.PRIME_ALPHA_MINUS_2_OVER_3:
        if n % 3:
            return False
        n //= 3
    return p % 12 in PRIME_CLASSES and n % p == 0 and jacobi_symbol(3, p) == -1
