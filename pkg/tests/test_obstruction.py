import json

import pytest

from dioforge import obstruction
from dioforge.diophantine import HypothesisError, make_params
from dioforge.intmath import jacobi_symbol
from dioforge.obstruction import (
    LADDER,
    CaseTag,
    CertificateGenerationError,
    CertificateNotAttempted,
    ObstructionCertificate,
    generate_certificate,
    local_solvability,
    prime_case_consistent,
    reduced_form_coefficients,
    sweep,
    verify_certificate,
)

from conftest import naive_solutions


def _brute_has_zero(params, alpha, m):
    c1, c0 = reduced_form_coefficients(params, alpha)
    return any((y * y + z * z + c1 * y * z + c0) % m == 0 for y in range(m) for z in range(m))


def test_reduced_form_examples():
    assert reduced_form_coefficients(make_params(1, 3, 1), 2) == (-2, -3)
    assert reduced_form_coefficients(make_params(1, 3, 1), 0) == (0, 5)
    assert reduced_form_coefficients(make_params(13, 3, 1), 1) == (-1, 88)


def test_form_has_zero_agrees_with_plain_loops():
    for abr in [(1, 3, 1), (13, 3, 3), (25, 9, 1)]:
        p = make_params(*abr)
        for alpha in range(-15, 16):
            for m in (2, 3, 4, 5, 7, 8, 9, 12, 13, 36):
                c1, c0 = reduced_form_coefficients(p, alpha)
                assert obstruction.form_has_zero_mod(c1, c0, m) == _brute_has_zero(p, alpha, m)


def test_form_has_zero_row_path_for_large_moduli(monkeypatch):
    # 2069 = 5 (mod 12) makes 3 a non-residue; 2053 = 1 (mod 12) does not.
    p = make_params(1, 3, 1)
    cases = [(2069, False), (2053, True)]
    for prime, has_zero in cases:
        coeffs = reduced_form_coefficients(p, prime + 2)
        assert obstruction.form_has_zero_mod(*coeffs, prime) is has_zero
    monkeypatch.setattr(obstruction, "_GRID_LIMIT", 10**5)
    for prime, has_zero in cases:
        coeffs = reduced_form_coefficients(p, prime + 2)
        assert obstruction.form_has_zero_mod(*coeffs, prime) is has_zero


@pytest.mark.parametrize("alpha,modulus", [(2, 4), (13, 3), (9, 7)])
def test_verify_examples(alpha, modulus):
    cert = ObstructionCertificate(alpha, modulus, CaseTag.MOD36_LADDER)
    assert verify_certificate(make_params(1, 3, 1), cert)


def test_verify_rejects_non_obstructing_modulus():
    p = make_params(1, 3, 1)
    assert not verify_certificate(p, ObstructionCertificate(9, 4, CaseTag.EVEN_MOD4))
    with pytest.raises(ValueError):
        verify_certificate(p, ObstructionCertificate(2, 1, CaseTag.EVEN_MOD4))


def test_verify_ignores_tags_and_witnesses():
    p = make_params(1, 3, 1)
    base = ObstructionCertificate(9, 7, CaseTag.PRIME_ALPHA_MINUS_2, 7, 3)
    for tag in CaseTag:
        assert verify_certificate(p, ObstructionCertificate(9, 7, tag, None, None))
        assert verify_certificate(p, ObstructionCertificate(9, 7, tag, 11, 5))
    assert verify_certificate(p, base)


def test_generate_examples():
    p = make_params(1, 3, 1)
    c = generate_certificate(p, 2)
    assert (c.modulus, c.case_tag) == (4, CaseTag.EVEN_MOD4)
    c = generate_certificate(p, 9)
    assert (c.modulus, c.case_tag, c.prime_witness, c.nonresidue_witness) == (7, CaseTag.PRIME_ALPHA_MINUS_2, 7, 3)
    c = generate_certificate(p, 17)
    assert (c.modulus, c.case_tag, c.prime_witness) == (5, CaseTag.PRIME_ALPHA_MINUS_2_OVER_3, 5)
    c = generate_certificate(p, 13)
    assert (c.modulus, c.case_tag) == (3, CaseTag.MOD3)


def test_generate_prefers_smallest_ladder_rung():
    p = make_params(13, 3, 1)
    for alpha in range(-300, 301):
        c = generate_certificate(p, alpha)
        if c.prime_witness is None:
            earlier = LADDER[: LADDER.index(c.modulus)]
            assert all(_brute_has_zero(p, alpha, m) for m in earlier)


def test_generate_requires_strict():
    with pytest.raises(HypothesisError):
        generate_certificate(make_params(13, 3, 2, "exploratory"), 2)


def test_odd_r_above_one():
    p = make_params(1, 3, 3)
    with pytest.raises(CertificateNotAttempted):
        generate_certificate(p, 5)
    for alpha in range(-200, 201):
        if alpha % 12 != 5:
            assert verify_certificate(p, generate_certificate(p, alpha))


def test_generation_failure_carries_strategies(monkeypatch):
    monkeypatch.setattr(obstruction, "prime_factor_in_classes", lambda n, classes: None)
    with pytest.raises(CertificateGenerationError) as exc:
        generate_certificate(make_params(1, 3, 1), 9)
    assert exc.value.alpha == 9
    assert any("ladder" in s for s in exc.value.attempted)
    assert any("prime factor" in s for s in exc.value.attempted)


@pytest.mark.parametrize("abr,rng", [((1, 3, 1), (-1000, 1000)), ((13, 3, 1), (-100, 100)), ((1, 9, 1), (-100, 100))])
def test_sweep_examples(abr, rng):
    s = sweep(make_params(*abr), rng)
    assert s.failures == []
    assert s.certified == rng[1] - rng[0] + 1


def test_sweep_workers_agree():
    p = make_params(25, 3, 1)
    assert sweep(p, (-200, 200), workers=1).certificates == sweep(p, (-200, 200), workers=2).certificates


def test_sweep_requires_r_one():
    with pytest.raises(HypothesisError):
        sweep(make_params(1, 3, 3), (0, 10))


def test_prime_certificates_are_consistent():
    for abr in [(1, 3, 1), (13, 3, 1), (25, 3, 1)]:
        for c in sweep(make_params(*abr), (-1000, 1000)).certificates:
            if c.prime_witness is not None:
                assert prime_case_consistent(c)
                assert jacobi_symbol(3, c.prime_witness) == -1
                assert c.nonresidue_witness == 3 % c.prime_witness


def test_even_alpha_always_mod_4():
    for abr in [(1, 3, 1), (13, 3, 1), (1, 9, 1)]:
        for c in sweep(make_params(*abr), (-500, 500)).certificates:
            if c.alpha % 2 == 0:
                assert c.modulus == 4 and c.case_tag is CaseTag.EVEN_MOD4


def test_certificate_implies_no_solutions_with_that_x():
    # Parameters outside the theorem, so some alpha carry solutions.
    p = make_params(1, 3, 3)
    for alpha in range(-25, 26):
        certified = [m for m in range(2, 40) if verify_certificate(p, ObstructionCertificate(alpha, m, CaseTag.MOD3))]
        sols = naive_solutions(p, (alpha, alpha), (-400, 400), (-60, 60))
        if certified:
            assert sols == []
        if sols:
            assert certified == []


def test_certificate_record_round_trip():
    c = generate_certificate(make_params(1, 3, 1), 17)
    rec = json.loads(json.dumps(c.to_record()))
    assert list(rec) == ["alpha", "modulus", "case_tag", "prime_witness", "nonresidue_witness"]
    assert ObstructionCertificate.from_record(rec) == c


@pytest.mark.parametrize("m", [2, 3, 4])
def test_local_solvability_examples(m):
    assert local_solvability(make_params(1, 3, 1), m)


def test_local_solvability_witness_mod_4():
    p = make_params(1, 3, 1)
    assert (p.a * 1 - 0 - 0 + 0 - p.b) % 4 == 0


def test_no_global_modulus_obstructs():
    p = make_params(1, 3, 1)
    assert all(local_solvability(p, m) for m in range(2, 40))


def test_local_solvability_cap():
    with pytest.raises(ValueError):
        local_solvability(make_params(1, 3, 1), 211)
    assert local_solvability(make_params(1, 3, 1), 210)
