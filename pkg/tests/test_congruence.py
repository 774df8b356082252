import pytest

from falsetheta.congruence import (
    ORDER_BUDGET,
    CongruenceClaim,
    InsufficientOrderError,
    builtin_claims,
    build_series,
    check_claim,
    check_claims,
    conjecture_claims,
    default_nmax,
    density_scan,
    required_order,
    theorem2_family,
    unfold,
)
from falsetheta.qfactory import SignedMonomial, false_theta_psi, named_series
from falsetheta.series import invert_naive, series

# First-run regression value for the exploratory density scan of c5 mod 2
# over n < 2000; produced by the recurrence inverse and frozen here.
C5_MOD2_ZEROS_BELOW_2000 = 1495


@pytest.fixture(scope="module")
def c5_mod8():
    return named_series("c5", 8192, 8)


def test_claim_examples(c5_mod8):
    assert check_claim(c5_mod8, CongruenceClaim("c5", 8, 5, 2), 100).passed
    c9 = named_series("c9", 16 * 100 + 12, 2)
    assert check_claim(c9, CongruenceClaim("c9", 16, 12, 2), 100).passed
    r = check_claim(c5_mod8, CongruenceClaim("c5", 8, 0, 2), 10)
    assert not r.passed and r.violations[0] == (0, 1)


def test_claim_validation():
    for args in [(0, 0, 2), (8, 8, 2), (8, -1, 2), (8, 5, 1)]:
        with pytest.raises(ValueError):
            CongruenceClaim("c5", *args)
    with pytest.raises(ValueError):
        CongruenceClaim("c5", 28, 3, 4, exclude_p=9)


def test_insufficient_order():
    s = named_series("c5", 100, 2)
    with pytest.raises(InsufficientOrderError) as info:
        check_claim(s, CongruenceClaim("c5", 8, 5, 2), 20)
    assert info.value.required == 8 * 20 + 5


def test_ring_must_decide_modulus():
    with pytest.raises(ValueError):
        check_claim(named_series("c5", 200, 2), CongruenceClaim("c5", 8, 5, 4), 10)


def test_theorem2_family_examples():
    c = theorem2_family(7, 0)
    assert (c.A, c.B, c.M, c.exclude_p) == (28, 131, 4, 7)
    assert sorted(u.B for u in unfold(c)) == [19, 47, 75, 103, 159, 187]
    assert {u.A for u in unfold(c)} == {196}
    c23 = theorem2_family(23, 0)
    assert (c23.A, c23.B) == (92, 1411) == (4 * 23, (8 * 23**2 + 1) // 3)
    assert (theorem2_family(7, 1).A, theorem2_family(7, 1).B) == (1372, 6403)
    for p in (5, 15, 3):
        with pytest.raises(ValueError):
            theorem2_family(p, 0)


def test_theorem2_instances():
    for p, k, n_max in [(7, 0, 280), (7, 1, 4), (23, 0, 100)]:
        c = theorem2_family(p, k)
        s = named_series("c5", required_order(c, n_max), 4)
        r = check_claim(s, c, n_max)
        assert r.passed
        assert r.skipped == len(range(0, n_max, p))


def test_theorem2_excluded_indices_have_counterexamples():
    c = theorem2_family(7, 0)
    s = named_series("c5", required_order(c, 100), 4)
    bad = [n for n in range(0, 100, 7) if s.coeffs[c.index(n)] % 4]
    assert bad  # the exclusion is not vacuous
    # dropping the exclusion must surface them as violations
    plain = CongruenceClaim("c5", 28 * 7, 131, 4)
    assert not check_claim(s, plain, 14).passed


def test_unfolded_residues_pass(c5_mod8):
    for u in unfold(theorem2_family(7, 0)):
        assert check_claim(c5_mod8, u, 40).passed
    for i in (110, 138, 194):
        assert check_claim(c5_mod8, CongruenceClaim("c5", 196, i, 4), 40).passed


def test_builtin_claims_catalog():
    pairs = builtin_claims()
    assert len(pairs) == 36
    keys = {(c.series_name, c.A, c.B, c.M) for c, _ in pairs}
    assert ("c5", 512, 491, 8) in keys
    assert ("b2", 196, 26, 2) in keys
    assert ("b", 49, 27, 4) in keys
    assert all(required_order(c, n) <= ORDER_BUDGET for c, n in pairs)
    assert all(n == default_nmax(c) and n > 0 for c, n in pairs)


def test_builtin_claims_pass():
    for r in check_claims(builtin_claims()):
        assert r.passed, (r.name, r.violations[:3])


def test_conjecture_claims():
    claims = conjecture_claims()
    assert len(claims) == 14
    assert {c.B for c in claims if c.A == 196} == {110, 138, 194, 19, 47, 75, 103, 159, 187}


def test_subsumption(c5_mod8):
    # a mod-8 claim also holds mod 4 and mod 2
    for c in conjecture_claims():
        if c.M == 8:
            for M in (4, 2):
                weaker = CongruenceClaim(c.series_name, c.A, c.B, M)
                assert check_claim(c5_mod8, weaker, default_nmax(c, 8192)).passed


def test_build_series_uses_lcm_modulus():
    claims = [CongruenceClaim("b2", 32, 31, 4), CongruenceClaim("b2", 32, 19, 2),
              CongruenceClaim("b", 49, 27, 4)]
    s = build_series(claims, 100)
    assert s["b2"].ring.modulus == 4 and s["b"].ring.modulus == 4


def test_open_question_mod4_at_lemma_residues(c5_mod8):
    # c5(196n+s) mod 4 at s in {26, 54, 166} is not asserted; the scan finds
    # counterexamples, so no such claim may be added to the builtin list
    for s in (26, 54, 166):
        assert not check_claim(c5_mod8, CongruenceClaim("c5", 196, s, 4), 40).passed


def test_density_examples(c5_mod8):
    assert density_scan(series([0] * 100), 2, 100) == (100, 1.0)
    count2, frac = density_scan(c5_mod8, 2, 2000)
    count8, _ = density_scan(c5_mod8, 8, 2000)
    assert count8 <= count2
    assert frac == count2 / 2000
    with pytest.raises(InsufficientOrderError):
        density_scan(series([1, 2, 3]), 2, 10)


def test_density_frozen_value_against_recurrence_oracle():
    oracle = invert_naive(false_theta_psi(SignedMonomial(-1, 5), SignedMonomial(1, 1), 1999))
    count = sum(1 for v in oracle.tolist() if v % 2 == 0)
    assert count == C5_MOD2_ZEROS_BELOW_2000
    assert density_scan(named_series("c5", 1999, 2), 2, 2000)[0] == C5_MOD2_ZEROS_BELOW_2000
