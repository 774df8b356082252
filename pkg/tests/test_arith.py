import random
from math import prod

import pytest
from hypothesis import given, strategies as st

from falsetheta.arith import (
    factorize,
    is_prime,
    is_represented,
    legendre,
    nu_p,
    sigma,
    theorem2_index,
    valuation_parity_audit,
    wang_a1,
)
from falsetheta.expr import evaluate


def brute_sigma(n):
    return sum(d for d in range(1, n + 1) if n % d == 0)


def brute_represented(form, N):
    k = 1 if form == "x^2+y^2" else 2
    return any(k * x * x + y * y == N for x in range(N + 1) if k * x * x <= N
               for y in range(N + 1) if y * y <= N)


def test_factorize_examples():
    assert factorize(119) == [(7, 1), (17, 1)]
    assert factorize(1) == []
    assert factorize(8) == [(2, 3)]
    with pytest.raises(ValueError):
        factorize(0)


@given(st.integers(1, 10**9))
def test_factorize_reconstructs(n):
    f = factorize(n)
    assert prod(p**e for p, e in f) == n
    assert all(is_prime(p) for p, _ in f)
    assert [p for p, _ in f] == sorted({p for p, _ in f})


def test_factorize_large_semiprime():
    p, r = 1_000_003, 998_244_353
    assert factorize(p * r) == [(p, 1), (r, 1)]


def test_sigma_against_brute():
    assert [sigma(n) for n in range(1, 300)] == [brute_sigma(n) for n in range(1, 300)]


def test_wang_examples():
    assert [wang_a1(n) for n in range(3)] == [1, 2, 5]


def test_wang_matches_series():
    N = 2000
    s = evaluate("f3^6/f1^2", N).tolist()
    assert [wang_a1(n) for n in range(N + 1)] == s


def test_legendre_examples():
    assert legendre(-1, 7) == -1
    assert legendre(-2, 7) == -1
    assert legendre(14, 7) == 0
    for bad in (2, 9, 1, -7):
        with pytest.raises(ValueError):
            legendre(3, bad)


@pytest.mark.parametrize("p", [7, 23, 31, 47])
def test_legendre_multiplicative(p):
    squares = {x * x % p for x in range(1, p)}
    rng = random.Random(p)
    for _ in range(200):
        a, b = rng.randint(-10**6, 10**6), rng.randint(-10**6, 10**6)
        assert legendre(a, p) * legendre(b, p) == legendre(a * b, p)
        want = 0 if a % p == 0 else (1 if a % p in squares else -1)
        assert legendre(a, p) == want


def test_nu_p_examples():
    assert nu_p(119, 7) == 1
    assert nu_p(10, 3) == 0
    assert nu_p(49, 7) == 2
    with pytest.raises(ValueError):
        nu_p(0, 7)


@given(st.integers(1, 10**12), st.integers(1, 10**12), st.sampled_from([2, 3, 5, 7, 23]))
def test_nu_p_additive(m, n, p):
    assert nu_p(m * n, p) == nu_p(m, p) + nu_p(n, p)


def test_is_represented_examples():
    assert is_represented("x^2+y^2", 5)
    assert not is_represented("2x^2+y^2", 5)
    assert is_represented("2x^2+y^2", 0)
    with pytest.raises(ValueError):
        is_represented("x^2+3y^2", 4)


def test_is_represented_against_brute():
    for form in ("x^2+y^2", "2x^2+y^2"):
        assert [is_represented(form, n) for n in range(400)] == \
               [brute_represented(form, n) for n in range(400)]


@pytest.mark.parametrize("form", ["x^2+y^2", "2x^2+y^2"])
@pytest.mark.parametrize("p", [7, 23])
def test_representable_means_even_valuation(form, p):
    for N in range(1, 5001):
        if N % p == 0 and is_represented(form, N):
            assert nu_p(N, p) % 2 == 0, N


def test_theorem2_index():
    assert theorem2_index(7, 0, 1) == 39
    assert 3 * theorem2_index(7, 0, 1) + 2 == 119
    assert nu_p(3 * theorem2_index(23, 0, 1) + 2, 23) == 1


def test_audit_examples():
    r = valuation_parity_audit(7, 0, 8)
    assert r.passed
    assert r.n_checked == 6 and r.skipped == 2  # n = 0 and n = 7
    assert valuation_parity_audit(23, 0, 2).passed
    assert valuation_parity_audit(7, 1, 50).passed
    with pytest.raises(ValueError):
        valuation_parity_audit(5, 0, 10)
