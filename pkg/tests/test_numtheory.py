import math

import pytest
import sympy
from hypothesis import given, strategies as st

from conftest import brute_phi, brute_tau
from ramanujan_spectra.errors import DomainError, GuardError, NotInvertibleError
from ramanujan_spectra.numtheory import (
    divisors,
    euler_phi,
    factorize,
    lcm_range,
    mobius,
    mod_inverse,
    phi_tilde,
    tau,
    totient_sums,
    totient_summary,
)


@pytest.mark.parametrize("n, expected", [(1, []), (12, [(2, 2), (3, 1)]), (840, [(2, 3), (3, 1), (5, 1), (7, 1)])])
def test_factorize_examples(n, expected):
    assert factorize(n) == expected


def test_factorize_rejects_zero():
    with pytest.raises(DomainError):
        factorize(0)


@given(st.integers(min_value=1, max_value=10**12))
def test_factorize_reconstructs(n):
    fac = factorize(n)
    assert math.prod(p**e for p, e in fac) == n
    primes = [p for p, _ in fac]
    assert primes == sorted(set(primes))
    assert all(sympy.isprime(p) and e >= 1 for p, e in fac)


def test_factorize_large_semiprime():
    assert factorize(1000003 * 999983) == [(999983, 1), (1000003, 1)]


@pytest.mark.parametrize("n, expected", [(1, 1), (5, 4), (4, 2)])
def test_euler_phi_examples(n, expected):
    assert euler_phi(n) == expected


@pytest.mark.parametrize("n, expected", [(1, 1), (6, 1), (12, 0)])
def test_mobius_examples(n, expected):
    assert mobius(n) == expected


@pytest.mark.parametrize("n, expected", [(1, 1), (6, 4), (840, 32)])
def test_tau_examples(n, expected):
    assert tau(n) == expected


def test_phi_tau_mobius_match_brute_force():
    for n in range(1, 1001):
        assert euler_phi(n) == brute_phi(n)
        assert tau(n) == brute_tau(n)
        assert mobius(n) == sympy.mobius(n)


def test_divisors():
    assert divisors(12) == [1, 2, 3, 4, 6, 12]
    assert divisors(1) == [1]


@pytest.mark.parametrize("k, q, expected", [(3, 7, 5), (1, 1, 1), (4, 9, 7)])
def test_mod_inverse_examples(k, q, expected):
    assert mod_inverse(k, q) == expected


def test_mod_inverse_not_invertible():
    with pytest.raises(NotInvertibleError):
        mod_inverse(6, 9)


def test_mod_inverse_round_trip():
    for q in range(1, 201):
        for k in range(1, q + 1):
            if math.gcd(k, q) == 1:
                inv = mod_inverse(k, q)
                assert 1 <= inv <= q
                assert (k * inv - 1) % q == 0
                assert mod_inverse(inv, q) % q == k % q


@pytest.mark.parametrize("Q, expected", [(1, 1), (3, 6), (8, 840)])
def test_lcm_range_examples(Q, expected):
    assert lcm_range(Q) == expected


def test_lcm_range_divisible_and_guarded():
    for Q in range(1, 41):
        x = lcm_range(Q)
        assert all(x % q == 0 for q in range(1, Q + 1))
    with pytest.raises(GuardError, match="dimension guard exceeded"):
        lcm_range(41)


@pytest.mark.parametrize("q, expected", [(5, 2), (4, 0), (10, 2), (1, 1), (2, 1)])
def test_phi_tilde_examples(q, expected):
    assert phi_tilde(q, "direct") == expected
    assert phi_tilde(q, "multiplicative") == expected


def test_phi_tilde_methods_agree_and_support():
    for q in range(1, 5001):
        direct = phi_tilde(q, "direct")
        assert direct == phi_tilde(q, "multiplicative")
        blocked = q % 4 == 0 or any(p % 4 == 3 for p, _ in factorize(q))
        assert (direct > 0) == (not blocked)


def test_phi_tilde_unknown_method():
    with pytest.raises(DomainError):
        phi_tilde(5, "magic")


@pytest.mark.parametrize("Q, expected", [(1, (1, 1)), (3, (4, 2)), (8, (22, 4))])
def test_totient_sums(Q, expected):
    # Q=8 oracle: direct summation 1+1+0+0+2+0+0+0 = 4
    direct = (sum(brute_phi(q) for q in range(1, Q + 1)),
              sum(phi_tilde(q, "direct") for q in range(1, Q + 1)))
    assert direct == expected
    assert totient_sums(Q) == expected


def test_totient_summary_invariants():
    for q in range(1, 300):
        s = totient_summary(q)
        assert 0 <= s.phi_tilde <= s.phi <= q
        if q > 2:
            assert (s.phi - s.phi_tilde) % 2 == 0
