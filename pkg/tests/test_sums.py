import math

import numpy as np
import pytest

from ramanujan_spectra.cyclotomic import as_integer, is_zero
from ramanujan_spectra.errors import GuardError
from ramanujan_spectra.numtheory import euler_phi, tau
from ramanujan_spectra.sums import (
    kloosterman,
    kloosterman_coeff_table,
    ramanujan,
    ramanujan_element,
    ramanujan_holder,
    weil_check,
)


@pytest.mark.parametrize("q, n, expected", [(5, 0, 4), (2, 1, -1), (6, 2, -1)])
def test_ramanujan_examples(q, n, expected):
    assert ramanujan(q, n) == expected


@pytest.mark.parametrize("q, n, expected", [(7, 0, 6), (4, 2, -2), (9, 3, -3)])
def test_holder_examples(q, n, expected):
    assert ramanujan_holder(q, n) == expected


def test_ramanujan_matches_holder_periodic_even():
    for q in range(1, 121):
        for n in range(-q, 2 * q + 1):
            v = ramanujan(q, n)
            assert v == ramanujan_holder(q, n)
            assert v == ramanujan(q, n % q) == ramanujan(q, -n)


def test_ramanujan_full_period_sums_to_zero():
    for q in range(2, 201):
        assert sum(ramanujan(q, k) for k in range(1, q + 1)) == 0
    assert ramanujan(1, 1) == 1


def test_ramanujan_element_is_integral():
    assert as_integer(ramanujan_element(12, 5)) == ramanujan(12, 5)


def test_ramanujan_float_oracle():
    for q in (7, 12, 30):
        for n in range(q):
            direct = sum(np.exp(2j * np.pi * k * n / q) for k in range(1, q + 1) if math.gcd(k, q) == 1)
            assert abs(direct - ramanujan(q, n)) < 1e-9


@pytest.mark.parametrize("q, m, n, expected", [(2, 1, 1, 1), (3, 1, 2, 2), (5, 5, 5, 4)])
def test_kloosterman_examples(q, m, n, expected):
    kv = kloosterman(q, m, n)
    assert as_integer(kv.exact) == expected
    assert abs(kv.approx - expected) < 1e-12


def test_kloosterman_real_symmetric_periodic():
    for q in range(1, 41):
        for m in range(1, q + 1):
            for n in range(1, q + 1):
                s = kloosterman(q, m, n).exact
                assert is_zero(s - s.conjugate())
                assert s == kloosterman(q, n, m).exact
                assert s == kloosterman(q, m + q, n - 2 * q).exact


def test_kloosterman_reduces_to_ramanujan():
    for q in range(1, 61):
        for m in range(0, q + 1):
            assert as_integer(kloosterman(q, m, 0).exact) == ramanujan(q, m)
            assert as_integer(kloosterman(q, 0, m).exact) == ramanujan(q, m)


def test_coeff_table_matches_scalar():
    q = 9
    table = kloosterman_coeff_table(q)
    for m in range(1, q + 1):
        for n in range(1, q + 1):
            assert tuple(table[m - 1, n - 1]) == kloosterman(q, m, n).exact.coeffs


def test_weil_examples():
    ok, ratio = weil_check(5)
    assert ok
    # brute-force oracle: worst |S| / bound over all m, n
    oracle = max(
        abs(kloosterman(5, m, n).approx) / (tau(5) * math.gcd(math.gcd(m, n), 5) * math.sqrt(5))
        for m in range(1, 6)
        for n in range(1, 6)
    )
    assert ratio == pytest.approx(oracle)
    assert ratio == pytest.approx((1 + math.sqrt(5)) / (2 * math.sqrt(5)))
    assert weil_check(1) == (True, 1.0)
    assert weil_check(12)[0]
    with pytest.raises(GuardError):
        weil_check(201)


def test_weil_float_oracle_q5():
    worst = max(abs(kloosterman(5, m, n).approx) for m in range(1, 6) for n in range(1, 6))
    assert worst == pytest.approx(4.0)
    assert euler_phi(5) == 4
