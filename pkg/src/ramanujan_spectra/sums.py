"""Ramanujan and Kloosterman sums, exact (cyclotomic) and floating."""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .cyclotomic import CycloElem, as_integer, as_integer_array, to_float
from .errors import DomainError, GuardError
from .numtheory import euler_phi, mobius, mod_inverse, tau

MAX_WEIL_Q = 200


@lru_cache(maxsize=None)
def units(q: int) -> tuple[int, ...]:
    """Residues in ``[1, q]`` coprime to ``q``."""
    return tuple(k for k in range(1, q + 1) if math.gcd(k, q) == 1)


@lru_cache(maxsize=None)
def unit_inverses(q: int) -> tuple[int, ...]:
    return tuple(mod_inverse(k, q) for k in units(q))


def _check_modulus(q: int) -> None:
    if not isinstance(q, int) or q < 1:
        raise DomainError(f"modulus must be a positive integer, got {q!r}")


def ramanujan_element(q: int, n: int) -> CycloElem:
    """The defining sum of c_q(n) as an element of Z[zeta_q]."""
    _check_modulus(q)
    coeffs = [0] * q
    for k in units(q):
        coeffs[(k * n) % q] += 1
    return CycloElem(q, tuple(coeffs))


@lru_cache(maxsize=None)
def ramanujan_table(q: int) -> tuple[int, ...]:
    """``(c_q(0), ..., c_q(q-1))`` from the defining sums, certified integral."""
    _check_modulus(q)
    u = np.array(units(q), dtype=np.int64)
    n = np.arange(q, dtype=np.int64)
    exps = (n[:, None] * u[None, :]) % q
    coeffs = np.zeros((q, q), dtype=np.int64)
    np.add.at(coeffs, (np.repeat(n, u.size), exps.ravel()), 1)
    vals = as_integer_array(coeffs, q)
    if vals is None:
        raise ArithmeticError(f"Ramanujan sums for q={q} are not integral")
    return tuple(int(v) for v in vals)


def ramanujan(q: int, n: int) -> int:
    """c_q(n), evaluated through its defining sum of roots of unity."""
    _check_modulus(q)
    return ramanujan_table(q)[n % q]


def ramanujan_holder(q: int, n: int) -> int:
    """Closed form mu(q/g) phi(q) / phi(q/g) with g = gcd(n, q); oracle only."""
    _check_modulus(q)
    g = math.gcd(n, q)  # gcd(0, q) == q
    r = q // g
    return mobius(r) * euler_phi(q) // euler_phi(r)


@dataclass(frozen=True)
class RamanujanValue:
    q: int
    n: int
    value: int


@dataclass(frozen=True)
class KloostermanValue:
    q: int
    m: int
    n: int
    exact: CycloElem
    approx: float


def kloosterman_element(q: int, m: int, n: int) -> CycloElem:
    _check_modulus(q)
    coeffs = [0] * q
    for k, kinv in zip(units(q), unit_inverses(q)):
        coeffs[(m * k + n * kinv) % q] += 1
    return CycloElem(q, tuple(coeffs))


def kloosterman(q: int, m: int, n: int) -> KloostermanValue:
    exact = kloosterman_element(q, m, n)
    return KloostermanValue(q, m, n, exact, to_float(exact).real)


def kloosterman_coeff_table(q: int) -> np.ndarray:
    """Coefficient array ``T[m-1, n-1, :]`` of S(m, n; q) for ``1 <= m, n <= q``."""
    _check_modulus(q)
    u = np.array(units(q), dtype=np.int64)
    ui = np.array(unit_inverses(q), dtype=np.int64)
    idx = np.arange(1, q + 1, dtype=np.int64)
    exps = (idx[:, None, None] * u[None, None, :] + idx[None, :, None] * ui[None, None, :]) % q
    out = np.zeros((q, q, q), dtype=np.int64)
    mm, nn = np.meshgrid(np.arange(q), np.arange(q), indexing="ij")
    rows = np.repeat(mm.ravel(), u.size)
    cols = np.repeat(nn.ravel(), u.size)
    np.add.at(out, (rows, cols, exps.ravel()), 1)
    return out


def weil_check(q: int) -> tuple[bool, float]:
    """Check |S(m,n;q)| <= tau(q) gcd(m,n,q) sqrt(q) for all 1 <= m, n <= q.

    Returns ``(all_pass, worst_ratio)`` where the ratio is |S| / bound.
    """
    _check_modulus(q)
    if q > MAX_WEIL_Q:
        raise GuardError("q", q, MAX_WEIL_Q)
    table = kloosterman_coeff_table(q)
    values = (table.astype(np.float64) @ np.exp(2j * np.pi * np.arange(q) / q)).real
    idx = np.arange(1, q + 1)
    g = np.gcd(np.gcd.outer(idx, idx), q)
    bound = tau(q) * g * math.sqrt(q)
    ok = bool(np.all(np.abs(values) <= bound + 1e-9))
    return ok, float(np.max(np.abs(values) / bound))


def certify_integer(elem: CycloElem) -> int:
    val = as_integer(elem)
    if val is None:
        raise ArithmeticError(f"{elem!r} is not a rational integer")
    return val
