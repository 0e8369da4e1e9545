"""Elementary multiplicative number theory on small moduli."""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

from .errors import DomainError, GuardError, NotInvertibleError

MAX_FACTOR_INPUT = 2**63 - 1
MAX_LCM_RANGE = 40

Factorization = list[tuple[int, int]]


def _check_positive(n: int, name: str = "n") -> None:
    if not isinstance(n, int) or isinstance(n, bool):
        raise DomainError(f"{name} must be an integer, got {n!r}")
    if n < 1:
        raise DomainError(f"{name} must be >= 1, got {n}")


@lru_cache(maxsize=8192)
def _factor_cached(n: int) -> tuple[tuple[int, int], ...]:
    out = []
    for p in (2, 3):
        e = 0
        while n % p == 0:
            n //= p
            e += 1
        if e:
            out.append((p, e))
    p = 5
    step = 2
    while p * p <= n:
        e = 0
        while n % p == 0:
            n //= p
            e += 1
        if e:
            out.append((p, e))
        p += step
        step = 6 - step
    if n > 1:
        out.append((n, 1))
    return tuple(out)


def factorize(n: int) -> Factorization:
    """Prime factorization of ``n`` by trial division, ascending by prime.

    >>> factorize(12)
    [(2, 2), (3, 1)]
    """
    _check_positive(n)
    if n > MAX_FACTOR_INPUT:
        raise DomainError(f"n must be < 2**63, got {n}")
    return list(_factor_cached(n))


def euler_phi(n: int) -> int:
    result = n
    for p, _ in factorize(n):
        result -= result // p
    return result


def mobius(n: int) -> int:
    fac = factorize(n)
    if any(e > 1 for _, e in fac):
        return 0
    return -1 if len(fac) % 2 else 1


def tau(n: int) -> int:
    return math.prod(e + 1 for _, e in factorize(n))


def divisors(n: int) -> list[int]:
    divs = [1]
    for p, e in factorize(n):
        divs = [d * p**k for d in divs for k in range(e + 1)]
    return sorted(divs)


def mod_inverse(k: int, q: int) -> int:
    """Inverse of ``k`` modulo ``q`` as a residue in ``[1, q]``."""
    _check_positive(q, "q")
    if math.gcd(k, q) != 1:
        raise NotInvertibleError(f"{k} is not invertible modulo {q}")
    return pow(k, -1, q) or q


def lcm_range(Q: int) -> int:
    """Least common multiple of ``1..Q``."""
    _check_positive(Q, "Q")
    if Q > MAX_LCM_RANGE:
        raise GuardError("Q", Q, MAX_LCM_RANGE)
    return math.lcm(*range(1, Q + 1))


def _phi_tilde_prime_power(p: int, e: int) -> int:
    if p == 2:
        return 1 if e == 1 else 0
    return 2 if p % 4 == 1 else 0


def phi_tilde(q: int, method: str = "multiplicative") -> int:
    """Number of units ``k`` mod ``q`` with ``k**2 = -1 (mod q)``.

    ``method="direct"`` counts residues; ``"multiplicative"`` multiplies the
    prime-power values. ``phi_tilde(1) == 1``.
    """
    _check_positive(q, "q")
    if method == "direct":
        return sum(1 for k in range(1, q + 1) if (k * k + 1) % q == 0 and math.gcd(k, q) == 1)
    if method == "multiplicative":
        return math.prod(_phi_tilde_prime_power(p, e) for p, e in factorize(q))
    raise DomainError(f"unknown method {method!r}")


def totient_sums(Q: int) -> tuple[int, int]:
    """Partial sums ``(sum phi(q), sum phi_tilde(q))`` over ``q <= Q``."""
    _check_positive(Q, "Q")
    Phi = sum(euler_phi(q) for q in range(1, Q + 1))
    PhiTilde = sum(phi_tilde(q) for q in range(1, Q + 1))
    return Phi, PhiTilde


@dataclass(frozen=True)
class TotientSummary:
    q: int
    phi: int
    phi_tilde: int
    tau: int


def totient_summary(q: int) -> TotientSummary:
    return TotientSummary(q, euler_phi(q), phi_tilde(q), tau(q))
