"""Exact arithmetic in the cyclotomic integers Z[zeta_q].

An element is stored in the group ring Z[x]/(x^q - 1): ``coeffs[j]`` multiplies
``zeta_q**j``.  Canonical comparison reduces modulo the q-th cyclotomic
polynomial, which is monic, so integer long division suffices.

Besides the scalar :class:`CycloElem`, the module offers batched numpy kernels
(``reduce_coeffs``, ``is_zero_array``, ``as_integer_array``, ``cyclo_matmul``)
over arrays whose last axis is the coefficient axis.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Optional

import numpy as np

from .errors import DomainError, GuardError, OrderMismatchError
from .numtheory import divisors

MAX_CYCLO_ORDER = 1024

# float64 represents every integer of magnitude < 2**53 exactly
_FLOAT_EXACT = 2**53
_INT64_SAFE = 2**62


@dataclass(frozen=True)
class CycloPoly:
    order: int
    coeffs: tuple[int, ...]  # ascending powers, monic

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __str__(self) -> str:
        terms = []
        for k in range(self.degree, -1, -1):
            c = self.coeffs[k]
            if c == 0:
                continue
            mono = "" if k == 0 else ("x" if k == 1 else f"x^{k}")
            if mono and abs(c) == 1:
                body = mono
            else:
                body = f"{abs(c)}{mono}"
            sign = "-" if c < 0 else "+"
            terms.append((sign, body))
        first_sign, first = terms[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in terms[1:]:
            out += f" {sign} {body}"
        return out


def _poly_divexact(num: list[int], den: tuple[int, ...]) -> list[int]:
    # ascending coefficients; den is monic
    num = list(num)
    dd = len(den) - 1
    quot = [0] * (len(num) - dd)
    for k in range(len(num) - 1, dd - 1, -1):
        c = num[k]
        if c:
            quot[k - dd] = c
            for i, dc in enumerate(den):
                num[k - dd + i] -= c * dc
    if any(num[:dd]):
        raise ArithmeticError("inexact polynomial division")
    return quot


@lru_cache(maxsize=None)
def _cyclo_coeffs(q: int) -> tuple[int, ...]:
    poly = [-1] + [0] * (q - 1) + [1]
    for d in divisors(q)[:-1]:
        poly = _poly_divexact(poly, _cyclo_coeffs(d))
    return tuple(poly)


def cyclo_poly(q: int) -> CycloPoly:
    """The q-th cyclotomic polynomial, by exact division of ``x^q - 1``."""
    if not isinstance(q, int) or q < 1:
        raise DomainError(f"order must be a positive integer, got {q!r}")
    if q > MAX_CYCLO_ORDER:
        raise GuardError("q", q, MAX_CYCLO_ORDER)
    return CycloPoly(q, _cyclo_coeffs(q))


@lru_cache(maxsize=None)
def _reduction_table(q: int) -> tuple[tuple[tuple[int, ...], ...], int]:
    """Rows are ``x^j mod Phi_q`` for j < q, plus the max |entry|."""
    phi = cyclo_poly(q).coeffs
    deg = len(phi) - 1
    rows = []
    cur = [0] * deg
    cur[0] = 1
    for _ in range(q):
        rows.append(tuple(cur))
        # multiply by x and reduce the overflow term
        top = cur[-1]
        cur = [0] + cur[:-1]
        if top:
            cur = [c - top * p for c, p in zip(cur, phi[:deg])]
    biggest = max((abs(v) for row in rows for v in row), default=1)
    return tuple(rows), biggest


def _reduction_matrix(q: int, dtype) -> np.ndarray:
    rows, _ = _reduction_table(q)
    return np.array(rows, dtype=dtype)


def _abs_max(a: np.ndarray) -> int:
    if a.size == 0:
        return 0
    if a.dtype == object:
        return max(abs(int(v)) for v in a.flat)
    return int(np.abs(a).max())


def exact_dot(a: np.ndarray, b: np.ndarray, bound: int):
    """``a @ b`` for integer arrays, exact, given |every partial sum| <= bound."""
    if bound < _FLOAT_EXACT:
        out = np.matmul(a.astype(np.float64), b.astype(np.float64))
        return np.rint(out).astype(np.int64)
    if bound < _INT64_SAFE:
        return np.matmul(a.astype(np.int64), b.astype(np.int64))
    return np.matmul(a.astype(object), b.astype(object))


def reduce_coeffs(coeffs: np.ndarray, q: int) -> np.ndarray:
    """Canonical residues modulo Phi_q along the last axis (length q -> phi(q))."""
    coeffs = np.asarray(coeffs)
    if coeffs.shape[-1] != q:
        raise OrderMismatchError(f"last axis {coeffs.shape[-1]} != order {q}")
    _, biggest = _reduction_table(q)
    flat = coeffs.reshape(-1, q)
    bound = _abs_max(flat) * q * biggest
    red = exact_dot(flat, _reduction_matrix(q, np.int64 if bound < _INT64_SAFE else object), bound)
    return red.reshape(coeffs.shape[:-1] + (red.shape[-1],))


def is_zero_array(coeffs: np.ndarray, q: int) -> np.ndarray:
    red = reduce_coeffs(coeffs, q)
    return ~np.any(red != 0, axis=-1)


def as_integer_array(coeffs: np.ndarray, q: int) -> Optional[np.ndarray]:
    """Integer values of a batch of elements, or None if any is not rational."""
    red = reduce_coeffs(coeffs, q)
    if np.any(red[..., 1:] != 0):
        return None
    return red[..., 0]


def to_float_array(coeffs: np.ndarray, q: int) -> np.ndarray:
    roots = np.exp(2j * np.pi * np.arange(q) / q)
    return np.asarray(coeffs, dtype=np.float64) @ roots


def lift_exponents(coeffs: np.ndarray, q: int, order: int) -> np.ndarray:
    """Re-express elements of Z[zeta_q] in Z[zeta_order] (requires q | order)."""
    if order % q:
        raise OrderMismatchError(f"{q} does not divide {order}")
    out = np.zeros(coeffs.shape[:-1] + (order,), dtype=coeffs.dtype)
    out[..., :: order // q] = coeffs
    return out


def cyclo_matmul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Matrix product of cyclotomic matrices ``(d1, d2, o) @ (d2, d3, o)``.

    Multiplication of entries is cyclic convolution along the last axis; the
    product is carried out as one ordinary matmul per nonzero coefficient
    slice of ``a``, skipping zero slices of ``b``.
    """
    d1, d2, o = a.shape
    d2b, d3, ob = b.shape
    if d2 != d2b:
        raise ValueError(f"inner dimensions differ: {d2} vs {d2b}")
    if o != ob:
        raise OrderMismatchError(f"orders differ: {o} vs {ob}")
    a_slices = [i for i in range(o) if np.any(a[:, :, i])]
    b_slices = np.array([j for j in range(o) if np.any(b[:, :, j])], dtype=np.int64)
    l1_a = _abs_max(np.abs(a).sum(axis=2)) if a.size else 0
    bound = d2 * l1_a * _abs_max(b)
    big = bound >= _INT64_SAFE
    out = np.zeros((d1, d3, o), dtype=object if big else np.int64)
    if not a_slices or b_slices.size == 0:
        return out
    bc = b[:, :, b_slices].reshape(d2, d3 * b_slices.size)
    for i in a_slices:
        prod = exact_dot(a[:, :, i], bc, bound).reshape(d1, d3, b_slices.size)
        targets = (b_slices + i) % o
        # targets are distinct for fixed i
        out[:, :, targets] += prod
    return out


@dataclass(frozen=True, eq=False)
class CycloElem:
    """Immutable element of Z[zeta_order]; equality is exact field equality."""

    order: int
    coeffs: tuple[int, ...]

    def __post_init__(self):
        if self.order < 1:
            raise DomainError(f"order must be >= 1, got {self.order}")
        if len(self.coeffs) != self.order:
            raise DomainError(f"expected {self.order} coefficients, got {len(self.coeffs)}")

    @classmethod
    def from_int(cls, q: int, c: int) -> "CycloElem":
        return cls(q, (c,) + (0,) * (q - 1))

    @classmethod
    def from_array(cls, q: int, arr) -> "CycloElem":
        return cls(q, tuple(int(v) for v in arr))

    def _check(self, other: "CycloElem") -> None:
        if self.order != other.order:
            raise OrderMismatchError(f"orders differ: {self.order} vs {other.order}")

    def _coerce(self, other) -> "CycloElem":
        if isinstance(other, int):
            return CycloElem.from_int(self.order, other)
        if isinstance(other, CycloElem):
            self._check(other)
            return other
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return cyclo_add(self, other)

    __radd__ = __add__

    def __neg__(self):
        return cyclo_scale(self, -1)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return cyclo_add(self, cyclo_scale(other, -1))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return cyclo_scale(self, other)
        if isinstance(other, CycloElem):
            return cyclo_mul(self, other)
        return NotImplemented

    __rmul__ = __mul__

    def __eq__(self, other):
        other = self._coerce(other) if isinstance(other, (int, CycloElem)) else NotImplemented
        if other is NotImplemented:
            return other
        return is_zero(self - other)

    def __hash__(self):
        return hash((self.order, tuple(reduce_coeffs(np.array(self.coeffs, dtype=object), self.order))))

    def conjugate(self) -> "CycloElem":
        q = self.order
        return CycloElem(q, tuple(self.coeffs[(-j) % q] for j in range(q)))

    def __complex__(self):
        return to_float(self)

    def __repr__(self):
        terms = [f"{c}*z^{j}" for j, c in enumerate(self.coeffs) if c]
        return f"CycloElem(q={self.order}: {' + '.join(terms) or '0'})"


def root_power(q: int, e: int) -> CycloElem:
    """``zeta_q ** e`` with the exponent reduced mod q."""
    if q < 1:
        raise DomainError(f"order must be >= 1, got {q}")
    coeffs = [0] * q
    coeffs[e % q] = 1
    return CycloElem(q, tuple(coeffs))


def cyclo_add(a: CycloElem, b: CycloElem) -> CycloElem:
    a._check(b)
    return CycloElem(a.order, tuple(x + y for x, y in zip(a.coeffs, b.coeffs)))


def cyclo_scale(a: CycloElem, c: int) -> CycloElem:
    return CycloElem(a.order, tuple(c * x for x in a.coeffs))


def cyclo_mul(a: CycloElem, b: CycloElem) -> CycloElem:
    a._check(b)
    q = a.order
    out = [0] * q
    nz_b = [(j, y) for j, y in enumerate(b.coeffs) if y]
    for i, x in enumerate(a.coeffs):
        if x:
            for j, y in nz_b:
                out[(i + j) % q] += x * y
    return CycloElem(q, tuple(out))


def is_zero(a: CycloElem) -> bool:
    return bool(is_zero_array(np.array(a.coeffs, dtype=object), a.order))


def as_integer(a: CycloElem) -> Optional[int]:
    """The rational integer equal to ``a``, or None when ``a`` is not one."""
    val = as_integer_array(np.array(a.coeffs, dtype=object), a.order)
    return None if val is None else int(val)


def to_float(a: CycloElem) -> complex:
    """Double-precision value; error is about ``q * max|coeff| * 1e-14``."""
    q = a.order
    return sum((c * cmath.exp(2j * math.pi * j / q) for j, c in enumerate(a.coeffs) if c), 0j)
