"""Reference Kloosterman matrices B_2 .. B_5, stored exactly.

B_2, B_3, B_4 are integer matrices.  Entries of B_5 are written as
``(a, b, den)`` meaning ``(a + b*sqrt(5)) / den``; they are converted into
Z[zeta_5] through ``sqrt(5) = 1 + 2*zeta + 2*zeta^4``.
"""
from __future__ import annotations

import math

import numpy as np

B2 = [[1, -1], [-1, 1]]
B3 = [[-1, 2, -1], [2, -1, -1], [-1, -1, 2]]
B4 = [[-2, 0, 2, 0], [0, 2, 0, -2], [2, 0, -2, 0], [0, -2, 0, 2]]

_LO = (3, -1, 2)  # (3 - sqrt5) / 2
_HI = (3, 1, 2)  # (3 + sqrt5) / 2
_NEG = (-1, -1, 1)  # -1 - sqrt5
_POS = (-1, 1, 1)  # -1 + sqrt5
_M1 = (-1, 0, 1)
_FOUR = (4, 0, 1)

B5 = [
    [_LO, _NEG, _POS, _HI, _M1],
    [_NEG, _HI, _LO, _POS, _M1],
    [_POS, _LO, _HI, _NEG, _M1],
    [_HI, _POS, _NEG, _LO, _M1],
    [_M1, _M1, _M1, _M1, _FOUR],
]

SPECTRA = {
    2: {0: 1, 2: 1},
    3: {0: 1, 3: 1, -3: 1},
    4: {0: 2, 4: 1, -4: 1},
    5: {0: 1, 5: 3, -5: 1},
}

_SQRT5 = np.array([1, 2, 0, 0, 2], dtype=np.int64)


def quadratic_to_cyclo(a: int, b: int, den: int) -> np.ndarray:
    num = b * _SQRT5
    num[0] += a
    if np.any(num % den):
        raise ArithmeticError(f"({a} + {b}*sqrt5)/{den} is not a cyclotomic integer")
    return num // den


def quadratic_value(a: int, b: int, den: int) -> float:
    return (a + b * math.sqrt(5)) / den


def b5_coeffs() -> np.ndarray:
    return np.array([[quadratic_to_cyclo(*e) for e in row] for row in B5])


def b5_floats() -> np.ndarray:
    return np.array([[quadratic_value(*e) for e in row] for row in B5])
