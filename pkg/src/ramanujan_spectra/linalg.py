"""Dense linear-algebra kernels: Jacobi eigensolver, modular rank, and a
cofactor-expansion characteristic polynomial."""
from __future__ import annotations

import random
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from sympy import nextprime

from .errors import DomainError, GuardError

MAX_JACOBI_DIM = 1024
MAX_RANK_DIM = 1024
MAX_CHARPOLY_DIM = 10
JACOBI_MAX_SWEEPS = 100
JACOBI_REL_TOL = 1e-12


@dataclass(frozen=True)
class JacobiResult:
    eigenvalues: np.ndarray  # ascending
    off_norm: float  # off-diagonal Frobenius norm at exit
    sweeps: int


@lru_cache(maxsize=None)
def _round_robin(n: int) -> tuple[tuple[np.ndarray, np.ndarray], ...]:
    """Tournament schedule: n-1 rounds of n/2 disjoint pairs covering all pairs."""
    players = list(range(n))
    rounds = []
    for _ in range(n - 1):
        p = np.array([min(players[i], players[n - 1 - i]) for i in range(n // 2)])
        q = np.array([max(players[i], players[n - 1 - i]) for i in range(n // 2)])
        rounds.append((p, q))
        players = [players[0], players[-1]] + players[1:-1]
    return tuple(rounds)


def jacobi_diagonalize(matrix, symmetry_tol: float = 1e-9) -> JacobiResult:
    """Cyclic Jacobi with a parallel (round-robin) ordering of rotations.

    Each round applies n/2 rotations on disjoint index pairs at once, so every
    sweep still annihilates each off-diagonal pair exactly once.
    """
    a = np.array(matrix, dtype=np.float64)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise DomainError("matrix must be square")
    n0 = a.shape[0]
    if n0 > MAX_JACOBI_DIM:
        raise GuardError("dimension", n0, MAX_JACOBI_DIM)
    if n0 and np.max(np.abs(a - a.T)) > symmetry_tol:
        raise DomainError("matrix is not symmetric")
    a = (a + a.T) / 2
    if n0 <= 1:
        return JacobiResult(np.diag(a).copy(), 0.0, 0)
    n = n0 + (n0 % 2)
    if n != n0:
        # a decoupled zero row/column pads to even size; its eigenvalue is dropped below
        a = np.pad(a, ((0, 1), (0, 1)))
    total = np.linalg.norm(a)
    target = JACOBI_REL_TOL * total

    offdiag = ~np.eye(n, dtype=bool)

    def off_norm() -> float:
        # summed directly; subtracting the diagonal from the total cancels badly
        return float(np.sqrt(np.sum(a[offdiag] ** 2)))

    sweeps = 0
    off = off_norm()
    while off >= target and total > 0:
        if sweeps == JACOBI_MAX_SWEEPS:
            raise ArithmeticError(f"Jacobi did not converge in {JACOBI_MAX_SWEEPS} sweeps (off={off:.3e})")
        for p, q in _round_robin(n):
            apq = a[p, q]
            active = np.abs(apq) > 1e-300
            if not np.any(active):
                continue
            app, aqq = a[p, p], a[q, q]
            theta = np.where(active, (aqq - app) / (2 * np.where(active, apq, 1.0)), 0.0)
            t = np.where(active, np.sign(theta) / (np.abs(theta) + np.hypot(theta, 1.0)), 0.0)
            t = np.where(active & (theta == 0), 1.0, t)
            c = 1 / np.sqrt(t * t + 1)
            s = t * c
            rp, rq = a[p, :].copy(), a[q, :].copy()
            a[p, :] = c[:, None] * rp - s[:, None] * rq
            a[q, :] = s[:, None] * rp + c[:, None] * rq
            cp, cq = a[:, p].copy(), a[:, q].copy()
            a[:, p] = cp * c[None, :] - cq * s[None, :]
            a[:, q] = cp * s[None, :] + cq * c[None, :]
        sweeps += 1
        off = off_norm()
    eig = np.sort(np.diag(a)[:n0] if n == n0 else _drop_padding(a, n0))
    return JacobiResult(eig, off, sweeps)


def _drop_padding(a: np.ndarray, n0: int) -> np.ndarray:
    # the padded coordinate never mixes (its couplings are identically 0),
    # but rotations may permute it; drop one zero diagonal value
    diag = list(np.diag(a))
    idx = int(np.argmin(np.abs(diag)))
    del diag[idx]
    return np.array(diag)


def jacobi_eigen(matrix) -> np.ndarray:
    """Eigenvalues of a symmetric matrix, ascending."""
    return jacobi_diagonalize(matrix).eigenvalues


def cluster_eigenvalues(eigs, targets, tol: float) -> dict[int, int]:
    """Assign every eigenvalue to the nearest target within ``tol``.

    Raises ArithmeticError when an eigenvalue is farther than ``tol`` from all
    targets.
    """
    counts = {t: 0 for t in targets}
    tarr = np.array(sorted(targets), dtype=np.float64)
    for v in eigs:
        k = int(np.argmin(np.abs(tarr - v)))
        if abs(tarr[k] - v) > tol:
            raise ArithmeticError(f"eigenvalue {v} not within {tol} of {sorted(targets)}")
        counts[int(tarr[k])] += 1
    return counts


def rank_mod_p(matrix, p: int) -> int:
    """Rank over GF(p) by row reduction; requires p < 2**31."""
    a = np.array(matrix, dtype=object) % p
    a = a.astype(np.int64)
    rows, cols = a.shape
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(a[r:, c])[0]
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            a[[r, piv]] = a[[piv, r]]
        inv = pow(int(a[r, c]), -1, p)
        a[r] = (a[r] * inv) % p
        below = a[r + 1 :, c]
        mask = below != 0
        if np.any(mask):
            sub = a[r + 1 :][mask]
            sub = (sub - (sub[:, c : c + 1] * a[r][None, :]) % p) % p
            block = a[r + 1 :]
            block[mask] = sub
        r += 1
    return r


def random_primes(count: int, seed: int = 0x5EED) -> list[int]:
    """Distinct primes in [2**30, 2**31) chosen from a seeded generator."""
    rng = random.Random(seed)
    out: list[int] = []
    while len(out) < count:
        p = int(nextprime(rng.randrange(2**30, 2**31 - 2**20)))
        if p not in out:
            out.append(p)
    return out


def modular_rank(matrix, primes=None) -> int:
    """Maximum of the GF(p) ranks; a lower bound on the rational rank."""
    a = np.asarray(matrix)
    if a.shape[0] > MAX_RANK_DIM:
        raise GuardError("dimension", a.shape[0], MAX_RANK_DIM)
    primes = primes or random_primes(3)
    return max(rank_mod_p(a, p) for p in primes)


# integer polynomials are lists of coefficients, highest degree first
def _padd(a: list[int], b: list[int]) -> list[int]:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    off = len(a) - len(b)
    for i, v in enumerate(b):
        out[off + i] += v
    return out


def _pmul(a: list[int], b: list[int]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _ptrim(a: list[int]) -> list[int]:
    i = 0
    while i < len(a) - 1 and a[i] == 0:
        i += 1
    return a[i:]


def char_poly_small(matrix) -> list[int]:
    """det(lambda*E - M) by Laplace expansion with memoized minors.

    Coefficients are returned highest degree first.
    """
    m = [[int(v) for v in row] for row in np.asarray(matrix).tolist()]
    n = len(m)
    if n > MAX_CHARPOLY_DIM:
        raise GuardError("dimension", n, MAX_CHARPOLY_DIM)
    if n == 0:
        return [1]

    def entry(i: int, j: int) -> list[int]:
        return [1, -m[i][j]] if i == j else [-m[i][j]]

    @lru_cache(maxsize=None)
    def minor(row: int, cols: int) -> tuple[int, ...]:
        # determinant of rows row..n-1 restricted to column set ``cols``
        if row == n:
            return (1,)
        total = [0]
        sign = 1
        for j in range(n):
            if cols >> j & 1:
                e = entry(row, j)
                if any(e):
                    term = _pmul(e, list(minor(row + 1, cols & ~(1 << j))))
                    total = _padd(total, term if sign > 0 else [-v for v in term])
                sign = -sign
        return tuple(_ptrim(total))

    return list(minor(0, (1 << n) - 1))


def expand_factored(factors: dict[int, int]) -> list[int]:
    """Expand prod (lambda - root)**mult, highest degree first."""
    out = [1]
    for root, mult in sorted(factors.items()):
        for _ in range(mult):
            out = _pmul(out, [1, -root])
    return out
