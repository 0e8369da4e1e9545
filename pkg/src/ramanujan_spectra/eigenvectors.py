"""Root-of-unity eigenvectors of A_q, X and B_q, verified exactly."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .cyclotomic import CycloElem, cyclo_matmul, is_zero_array, root_power
from .errors import DomainError, GuardError
from .matrices import build_matrix
from .numtheory import euler_phi, mod_inverse, phi_tilde, totient_sums
from .spectral import VerificationReport, timed

MAX_CIRCULANT_Q = 24
MAX_CIRCULANT_SUM_Q = 5
MAX_KLOOSTERMAN_Q = 24


@dataclass(frozen=True)
class RootVector:
    """Vector whose p-th entry (p = 0..d-1) is zeta_order ** (index * (p + offset)).

    ``offset=0`` gives the circulant eigenvector v_j = (1, w, ..., w^{d-1});
    ``offset=1`` gives u_j = (w, w^2, ..., w^d).
    """

    dimension: int
    order: int
    index: int
    offset: int = 0

    def exponents(self) -> np.ndarray:
        return (self.index * (np.arange(self.dimension) + self.offset)) % self.order

    def entries(self) -> list[CycloElem]:
        return [root_power(self.order, int(e)) for e in self.exponents()]

    def coeffs(self) -> np.ndarray:
        """One-hot coefficient array of shape (dimension, order)."""
        out = np.zeros((self.dimension, self.order), dtype=np.int64)
        out[np.arange(self.dimension), self.exponents()] = 1
        return out

    @property
    def period(self) -> int:
        return self.order // math.gcd(self.index, self.order)


def circulant_eigvec(d: int, j: int) -> RootVector:
    if not 1 <= j <= d:
        raise DomainError(f"index j must lie in [1, {d}], got {j}")
    return RootVector(d, d, j, 0)


def kloosterman_eigvec(q: int, j: int) -> RootVector:
    if not 1 <= j <= q:
        raise DomainError(f"index j must lie in [1, {q}], got {j}")
    return RootVector(q, q, j, 1)


def _apply(matrix_coeffs: np.ndarray, vec: np.ndarray) -> np.ndarray:
    return cyclo_matmul(matrix_coeffs, vec[:, None, :])[:, 0, :]


def _int_as_cyclo(entries: np.ndarray, order: int) -> np.ndarray:
    out = np.zeros(entries.shape + (order,), dtype=np.int64)
    out[..., 0] = entries
    return out


def verify_circulant_relations(kind: str, param: int) -> VerificationReport:
    """Check M v_j = lambda_j v_j exactly for every j, and count lambda_j = c."""
    if kind == "Aq":
        if param > MAX_CIRCULANT_Q:
            raise GuardError("q", param, MAX_CIRCULANT_Q)
    elif kind == "X":
        if param > MAX_CIRCULANT_SUM_Q:
            raise GuardError("Q", param, MAX_CIRCULANT_SUM_Q)
    else:
        raise DomainError(f"circulant relations apply to Aq or X, not {kind!r}")
    matrix = build_matrix(kind, param)
    d = c = matrix.dimension
    report = VerificationReport("circulant_eigvecs", {"kind": kind, "param": param})
    with timed(report):
        mc = _int_as_cyclo(matrix.entries, d)
        failures = []
        nonzero = 0
        for j in range(1, d + 1):
            v = circulant_eigvec(d, j)
            if kind == "Aq":
                eigen = c if math.gcd(j, d) == 1 else 0
            else:
                eigen = c if v.period <= param else 0
            nonzero += eigen == c
            vc = v.coeffs()
            residual = _apply(mc, vc) - eigen * vc
            bad = np.nonzero(~is_zero_array(residual, d))[0]
            if bad.size:
                failures.append({"j": j, "rows": (bad + 1).tolist()})
            # v_j repeats with period d / gcd(j, d)
            ex = v.exponents()
            if not np.array_equal(ex, np.tile(ex[: v.period], d // v.period)):
                failures.append({"j": j, "period": v.period})
        expected = euler_phi(param) if kind == "Aq" else totient_sums(param)[0]
        counted = report.compare("nonzero_eigen_count", nonzero, expected)
        report.details["failures"] = failures
        report.passed = counted and not failures
        report.tag("exact")
    return report


def verify_kloosterman_relations(q: int) -> VerificationReport:
    """The three eigenvector cases for B_q, including B_q u_j = q u_{-j*}."""
    if q > MAX_KLOOSTERMAN_Q:
        raise GuardError("q", q, MAX_KLOOSTERMAN_Q)
    matrix = build_matrix("Bq", q)
    report = VerificationReport("kloosterman_eigvecs", {"q": q})
    with timed(report):
        bc = matrix.dense_coeffs()
        u = {j: kloosterman_eigvec(q, j).coeffs() for j in range(1, q + 1)}
        bu = {j: _apply(bc, u[j]) for j in u}

        def zero(vec) -> bool:
            return bool(np.all(is_zero_array(vec, q)))

        failures = []
        kernel = fixed = 0
        pairs = set()
        for j in range(1, q + 1):
            if math.gcd(j, q) > 1:
                kernel += 1
                if not zero(bu[j]):
                    failures.append({"j": j, "case": "kernel"})
                continue
            partner = (-mod_inverse(j, q)) % q or q
            if partner == j:
                fixed += 1
                if not zero(bu[j] - q * u[j]):
                    failures.append({"j": j, "case": "fixed"})
                continue
            pairs.add((min(j, partner), max(j, partner)))
            plus, minus = u[j] + u[partner], u[j] - u[partner]
            checks = {
                "swap": zero(bu[j] - q * u[partner]),
                "plus": zero(bu[j] + bu[partner] - q * plus),
                "minus": zero(bu[j] - bu[partner] + q * minus),
            }
            for name, ok in checks.items():
                if not ok:
                    failures.append({"j": j, "case": name})
        phi, pt = euler_phi(q), phi_tilde(q)
        ok = [
            report.compare("kernel_count", kernel, q - phi),
            report.compare("fixed_count", fixed, pt),
            report.compare("plus_eigvecs", fixed + len(pairs), (phi + pt) // 2),
            report.compare("minus_eigvecs", len(pairs), (phi - pt) // 2),
        ]
        if q > 2:
            ok.append(report.compare("parity", (phi - pt) % 2, 0))
        if not pairs:
            report.tag("vacuous")
        report.details["failures"] = failures
        report.passed = all(ok) and not failures
        report.tag("exact")
    return report
