"""Registry of checkable claims, each producing a VerificationReport.

A claim runner takes a single integer parameter (or none) and never raises
for a failed identity; failures are reported with ``passed=False``.
"""
from __future__ import annotations

from typing import Callable, Optional

import numpy as np

from . import golden
from .cyclotomic import as_integer_array, is_zero_array
from .eigenvectors import (
    MAX_CIRCULANT_Q,
    MAX_CIRCULANT_SUM_Q,
    MAX_KLOOSTERMAN_Q,
    verify_circulant_relations,
    verify_kloosterman_relations,
)
from .errors import DomainError, VerificationFailed
from .linalg import MAX_CHARPOLY_DIM, char_poly_small, expand_factored
from .matrices import MAX_EXACT_CYCLO_DIM, build_matrix, check_params
from .numtheory import divisors, euler_phi, phi_tilde, totient_sums
from .spectral import (
    VerificationReport,
    count_small_denominators,
    exact_trace,
    spectrum,
    theorem_multiplicities,
    timed,
    verify_kernel_sum,
    verify_orthogonality,
)
from .sums import units, weil_check

ORTHOGONALITY_MODULI = (12, 24, 60)


def _spectrum_claim(claim: str, kind: str, param: int) -> VerificationReport:
    check_params(kind, param)
    report = VerificationReport(claim, {"kind": kind, "param": param})
    with timed(report):
        try:
            spec = spectrum(kind, param)
        except VerificationFailed as exc:
            report.details["failed_step"] = exc.report.to_json()
            return report
        report.details["spectrum"] = spec.to_json()
        report.details["steps"] = [{"claim": c.claim, "pass": c.passed, "tags": c.details.get("tags", [])} for c in spec.checks]
        for c in spec.checks:
            if "max_abs_error" in c.details:
                report.details["float_error"] = c.details["max_abs_error"]
                report.tag("float-only")
        ok = [report.compare("multiplicities", _keys(spec.spectrum), _keys(theorem_multiplicities(kind, param)))]

        c = spec.dimension
        n = euler_phi(param) if kind in ("Aq", "Bq") else totient_sums(param)[0]
        t = phi_tilde(param) if kind in ("Aq", "Bq") else totient_sums(param)[1]
        matrix = build_matrix(kind, param)
        if kind in ("Aq", "X"):
            ok.append(report.compare("trace", exact_trace(matrix), c * n))
            ok.append(report.compare("trace_square", exact_trace(matrix, 2), c * c * n))
            if c <= MAX_CHARPOLY_DIM:
                factored = {0: c - n, c: n}
                ok.append(report.compare("char_poly", char_poly_small(matrix.entries), expand_factored(factored)))
        else:
            ok.append(report.compare("trace", exact_trace(matrix), c * t))
            if c <= MAX_EXACT_CYCLO_DIM:
                ok.append(report.compare("trace_square", exact_trace(matrix, 2), c * c * n))
        report.passed = all(ok)
    return report


def _keys(d: dict) -> dict:
    return {str(k): v for k, v in sorted(d.items())}


def theorem1(q: int) -> VerificationReport:
    return _spectrum_claim("theorem1", "Aq", q)


def theorem2(Q: int) -> VerificationReport:
    return _spectrum_claim("theorem2", "X", Q)


def theorem3(q: int) -> VerificationReport:
    return _spectrum_claim("theorem3", "Bq", q)


def theorem4(Q: int) -> VerificationReport:
    return _spectrum_claim("theorem4", "Y", Q)


def _merge(claim: str, params: dict, reports: list[VerificationReport]) -> VerificationReport:
    out = VerificationReport(claim, params)
    with timed(out):
        failed = [r.params | {"claim": r.claim} for r in reports if not r.passed]
        out.details.update(cases=len(reports), failures=failed)
        out.passed = not failed
    out.elapsed_ms = sum(r.elapsed_ms for r in reports)
    return out


def lemma1(x: int) -> VerificationReport:
    reps = [verify_orthogonality(x, q, r, v) for v in ("cc", "ss") for q in divisors(x) for r in divisors(x)]
    return _merge("lemma1", {"x": x}, reps)


def lemma2(x: int) -> VerificationReport:
    reps = [
        verify_kernel_sum(x, q, r, k, l)
        for q in divisors(x)
        for r in divisors(x)
        for k in units(q)
        for l in units(r)
    ]
    return _merge("lemma2", {"x": x}, reps)


def lemma4(x: int) -> VerificationReport:
    reps = [verify_orthogonality(x, q, r, "cs") for q in divisors(x) for r in divisors(x)]
    return _merge("lemma4", {"x": x}, reps)


def lemma9(Q: int) -> VerificationReport:
    return count_small_denominators(Q)


def corollary1(q: int) -> VerificationReport:
    rep = verify_circulant_relations("Aq", q)
    rep.claim = "corollary1"
    return rep


def corollary2(Q: int) -> VerificationReport:
    rep = verify_circulant_relations("X", Q)
    rep.claim = "corollary2"
    return rep


def corollary3(q: int) -> VerificationReport:
    rep = verify_kloosterman_relations(q)
    rep.claim = "corollary3"
    return rep


def weil(q: int) -> VerificationReport:
    report = VerificationReport("weil", {"q": q})
    with timed(report):
        ok, ratio = weil_check(q)
        report.details["worst_ratio"] = ratio
        report.passed = ok
    return report


def example1(_param: Optional[int] = None) -> VerificationReport:
    """Built B_2..B_5 against the reference matrices and multiplicities."""
    report = VerificationReport("example1", {})
    with timed(report):
        ok = []
        for q, gold in ((2, golden.B2), (3, golden.B3), (4, golden.B4)):
            built = as_integer_array(build_matrix("Bq", q).dense_coeffs(), q)
            ok.append(report.compare(f"B{q}", None if built is None else built.tolist(), gold))
        b5 = build_matrix("Bq", 5)
        diff = b5.dense_coeffs() - golden.b5_coeffs()
        ok.append(report.compare("B5_exact", bool(np.all(is_zero_array(diff, 5))), True))
        err = float(np.max(np.abs(b5.floats - golden.b5_floats())))
        report.details["B5_float_error"] = err
        ok.append(err <= 1e-9)
        for q, expected in golden.SPECTRA.items():
            got = {k: v for k, v in spectrum("Bq", q).spectrum.items() if v}
            ok.append(report.compare(f"spectrum_B{q}", _keys(got), _keys(expected)))
        report.passed = all(ok)
    return report


CLAIMS: dict[str, Callable[..., VerificationReport]] = {
    "corollary1": corollary1,
    "corollary2": corollary2,
    "corollary3": corollary3,
    "example1": example1,
    "lemma1": lemma1,
    "lemma2": lemma2,
    "lemma4": lemma4,
    "lemma9": lemma9,
    "theorem1": theorem1,
    "theorem2": theorem2,
    "theorem3": theorem3,
    "theorem4": theorem4,
    "weil": weil,
}


def run_claim(claim: str, param: Optional[int] = None) -> VerificationReport:
    if claim not in CLAIMS:
        raise DomainError(f"unknown claim {claim!r}; expected one of {sorted(CLAIMS)}")
    if claim == "example1":
        return example1()
    if param is None:
        raise DomainError(f"claim {claim!r} needs --param")
    if claim in ("lemma1", "lemma2", "lemma4") and param < 1:
        raise DomainError(f"x must be >= 1, got {param}")
    return CLAIMS[claim](param)


def all_jobs(max_q: int = 64, max_Q: int = 6) -> list[tuple[str, Optional[int]]]:
    """Every (claim, param) pair run by ``verify --all``, ordered by claim then param."""
    check_params("Aq", max_q)
    check_params("X", max_Q)
    jobs: list[tuple[str, Optional[int]]] = [("example1", None)]
    jobs += [("theorem1", q) for q in range(1, max_q + 1)]
    jobs += [("theorem3", q) for q in range(1, max_q + 1)]
    jobs += [("theorem2", Q) for Q in range(1, max_Q + 1)]
    jobs += [("theorem4", Q) for Q in range(1, max_Q + 1)]
    jobs += [(c, x) for c in ("lemma1", "lemma2", "lemma4") for x in ORTHOGONALITY_MODULI]
    jobs += [("lemma9", Q) for Q in range(1, 9)]
    jobs += [("corollary1", q) for q in range(1, min(max_q, MAX_CIRCULANT_Q) + 1)]
    jobs += [("corollary2", Q) for Q in range(1, min(max_Q, MAX_CIRCULANT_SUM_Q) + 1)]
    jobs += [("corollary3", q) for q in range(1, min(max_q, MAX_KLOOSTERMAN_Q) + 1)]
    jobs += [("weil", q) for q in range(1, min(max_q, 200) + 1)]
    return sorted(jobs, key=lambda j: (j[0], -1 if j[1] is None else j[1]))


def run_all(max_q: int = 64, max_Q: int = 6) -> list[VerificationReport]:
    return [run_claim(c, p) for c, p in all_jobs(max_q, max_Q)]
