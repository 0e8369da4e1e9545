import numpy as np
import pytest
import sympy

from ramanujan_spectra.errors import DomainError, GuardError
from ramanujan_spectra.matrices import build_matrix
from ramanujan_spectra.numtheory import euler_phi, phi_tilde, totient_sums
from ramanujan_spectra.spectral import (
    count_small_denominators,
    exact_trace,
    large_sieve_identity,
    rank_exact,
    spectrum,
    theorem_multiplicities,
    verify_kernel_sum,
    verify_orthogonality,
    verify_scaled_idempotent,
)


@pytest.mark.parametrize(
    "kind, param, expected",
    [
        ("Aq", 1, {0: 0, 1: 1}),
        ("Aq", 6, {0: 4, 6: 2}),
        ("Bq", 4, {0: 2, 4: 1, -4: 1}),
        ("Bq", 5, {0: 1, 5: 3, -5: 1}),
        ("X", 3, {0: 2, 6: 4}),
        ("Y", 2, {0: 0, 2: 2, -2: 0}),
        ("Y", 3, {0: 2, 6: 3, -6: 1}),
    ],
)
def test_spectrum_examples(kind, param, expected):
    assert spectrum(kind, param).spectrum == expected


def test_spectrum_matches_numpy_eigvalsh():
    # independent oracle: LAPACK eigenvalues rounded to the nearest target
    for kind, param in [("Aq", 12), ("Bq", 13), ("Bq", 20), ("X", 4), ("Y", 4)]:
        rep = spectrum(kind, param)
        eig = np.linalg.eigvalsh(build_matrix(kind, param).floats)
        targets = np.array(sorted(rep.spectrum))
        nearest = targets[np.argmin(np.abs(eig[:, None] - targets[None, :]), axis=1)]
        counts = {int(t): int(np.sum(nearest == t)) for t in targets}
        assert counts == rep.spectrum


def test_spectrum_invariants_for_all_small_params():
    for kind, top in [("Aq", 40), ("Bq", 40), ("X", 6), ("Y", 6)]:
        for p in range(1, top + 1):
            rep = spectrum(kind, p, jacobi_limit=0)
            assert sum(rep.spectrum.values()) == rep.dimension
            assert all(v >= 0 for v in rep.spectrum.values())
            assert rep.spectrum == theorem_multiplicities(kind, p)
            if kind in ("Bq", "Y"):
                c = rep.dimension
                tr = exact_trace(build_matrix(kind, p))
                assert (rep.spectrum[c] - rep.spectrum[-c]) * c == tr


def test_theorem_multiplicities_formula():
    assert theorem_multiplicities("Bq", 13) == {0: 1, 13: 7, -13: 5}
    phi, pt = totient_sums(8)
    assert theorem_multiplicities("Y", 8) == {0: 840 - phi, 840: (phi + pt) // 2, -840: (phi - pt) // 2}
    assert euler_phi(13) == 12 and phi_tilde(13) == 2


def test_scaled_idempotent_paths():
    rep = verify_scaled_idempotent(build_matrix("Aq", 10))
    assert rep.passed and "exact" in rep.details["tags"]
    rep = verify_scaled_idempotent(build_matrix("Bq", 10))
    assert rep.passed and "exact" in rep.details["tags"]
    rep = verify_scaled_idempotent(build_matrix("Y", 7))
    assert rep.passed and "float-only" in rep.details["tags"]
    assert rep.details["max_abs_error"] <= 1e-6 * 420


def test_scaled_idempotent_detects_wrong_scale():
    assert not verify_scaled_idempotent(build_matrix("Aq", 6), c=5).passed
    assert not verify_scaled_idempotent(build_matrix("Bq", 6), c=5).passed


def test_exact_traces():
    assert exact_trace(build_matrix("Aq", 9)) == 9 * 6
    assert exact_trace(build_matrix("Aq", 9), 2) == 81 * 6
    assert exact_trace(build_matrix("Bq", 13)) == 13 * 2
    assert exact_trace(build_matrix("Bq", 13), 2) == 169 * 12
    assert exact_trace(build_matrix("Y", 8)) == 840 * 4
    with pytest.raises(DomainError):
        exact_trace(build_matrix("Aq", 3), 3)


def test_rank_exact_against_sympy():
    for kind, p in [("Aq", 12), ("Aq", 30), ("X", 4)]:
        m = build_matrix(kind, p)
        assert rank_exact(m) == sympy.Matrix(m.entries.tolist()).rank()


def test_rank_exact_rejects_non_idempotent():
    from ramanujan_spectra.matrices import IntMatrix

    with pytest.raises(DomainError):
        rank_exact(IntMatrix("Aq", 2, np.array([[1, 1], [0, 1]])))


@pytest.mark.parametrize("variant", ["cc", "ss", "cs"])
def test_orthogonality_x12(variant):
    for q in (1, 2, 3, 4, 6, 12):
        for r in (1, 2, 3, 4, 6, 12):
            assert verify_orthogonality(12, q, r, variant).passed


def test_orthogonality_distinct_moduli_give_zero():
    rep = verify_orthogonality(12, 3, 4, "cc")
    assert rep.passed and rep.details["zero_matrix"]


def test_orthogonality_guards():
    with pytest.raises(DomainError):
        verify_orthogonality(12, 5, 3, "cc")
    with pytest.raises(GuardError):
        verify_orthogonality(240, 2, 3, "cc")
    with pytest.raises(DomainError):
        verify_orthogonality(12, 2, 3, "xx")


def test_kernel_sum():
    assert verify_kernel_sum(12, 4, 4, 1, 3).details["compared"][0]["left"] == 12
    assert verify_kernel_sum(12, 4, 6, 1, 1).details["compared"][0]["left"] == 0
    with pytest.raises(DomainError):
        verify_kernel_sum(12, 4, 4, 2, 1)


def test_lemma9_counts():
    for Q in range(1, 9):
        assert count_small_denominators(Q).passed
    with pytest.raises(GuardError):
        count_small_denominators(9)


def test_large_sieve_trivial_Q1():
    a = np.array([0.5 + 0.25j])
    rep = large_sieve_identity(1, a)
    assert rep.passed
    assert rep.details["quadratic_form"] == pytest.approx(abs(a.sum()) ** 2)


def test_large_sieve_seeded_and_guarded():
    rep = large_sieve_identity(3, seed=11)
    assert rep.passed
    assert rep.details == large_sieve_identity(3, seed=11).details
    with pytest.raises(GuardError):
        large_sieve_identity(7)
    with pytest.raises(DomainError):
        large_sieve_identity(3, a=np.ones(5))
