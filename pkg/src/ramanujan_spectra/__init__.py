"""Exact Ramanujan/Kloosterman sums and verification of the spectra of the
matrices built from them."""

from .cyclotomic import CycloElem, as_integer, cyclo_poly, is_zero, root_power, to_float
from .errors import CertificationError, DomainError, GuardError, VerificationFailed
from .matrices import CycloMatrix, IntMatrix, build_matrix, export_matrix
from .numtheory import euler_phi, factorize, lcm_range, mobius, mod_inverse, phi_tilde, tau, totient_sums
from .spectral import SpectrumReport, VerificationReport, spectrum
from .sums import kloosterman, ramanujan, ramanujan_holder

__all__ = [
    "CertificationError",
    "CycloElem",
    "CycloMatrix",
    "DomainError",
    "GuardError",
    "IntMatrix",
    "SpectrumReport",
    "VerificationFailed",
    "VerificationReport",
    "as_integer",
    "build_matrix",
    "cyclo_poly",
    "euler_phi",
    "export_matrix",
    "factorize",
    "is_zero",
    "kloosterman",
    "lcm_range",
    "mobius",
    "mod_inverse",
    "phi_tilde",
    "ramanujan",
    "ramanujan_holder",
    "root_power",
    "spectrum",
    "tau",
    "to_float",
    "totient_sums",
]
__version__ = "0.1.0"
