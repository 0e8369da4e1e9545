"""Exception hierarchy shared by all modules."""


class DomainError(ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class GuardError(DomainError):
    """A size parameter exceeds a configured dimension/cost guard."""

    def __init__(self, name: str, value, limit):
        self.name = name
        self.value = value
        self.limit = limit
        super().__init__(f"dimension guard exceeded: {name}={value} (limit {limit})")


class NotInvertibleError(DomainError):
    pass


class OrderMismatchError(ValueError):
    """Cyclotomic elements of different orders were combined."""


class CertificationError(ArithmeticError):
    """Two independent exact computations disagreed."""


class VerificationFailed(Exception):
    """Raised when a sub-verification of a spectrum derivation fails."""

    def __init__(self, report):
        self.report = report
        super().__init__(f"verification failed: {report.claim} {report.params}")
