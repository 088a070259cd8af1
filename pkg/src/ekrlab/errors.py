"""Exception types shared across the package."""


class EkrError(Exception):
    """Base class for every error raised deliberately by ekrlab."""


class BudgetExceeded(EkrError):
    """An enumeration or materialization would exceed its configured cap."""


class CertificateFailure(EkrError):
    """A computed certificate contradicts one of its own consistency checks."""


class NonRationalEigenvalues(CertificateFailure):
    """The characteristic polynomial keeps a factor without rational roots."""

    def __init__(self, factor):
        self.factor = factor
        super().__init__(f"non-rational eigenvalues present; residual factor {factor}")
