"""Exception types raised across the package.

Each error may carry a ``witness`` (basis tuple and values) describing the
first violation found.
"""

from __future__ import annotations

from .linalg import LinalgError, NoSolution, NotBijective, NotWellDefined  # noqa: F401


class AlgdError(Exception):
    def __init__(self, message: str = "", witness=None, law: str | None = None):
        super().__init__(message)
        self.witness = witness
        self.law = law


# hopf-core
class NotAGroup(AlgdError):
    pass


class NotInvertible(AlgdError):
    pass


# algebroid-core
class NotLeftHopf(AlgdError):
    pass


class NotAntiLeftHopf(AlgdError):
    pass


class InternalInconsistency(AlgdError):
    pass


# constructions
class NotModuleAlgebra(AlgdError):
    pass


class CocycleConditionFailed(AlgdError):
    pass


class NotYD(AlgdError):
    pass


class NotBraidedCommutative(AlgdError):
    pass


class NotAssociativeType(AlgdError):
    pass


class CocycleFailed(AlgdError):
    pass


class NotComoduleAlgebra(AlgdError):
    pass


class NotGalois(AlgdError):
    pass


class SubspaceNotClosed(AlgdError):
    pass


class NotUniqueFactorization(AlgdError):
    pass


class NotSubgroup(AlgdError):
    pass


class MeasuringFailed(AlgdError):
    pass


class GammaConditionFailed(AlgdError):
    pass


class NormalizationFailed(AlgdError):
    pass


# cohomology and duality
class Invalid(AlgdError):
    pass


class MissingHopfStructure(AlgdError):
    pass


class SearchSpaceTooLarge(AlgdError):
    def __init__(self, message: str = "", required: int | None = None, limit: int | None = None):
        super().__init__(message)
        self.required = required
        self.limit = limit


class UnsupportedField(AlgdError):
    pass


class NoInverseAntipode(AlgdError):
    pass


class NotLeftFinite(AlgdError):
    pass


class NotRightFinite(AlgdError):
    pass


class NotCounital(AlgdError):
    pass


class NotGrouplike(AlgdError):
    pass


class NotCentralOverBase(AlgdError):
    pass


# cli
class ParseError(AlgdError):
    def __init__(self, message: str = "", line: int | None = None, column: int | None = None):
        loc = f" (line {line}, column {column})" if line is not None else ""
        super().__init__(message + loc)
        self.line = line
        self.column = column


class UnknownReference(AlgdError):
    pass


class ShapeMismatch(AlgdError):
    pass


def fail_from_report(report, exc_type, message: str | None = None):
    """Raise ``exc_type`` for the first failing law of ``report``, if any."""
    bad = report.failures
    if bad:
        first = bad[0]
        raise exc_type(message or f"{report.subject}: law '{first.law}' fails", witness=first.witness, law=first.law)
