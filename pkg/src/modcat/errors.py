"""Exception hierarchy shared by every module."""

from __future__ import annotations


class ModcatError(Exception):
    """Base class for all errors raised by modcat."""


class TooLarge(ModcatError):
    """An enumeration would exceed a configured cap."""

    def __init__(self, cap_name: str, value: int, limit: int) -> None:
        super().__init__(f"{cap_name} exceeded: {value} > {limit}")
        self.cap_name = cap_name
        self.value = value
        self.limit = limit


class ValidationError(ModcatError):
    """Input data violates a structural invariant."""


class ParseError(ModcatError):
    def __init__(self, message: str, path: str | None = None, line: int | None = None) -> None:
        where = ""
        if path is not None:
            where = f"{path}:" if line is None else f"{path}:{line}:"
        super().__init__(f"{where} {message}".strip())
        self.path = path
        self.line = line


class NotASubgroup(ModcatError):
    pass


class NotIsotropic(ModcatError):
    pass


class Degenerate(ModcatError):
    pass


class NotARootOfUnity(ModcatError):
    pass


class BadSigma(ModcatError):
    pass


class NonIntegralDims(ModcatError):
    """Frobenius-Perron dimensions are not all integers (outside the supported class)."""


class NotModular(ModcatError):
    pass


class NotNilpotent(ModcatError):
    pass


class DecompositionFailed(ModcatError):
    pass


class PreconditionFailed(ModcatError):
    pass


class TwistNotConstantOnComponent(ModcatError):
    pass


class GradingInconsistent(ModcatError):
    pass


class BadTag(ModcatError):
    pass
