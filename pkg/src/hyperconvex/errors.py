"""Exception hierarchy shared across the package."""

from __future__ import annotations


class HyperconvexError(Exception):
    """Base class for every error raised by this package."""


class DimensionMismatch(HyperconvexError, ValueError):
    pass


class DimensionTooLarge(HyperconvexError, ValueError):
    pass


# --- algebra validation -----------------------------------------------------

class AlgebraError(HyperconvexError, ValueError):
    """Raised when a structure tensor does not define a usable algebra."""


class MalformedTensor(AlgebraError):
    pass


class UnknownAlgebra(AlgebraError):
    pass


class CommutativityViolated(AlgebraError):
    def __init__(self, l: int, k: int, p: int):
        self.index = (l, k, p)
        super().__init__(f"CommutativityViolated({l},{k},{p}): gamma[{l},{k},{p}] != gamma[{k},{l},{p}]")


class IdentityMissing(AlgebraError):
    def __init__(self, k: int, p: int):
        self.index = (k, p)
        super().__init__(f"IdentityMissing: e0*e{k} has component {p} inconsistent with e0 = 1")


class AssociativityViolated(AlgebraError):
    def __init__(self, l: int, k: int, q: int, p: int):
        self.index = (l, k, q, p)
        super().__init__(
            f"AssociativityViolated({l},{k},{q},{p}): (e{l}e{k})e{q} != e{l}(e{k}e{q}) in component {p}"
        )


class Condition1Violated(AlgebraError):
    def __init__(self, k: int):
        self.k = k
        super().__init__(f"Condition1Violated({k}): basis element e{k} is not invertible")


class Condition2Violated(AlgebraError):
    def __init__(self, detail: str = "every Gamma^p is singular"):
        super().__init__(f"Condition2Violated: {detail}")


class NotInvertible(AlgebraError):
    pass


# --- gamma calculus ---------------------------------------------------------

class InvalidGamma(HyperconvexError, ValueError):
    pass


class InconsistentBold(HyperconvexError, ValueError):
    pass


class AsymmetricInput(HyperconvexError, ValueError):
    pass


# --- hyperplanes / domains --------------------------------------------------

class ZeroCoefficients(HyperconvexError, ValueError):
    pass


class DegenerateGradient(HyperconvexError, ValueError):
    pass


class NonFiniteValue(HyperconvexError, ArithmeticError):
    pass


class ProjectionFailed(HyperconvexError, RuntimeError):
    pass


class InsufficientSamples(HyperconvexError, RuntimeError):
    pass


class UnknownDomain(HyperconvexError, ValueError):
    pass


class MalformedMonomials(HyperconvexError, ValueError):
    pass


# --- oracle / config --------------------------------------------------------

class MismatchedAnchor(HyperconvexError, ValueError):
    pass


class ConfigError(HyperconvexError, ValueError):
    pass
