"""Exception types raised by the quantum_seifert library.

Every error a caller is expected to handle derives from QuantumSeifertError.
Input validation errors additionally derive from ValueError.
"""
from typing import List, Optional


class QuantumSeifertError(Exception):
    """Base class for all library errors."""


class UnsupportedType(QuantumSeifertError, ValueError):
    pass


class WeylGroupTooLarge(QuantumSeifertError):
    def __init__(self, order: int, cap: int):
        self.order = order
        self.cap = cap
        super().__init__(
            f"Weyl group has {order} elements, above the enumeration cap of {cap}"
        )


class LevelTooSmall(QuantumSeifertError, ValueError):
    def __init__(self, r: int, h: int):
        self.r = r
        self.h = h
        super().__init__(f"level r={r} is below the dual Coxeter number {h}")


class ZeroModulus(QuantumSeifertError, ValueError):
    pass


class NotCoprime(QuantumSeifertError, ValueError):
    pass


class NotUnimodular(QuantumSeifertError, ValueError):
    pass


class ZeroDenominator(QuantumSeifertError, ValueError):
    pass


class CZero(QuantumSeifertError, ValueError):
    """Raised when a closed form needs a nonzero lower-left entry."""


class ZeroPivot(QuantumSeifertError, ValueError):
    pass


class IndexOutOfAlcove(QuantumSeifertError, ValueError):
    pass


class PreconditionViolation(QuantumSeifertError, ValueError):
    def __init__(self, condition: str):
        self.condition = condition
        super().__init__(f"Gauss sum precondition failed: {condition}")


class SingularB(QuantumSeifertError, ValueError):
    pass


class NonIntegralB(QuantumSeifertError, ValueError):
    pass


class MissingSignTable(QuantumSeifertError, ValueError):
    pass


class ZeroAlpha(QuantumSeifertError, ValueError):
    pass


class PZero(QuantumSeifertError, ValueError):
    pass


PZeroForAsymp = PZero


class TermBudgetExceeded(QuantumSeifertError):
    def __init__(self, terms: int, budget: int):
        self.terms = terms
        self.budget = budget
        super().__init__(
            f"evaluation needs {terms} terms, above the configured budget of {budget}"
        )


class DegenerateData(QuantumSeifertError, ValueError):
    pass


class ManifoldSpecError(QuantumSeifertError, ValueError):
    """Parse error in a Seifert manifold string, with the offending position."""

    def __init__(self, message: str, text: str, position: Optional[int] = None):
        self.text = text
        self.position = position
        where = f" at position {position}" if position is not None else ""
        super().__init__(f"{message}{where} in '{text}'")


class ConfigError(QuantumSeifertError, ValueError):
    def __init__(self, problems: List[str]):
        self.problems = list(problems)
        super().__init__("invalid configuration:\n  - " + "\n  - ".join(self.problems))
