"""Exception hierarchy shared by all singcoh modules."""

from __future__ import annotations


class SingcohError(Exception):
    """Base class for domain errors (CLI exit code 1)."""


class DomainError(SingcohError):
    """Invalid mathematical input: bad size, unsupported coefficients, etc."""


class ParseError(SingcohError):
    """Malformed polynomial expression.  Carries the 0-based offset."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class WitnessError(SingcohError):
    """A row/column-operation witness failed verification."""

    def __init__(self, constraint: str, detail: str = ""):
        msg = f"witness constraint violated: {constraint}"
        if detail:
            msg += f" ({detail})"
        super().__init__(msg)
        self.constraint = constraint


class RankAmbiguityError(SingcohError):
    """Floating-point rank decision fell inside the ambiguity band."""

    def __init__(self, suspect_values, threshold: float):
        self.suspect_values = list(suspect_values)
        self.threshold = threshold
        super().__init__(
            "numerical rank ambiguous at relative threshold "
            f"{threshold:g}; suspect singular values {self.suspect_values}"
        )
