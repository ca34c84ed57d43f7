"""Exception types shared across the engine."""

from __future__ import annotations


class ConsultError(Exception):
    """Base class for all engine errors."""


class ParseError(ConsultError):
    """A file could not be parsed; message carries line/field context."""


class InvalidModelError(ConsultError):
    """A knowledge base or findings object violates structural invariants."""

    def __init__(self, violations):
        self.violations = list(violations)
        lines = "; ".join(str(v) for v in self.violations)
        super().__init__(f"{len(self.violations)} invariant violation(s): {lines}")


class ZeroEvidenceError(ConsultError):
    """The observed findings have zero likelihood under the model."""


class CapExceededError(ConsultError):
    """A problem dimension exceeds the configured brute-force cap."""


class StaleThresholdsError(ConsultError):
    """A threshold table was computed for a different knowledge base."""


class InfeasibleSpecError(ConsultError):
    """A generator or experiment spec cannot be satisfied."""


class ConstructionError(ConsultError):
    """A constructed-and-verified artifact failed its own verification."""
