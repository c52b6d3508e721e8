"""Check reports and the exception hierarchy."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any


@dataclass(frozen=True)
class Violation:
    """One failed instance of an identity.

    ``witness`` holds 0-based basis indices; renderers add one.
    """

    identity: str
    witness: tuple
    left: Any
    right: Any


@dataclass
class CheckReport:
    name: str
    violations: list[Violation] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.violations

    @property
    def verdict(self) -> str:
        return "pass" if self.passed else "fail"

    def __bool__(self) -> bool:
        return self.passed

    def add(self, identity: str, witness, left, right) -> None:
        self.violations.append(Violation(identity, tuple(witness), left, right))

    def extend(self, other: "CheckReport", prefix: str | None = None) -> "CheckReport":
        for v in other.violations:
            ident = f"{prefix}:{v.identity}" if prefix else v.identity
            self.violations.append(Violation(ident, v.witness, v.left, v.right))
        return self

    def witnesses(self, identity: str | None = None) -> list[tuple]:
        return [v.witness for v in self.violations if identity is None or v.identity == identity]

    def to_dict(self) -> dict:
        return {
            "check": self.name,
            "verdict": self.verdict,
            "violations": [
                {
                    "identity": v.identity,
                    "witness": [w + 1 if isinstance(w, int) else w for w in v.witness],
                    "left": render_value(v.left),
                    "right": render_value(v.right),
                }
                for v in self.violations
            ],
        }

    def render(self) -> str:
        lines = [f"{self.name}: {self.verdict}"]
        for v in self.violations:
            w = ",".join(str(x + 1) if isinstance(x, int) else str(x) for x in v.witness)
            lines.append(f"  {v.identity} at ({w}): {render_value(v.left)} != {render_value(v.right)}")
        return "\n".join(lines)


def render_value(x) -> Any:
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, (tuple, list)):
        return [render_value(y) for y in x]
    if hasattr(x, "to_dict"):
        return x.to_dict()
    return x if isinstance(x, (int, float, str, bool)) or x is None else str(x)


class LieGeomError(Exception):
    """Base class for errors raised by this package."""


class DimensionError(LieGeomError, ValueError):
    pass


class StructureError(LieGeomError, ValueError):
    pass


class PreconditionError(LieGeomError, ValueError):
    """A construction was handed data that fails a required check."""

    def __init__(self, message: str, report: CheckReport | None = None):
        super().__init__(message)
        self.report = report


class HessianConeViolation(PreconditionError):
    pass


class PipelineStageError(PreconditionError):
    def __init__(self, stage: str, report: CheckReport):
        super().__init__(f"pipeline stage {stage!r} failed", report)
        self.stage = stage


class DomainError(LieGeomError, ValueError):
    """Evaluation point outside the positive-definite cone."""


class UnknownExample(LieGeomError, KeyError):
    pass
