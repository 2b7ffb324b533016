"""Machine-readable verdict records."""

from __future__ import annotations

import numbers
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

from .numerics import parse_scalar, scalar_to_json

__all__ = ["Certificate"]


@dataclass
class Certificate:
    """Outcome of one verification criterion.

    ``residuals`` maps a label (usually the degree) to the residual value.
    The verdict passes iff every residual has magnitude at most
    ``tolerance``; exact mode always uses tolerance 0.
    """

    criterion: str
    degrees: list
    residuals: dict
    mode: str
    tolerance: float | Fraction
    passed: bool = field(init=False)
    extra: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.mode == "exact":
            self.tolerance = Fraction(0)
        self.passed = all(abs(r) <= self.tolerance for r in self.residuals.values())

    def __bool__(self):
        return self.passed

    @property
    def verdict(self) -> str:
        return "pass" if self.passed else "fail"

    def max_residual(self):
        return max((abs(r) for r in self.residuals.values()), default=0)

    def failing(self) -> list:
        return [k for k, r in self.residuals.items() if abs(r) > self.tolerance]

    def to_json(self) -> dict[str, Any]:
        return {
            "criterion": self.criterion,
            "degrees": list(self.degrees),
            "mode": self.mode,
            "tolerance": scalar_to_json(self.tolerance),
            "residuals": {str(k): scalar_to_json(v) for k, v in self.residuals.items()},
            "verdict": self.verdict,
            "extra": _jsonable(self.extra),
        }

    @classmethod
    def from_json(cls, obj: dict) -> "Certificate":
        cert = cls(
            criterion=obj["criterion"],
            degrees=list(obj["degrees"]),
            residuals={k: parse_scalar(v) for k, v in obj["residuals"].items()},
            mode=obj["mode"],
            tolerance=parse_scalar(obj["tolerance"]),
            extra=obj.get("extra", {}),
        )
        if cert.verdict != obj["verdict"]:
            raise ValueError("stored verdict disagrees with residuals")
        return cert

    def summary(self) -> str:
        worst = self.max_residual()
        return f"{self.criterion}: {self.verdict} (degrees {self.degrees}, max |residual| = {_fmt(worst)})"


def _fmt(x):
    if isinstance(x, Fraction):
        return str(x)
    return f"{float(x):.3e}"


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, bool) or obj is None or isinstance(obj, str):
        return obj
    if isinstance(obj, numbers.Integral):
        return int(obj)
    if isinstance(obj, Fraction):
        return scalar_to_json(obj)
    if hasattr(obj, "to_json"):
        return obj.to_json()
    return float(obj)
