"""Uniform result record for every identity check."""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass
class CheckReport:
    """Outcome of one named check: a worst residual against a tolerance."""

    name: str
    max_residual: float
    tolerance: float
    passed: bool
    details: dict = field(default_factory=dict)


def make_report(name: str, residual, tolerance, **details) -> CheckReport:
    residual = float(residual)
    tolerance = float(tolerance)
    return CheckReport(
        name=name,
        max_residual=residual,
        tolerance=tolerance,
        passed=residual <= tolerance,
        details=details,
    )
