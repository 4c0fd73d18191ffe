"""
qsu2 - Validation Engine

Runs named checks against a suite context. A check returns either a bool or a
residual; residuals pass when they stay below the check's tolerance. The worst
residual of every check is kept so reports show how close each identity came.
"""

import logging
import math
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, List, Optional, Union

from qsu2.errors import Qsu2Error

logger = logging.getLogger(__name__)

CheckValue = Union[bool, float]


@dataclass
class ValidationResult:
    """Result of running one suite"""
    suite: str
    is_valid: bool
    errors: List[str] = field(default_factory=list)
    warnings: List[str] = field(default_factory=list)
    residuals: Dict[str, float] = field(default_factory=dict)
    checks_passed: int = 0
    checks_failed: int = 0
    checks_total: int = 0

    @property
    def pass_rate(self) -> float:
        if self.checks_total == 0:
            return 1.0
        return self.checks_passed / self.checks_total

    @property
    def worst_residual(self) -> float:
        return max(self.residuals.values(), default=0.0)

    def to_dict(self) -> dict:
        return {
            "suite": self.suite,
            "is_valid": self.is_valid,
            "pass_rate": round(self.pass_rate, 3),
            "checks_passed": self.checks_passed,
            "checks_failed": self.checks_failed,
            "checks_total": self.checks_total,
            "worst_residual": self.worst_residual,
            "residuals": self.residuals,
            "errors": self.errors,
            "warnings": self.warnings,
        }


class Validator:
    """
    Base validator. Runs checks against a context object.

    Usage:
        validator = Validator("hopf", tolerance=1e-9)
        validator.add_check("counit", lambda ctx: counit_residual(ctx.q), "counit axiom fails")
        result = validator.validate(ctx)
    """

    def __init__(self, name: str, tolerance: float = 1e-9):
        self.name = name
        self.tolerance = tolerance
        self._checks: List[Dict] = []

    def add_check(
        self,
        name: str,
        check_fn: Callable[[Any], CheckValue],
        error_message: str,
        severity: str = "error",
        tolerance: Optional[float] = None,
    ):
        """Add a check returning a bool or a residual"""
        self._checks.append({
            "name": name,
            "fn": check_fn,
            "message": error_message,
            "severity": severity,
            "tolerance": tolerance,
        })

    def __len__(self) -> int:
        return len(self._checks)

    def validate(self, context: Any) -> ValidationResult:
        """Run all checks against the context"""
        errors: List[str] = []
        warnings: List[str] = []
        residuals: Dict[str, float] = {}
        passed = 0
        failed = 0

        for check in self._checks:
            tol = self.tolerance if check["tolerance"] is None else check["tolerance"]
            try:
                value = check["fn"](context)
                if isinstance(value, bool):
                    ok = value
                else:
                    residuals[check["name"]] = float(value)
                    ok = math.isfinite(value) and value < tol
            except Qsu2Error as e:
                ok = False
                value = None
                check = {**check, "message": f"{check['message']} ({e.code}: {e.message})"}
            except Exception as e:
                logger.exception("check %s.%s raised", self.name, check["name"])
                ok = False
                value = None
                check = {**check, "message": f"Check failed with exception: {e}"}

            if ok:
                passed += 1
                continue
            failed += 1
            detail = "" if isinstance(value, bool) or value is None else f" (residual {value:.3e}, tol {tol:g})"
            line = f"{check['name']}: {check['message']}{detail}"
            if check["severity"] == "error":
                errors.append(line)
            else:
                warnings.append(line)

        result = ValidationResult(
            suite=self.name,
            is_valid=not errors,
            errors=errors,
            warnings=warnings,
            residuals=residuals,
            checks_passed=passed,
            checks_failed=failed,
            checks_total=passed + failed,
        )
        if errors:
            logger.warning("suite %s failed: %s", self.name, "; ".join(errors))
        return result
