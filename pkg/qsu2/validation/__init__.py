"""Identity and bound checks run by ``qsu2 check``."""
from qsu2.validation.engine import ValidationResult, Validator
from qsu2.validation.suites import SUITES, SuiteContext, run_suites

__all__ = ["SUITES", "SuiteContext", "ValidationResult", "Validator", "run_suites"]
