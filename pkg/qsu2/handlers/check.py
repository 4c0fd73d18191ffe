"""
Identity suites behind ``qsu2 check``.

Runs the named suites (all of them by default) at the configured (q, t) and
reports per-suite residuals. ``passed`` is False as soon as one suite has an
error-severity failure; warnings never fail a run.
"""
import logging

from qsu2.config import Config
from qsu2.errors import ParameterError
from qsu2.monitoring import Timer
from qsu2.validation.suites import SUITES, SuiteContext, run_suites

logger = logging.getLogger(__name__)


def check_handler(params: dict, config: Config) -> dict:
    max_degree = int(params.get("max_degree", 3))
    if max_degree < 0:
        raise ParameterError(f"--max-degree must be >= 0, got {max_degree}")
    tolerance = float(params.get("tolerance", config.algebra.assert_tol))
    if tolerance <= 0:
        raise ParameterError(f"--tolerance must be positive, got {tolerance}")
    samples = int(params.get("samples", 5))
    names = list(params.get("suites") or []) or None

    ctx = SuiteContext(
        q=config.algebra.q,
        t=config.algebra.t,
        max_degree=max_degree,
        tolerance=tolerance,
        samples=samples,
        seed=int(params.get("seed", config.metric.seed)),
        config=config,
    )
    with Timer() as timer:
        results = run_suites(names, ctx)

    failed = [r.suite for r in results if not r.is_valid]
    if failed:
        logger.warning("check failed in suites: %s", ", ".join(failed),
                       extra={"command": "check", "q": ctx.q, "t": ctx.t, "elapsed_ms": timer.elapsed_ms})
    return {
        "q": ctx.q,
        "t": ctx.t,
        "max_degree": max_degree,
        "tolerance": tolerance,
        "suites": [r.to_dict() for r in results],
        "failed_suites": failed,
        "passed": not failed,
        "elapsed_ms": timer.elapsed_ms,
    }


def suite_names() -> list[str]:
    return list(SUITES)
