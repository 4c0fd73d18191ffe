"""
qsu2 command router.

Maps command names to handlers and wraps every result in the response
envelope. Domain errors never escape: they come back as an error envelope
whose ``data`` holds the message, code and exit status.
"""
import logging

from qsu2.config import Config, get_config
from qsu2.errors import Qsu2Error
from qsu2.handlers.berezin import berezin_handler
from qsu2.handlers.check import check_handler
from qsu2.handlers.distance import distance_handler
from qsu2.handlers.info import info_handler
from qsu2.handlers.seminorm import seminorm_handler
from qsu2.handlers.spectrum import spectrum_handler
from qsu2.handlers.table import table_handler
from qsu2.monitoring import log_error

logger = logging.getLogger(__name__)

VERSION = "0.1.0"
SCHEMA = 1

HANDLERS = {
    "check": check_handler,
    "spectrum": spectrum_handler,
    "seminorm": seminorm_handler,
    "berezin": berezin_handler,
    "distance": distance_handler,
    "table": table_handler,
    "info": info_handler,
}

DESCRIPTIONS = {
    "check": "Run identity suites (relations, hopf, haar, pairing, derV, firstorder, schur, berezin)",
    "spectrum": "Dirac block eigenvalues and multiplicities up to level nmax",
    "seminorm": "L_{t,q}(x), ||x||, ||x||_{t,q} and, on grade 0, the Podles seminorm",
    "berezin": "Berezin transform beta_N^M of an expression",
    "distance": "Estimate of the Monge-Kantorovich distance of two states",
    "table": "Seminorm and distance sweeps over a (t, q) grid",
    "info": "Version, configuration summary and configuration issues",
}


def run(command: str, params: dict | None = None, config: Config | None = None) -> dict:
    """Dispatch a command and return its envelope."""
    params = params or {}
    config = config or get_config()
    handler = HANDLERS.get(command)
    if handler is None:
        return _envelope(command, params, {"error": f"unknown command {command!r}; choose from {list(HANDLERS)}",
                                           "code": "INVALID_PARAMETER", "exit_status": 2}, status="error")
    try:
        data = handler(params, config)
    except Qsu2Error as e:
        logger.info("command %s rejected: %s", command, e.message)
        return _envelope(command, params, {"error": e.message, "code": e.code, "exit_status": e.status},
                         status="error")
    except Exception as e:
        logger.exception("Handler %s failed", command)
        log_error(e, {"command": command, "params": params})
        return _envelope(command, params, {"error": str(e), "code": "INTERNAL_ERROR", "exit_status": 1},
                         status="error")

    status = "failed" if isinstance(data, dict) and data.get("passed") is False else "success"
    return _envelope(command, params, data, status=status)


def exit_status(envelope: dict) -> int:
    """0 on success, 1 on a failed check, the error's own status otherwise."""
    status = envelope.get("status")
    if status == "success":
        return 0
    if status == "failed":
        return 1
    return int(envelope.get("data", {}).get("exit_status", 1))


def _envelope(command, params, data, status="success"):
    return {
        "schema": SCHEMA,
        "status": status,
        "command": command,
        "requested": {k: v for k, v in params.items() if v is not None},
        "data": data,
        "metadata": {
            "service": "qsu2",
            "version": VERSION,
        },
    }
