"""
Structured logging for qsu2.

Every record is one JSON line. Records may carry the fields in ``CONTEXT_FIELDS``
through ``extra=``; they are copied into the line so sweeps and suite runs can be
filtered by command or by (q, t) afterwards.
"""
import json
import logging
import time
import traceback

CONTEXT_FIELDS = ("command", "suite", "q", "t", "cutoff", "elapsed_ms")


class _JSONFormatter(logging.Formatter):
    def format(self, record: logging.LogRecord) -> str:
        entry = {
            "timestamp": self.formatTime(record, self.datefmt),
            "level": record.levelname,
            "logger": record.name,
            "message": record.getMessage(),
        }
        for name in CONTEXT_FIELDS:
            if hasattr(record, name):
                entry[name] = getattr(record, name)
        if record.exc_info and record.exc_info[0] is not None:
            entry["exception"] = self.formatException(record.exc_info)
        return json.dumps(entry, default=str)


def setup_logging(level: str = "WARNING") -> None:
    """Route the root logger through a single JSON stream handler at ``level``."""
    root = logging.getLogger()
    root.setLevel(getattr(logging, level.upper(), logging.WARNING))
    root.handlers.clear()
    handler = logging.StreamHandler()
    handler.setFormatter(_JSONFormatter())
    root.addHandler(handler)


def log_error(error: Exception, context: dict | None = None) -> None:
    """Log an unexpected failure with its traceback and the command context.

    Domain errors carry a ``code``; it is included when present.
    """
    entry = {
        "error_type": type(error).__name__,
        "error_message": str(error),
        "traceback": traceback.format_exception(type(error), error, error.__traceback__),
    }
    code = getattr(error, "code", None)
    if code:
        entry["code"] = code
    extra = {}
    if context:
        entry["context"] = context
        extra = {name: context[name] for name in CONTEXT_FIELDS if name in context}
    logging.getLogger("qsu2.error").error(json.dumps(entry, default=str), extra=extra)


class Timer:
    """``with Timer() as t: ...`` then ``t.elapsed_ms``."""

    def __init__(self):
        self.elapsed_ms = 0.0
        self._start = 0.0

    def __enter__(self):
        self._start = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.elapsed_ms = round((time.perf_counter() - self._start) * 1000.0, 2)
        return False
