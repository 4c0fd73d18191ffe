"""Version and configuration report."""
from qsu2.config import Config
from qsu2.validation.suites import SUITES


def info_handler(params: dict, config: Config) -> dict:
    from qsu2.router import DESCRIPTIONS, VERSION

    return {
        "version": VERSION,
        "commands": DESCRIPTIONS,
        "suites": list(SUITES),
        "config": config.summary().strip(),
        "issues": config.validate(),
    }
