"""
qsu2 - Configuration Management

Defaults, environment overrides and a flat ``key=value`` config file.
Precedence (lowest first): dataclass defaults, config file, environment, CLI flags.
"""

import os
from dataclasses import dataclass, field, fields
from functools import lru_cache
from pathlib import Path


@dataclass
class AlgebraConfig:
    """Deformation parameters and algebra tolerances"""
    q: float = 0.5
    t: float = 0.5
    prune_tol: float = 1e-12
    assert_tol: float = 1e-9
    max_degree: int = 12  # CLI cap on k+l+m of parsed input

    def __post_init__(self):
        if not 0 < self.q <= 1:
            raise ValueError("q must lie in (0, 1]")
        if not 0 < self.t <= 1:
            raise ValueError("t must lie in (0, 1]")
        if self.prune_tol <= 0 or self.assert_tol <= 0:
            raise ValueError("tolerances must be positive")


@dataclass
class RepNormConfig:
    """C*-norm oracle settings"""
    theta_points: int = 64
    cutoff_start: int = 60
    cutoff_max: int = 960
    cutoff_tol: float = 1e-8
    su2_samples: int = 20000
    workers: int = 1

    def __post_init__(self):
        env_workers = os.getenv("QSU2_WORKERS")
        if env_workers:
            self.workers = int(env_workers)
        if self.theta_points < 1:
            raise ValueError("theta_points must be >= 1")
        if not 1 <= self.cutoff_start <= self.cutoff_max:
            raise ValueError("need 1 <= cutoff_start <= cutoff_max")
        if self.workers < 1:
            raise ValueError("workers must be >= 1")


@dataclass
class BerezinConfig:
    """Desk-scale caps for Berezin computations"""
    max_nm: int = 8  # N + M
    max_level: int = 10

    def __post_init__(self):
        if self.max_nm < 0 or self.max_level < 0:
            raise ValueError("Berezin caps must be nonnegative")


@dataclass
class MetricConfig:
    """Monge-Kantorovich optimizer settings"""
    restarts: int = 16
    iterations: int = 500
    random_directions: int = 100_000
    theta_points: int = 16
    cutoff: int = 32  # Fock truncation inside the optimizer
    su2_points: int = 4096
    workers: int = 1
    seed: int = 0

    def __post_init__(self):
        env_seed = os.getenv("QSU2_SEED")
        if env_seed:
            self.seed = int(env_seed)
        if self.restarts < 1 or self.iterations < 1:
            raise ValueError("restarts and iterations must be >= 1")
        if self.random_directions < 0:
            raise ValueError("random_directions must be >= 0")
        if self.cutoff < 1 or self.su2_points < 1 or self.workers < 1:
            raise ValueError("cutoff, su2_points and workers must be >= 1")


@dataclass
class CacheConfig:
    """Corepresentation cache configuration"""
    enabled: bool = True
    directory: Path = field(default_factory=lambda: Path.home() / ".cache" / "qsu2")

    def __post_init__(self):
        env_dir = os.getenv("QSU2_CACHE_DIR")
        if env_dir:
            self.directory = Path(env_dir)
        if isinstance(self.directory, str):
            self.directory = Path(self.directory)


@dataclass
class LogConfig:
    """Logging configuration"""
    level: str = "WARNING"

    def __post_init__(self):
        env_level = os.getenv("QSU2_LOG_LEVEL")
        if env_level:
            self.level = env_level.upper()


@dataclass
class Config:
    """
    Main configuration class for qsu2.

    Usage:
        config = Config()  # defaults + environment variables

        # Or override specific sections:
        config = Config(algebra=AlgebraConfig(q=0.8, t=0.7))
    """
    algebra: AlgebraConfig = field(default_factory=AlgebraConfig)
    repnorm: RepNormConfig = field(default_factory=RepNormConfig)
    berezin: BerezinConfig = field(default_factory=BerezinConfig)
    metric: MetricConfig = field(default_factory=MetricConfig)
    cache: CacheConfig = field(default_factory=CacheConfig)
    log: LogConfig = field(default_factory=LogConfig)
    output_format: str = "json"

    def validate(self) -> list[str]:
        """Return list of configuration issues"""
        issues = []
        if self.output_format not in ("json", "csv", "table"):
            issues.append(f"Unknown output format: {self.output_format}")
        if self.cache.enabled and self.cache.directory.exists() and not os.access(self.cache.directory, os.W_OK):
            issues.append(f"Cache directory not writable: {self.cache.directory}")
        if self.metric.random_directions > 1_000_000:
            issues.append("random_directions above 1e6 will be very slow")
        return issues

    def summary(self) -> str:
        """Return configuration summary"""
        return f"""
qsu2 Configuration
==================
q, t: {self.algebra.q}, {self.algebra.t}
Tolerances: prune {self.algebra.prune_tol:g}, assert {self.algebra.assert_tol:g}
Norm oracle: {self.repnorm.theta_points} theta points, cutoff {self.repnorm.cutoff_start}..{self.repnorm.cutoff_max}
Optimizer: {self.metric.restarts} restarts x {self.metric.iterations} iterations, seed {self.metric.seed}
Cache: {'Enabled' if self.cache.enabled else 'Disabled'} ({self.cache.directory})
Log Level: {self.log.level}
Output: {self.output_format}
"""


@lru_cache()
def get_config() -> Config:
    """
    Get singleton configuration instance.

    Cached so the same instance is returned on repeated calls.
    """
    return Config()


# Bare keys accepted in config files, mapped to (section, field)
_SHORT_KEYS = {
    "q": ("algebra", "q"),
    "t": ("algebra", "t"),
    "seed": ("metric", "seed"),
    "workers": ("repnorm", "workers"),
    "cache_dir": ("cache", "directory"),
    "log_level": ("log", "level"),
}


def read_config_file(path: str | Path) -> dict[str, dict[str, str]]:
    """Parse a flat ``key=value`` file into {section: {field: raw string}}.

    Lines starting with ``#`` and blank lines are ignored. Keys are either dotted
    (``repnorm.theta_points``) or one of the bare shorthands (``q``, ``seed``...).
    """
    sections: dict[str, dict[str, str]] = {}
    for lineno, raw in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ValueError(f"{path}:{lineno}: expected key=value")
        key, value = (part.strip() for part in line.split("=", 1))
        if key == "format":
            sections.setdefault("", {})["output_format"] = value
            continue
        if key in _SHORT_KEYS:
            section, name = _SHORT_KEYS[key]
        elif "." in key:
            section, name = key.split(".", 1)
        else:
            raise ValueError(f"{path}:{lineno}: unknown key {key!r}")
        sections.setdefault(section, {})[name] = value
    return sections


def _coerce(cls, name: str, raw: str):
    for f in fields(cls):
        if f.name != name:
            continue
        default = getattr(cls(), name)
        if isinstance(default, bool):
            return raw.lower() in ("1", "true", "yes", "on")
        if isinstance(default, int):
            return int(raw)
        if isinstance(default, float):
            return float(raw)
        if isinstance(default, Path):
            return Path(raw).expanduser()
        return raw
    raise ValueError(f"unknown setting {cls.__name__}.{name}")


_SECTION_TYPES = {
    "algebra": AlgebraConfig,
    "repnorm": RepNormConfig,
    "berezin": BerezinConfig,
    "metric": MetricConfig,
    "cache": CacheConfig,
    "log": LogConfig,
}


def load_config(path: str | Path | None = None, **overrides) -> Config:
    """
    Load configuration from an optional file, then apply overrides.

    Overrides are either whole sections (``algebra=AlgebraConfig(...)``) or
    dotted-style keyword pairs with ``__`` (``algebra__q=0.8``).

    Usage:
        config = load_config("run.cfg", algebra__q=0.8)
    """
    values: dict[str, dict] = {}
    output_format = None
    if path is not None:
        for section, entries in read_config_file(path).items():
            if section == "":
                output_format = entries["output_format"]
                continue
            cls = _SECTION_TYPES.get(section)
            if cls is None:
                raise ValueError(f"unknown config section {section!r}")
            values[section] = {name: _coerce(cls, name, raw) for name, raw in entries.items()}

    section_objects = {}
    for key, value in overrides.items():
        if "__" in key:
            section, name = key.split("__", 1)
            values.setdefault(section, {})[name] = value
        elif key == "output_format":
            output_format = value
        else:
            section_objects[key] = value

    kwargs = {}
    for section, cls in _SECTION_TYPES.items():
        if section in section_objects:
            kwargs[section] = section_objects[section]
        elif section in values:
            kwargs[section] = cls(**values[section])
    config = Config(**kwargs)
    if output_format is not None:
        config.output_format = output_format
    return config
