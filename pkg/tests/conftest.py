"""Shared test fixtures. Oracles run at small sizes and nothing touches the real cache."""
import logging
import os

import pytest

os.environ.setdefault("QSU2_LOG_LEVEL", "WARNING")

from qsu2.algebra.element import QParams  # noqa: E402
from qsu2.cache import LayeredStore  # noqa: E402
from qsu2.config import Config, MetricConfig, RepNormConfig, get_config  # noqa: E402
from qsu2.corep import reset_store  # noqa: E402

SMALL_REPNORM = dict(theta_points=8, cutoff_start=20, cutoff_max=80, cutoff_tol=1e-6, su2_samples=2048)
SMALL_METRIC = dict(restarts=3, iterations=60, random_directions=500, theta_points=4, cutoff=16, su2_points=512)


@pytest.fixture(autouse=True)
def isolated_cache(tmp_path, monkeypatch):
    """Point the corepresentation cache at tmp_path and start from an empty in-memory store."""
    monkeypatch.setenv("QSU2_CACHE_DIR", str(tmp_path / "cache"))
    monkeypatch.delenv("QSU2_SEED", raising=False)
    monkeypatch.delenv("QSU2_WORKERS", raising=False)
    reset_store(LayeredStore())
    yield
    reset_store(None)


@pytest.fixture(autouse=True)
def small_oracles(monkeypatch):
    """Shrink the shared config so default-config code paths stay fast."""
    cfg = get_config()
    monkeypatch.setattr(cfg, "repnorm", RepNormConfig(**SMALL_REPNORM))
    monkeypatch.setattr(cfg, "metric", MetricConfig(**SMALL_METRIC))
    return cfg


@pytest.fixture
def small_config():
    """A fresh Config with small oracle settings."""
    return Config(repnorm=RepNormConfig(**SMALL_REPNORM), metric=MetricConfig(**SMALL_METRIC))


@pytest.fixture
def small_config_file(tmp_path):
    """Flat key=value file with the same small settings, for CLI runs."""
    path = tmp_path / "small.cfg"
    lines = ["# small oracle settings"]
    lines += [f"repnorm.{k} = {v}" for k, v in SMALL_REPNORM.items()]
    lines += [f"metric.{k} = {v}" for k, v in SMALL_METRIC.items()]
    lines.append(f"cache_dir = {tmp_path / 'cli-cache'}")
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    return str(path)


@pytest.fixture(params=[0.5, 0.8, 1.0], ids=lambda q: f"q={q}")
def q(request):
    return request.param


@pytest.fixture
def p_half():
    return QParams(0.5, 0.5)


@pytest.fixture(autouse=True)
def restore_logging():
    """CLI runs reconfigure the root logger onto captured streams; put it back afterwards."""
    root = logging.getLogger()
    handlers, level = list(root.handlers), root.level
    yield
    root.handlers[:] = handlers
    root.setLevel(level)
